import numpy as np
import pytest

from halfwave.solver import (
    FromProfile,
    GaussianPacket,
    NonConvergenceError,
    SolveConfig,
    initial_guess,
    load_profile,
    petviashvili_step,
    residual_l2,
    save_profile,
    solve_profile,
    sweep,
    warm_start,
)
from halfwave.spectral import Field, forward, inverse, make_grid


def test_initial_guess_slow_speed_is_real_gaussian():
    g = make_grid(128, 50.0)
    f = initial_guess(g, 0.1, SolveConfig())
    peak_idx = int(np.argmax(np.abs(f.values)))
    assert g.x[peak_idx] == pytest.approx(0.0, abs=g.dx)
    assert np.max(np.abs(f.values)) == pytest.approx(1.0, rel=1e-12)
    assert np.max(np.abs(f.values.imag)) < 1e-14


def test_initial_guess_fast_speed_is_modulated():
    g = make_grid(128, 50.0)
    f = initial_guess(g, 0.9, SolveConfig())
    assert np.max(np.abs(f.values.imag)) > 0.1


def test_initial_guess_from_profile_passthrough(q05):
    cfg = SolveConfig(guess=FromProfile(q05))
    out = initial_guess(q05.field.grid, 0.51, cfg)
    assert out is q05.field


def test_petviashvili_fixed_point(q05):
    out, stabilizer = petviashvili_step(q05.field, q05.v, q05.mu, SolveConfig(gauge="none"))
    assert stabilizer == pytest.approx(1.0, abs=1e-8)
    scale = np.max(np.abs(q05.field.values))
    assert np.max(np.abs(out.values - q05.field.values)) / scale < 1e-8


def test_petviashvili_contracts_doubled_amplitude(q05):
    doubled = Field(q05.field.grid, 2.0 * q05.field.values)
    _, stabilizer = petviashvili_step(doubled, q05.v, q05.mu, SolveConfig())
    assert stabilizer == pytest.approx(1.0 / 8.0, rel=1e-7)


def test_petviashvili_degenerate_iterate():
    g = make_grid(64, 16.0)
    tiny = Field(g, np.full(g.n, 1e-80 + 0j))
    with pytest.raises(ValueError, match="degenerate"):
        petviashvili_step(tiny, 0.5, 0.5, SolveConfig())


def test_solve_profile_converges_at_half_speed(q05):
    assert q05.converged
    assert q05.residual_l2 <= 1e-10
    assert q05.report.momentum_term < 0.0
    # regression pin from the first converged run on this grid
    assert q05.report.mass == pytest.approx(1.3336755699693663, rel=1e-6)


def test_solve_profile_rejects_out_of_range_speed(grid):
    with pytest.raises(ValueError, match="out of range"):
        solve_profile(1.2, grid)


def test_reported_residual_matches_recomputation(q05):
    fresh = residual_l2(q05.field, q05.v, q05.mu)
    assert abs(fresh - q05.residual_l2) <= 1e-13


def test_gauge_invariance_under_guess_orbit(grid, q05):
    # rotate and translate the cold-start guess; the gauge-fixed answer is unchanged
    base = initial_guess(grid, 0.5, SolveConfig()).values
    moved = inverse(grid, forward(grid, base * np.exp(0.7j)) * np.exp(-1j * grid.xi * 3.7))
    cfg = SolveConfig(guess=FromProfile(Field(grid, moved)))
    p2 = solve_profile(0.5, grid, cfg)
    assert np.max(np.abs(p2.field.values - q05.field.values)) < 1e-8


def test_gauge_fix_places_peak_at_zero(q05):
    j = int(np.argmax(np.abs(q05.field.values)))
    assert abs(q05.field.grid.x[j]) <= q05.field.grid.dx
    peak = q05.field.values[j]
    assert peak.real > 0 and abs(peak.imag) < 1e-8 * abs(peak)


def test_nonconvergence_carries_best_profile(grid):
    with pytest.raises(NonConvergenceError) as err:
        solve_profile(0.5, grid, SolveConfig(max_iter=3))
    p = err.value.profile
    assert not p.converged
    assert p.iterations == 3
    assert p.residual_l2 > 1e-10


def test_sweep_basic(cache):
    profiles = [cache.profile(v) for v in (0.1, 0.3, 0.5, 0.7, 0.9)]
    assert all(p.converged for p in profiles)
    masses = [p.report.mass for p in profiles]
    # the (1-v)^{1/3} trend sets in past the standing-wave end: mass is
    # decreasing from v = 0.3 on (it ticks up between 0.1 and 0.3)
    assert all(a > b for a, b in zip(masses[1:], masses[2:]))


def test_sweep_mass_decreasing_near_unit_speed(sweep_profiles):
    assert all(p.converged for p in sweep_profiles)
    masses = [p.report.mass for p in sweep_profiles]
    assert all(a > b for a, b in zip(masses, masses[1:]))


def test_sweep_empty_and_ordering(grid):
    assert sweep([], grid) == []
    with pytest.raises(ValueError, match="ascending"):
        sweep([0.5, 0.4], grid)
    with pytest.raises(ValueError, match="\\(0, 1\\)"):
        sweep([0.5, 1.5], grid)


def test_sweep_collects_failures(grid):
    profiles = sweep([0.3, 0.5], grid, SolveConfig(max_iter=2))
    assert len(profiles) == 2
    assert not any(p.converged for p in profiles)


def test_warm_start_rescales_amplitude(q05):
    f = warm_start(q05, 0.6)
    expected = (0.4 / 0.5) ** (1.0 / 3.0)
    assert np.max(np.abs(f.values)) == pytest.approx(expected * np.max(np.abs(q05.field.values)), rel=1e-12)


def test_profile_csv_roundtrip(tmp_path, q05):
    path = tmp_path / "profile.csv"
    save_profile(q05, path)
    back = load_profile(path)
    assert back.v == q05.v and back.mu == q05.mu
    assert back.field.grid.n == q05.field.grid.n
    assert back.field.grid.length == q05.field.grid.length
    assert back.residual_l2 == q05.residual_l2
    assert back.converged == q05.converged
    assert np.array_equal(back.field.values, q05.field.values)


def test_warm_started_solve_from_file(tmp_path, cache):
    p90 = cache.profile(0.90)
    path = tmp_path / "q090.csv"
    save_profile(p90, path)
    prev = load_profile(path)
    cfg = SolveConfig(guess=FromProfile(warm_start(prev, 0.91)))
    p91 = solve_profile(0.91, prev.field.grid, cfg)
    assert p91.converged
    assert p91.iterations < 200


def test_custom_gaussian_packet(grid):
    cfg = SolveConfig(guess=GaussianPacket(width=6.0, carrier=0.5))
    f = initial_guess(grid, 0.2, cfg)
    assert np.max(np.abs(f.values)) == pytest.approx(1.0, rel=1e-12)


def test_solve_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(gamma=2.5)
    with pytest.raises(ValueError):
        SolveConfig(tol_residual=-1.0)
    with pytest.raises(ValueError):
        SolveConfig(gauge="bogus")
