import numpy as np
import pytest

from halfwave.diagnostics import (
    CheckEntry,
    commutator_residual,
    decay_fit,
    frequency_mass_split,
    ground_state_energy_compare,
    overlap,
    pohozaev_check,
    power_law_fit,
    profile_continuity,
    rescaled_energy_mass_product,
    scaling_suite,
    speed_of_light_residual,
    virial_rate,
)
from halfwave.functionals import functional_report
from halfwave.solver import SolveConfig, WaveProfile, solve_profile
from halfwave.spectral import Field, forward, inverse, make_grid


def synthetic_profile(grid, values, v=0.5, converged=True):
    f = Field(grid, values)
    return WaveProfile(v=v, mu=1.0 - v, field=f, residual_l2=0.0, iterations=0,
                       converged=converged, report=functional_report(f, v))


# ---- power-law fitting ----------------------------------------------------

def test_power_law_fit_exact_square():
    xs = np.linspace(1.0, 9.0, 20)
    fit = power_law_fit(xs, xs**2)
    assert fit.exponent == pytest.approx(2.0, abs=1e-12)
    assert fit.max_rel_residual < 1e-12


def test_power_law_fit_prefactor():
    xs = np.linspace(0.5, 4.0, 10)
    fit = power_law_fit(xs, 5.0 * xs ** (1.0 / 3.0))
    assert fit.exponent == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert fit.prefactor == pytest.approx(5.0, rel=1e-12)


def test_power_law_fit_rejects_bad_input():
    with pytest.raises(ValueError, match="insufficient"):
        power_law_fit([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError, match="positive"):
        power_law_fit([1.0, 2.0, 3.0], [1.0, -2.0, 3.0])


def test_decay_fit_synthetic_inverse_square():
    g = make_grid(4096, 200.0)
    p = synthetic_profile(g, 1.0 / (1.0 + g.x**2))
    assert decay_fit(p, (5.0, 85.0)) == pytest.approx(-2.0, abs=0.02)


def test_decay_fit_window_validation():
    g = make_grid(4096, 200.0)
    p = synthetic_profile(g, 1.0 / (1.0 + g.x**2))
    with pytest.raises(ValueError, match="boundary"):
        decay_fit(p, (20.0, 99.0))
    tiny = synthetic_profile(g, np.exp(-(g.x**2)))
    with pytest.raises(ValueError, match="1e-12"):
        decay_fit(tiny, (20.0, 80.0))


# ---- profile identities ---------------------------------------------------

def test_pohozaev_floor_on_default_box(q05):
    # truncation-limited at ~1e-3 on L=200 (scales like 1/L^2); exact r1/r2 = 5/3
    r1, r2 = pohozaev_check(q05)
    assert r1 < 1e-2 and r2 < 1e-2
    assert r1 / r2 == pytest.approx(5.0 / 3.0, rel=1e-6)


def test_pohozaev_rejects_nonconverged(q05):
    bad = WaveProfile(q05.v, q05.mu, q05.field, 1.0, 1, False, q05.report)
    with pytest.raises(ValueError, match="converged"):
        pohozaev_check(bad)


def test_pohozaev_fails_off_solution(q05):
    scaled = synthetic_profile(q05.field.grid, 1.1 * q05.field.values, v=q05.v)
    r1, r2 = pohozaev_check(scaled)
    assert max(r1, r2) > 1e-2


def test_pohozaev_residual_does_not_grow_with_tighter_solve(grid):
    loose = solve_profile(0.5, grid, SolveConfig(tol_residual=1e-8))
    tight = solve_profile(0.5, grid, SolveConfig(tol_residual=1e-10))
    for a, b in zip(pohozaev_check(tight), pohozaev_check(loose)):
        assert a <= b * 1.1


# ---- virial ---------------------------------------------------------------

def test_virial_real_field_zero():
    g = make_grid(128, 25.0)
    rng = np.random.default_rng(0)
    f = Field(g, rng.standard_normal(g.n))
    mass = g.dx * np.sum(np.abs(f.values) ** 2)
    assert abs(virial_rate(f)) < 1e-14 * mass


def test_virial_single_signed_equality():
    g = make_grid(128, 25.0)
    rng = np.random.default_rng(1)
    coeffs = np.where(g.xi > 0, rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n), 0.0)
    f = Field(g, inverse(g, coeffs))
    mass = g.dx * np.sum(np.abs(f.values) ** 2)
    assert virial_rate(f) == pytest.approx(mass, rel=1e-12)


def test_virial_bounded_by_mass_on_noise():
    g = make_grid(256, 30.0)
    rng = np.random.default_rng(2)
    for _ in range(100):
        f = Field(g, rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n))
        mass = g.dx * np.sum(np.abs(f.values) ** 2)
        assert abs(virial_rate(f)) <= mass * (1.0 + 1e-12)


def test_virial_speed_identity_midrange(q05):
    dev = abs(virial_rate(q05.field) / q05.report.mass - q05.v)
    assert dev < 2e-3  # truncation floor of the x-weighted identity on L=200


# ---- frequency split ------------------------------------------------------

def test_frequency_split_examples():
    g = make_grid(64, 16.0)
    mode = Field(g, np.exp(1j * (2 * np.pi * 3 / g.length) * g.x))
    split = frequency_mass_split(mode)
    assert split.positive == pytest.approx(1.0, rel=1e-12)
    assert split.negative < 1e-14
    rng = np.random.default_rng(3)
    real = Field(g, rng.standard_normal(g.n))
    s2 = frequency_mass_split(real)
    assert s2.positive == pytest.approx(s2.negative, rel=1e-10)
    assert s2.positive + s2.negative + s2.zero == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(ValueError, match="zero"):
        frequency_mass_split(Field(g, np.zeros(g.n)))


def test_frequency_split_concentrates_positive_along_sweep(sweep_profiles):
    # in this transform convention the v -> 1 branch fills the positive
    # half-line (a ~3% share stays on the zero mode: the profile mean)
    fractions = [frequency_mass_split(p.field).positive for p in sweep_profiles]
    assert all(a < b for a, b in zip(fractions, fractions[1:]))
    assert fractions[-1] > 0.9


# ---- speed-of-light mechanism ----------------------------------------------

def test_speed_of_light_constant_field():
    g = make_grid(64, 16.0)
    c = 1.2
    f = Field(g, np.full(g.n, c))
    mu = 0.7
    r_ode, flatness = speed_of_light_residual(f, mu)
    assert r_ode == pytest.approx(abs(mu - c**3), rel=1e-12)
    assert flatness < 1e-12


def test_speed_of_light_rejects_positive_only_field():
    g = make_grid(64, 16.0)
    coeffs = np.where(g.xi > 0, 1.0, 0.0)
    f = Field(g, inverse(g, coeffs))
    with pytest.raises(ValueError, match="zero projection"):
        speed_of_light_residual(f, 1.0)


def test_speed_of_light_reported_on_fast_profile(sweep_profiles):
    p99 = sweep_profiles[-1]
    r_ode, flatness = speed_of_light_residual(p99.field, p99.mu)
    # recorded, not asserted: the mechanism forbids both vanishing at once
    assert np.isfinite(r_ode) and np.isfinite(flatness)
    assert max(r_ode, flatness) > 0.1


# ---- overlap ----------------------------------------------------------------

def test_overlap_self_at_zero_shift(q05):
    assert overlap(q05.field, q05.field, 0.0) == pytest.approx(q05.report.mass, rel=1e-12)


def test_overlap_conjugate_symmetry():
    g = make_grid(128, 25.0)
    rng = np.random.default_rng(4)
    f = Field(g, rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n))
    h = Field(g, rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n))
    a = overlap(f, h, 3.7)
    b = overlap(h, f, -3.7)
    assert a == pytest.approx(np.conj(b), rel=1e-12)


def test_overlap_grid_mismatch():
    f = Field(make_grid(64, 16.0), np.zeros(64))
    h = Field(make_grid(64, 32.0), np.zeros(64))
    with pytest.raises(ValueError, match="grid"):
        overlap(f, h, 1.0)


# ---- continuity -------------------------------------------------------------

def test_continuity_identical_fields(q05):
    clone = WaveProfile(q05.v + 1e-6, q05.mu - 1e-6, q05.field, q05.residual_l2,
                        q05.iterations, True, q05.report)
    assert profile_continuity(q05, clone).ratio == 0.0


def test_continuity_regime_flag(cache):
    p1 = cache.profile(0.95)
    p2 = cache.profile(0.952)
    res = profile_continuity(p1, p2)
    assert res.in_asymptotic_regime
    far = profile_continuity(cache.profile(0.5), cache.profile(0.9))
    assert not far.in_asymptotic_regime


def test_continuity_gauge_mismatch(q05, cache):
    p2 = cache.profile(0.952)
    rotated = WaveProfile(p2.v, p2.mu, Field(p2.field.grid, p2.field.values * np.exp(0.8j)),
                          p2.residual_l2, p2.iterations, True, p2.report)
    with pytest.raises(ValueError, match="gauge"):
        profile_continuity(q05, rotated)


# ---- ground-state comparison -------------------------------------------------

def test_energy_compare_matched_to_itself(cache):
    gs = cache.profile(0.01)
    e_gs, e_matched = ground_state_energy_compare(gs, gs)
    assert e_matched == pytest.approx(e_gs, rel=1e-12)


def test_energy_mass_product_invariant(cache):
    gs = cache.profile(0.01)
    base = rescaled_energy_mass_product(gs, 1.0)
    for lam in (0.5, 2.0):
        assert rescaled_energy_mass_product(gs, lam) == pytest.approx(base, rel=1e-12)


def test_wave_energy_below_matched_ground_state(cache):
    e_wave, e_gs = ground_state_energy_compare(cache.profile(0.95), cache.profile(0.01))
    assert e_wave < e_gs


# ---- commutator --------------------------------------------------------------

def test_commutator_residual_clean_for_offset_packet():
    g = make_grid(4096, 200.0)
    f = Field(g, np.exp(2j * g.x) * np.exp(-((g.x / 10.0) ** 2)))
    assert commutator_residual(f) < 1e-8


def test_commutator_residual_tail_precondition():
    g = make_grid(256, 40.0)
    wide = Field(g, np.exp(-((g.x / 30.0) ** 2)))
    with pytest.raises(ValueError, match="tail"):
        commutator_residual(wide)


def test_commutator_zero_field_is_zero():
    g = make_grid(64, 16.0)
    assert commutator_residual(Field(g, np.zeros(g.n))) == 0.0


def test_commutator_wraparound_floor_for_mean_nonzero():
    # mean-nonzero fields leave 1/x operator tails; the wrap-around floor is
    # O(sqrt(width/L)), far above the clean-packet level. Recorded, not tight.
    g = make_grid(4096, 200.0)
    f = Field(g, np.exp(-((g.x / 10.0) ** 2)))
    val = commutator_residual(f)
    assert 1e-3 < val < 1.0


# ---- scaling suite -------------------------------------------------------------

def test_scaling_suite_passes_on_sweep(sweep_profiles):
    report = scaling_suite(sweep_profiles)
    assert report.passed
    by_name = {e.name: e for e in report.entries}
    lo, hi = by_name["l2_norm_exponent"].target
    assert lo == 0.30 and hi == 0.36


def test_scaling_suite_rejects_small_input(q05):
    with pytest.raises(ValueError, match=">= 4"):
        scaling_suite([q05])


def test_weinstein_constant_bounded_along_sweep(sweep_profiles):
    vals = [p.report.weinstein * p.mu**1.5 for p in sweep_profiles]
    assert max(vals) / min(vals) < 2.0


# ---- report container ---------------------------------------------------------

def test_check_entry_reproducible():
    e = CheckEntry.within("x", 0.5, 0.0, 1.0)
    assert e.passed
    e2 = CheckEntry.below("y", 2.0, 1.0)
    assert not e2.passed


def test_report_serialization(sweep_profiles):
    report = scaling_suite(sweep_profiles)
    text = report.to_json()
    assert '"l2_norm_exponent"' in text
    csv = report.to_csv()
    assert csv.splitlines()[1].startswith("name,value,target")
