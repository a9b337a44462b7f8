"""Traveling-wave profiles by Petviashvili iteration on the resolvent.

The profile Q at speed v in (0,1) and frequency mu = 1 - v solves

    sqrt(-Lap) Q + i v Q_x + mu Q = |Q|^3 Q,

equivalently the fixed-point form Q = A_v(|Q|^3 Q) with A_v the resolvent.
The iteration

    w  <-  S^gamma * A_v(|w|^3 w),    S = <L w, w> / Re<|w|^3 w, w>

with gamma = 4/3 (the classical p/(p-1) for the degree-4 nonlinearity) is a
stabilized fixed-point scheme: S = 1 at a true solution, and the power gamma
damps the amplitude mode that makes the plain map unstable.

Each iterate is gauge-fixed to remove the phase/translation orbit: the field
is translated (by exact Fourier phase shift, to sub-grid accuracy via a
quadratic fit of |w| around its maximum) so the peak sits at x = 0, then
rotated so the peak value is real positive.  Without this the iteration can
drift along the orbit and stall the increment test.

Continuation in v is the supported route for v >= 0.95: warm-start each solve
from the previous profile, amplitude-rescaled by (mu_new/mu_old)^{1/3}.  Cold
Gaussian starts are best-effort there (in practice they converge well past
0.95, but the warm path is the contract).

Defaults L = 200, n = 4096 put the 1/x^2 profile tail near 1e-4 of the peak
at the boundary.  Identity diagnostics (Pohozaev, virial) are limited by that
truncation at O(1/L^2); see decay/identity notes in the README.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dataclass_field, replace

import numpy as np

from .functionals import FunctionalReport, functional_report
from .spectral import Field, Grid, forward, inverse


@dataclass(frozen=True)
class GaussianPacket:
    """Cold-start guess exp(i xi0 x) exp(-x^2/width^2); carrier auto-set from v if None."""

    width: float = 4.0
    carrier: float | None = None


@dataclass(frozen=True)
class FromProfile:
    """Warm-start guess: the stored field is returned unchanged."""

    profile: "WaveProfile | Field"


@dataclass(frozen=True)
class SolveConfig:
    gamma: float = 4.0 / 3.0
    tol_residual: float = 1e-10
    tol_increment: float = 1e-12
    max_iter: int = 2000
    guess: GaussianPacket | FromProfile = dataclass_field(default_factory=GaussianPacket)
    gauge: str = "phase_peak_real"  # or "none"

    def __post_init__(self):
        if not 1.0 < self.gamma < 2.0:
            raise ValueError("stabilizer exponent gamma must lie in (1, 2)")
        if not (self.tol_residual > 0 and self.tol_increment > 0):
            raise ValueError("tolerances must be positive")
        if self.gauge not in ("phase_peak_real", "none"):
            raise ValueError(f"unknown gauge {self.gauge!r}")


@dataclass(frozen=True)
class WaveProfile:
    """A converged (or flagged) traveling-wave candidate with its solve metadata."""

    v: float
    mu: float
    field: Field
    residual_l2: float
    iterations: int
    converged: bool
    report: FunctionalReport


class NonConvergenceError(RuntimeError):
    """Raised when max_iter is reached; carries the best profile seen."""

    def __init__(self, profile: WaveProfile):
        super().__init__(
            f"no convergence at v={profile.v}: residual {profile.residual_l2:.3e} "
            f"after {profile.iterations} iterations"
        )
        self.profile = profile


def default_carrier(v: float) -> float:
    # positive-frequency bias, zero through v = 0.5, growing toward 1.5 as v -> 1
    return 1.5 * max(0.0, 2.0 * v - 1.0)


def initial_guess(grid: Grid, v: float, cfg: SolveConfig) -> Field:
    """Starting iterate per cfg.guess; deterministic."""
    if isinstance(cfg.guess, FromProfile):
        src = cfg.guess.profile
        return src.field if isinstance(src, WaveProfile) else src
    xi0 = cfg.guess.carrier if cfg.guess.carrier is not None else default_carrier(v)
    x = grid.x
    return Field(grid, np.exp(1j * xi0 * x) * np.exp(-((x / cfg.guess.width) ** 2)))


def _halfwave_symbol(grid: Grid, v: float, mu: float) -> np.ndarray:
    return np.abs(grid.xi) - v * grid.xi + mu


def residual_l2(f: Field, v: float, mu: float) -> float:
    """||sqrt(-Lap) Q + i v Q_x + mu Q - |Q|^3 Q||_{L2}, recomputed from scratch."""
    g = f.grid
    lin = inverse(g, _halfwave_symbol(g, v, mu) * forward(g, f.values))
    res = lin - np.abs(f.values) ** 3 * f.values
    return float(np.sqrt(g.dx * np.sum(np.abs(res) ** 2)))


def _gauge_fix(grid: Grid, w: np.ndarray) -> np.ndarray:
    """Translate the |w| peak to x = 0 (sub-grid) and make the peak value real positive."""
    a = np.abs(w)
    j = int(np.argmax(a))
    n = grid.n
    jm, jp = (j - 1) % n, (j + 1) % n
    denom = a[jm] - 2.0 * a[j] + a[jp]
    # quadratic fit of the peak; offset in (-1/2, 1/2) grid units
    offset = 0.0 if denom == 0.0 else 0.5 * (a[jm] - a[jp]) / denom
    x_peak = grid.x[j] + offset * grid.dx
    w = inverse(grid, forward(grid, w) * np.exp(1j * grid.xi * x_peak))
    j0 = int(np.argmax(np.abs(w)))
    peak = w[j0]
    if peak != 0.0:
        w = w * (np.conj(peak) / abs(peak))
    return w


def petviashvili_step(w: Field, v: float, mu: float, cfg: SolveConfig) -> tuple[Field, float]:
    """One stabilized fixed-point step; returns the new iterate and the stabilizer S."""
    g = w.grid
    vals = w.values
    m = _halfwave_symbol(g, v, mu)
    wh = forward(g, vals)
    lw = inverse(g, m * wh)
    nl = np.abs(vals) ** 3 * vals
    num = float(np.real(g.dx * np.sum(np.conj(lw) * vals)))
    den = float(np.real(g.dx * np.sum(np.conj(nl) * vals)))
    if den <= 0.0 or not np.isfinite(den):
        raise ValueError("degenerate iterate: Re<|w|^3 w, w> is not positive")
    stabilizer = num / den
    new = inverse(g, forward(g, nl) / m) * stabilizer**cfg.gamma
    return Field(g, new), stabilizer


def _make_profile(grid: Grid, w: np.ndarray, v: float, mu: float, res: float,
                  iters: int, converged: bool) -> WaveProfile:
    f = Field(grid, w)
    return WaveProfile(v=v, mu=mu, field=f, residual_l2=res, iterations=iters,
                       converged=converged, report=functional_report(f, v, mu))


def solve_profile(v: float, grid: Grid, cfg: SolveConfig | None = None) -> WaveProfile:
    """Iterate to a traveling-wave profile at speed v on the given grid.

    Stops when the stationary-equation residual drops below cfg.tol_residual
    (converged) or the relative increment drops below cfg.tol_increment
    (returned with the converged flag reflecting the residual test).  Raises
    NonConvergenceError at max_iter with the best profile attached.
    """
    if not 0.0 < v < 1.0:
        raise ValueError("v out of range (0, 1)")
    cfg = cfg or SolveConfig()
    mu = 1.0 - v
    m = _halfwave_symbol(grid, v, mu)
    w = initial_guess(grid, v, cfg).values.astype(complex)

    best: tuple[float, np.ndarray, int] | None = None
    for it in range(1, cfg.max_iter + 1):
        wh = forward(grid, w)
        lw = inverse(grid, m * wh)
        nl = np.abs(w) ** 3 * w
        num = float(np.real(grid.dx * np.sum(np.conj(lw) * w)))
        den = float(np.real(grid.dx * np.sum(np.conj(nl) * w)))
        if den <= 0.0 or not np.isfinite(den):
            raise ValueError("degenerate iterate: Re<|w|^3 w, w> is not positive")
        stabilizer = num / den
        w_new = inverse(grid, forward(grid, nl) / m) * stabilizer**cfg.gamma
        if cfg.gauge == "phase_peak_real":
            w_new = _gauge_fix(grid, w_new)

        lin = inverse(grid, m * forward(grid, w_new))
        res = float(np.sqrt(grid.dx * np.sum(np.abs(lin - np.abs(w_new) ** 3 * w_new) ** 2)))
        norm_old = np.sqrt(grid.dx * np.sum(np.abs(w) ** 2))
        inc = np.sqrt(grid.dx * np.sum(np.abs(w_new - w) ** 2)) / norm_old if norm_old > 0 else np.inf
        w = w_new
        if best is None or res < best[0]:
            best = (res, w.copy(), it)
        if res <= cfg.tol_residual:
            return _make_profile(grid, w, v, mu, res, it, True)
        if inc <= cfg.tol_increment:
            return _make_profile(grid, w, v, mu, res, it, res <= cfg.tol_residual)

    res, w_best, it_best = best
    raise NonConvergenceError(_make_profile(grid, w_best, v, mu, res, cfg.max_iter, False))


def warm_start(profile: WaveProfile, v_new: float) -> Field:
    """Amplitude-rescale a profile for continuation to a nearby speed."""
    scale = ((1.0 - v_new) / profile.mu) ** (1.0 / 3.0)
    return Field(profile.field.grid, profile.field.values * scale)


def sweep(v_values, grid: Grid, cfg: SolveConfig | None = None) -> list[WaveProfile]:
    """Solve an ascending list of speeds, warm-starting each from the last success.

    Per-profile failures are collected, not fatal: non-converged profiles are
    returned flagged (converged=False) and the sweep continues from the last
    converged field.  Continuation makes the sweep sequential by contract.
    """
    v_values = list(v_values)
    if any(not 0.0 < v < 1.0 for v in v_values):
        raise ValueError("all sweep speeds must lie in (0, 1)")
    if any(b <= a for a, b in zip(v_values, v_values[1:])):
        raise ValueError("sweep speeds must be strictly ascending")
    cfg = cfg or SolveConfig()
    profiles: list[WaveProfile] = []
    prev: WaveProfile | None = None
    for v in v_values:
        cfg_v = cfg if prev is None else replace(cfg, guess=FromProfile(warm_start(prev, v)))
        try:
            p = solve_profile(v, grid, cfg_v)
        except NonConvergenceError as err:
            p = err.profile
        profiles.append(p)
        if p.converged:
            prev = p
    return profiles


# ---------------------------------------------------------------------------
# profile persistence: CSV with '# key=value' metadata lines, then x, re, im


def _fmt(x: float) -> str:
    return format(x, ".17g")


def profile_to_csv(profile: WaveProfile) -> str:
    buf = io.StringIO()
    buf.write(f"# v={_fmt(profile.v)}\n")
    buf.write(f"# mu={_fmt(profile.mu)}\n")
    buf.write(f"# n={profile.field.grid.n}\n")
    buf.write(f"# L={_fmt(profile.field.grid.length)}\n")
    buf.write(f"# residual={_fmt(profile.residual_l2)}\n")
    buf.write(f"# iterations={profile.iterations}\n")
    buf.write(f"# converged={int(profile.converged)}\n")
    buf.write("# columns: x, Re Q, Im Q (traveling-wave profile samples)\n")
    buf.write("x,re,im\n")
    for xj, qj in zip(profile.field.grid.x, profile.field.values):
        buf.write(f"{_fmt(xj)},{_fmt(qj.real)},{_fmt(qj.imag)}\n")
    return buf.getvalue()


def save_profile(profile: WaveProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(profile_to_csv(profile))


def load_profile(path) -> WaveProfile:
    """Rebuild a WaveProfile from its CSV; lossless round trip at full precision."""
    meta: dict[str, str] = {}
    re_vals: list[float] = []
    im_vals: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            if line.startswith("x,"):
                continue
            _, re_s, im_s = line.split(",")
            re_vals.append(float(re_s))
            im_vals.append(float(im_s))
    grid = Grid(int(meta["n"]), float(meta["L"]))
    values = np.asarray(re_vals) + 1j * np.asarray(im_vals)
    f = Field(grid, values)
    v = float(meta["v"])
    mu = float(meta["mu"])
    return WaveProfile(
        v=v,
        mu=mu,
        field=f,
        residual_l2=float(meta["residual"]),
        iterations=int(meta.get("iterations", 0)),
        converged=bool(int(meta.get("converged", 0))),
        report=functional_report(f, v, mu),
    )
