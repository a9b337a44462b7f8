"""Periodic grid, discrete Fourier transforms, and Fourier-multiplier operators.

Conventions used throughout the package:

    forward   u_hat_k = dx * sum_j u_j exp(-i xi_k x_j)
    inverse   u_j     = (1/L) * sum_k u_hat_k exp(+i xi_k x_j)

with x_j = -L/2 + j dx and xi_k = 2 pi k / L for integer k in [-n/2, n/2).
The forward transform approximates the continuum integral, so multiplier
symbols are stated in the plain (non-2pi) frequency variable.  Discrete
Plancherel holds exactly: dx * sum |u_j|^2 = (1/L) * sum |u_hat_k|^2.

Odd symbols (Derivative, Hilbert) are zeroed on the unpaired Nyquist mode
k = -n/2 so that real fields stay real; |xi| keeps its literal value there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with n points on [-L/2, L/2)."""

    n: int
    length: float

    def __post_init__(self):
        if self.n % 2 != 0:
            raise ValueError("odd point count")
        if self.n < 16:
            raise ValueError("point count must be >= 16")
        if not self.length > 0:
            raise ValueError("domain length must be positive")
        dx = self.length / self.n
        x = -0.5 * self.length + dx * np.arange(self.n)
        xi = 2.0 * np.pi * np.fft.fftfreq(self.n, d=dx)
        for arr in (x, xi):
            arr.flags.writeable = False
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xi", xi)

    @property
    def nyquist_index(self) -> int:
        # fft ordering puts the single k = -n/2 mode at index n/2
        return self.n // 2


def make_grid(n: int, length: float) -> Grid:
    """Build a periodic Grid; rejects odd n, n < 16, and nonpositive length."""
    return Grid(int(n), float(length))


@dataclass(frozen=True)
class Field:
    """Complex samples of u on a Grid, values[j] ~ u(-L/2 + j dx)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.n,):
            raise ValueError("value count does not match grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class Spectrum:
    """Discrete Fourier coefficients of a Field, fft-ordered to match grid.xi."""

    grid: Grid
    coeffs: np.ndarray


# array-level transforms; Field/Spectrum wrappers below
def forward(grid: Grid, values: np.ndarray) -> np.ndarray:
    return grid.dx * np.fft.fft(values) * np.exp(-1j * grid.xi * grid.x[0])


def inverse(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    return np.fft.ifft(coeffs * np.exp(1j * grid.xi * grid.x[0])) / grid.dx


def to_spectrum(f: Field) -> Spectrum:
    return Spectrum(f.grid, forward(f.grid, f.values))


def to_field(s: Spectrum) -> Field:
    return Field(s.grid, inverse(s.grid, s.coeffs))


# ---------------------------------------------------------------------------
# multiplier symbols


@dataclass(frozen=True)
class SqrtLaplacian:
    """|xi|, the half-wave kinetic symbol."""


@dataclass(frozen=True)
class Derivative:
    """i xi, the action of d/dx (zeroed at Nyquist)."""


@dataclass(frozen=True)
class Hilbert:
    """-i pi sign(xi): Hilbert transform normalized so [x, sqrt(-Lap)] = -H/pi."""


@dataclass(frozen=True)
class HalfWave:
    """|xi| - v xi + mu, the traveling-wave linear symbol; positive for v in (0,1), mu > 0."""

    v: float
    mu: float

    def __post_init__(self):
        if not 0.0 < self.v <= 1.0:
            raise ValueError("speed v must lie in (0, 1]")
        if not self.mu > 0.0:
            raise ValueError("frequency mu must be positive")


@dataclass(frozen=True)
class FreeFlow:
    """exp(-i |xi| t), the free propagator over time t."""

    t: float


@dataclass(frozen=True)
class Translate:
    """exp(-i xi a): shifts a field right by a, exactly for band-limited fields."""

    a: float


def symbol_values(grid: Grid, sym) -> np.ndarray:
    """Evaluate a symbol on the grid's frequency lattice (fft ordering)."""
    xi = grid.xi
    nyq = grid.nyquist_index
    if isinstance(sym, SqrtLaplacian):
        return np.abs(xi)
    if isinstance(sym, Derivative):
        m = 1j * xi.astype(complex)
        m[nyq] = 0.0
        return m
    if isinstance(sym, Hilbert):
        sgn = np.sign(xi)
        sgn[nyq] = 0.0
        return -1j * np.pi * sgn
    if isinstance(sym, HalfWave):
        return np.abs(xi) - sym.v * xi + sym.mu
    if isinstance(sym, FreeFlow):
        return np.exp(-1j * np.abs(xi) * sym.t)
    if isinstance(sym, Translate):
        return np.exp(-1j * xi * sym.a)
    raise TypeError(f"unknown symbol {sym!r}")


def apply_symbol(f: Field, sym) -> Field:
    """Multiply the spectrum of f by the symbol and transform back."""
    return Field(f.grid, inverse(f.grid, symbol_values(f.grid, sym) * forward(f.grid, f.values)))


def sqrt_laplacian(f: Field) -> Field:
    return apply_symbol(f, SqrtLaplacian())


def derivative(f: Field) -> Field:
    return apply_symbol(f, Derivative())


def hilbert(f: Field) -> Field:
    return apply_symbol(f, Hilbert())


def translate(f: Field, a: float) -> Field:
    return apply_symbol(f, Translate(a))


def free_flow(f: Field, t: float) -> Field:
    return apply_symbol(f, FreeFlow(t))


# ---------------------------------------------------------------------------
# resolvent of sqrt(-Lap) + i v d/dx + mu


def resolvent_bound_alpha(v: float) -> float:
    """Sharp bound sup_xi (1+|xi|)/(|xi| - v xi + 1 - v) = 1/(1-v).

    The supremum is attained at xi = 0 and on the whole positive half-line,
    where (1+xi)/((1-v)(1+xi)) is constant; the discrete lattice maximum
    therefore equals 1/(1-v) on any grid containing xi = 0.
    """
    if not 0.0 < v < 1.0:
        raise ValueError("speed v must lie in (0, 1)")
    return 1.0 / (1.0 - v)


def resolvent_values(grid: Grid, coeffs: np.ndarray, v: float, mu: float) -> np.ndarray:
    if not 0.0 < v < 1.0:
        raise ValueError("speed v must lie in (0, 1)")
    if not mu > 0.0:
        raise ValueError("frequency mu must be positive (symbol may vanish)")
    return coeffs / (np.abs(grid.xi) - v * grid.xi + mu)


def resolvent(f: Field, v: float, mu: float | None = None) -> Field:
    """Invert sqrt(-Lap) + i v d/dx + mu by division by its symbol (mu defaults to 1-v)."""
    if mu is None:
        mu = 1.0 - v
    return Field(f.grid, inverse(f.grid, resolvent_values(f.grid, forward(f.grid, f.values), v, mu)))


def l2_norm(f: Field) -> float:
    return float(np.sqrt(f.grid.dx * np.sum(np.abs(f.values) ** 2)))


def inner(f: Field, g: Field) -> complex:
    """dx-weighted inner product <f, g> = dx sum conj(f) g."""
    if f.grid is not g.grid and (f.grid.n != g.grid.n or f.grid.length != g.grid.length):
        raise ValueError("grid mismatch")
    return complex(f.grid.dx * np.sum(np.conj(f.values) * g.values))
