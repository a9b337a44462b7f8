import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import exp1

from halfwave.greenfn import (
    decay_bound_check,
    green_eval,
    green_hat,
    green_i1,
    harmonicity_residual,
    poisson_kernel,
)


def test_green_hat_values():
    assert green_hat(0.0, 3.0) == pytest.approx(1.0, rel=1e-15)
    assert green_hat(-2.0, 1.0) == pytest.approx(np.exp(-2.0), rel=1e-14)
    assert green_hat(2.0, 0.0) == pytest.approx(0.2, rel=1e-15)
    with pytest.raises(ValueError):
        green_hat(1.0, -0.5)


def test_green_hat_boundary_condition_identity():
    # frequency-space form of the boundary condition: (1 + |xi| + xi) G_hat(xi, 0) = 1
    for xi in np.linspace(-20.0, 20.0, 81):
        assert (1.0 + abs(xi) + xi) * green_hat(xi, 0.0) == pytest.approx(1.0, rel=1e-14)


def test_poisson_kernel_values_and_normalization():
    assert poisson_kernel(0.0, 1.0) == pytest.approx(1.0 / np.pi, rel=1e-14)
    y = 0.7
    assert poisson_kernel(y, y) == pytest.approx(1.0 / (2.0 * np.pi * y), rel=1e-14)
    total, _ = quad(lambda x: poisson_kernel(x, 1.0), -np.inf, np.inf)
    assert total == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        poisson_kernel(0.0, 0.0)


def test_i1_closed_form():
    for y in (0.5, 1.0, 5.0):
        assert green_i1(0.0, y) == 1.0 / y
    # generic point agrees with direct quadrature of the negative-frequency piece
    val = green_i1(1.3, 0.8)
    re, _ = quad(lambda t: np.exp(-0.8 * t) * np.cos(2 * np.pi * 1.3 * t), 0, 60, limit=400)
    im, _ = quad(lambda t: np.exp(-0.8 * t) * np.sin(2 * np.pi * 1.3 * t), 0, 60, limit=400)
    assert val == pytest.approx(complex(re, im), rel=1e-9)


def test_methods_agree_at_sample_points():
    for x, y in [(0.3, 0.5), (1.0, 1.0), (-7.0, 1.0), (40.0, 5.0)]:
        vals = [green_eval(x, y, m) for m in ("quadrature", "series", "closed")]
        scale = abs(vals[2])
        assert max(abs(a - b) for a in vals for b in vals) / scale < 1e-6


def test_value_against_independent_special_function():
    # G(0, y) = 1/y + e^{y/2} E1(y/2) / 2 in closed form
    for y in (0.5, 1.0, 2.0):
        expected = 1.0 / y + np.exp(y / 2.0) * exp1(y / 2.0) / 2.0
        val = green_eval(0.0, y, "closed")
        assert val.imag == pytest.approx(0.0, abs=1e-10)
        assert val.real == pytest.approx(expected, rel=1e-9)


def test_conjugation_symmetry():
    a = green_eval(1.7, 0.9, "closed")
    b = green_eval(-1.7, 0.9, "closed")
    assert b == pytest.approx(np.conj(a), rel=1e-10)


def test_green_eval_rejects_boundary_and_bad_method():
    with pytest.raises(ValueError, match="y > 0"):
        green_eval(1.0, 0.0)
    with pytest.raises(ValueError, match="unknown method"):
        green_eval(1.0, 1.0, "magic")


def test_decay_bound_single_point_and_empty():
    val = decay_bound_check([(0.0, 1.0)])
    expected = abs(green_eval(0.0, 1.0, "closed")) * 1.0 / 2.0
    assert val == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError, match="no evaluation points"):
        decay_bound_check([])


def test_decay_bound_stable_across_decades():
    maxima = []
    for lo, hi in ((1.0, 10.0), (10.0, 100.0)):
        pts = [(x, 1.0) for x in np.logspace(np.log10(lo), np.log10(hi), 8)]
        maxima.append(decay_bound_check(pts))
    assert max(maxima) / min(maxima) < 2.0


def test_harmonicity_residual_second_order():
    r1 = harmonicity_residual(1.0, 2.0, 0.4)
    r2 = harmonicity_residual(1.0, 2.0, 0.2)
    assert 3.0 < r1 / r2 < 5.0


def test_harmonicity_residual_symmetric_in_x():
    a = harmonicity_residual(1.0, 2.0, 0.2)
    b = harmonicity_residual(-1.0, 2.0, 0.2)
    assert a == pytest.approx(b, rel=1e-6)


def test_harmonicity_stencil_preconditions():
    with pytest.raises(ValueError, match="half-plane"):
        harmonicity_residual(1.0, 0.3, 0.4)
    with pytest.raises(ValueError, match="positive"):
        harmonicity_residual(1.0, 1.0, -0.1)
