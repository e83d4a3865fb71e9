import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from beta_integrals.errors import NonConvergenceError
from beta_integrals.gamma_core import gamma_product
from beta_integrals.identity_catalog import askey_weight, dougall_term
from beta_integrals.quadrature import (
    IntegrandHandle,
    adaptive_gauss_legendre,
    bilateral_sum,
    integrate_fullline,
    integrate_halfline,
    integrate_pv_lattice,
)


def beta_integrand(p, q):
    """``x^{p-1}(1+x)^{-p-q}``, integral ``B(p, q)``, decay exponent ``1+q``."""
    return IntegrandHandle(lambda x: x ** (p - 1) * (1 + x) ** (-p - q), decay_exponent=1 + q)


def test_halfline_exponential():
    assert integrate_halfline(IntegrandHandle(lambda x: np.exp(-x))).value == pytest.approx(1.0, rel=1e-12)


def test_halfline_rejects_slow_decay():
    with pytest.raises(NonConvergenceError):
        integrate_halfline(IntegrandHandle(lambda x: x / (1 + x) ** 2, decay_exponent=1.0))


def test_halfline_beta_one_one():
    h = IntegrandHandle(lambda x: (1 + x) ** -2.0, decay_exponent=2.0)
    assert integrate_halfline(h).value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("p, q", [(0.05, 1.05), (0.5, 0.12), (2.5, 3.0), (1.0, 0.3)])
def test_halfline_beta_family(p, q):
    result = integrate_halfline(beta_integrand(p, q), tol=1e-12)
    assert result.value == pytest.approx(special.beta(p, q), rel=1e-11)
    assert result.abs_error_estimate >= 0


def test_halfline_logarithmic_tail():
    # ∫ ln(1+x)/(1+x)^{1.3} dx = 1/0.09
    h = IntegrandHandle(lambda x: np.log1p(x) * (1 + x) ** -1.3, decay_exponent=1.3)
    assert integrate_halfline(h, tol=1e-10).value == pytest.approx(1 / 0.09, rel=1e-9)


def test_halfline_error_estimate_is_honest():
    """The error estimate bounds the true error in at least 95% of beta-family cases."""
    rng = np.random.default_rng(7)
    hits = 0
    trials = 60
    for _ in range(trials):
        p, q = rng.uniform(0.1, 3.0, 2)
        result = integrate_halfline(beta_integrand(p, q), tol=1e-9)
        if abs(result.value - special.beta(p, q)) <= result.abs_error_estimate:
            hits += 1
    assert hits >= 0.95 * trials


def test_halfline_reports_bad_abscissa():
    h = IntegrandHandle(lambda x: np.where(x > 2, np.nan, np.exp(-x)))
    with pytest.raises(NonConvergenceError, match="abscissa"):
        integrate_halfline(h)


@given(st.floats(0.2, 2.0), st.floats(0.1, 2.0))
@settings(max_examples=15)
def test_fullline_even_doubles_halfline(a, c):
    f = IntegrandHandle(lambda s: np.exp(-a * s * s) / (1 + c * s * s), even=True)
    full = integrate_fullline(f, tol=1e-12).value
    half = integrate_halfline(f, tol=1e-12).value
    assert full == pytest.approx(2 * half, rel=1e-10)


def test_fullline_asymmetric():
    f = IntegrandHandle(lambda s: np.exp(-(s - 1) ** 2))
    assert integrate_fullline(f, tol=1e-12).value == pytest.approx(math.sqrt(math.pi), rel=1e-11)


def test_even_flag_is_checked():
    with pytest.raises(ValueError):
        IntegrandHandle(lambda s: s ** 3, even=True)


def test_adaptive_gauss_legendre_smooth():
    value, err, panels, ok = adaptive_gauss_legendre(np.cos, 0.0, math.pi / 2, tol_rel=1e-14)
    assert ok and value == pytest.approx(1.0, rel=1e-14)


def test_pv_rational_integrand_with_lattice_poles():
    with np.errstate(divide="ignore"):
        f = IntegrandHandle(
            lambda s: 1.0 / ((s * s - 0.25) * (1 + s * s) ** 2),
            even=True,
            decay_exponent=6.0,
            pole_lattice=(0.5, 0.0),
        )
        value = integrate_pv_lattice(f, 0.3, tol=1e-10).value
    assert value == pytest.approx(_pv_reference(), rel=1e-9)


def _pv_reference():
    """Exact PV of ``1/((s²-1/4)(1+s²)²)`` over ℝ.

    In ``t = s²``, ``1/((t-1/4)(1+t)²) = k/(t-1/4) - k/(1+t) - (4/5)/(1+t)²``
    with ``k = 16/25``. The first term has PV zero over ℝ.
    """
    k = 16 / 25
    return -k * math.pi - (4 / 5) * (math.pi / 2)


def test_pv_askey_convergent_case_matches_closed_form():
    a = (1.2, 1.0, 0.9, 1.1)
    f = IntegrandHandle(lambda s: askey_weight(a, s), even=True, decay_exponent=2 * sum(a) - 5, pole_lattice=(0.5, 0.0))
    rhs = gamma_product((sum(a) - 3,), tuple(x + y - 1 for i, x in enumerate(a) for y in a[i + 1:]))
    for alpha in (0.2, 0.37, 0.5 - 1e-3):
        assert integrate_pv_lattice(f, alpha, tol=1e-8).value == pytest.approx(rhs, rel=1e-7)


def test_pv_refuses_divergent_decay():
    a = (0.7, 0.7, 0.7, 0.7)
    f = IntegrandHandle(lambda s: askey_weight(a, s), even=True, decay_exponent=2 * sum(a) - 5, pole_lattice=(0.5, 0.0))
    with pytest.raises(NonConvergenceError):
        integrate_pv_lattice(f, 0.25)


def test_pv_needs_lattice_and_alpha():
    f = IntegrandHandle(lambda s: np.exp(-s * s), even=True, decay_exponent=math.inf)
    with pytest.raises(ValueError):
        integrate_pv_lattice(f, 0.3)
    g = IntegrandHandle(lambda s: np.exp(-s * s), even=True, pole_lattice=(1.0, 0.5))
    with pytest.raises(ValueError):
        integrate_pv_lattice(g, 1.5)


def test_pv_without_poles_in_support_is_plain_integral():
    g = IntegrandHandle(lambda s: np.exp(-s * s), even=True, pole_lattice=(1.0, 0.5))
    assert integrate_pv_lattice(g, 0.3, tol=1e-12).value == pytest.approx(math.sqrt(math.pi), rel=1e-11)


def test_bilateral_single_term():
    assert bilateral_sum(lambda n: (np.asarray(n) == 0).astype(float)).value == 1.0


def test_bilateral_odd_summand():
    result = bilateral_sum(lambda n: n * np.exp(-(n.astype(float) ** 2)), tol_abs=1e-15)
    assert abs(result.value) < 1e-15


def test_bilateral_algebraic_decay():
    # Σ 1/(n² + 1) = π coth π
    result = bilateral_sum(lambda n: 1.0 / (n.astype(float) ** 2 + 1), tol=1e-6)
    assert result.value == pytest.approx(math.pi / math.tanh(math.pi), rel=1e-6)


def test_bilateral_refuses_harmonic_decay():
    with pytest.raises(NonConvergenceError):
        bilateral_sum(lambda n: 1.0 / (np.abs(n.astype(float)) + 1))


def test_bilateral_dougall_value():
    a = (2.0, 2.0, 2.0, 2.0)
    result = bilateral_sum(lambda n: dougall_term(a, 0.25, n), tol=1e-13)
    assert result.value == pytest.approx(3 / (16 * math.pi), rel=1e-10)


def test_bilateral_shift_invariance():
    a = (1.7, 2.2, 1.9, 2.4)
    alpha = 0.31
    base = bilateral_sum(lambda n: dougall_term(a, alpha, n), tol=1e-12).value
    shifted = bilateral_sum(lambda n: dougall_term(a, alpha - 1, n + 1), tol=1e-12).value
    assert shifted == pytest.approx(base, rel=1e-11)


def test_quadrature_is_deterministic():
    h = beta_integrand(0.7, 0.9)
    assert integrate_halfline(h).value == integrate_halfline(h).value
