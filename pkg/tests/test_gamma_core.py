import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from beta_integrals.errors import GammaOverflowError, PoleError
from beta_integrals.gamma_core import (
    GammaRatioSpec,
    abs_sq_gamma,
    gamma_ratio,
    gamma_weight,
    inv_abs_sq_gamma_2is,
    log_gamma,
    pochhammer,
    rgamma,
    rgamma_pair,
    sin_pi,
)

re_part = st.floats(0.1, 50)
im_part = st.floats(-50, 50)


@pytest.mark.parametrize("z, expected", [(1, 0.0), (0.5, math.log(math.sqrt(math.pi))), (5, math.log(24))])
def test_log_gamma_values(z, expected):
    assert complex(log_gamma(z)).real == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 0j])
def test_log_gamma_poles_raise(z):
    with pytest.raises(PoleError) as info:
        log_gamma(z)
    assert info.value.argument == complex(z)


def test_log_gamma_principal_branch_matches_mpmath():
    rng = np.random.default_rng(1)
    z = rng.uniform(0.1, 50, 200) + 1j * rng.uniform(-50, 50, 200)
    ours = log_gamma(z)
    ref = np.array([complex(mp.loggamma(mp.mpc(x.real, x.imag))) for x in z])
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-13


@given(re_part, im_part)
def test_log_gamma_recurrence(x, y):
    z = complex(x, y)
    ratio = np.exp(log_gamma(z + 1) - log_gamma(z))
    assert abs(ratio - z) <= 1e-12 * abs(z)


@pytest.mark.parametrize("a, k, expected", [(0.3, 0, 1.0), (1, 6, 720.0), (2, 3, 24.0), (-2, 5, 0.0)])
def test_pochhammer_values(a, k, expected):
    assert pochhammer(a, k) == pytest.approx(expected)


@given(st.floats(-5, 5), st.integers(0, 40), st.integers(0, 40))
def test_pochhammer_splits(a, j, k):
    lhs = pochhammer(a, j + k)
    rhs = pochhammer(a, j) * pochhammer(a + j, k)
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1e-300)


def test_pochhammer_large_order_uses_gamma_ratio():
    assert pochhammer(0.5, 100) == pytest.approx(float(mp.rf(0.5, 100)), rel=1e-12)


@pytest.mark.parametrize(
    "num, den, expected",
    [((1, 1), (1,), 1.0), ((3,), (2, 2), 2.0), ((0.5, 0.5), (1,), math.pi)],
)
def test_gamma_ratio_values(num, den, expected):
    assert gamma_ratio(GammaRatioSpec(num, den)).real == pytest.approx(expected, rel=1e-14)


def test_gamma_ratio_cancels_matching_poles():
    assert gamma_ratio(GammaRatioSpec((-2, 3), (-2,))).real == pytest.approx(2.0)


def test_gamma_ratio_uncancelled_pole_raises():
    with pytest.raises(PoleError):
        gamma_ratio(GammaRatioSpec((-2,), (1,)))


def test_gamma_ratio_denominator_pole_gives_zero():
    assert gamma_ratio(GammaRatioSpec((1.5,), (-1,))) == 0


def test_gamma_ratio_overflow_flagged():
    with pytest.raises(GammaOverflowError):
        gamma_ratio(GammaRatioSpec((500, 500), ()))


def test_gamma_ratio_survives_huge_intermediate_values():
    value = gamma_ratio(GammaRatioSpec((300.5,), (300.0,))).real
    assert value == pytest.approx(float(mp.gamma(300.5) / mp.gamma(300)), rel=1e-12)


@pytest.mark.parametrize(
    "a, s, expected",
    [(1.0, 0.0, 1.0), (0.5, 0.0, math.pi), (1.0, 1.0, math.pi / math.sinh(math.pi))],
)
def test_abs_sq_gamma_values(a, s, expected):
    assert abs_sq_gamma(a, s) == pytest.approx(expected, rel=1e-14)


@given(st.floats(0.05, 10), st.floats(0, 60))
def test_abs_sq_gamma_even(a, s):
    assert abs_sq_gamma(a, s) == abs_sq_gamma(a, -s)


def test_abs_sq_gamma_pole():
    with pytest.raises(PoleError):
        abs_sq_gamma(-1.0, 0.0)


@pytest.mark.parametrize(
    "s, expected",
    [(0.0, 0.0), (1.0, 2 * math.sinh(2 * math.pi) / math.pi), (0.5, math.sinh(math.pi) / math.pi)],
)
def test_inv_abs_sq_gamma_2is_values(s, expected):
    assert inv_abs_sq_gamma_2is(s) == pytest.approx(expected, rel=1e-14, abs=1e-300)


def test_inv_abs_sq_gamma_2is_small_s():
    s = 1e-6
    assert inv_abs_sq_gamma_2is(s) == pytest.approx(4 * s * s, rel=1e-10)


@given(st.floats(0.1, 20))
def test_inv_abs_sq_gamma_2is_against_log_gamma(s):
    via_log = abs(np.exp(log_gamma(2j * s))) ** 2
    assert inv_abs_sq_gamma_2is(s) * via_log == pytest.approx(1.0, rel=1e-10)


def test_gamma_weight_far_tail_stays_finite():
    # the individual factors under- and overflow near s = 300; the product does not
    s = np.array([300.0])
    w = gamma_weight((0.5, 0.5, 0.5, 0.5), s)
    ref = mp.fabs(mp.gamma(0.5 + 300j)) ** 8 / mp.fabs(mp.gamma(600j)) ** 2
    assert float(w[0]) == pytest.approx(float(ref), rel=1e-10)


def test_rgamma_zero_at_poles():
    assert rgamma(-3) == 0
    assert complex(rgamma(2.5)).real == pytest.approx(1 / math.gamma(2.5))


@given(st.floats(0.2, 3), st.floats(0, 60))
def test_rgamma_pair_matches_mpmath(a, t):
    ref = float(mp.rgamma(a + t) * mp.rgamma(a - t))
    assert rgamma_pair(a, t) == pytest.approx(ref, rel=1e-10, abs=1e-280)


def test_sin_pi_exact_zeros():
    assert sin_pi(np.array([0.0, 1.0, -3.0, 2.5]))[:3].tolist() == [0.0, 0.0, 0.0]


def test_rgamma_pair_next_to_reflection_zero():
    t = 11.999999999999993
    ref = float(mp.rgamma(1 + mp.mpf(t)) * mp.rgamma(1 - mp.mpf(t)))
    assert rgamma_pair(1.0, t) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("x", [3.0 - 1e-12, -7.0 + 3e-13, 0.5, 1e-9])
def test_sin_pi_relative_accuracy(x):
    assert float(sin_pi(x)) == pytest.approx(float(mp.sinpi(mp.mpf(x))), rel=1e-12)
