import itertools
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from beta_integrals.errors import DivergenceError, PoleError
from beta_integrals.hypergeometric import SeriesSpec, f21_neg_axis, gauss_2f1_unit, hyp2f1, pfq

GRID = (0.3, 0.7, 1.5)
XS = (0.1, 1.0, 5.0)


def test_pfq_zero_argument():
    result = pfq(SeriesSpec((0.3, 0.8), (1.7,), 0))
    assert result.value == 1 and result.converged


def test_pfq_terminating_exact():
    result = pfq(SeriesSpec((-2, 1), (1,), 1))
    assert result.terminating and result.value == 0


def test_pfq_unit_argument_telescoping():
    result = pfq(SeriesSpec((1, 1), (3,), 1), tol=1e-14)
    assert result.value.real == pytest.approx(2.0, rel=1e-10)
    assert gauss_2f1_unit(1, 1, 3).real == pytest.approx(2.0, rel=1e-14)


def test_pfq_matches_mpmath_inside_disk():
    spec = SeriesSpec((0.3, 1.2, 0.7), (1.9, 2.4), 0.8)
    ref = complex(mp.hyper([0.3, 1.2, 0.7], [1.9, 2.4], 0.8))
    assert abs(pfq(spec).value - ref) < 1e-14 * abs(ref)


def test_pfq_complex_parameters():
    spec = SeriesSpec((0.5 + 2j, 0.5 - 2j), (1.3,), -0.6)
    ref = complex(mp.hyp2f1(0.5 + 2j, 0.5 - 2j, 1.3, -0.6))
    assert abs(pfq(spec).value - ref) < 1e-12 * abs(ref)


def test_pfq_four_f_three_unit_argument():
    num, den = (0.3, 0.5, 0.4, 0.6), (1.1, 1.2, 1.3)
    ref = float(mp.hyper(num, den, 1))
    assert pfq(SeriesSpec(num, den, 1), tol=1e-14).value.real == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize(
    "spec",
    [
        SeriesSpec((1, 1), (2,), 1.5),
        SeriesSpec((1, 2), (2,), 1),
        SeriesSpec((1, 1, 1), (1,), 0.5),
    ],
)
def test_pfq_divergent_raises(spec):
    with pytest.raises(DivergenceError):
        pfq(spec)


def test_pfq_denominator_pole_raises():
    with pytest.raises(PoleError):
        pfq(SeriesSpec((0.5, 1), (-2,), 0.3))


def test_pfq_terminating_before_denominator_pole():
    value = pfq(SeriesSpec((-1, 1), (-3,), 0.5)).value
    assert value == pytest.approx(1 + 0.5 / 3)


@pytest.mark.parametrize("a, b, c, expected", [(1, 1, 3, 2.0), (0, 0.4, 1.7, 1.0), (0.5, 0.5, 2, 4 / math.pi)])
def test_gauss_sum_values(a, b, c, expected):
    assert gauss_2f1_unit(a, b, c).real == pytest.approx(expected, rel=1e-14)


def test_gauss_sum_precondition():
    with pytest.raises(DivergenceError):
        gauss_2f1_unit(1, 1, 2)


@given(st.floats(0.1, 2), st.floats(0.1, 2), st.floats(0.6, 3))
def test_gauss_sum_agrees_with_series(a, b, excess):
    c = a + b + excess
    series = pfq(SeriesSpec((a, b), (c,), 1), tol=1e-14).value.real
    assert series == pytest.approx(gauss_2f1_unit(a, b, c).real, rel=1e-8)


@pytest.mark.parametrize("x, expected", [(0.0, 1.0), (1.0, math.log(2)), (3.0, math.log(4) / 3)])
def test_f21_neg_axis_logarithm(x, expected):
    assert complex(f21_neg_axis(1, 1, 2, x)).real == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("a, b, c, x", list(itertools.product(GRID, GRID, GRID, XS)))
def test_f21_neg_axis_transformations(a, b, c, x):
    direct = complex(f21_neg_axis(a, b, c, x))
    euler = (1 + x) ** (c - a - b) * complex(f21_neg_axis(c - a, c - b, c, x))
    pfaff_b = (1 + x) ** (-b) * complex(mp.hyp2f1(b, c - a, c, x / (1 + x)))
    ref = complex(mp.hyp2f1(a, b, c, -x))
    for value in (direct, euler, pfaff_b):
        assert abs(value - ref) <= 1e-10 * abs(ref)


def test_f21_neg_axis_pole_in_c():
    with pytest.raises(PoleError):
        f21_neg_axis(0.5, 0.5, -1, 1.0)


def test_f21_neg_axis_rejects_negative_x():
    with pytest.raises(ValueError):
        f21_neg_axis(0.5, 0.5, 1.5, -1.0)


@pytest.mark.parametrize("a, b, c", [(0.8, 0.85, 1.3), (0.8, 1.8, 1.3), (0.8, 0.8000001, 1.7), (0.7, 2.7, 1.1)])
@pytest.mark.parametrize("log_x", [1, 5, 30, 100, 250])
def test_f21_neg_axis_large_x_near_degenerate(a, b, c, log_x):
    x = math.exp(log_x)
    ref = complex(mp.hyp2f1(a, b, c, -mp.e ** log_x))
    assert abs(complex(f21_neg_axis(a, b, c, x)) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("s", [1.0, 5.0, 12.0, 25.0])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 50.0])
def test_f21_neg_axis_spectral_kernel(s, x):
    a, b = 0.8, 1.1
    ref = complex(mp.hyp2f1(a + 1j * s, a - 1j * s, a + b, -x))
    value = complex(f21_neg_axis(a + 1j * s, a - 1j * s, a + b, x))
    assert abs(value - ref) <= 1e-11 * abs(ref)


@pytest.mark.parametrize("s", [0.5, 2.0, 7.0])
def test_kernel_decay_bounded(s):
    a, b = 0.6, 0.9
    x = np.geomspace(10, 1e4, 400)
    scaled = np.abs(f21_neg_axis(a + 1j * s, a - 1j * s, a + b, x)) * x ** a
    # x^a F oscillates in ln x with a fixed amplitude
    assert np.all(np.isfinite(scaled))
    assert scaled[x > 1e3].max() <= 1.5 * scaled[x < 1e2].max()


def test_f21_neg_axis_broadcasts():
    out = f21_neg_axis(0.5, 0.7, 1.2, np.array([0.0, 1.0, 10.0]))
    assert out.shape == (3,)
    assert out[0] == 1


@pytest.mark.parametrize("z", [-3.0, -0.4, 0.0, 0.3, 0.5, 0.75, 0.99])
def test_hyp2f1_real_axis(z):
    ref = complex(mp.hyp2f1(0.4, 0.9, 1.7, z))
    assert abs(complex(hyp2f1(0.4, 0.9, 1.7, z)) - ref) <= 1e-13 * abs(ref)


def test_hyp2f1_unit_and_beyond():
    assert complex(hyp2f1(0.4, 0.5, 1.7, 1.0)).real == pytest.approx(gauss_2f1_unit(0.4, 0.5, 1.7).real)
    with pytest.raises(DivergenceError):
        hyp2f1(0.4, 0.5, 1.7, 1.2)
