import math

import mpmath as mp
import numpy as np
import pytest

from beta_integrals.errors import CoincidentPoleError, ContourCollisionError, DomainError, NonConvergenceError
from beta_integrals.gamma_core import gamma_product
from beta_integrals.mellin_barnes import (
    ContourChoice,
    MBSpec,
    eval_mb,
    find_contour,
    mb_residue_expand,
    sum_expansion,
)


def f21_spec(a, b, c, x):
    """MB representation of ``₂F₁(a, b; c; -x)`` up to ``Γ(c)/(Γ(a)Γ(b))``."""
    return MBSpec((a, b), (0,), (), (c,), z=1 / x)


def f21_via_mb(a, b, c, x, **kw):
    return gamma_product((c,), (a, b)) * eval_mb(f21_spec(a, b, c, x), **kw).real


def test_find_contour_symmetric_gap():
    assert find_contour(MBSpec((1,), (1,))) == ContourChoice(0.0, 1.0)


def test_find_contour_narrow_gap():
    choice = find_contour(MBSpec((0.2,), (0.1,)))
    assert choice.sigma == pytest.approx(-0.05)
    assert choice.margin == pytest.approx(0.15)


def test_find_contour_collision():
    with pytest.raises(ContourCollisionError):
        find_contour(MBSpec((-0.5,), (0.3,)))


def test_logarithm_representation():
    assert f21_via_mb(1, 1, 2, 1.0, tol=1e-12) == pytest.approx(math.log(2), rel=1e-10)


@pytest.mark.parametrize("x", [0.2, 1.0, 3.0, 40.0])
def test_f21_representation_matches_mpmath(x):
    a, b, c = 0.6, 1.3, 1.9
    ref = float(mp.hyp2f1(a, b, c, -x))
    assert f21_via_mb(a, b, c, x, tol=1e-12) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("x", [0.3, 0.5, 0.8])
def test_balanced_representation_below_one(x):
    # Γ(c)·MB[Γ(s)Γ(c-a-b+s) / (Γ(c-a+s)Γ(c-b+s))] = (1-x)^{c-1} ₂F₁(a, b; c; 1-x) for x < 1
    a, b, c = 0.7, 0.9, 2.1
    value = gamma_product((c,)) * eval_mb(MBSpec((0, c - a - b), (), (), (c - a, c - b), x), tol=1e-12).real
    ref = float((1 - x) ** (c - 1) * mp.hyp2f1(a, b, c, 1 - x))
    assert value == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("x", [1.5, 2.0, 4.0])
def test_balanced_representation_vanishes_above_one(x):
    a, b, c = 0.7, 0.9, 2.1
    value = eval_mb(MBSpec((0, c - a - b), (), (), (c - a, c - b), x), tol=1e-12).real
    assert abs(value) < 1e-12


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_gauss_type_representation(x):
    # Γ(c)/(Γ(a)Γ(b)Γ(c-a)Γ(c-b)) · MB[Γ(a+s)Γ(b+s)Γ(c-a-b-s)Γ(-s) x^s] = ₂F₁(a, b; c; 1-x)
    a, b, c = 0.6, 0.8, 2.3
    spec = MBSpec((a, b), (0, c - a - b), (), (), z=1 / x)
    value = gamma_product((c,), (a, b, c - a, c - b)) * eval_mb(spec, tol=1e-12).real
    assert value == pytest.approx(float(mp.hyp2f1(a, b, c, 1 - x)), rel=1e-9)


def test_gauss_type_representation_at_one_is_unity():
    a, b, c = 0.6, 0.8, 2.3
    spec = MBSpec((a, b), (0, c - a - b), (), (), z=1.0)
    value = gamma_product((c,), (a, b, c - a, c - b)) * eval_mb(spec, tol=1e-12).real
    assert value == pytest.approx(1.0, rel=1e-10)


def test_contour_invariance_across_gap():
    spec = f21_spec(0.9, 1.4, 2.2, 2.5)
    values = [eval_mb(spec, tol=1e-12, sigma=s).real for s in (-0.8, -0.45, -0.1)]
    assert max(values) - min(values) <= 1e-9 * abs(values[0])


def test_sigma_outside_gap_rejected():
    with pytest.raises(DomainError):
        eval_mb(f21_spec(0.9, 1.4, 2.2, 2.5), sigma=0.3)


def test_residue_expansion_matches_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a, b = rng.uniform(0.2, 2.0, 2)
        if abs((a - b) - round(a - b)) < 1e-3:
            continue
        c = rng.uniform(0.5, 3.0)
        x = rng.uniform(0.05, 0.9)
        spec = f21_spec(a, b, c, x)
        direct = eval_mb(spec, tol=1e-12)
        right = sum_expansion(mb_residue_expand(spec, "right"), spec.z, tol=1e-15)
        left = sum_expansion(mb_residue_expand(spec, "left"), spec.z, tol=1e-15)
        for value in (right, left):
            assert abs(value - direct) <= 1e-8 * abs(direct)


def test_residue_expansion_term_count():
    spec = f21_spec(0.3, 0.8, 1.5, 0.5)
    assert len(mb_residue_expand(spec, "left")) == 2
    assert len(mb_residue_expand(spec, "right")) == 1


def test_coincident_poles_refused():
    with pytest.raises(CoincidentPoleError):
        mb_residue_expand(f21_spec(0.5, 1.5, 2.0, 0.5), "left")


def test_bad_side_refused():
    with pytest.raises(ValueError):
        mb_residue_expand(f21_spec(0.3, 0.8, 1.5, 0.5), "up")


@pytest.mark.parametrize("z", [1j, -1.0, 0.0, 1 + 1j])
def test_non_positive_argument_refused(z):
    with pytest.raises(DomainError):
        MBSpec((1,), (1,), z=z)


def test_too_many_denominators_refused():
    with pytest.raises(DomainError):
        MBSpec((1,), (), (), (1, 2))


def test_divergent_balanced_integral_refused():
    # one numerator, one denominator with a growing power: |t|^{Re(c-a)} does not decay
    with pytest.raises(NonConvergenceError):
        eval_mb(MBSpec((0.5,), (), (), (0.2,), z=0.5))
