import math

import mpmath as mp
import numpy as np
import pytest

from beta_integrals import identity_catalog as catalog
from beta_integrals.errors import DomainError, NonConvergenceError
from beta_integrals.gamma_core import gamma_weight

HALF4 = {f"a{i}": 0.5 for i in range(1, 5)}
EQ22_POINT = dict(a=0.7, b=0.5, c=0.9, d=0.6, e=1.3)
EQ24_POINT = dict(a=2.3, b=0.7, p=0.6, q=0.9, u=1.1, v=0.4)
EQ25_POINT = dict(a=1.9, p=0.6, q=0.8, u=0.7, v=0.5)


def test_registry_is_sorted_and_complete():
    ids = catalog.list_identities()
    assert ids == sorted(ids)
    for required in ("EQ_0_1", "EQ_0_2", "EQ_0_3", "EQ_0_4", "EQ_0_5", "EQ_0_6", "EQ_2_1", "EQ_2_2",
                     "EQ_2_3", "EQ_2_4", "EQ_2_5", "EQ_4_1", "EQ_4_2", "EQ_4_3", "EQ_4_4"):
        assert required in ids


def test_unknown_identity():
    with pytest.raises(DomainError):
        catalog.get_identity("EQ_9_9")


def test_anchor_format():
    for identity_id in catalog.list_identities():
        assert catalog.get_identity(identity_id).anchor.startswith(identity_id + ": ")


def test_closed_form_symmetric_point():
    assert catalog.closed_form("EQ_0_2", HALF4) == pytest.approx(1.0, rel=1e-14)


def test_closed_form_eq01_half_point():
    value = catalog.closed_form("EQ_0_1", dict(a1=0.5, a2=0.5, a3=0.5, b=3))
    assert value == pytest.approx(32 / (27 * math.pi), rel=1e-13)


def test_closed_form_dougall_point():
    value = catalog.closed_form("EQ_0_6", dict(a1=2, a2=2, a3=2, a4=2, alpha=0.25))
    assert value == pytest.approx(3 / (16 * math.pi), rel=1e-13)


def test_closed_form_rejects_out_of_domain():
    with pytest.raises(DomainError):
        catalog.closed_form("EQ_0_1", dict(a1=0.5, a2=0.5, a3=0.5, b=1))


def test_missing_and_extra_parameters():
    with pytest.raises(DomainError):
        catalog.closed_form("EQ_0_2", {"a1": 0.5})
    with pytest.raises(DomainError):
        catalog.closed_form("EQ_0_2", dict(HALF4, z=1.0))


def test_lhs_symmetric_point():
    assert catalog.lhs_numeric("EQ_0_2", HALF4).value == pytest.approx(1.0, abs=1e-8)


def test_lhs_beta_integral():
    assert catalog.lhs_numeric("EQ_2_1", dict(a=0.5, b=0.5, c=0.5, d=0.5)).value == pytest.approx(1.0, rel=1e-10)


def test_lhs_eq01_against_mpmath():
    a, b = (0.5, 0.7, 0.9), 3.0
    params = dict(a1=a[0], a2=a[1], a3=a[2], b=b)

    def integrand(s):
        num = mp.fprod(abs(mp.gamma(x + 1j * s)) ** 2 for x in a)
        return num / (abs(mp.gamma(2j * s)) ** 2 * abs(mp.gamma(b + 1j * s)) ** 2)

    ref = float(mp.quad(integrand, [0, 1, 5, mp.inf]) / (2 * mp.pi))
    assert catalog.lhs_numeric("EQ_0_1", params).value == pytest.approx(ref, rel=1e-9)


def test_askey_small_sum_is_outside_domain():
    small = {f"a{i}": 0.7 for i in range(1, 5)}
    assert "a1 + a2 + a3 + a4 > 3" in catalog.domain_reason("EQ_0_5", small)
    with pytest.raises(NonConvergenceError, match="do not settle"):
        catalog.get_identity("EQ_0_5").lhs(small, 1e-5, {"pv_alpha": 0.25})


@pytest.mark.parametrize("alpha", [0.15, 0.25, 0.4])
def test_askey_pv_independent_of_offset(alpha):
    params = dict(a1=1.2, a2=1.0, a3=0.9, a4=1.1)
    lhs = catalog.lhs_numeric("EQ_0_5", params, tol=1e-8, pv_alpha=alpha).value
    assert lhs == pytest.approx(catalog.closed_form("EQ_0_5", params), rel=1e-6)


def test_verify_symmetric_point():
    report = catalog.verify("EQ_0_2", HALF4, 1e-7)
    assert report.passed and report.reason == ""


def test_verify_out_of_domain_report():
    report = catalog.verify("EQ_0_1", dict(a1=0.5, a2=0.5, a3=0.5, b=1))
    assert not report.passed
    assert report.reason.startswith("out of domain")
    assert math.isinf(report.rel_error)


def test_verify_eq04_uniform_point():
    assert catalog.verify("EQ_0_4", {f"a{i}": 0.4 for i in range(1, 6)}, 1e-7).passed


def test_verify_never_raises_on_bad_names():
    report = catalog.verify("EQ_0_2", {"x": 1.0})
    assert not report.passed and "missing" in report.reason


def test_symmetry_trivial_swap():
    assert catalog.symmetry_probe("EQ_2_2", ("d", "e"), EQ22_POINT).rel_difference <= 1e-9


@pytest.mark.parametrize("swap", [("a", "c"), ("a", "d"), ("b", "e"), ("c", "e")])
def test_symmetry_kummer_witness(swap):
    # the closed form is not manifestly symmetric under these swaps
    assert catalog.symmetry_probe("EQ_2_2", swap, EQ22_POINT).rel_difference <= 1e-9


def test_symmetry_identity_permutation():
    assert catalog.symmetry_probe("EQ_2_2", ("a", "b", "c", "d", "e"), EQ22_POINT).rel_difference == 0


@pytest.mark.parametrize("swap", [("u", "v"), ("b", "v"), ("p", "u")])
def test_symmetry_whipple_witness(swap):
    assert catalog.symmetry_probe("EQ_2_4", swap, EQ24_POINT).rel_difference <= 1e-9


def test_symmetry_index_permutation():
    report = catalog.symmetry_probe("EQ_2_4", (4, 3, 2, 1, 0), EQ24_POINT)
    assert report.permutation == ("v", "u", "q", "p", "b")
    assert report.rel_difference <= 1e-9


def test_symmetry_rejects_bad_input():
    with pytest.raises(DomainError):
        catalog.symmetry_probe("EQ_0_1", ("a1", "a2"), dict(a1=0.5, a2=0.5, a3=0.5, b=3))
    with pytest.raises(DomainError):
        catalog.symmetry_probe("EQ_2_4", ("a", "b"), EQ24_POINT)


def test_eq25_limit_trend():
    target = catalog.closed_form("EQ_2_5", EQ25_POINT)
    gaps = []
    for b in (20, 40, 80):
        value = catalog.closed_form("EQ_2_4", dict(EQ25_POINT, b=b)) / math.gamma(b) ** 2
        gaps.append(abs(value - target))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] / target < 0.01


def test_eq24_degenerates_to_eq04():
    b, p, q, u, v = 0.7, 0.6, 0.9, 1.1, 0.4
    two_sided = catalog.closed_form("EQ_2_4", dict(a=b + p + q + u + v, b=b, p=p, q=q, u=u, v=v))
    weight = catalog.closed_form("EQ_0_4", dict(a1=b, a2=p, a3=q, a4=u, a5=v))
    assert 2 * two_sided == pytest.approx(weight, rel=1e-9)


@pytest.mark.parametrize("identity_id", ["EQ_2_3", "EQ_2_4"])
def test_mb_and_residue_agree(identity_id):
    params = catalog.sample_params(identity_id, np.random.default_rng(3))
    mb = catalog.closed_form(identity_id, params, method="mb")
    res = catalog.closed_form(identity_id, params, method="residue")
    assert res == pytest.approx(mb, rel=1e-8)


def test_unknown_method_refused():
    with pytest.raises(ValueError):
        catalog.closed_form("EQ_0_2", HALF4, method="residue")


@pytest.mark.parametrize(
    "a",
    [(0.5, 0.7, 0.9, 1.1), (0.3, 0.3, 0.3, 0.3), (1.2, 0.4, 2.0, 0.6)],
)
def test_weights_nonnegative(a):
    s = np.linspace(0, 40, 401)
    assert np.all(gamma_weight(a, s) >= 0)


def test_printed_forms():
    assert catalog.printed_lhs_scale("EQ_0_2") == 2.0
    assert catalog.printed_lhs_scale("EQ_0_4") == 1.0
    params = dict(a1=1.2, a2=1.0, a3=0.9, a4=1.1)
    assert catalog.printed_rhs("EQ_0_5", params) == pytest.approx(catalog.closed_form("EQ_0_5", params) / (2 * math.pi))
    printed = catalog.printed_rhs("EQ_2_4", EQ24_POINT)
    assert abs(printed - catalog.closed_form("EQ_2_4", EQ24_POINT)) > 1e-3 * abs(printed)
    with pytest.raises(KeyError):
        catalog.printed_rhs("EQ_0_2", HALF4)
    assert set(catalog.PRINTED_FORM_NOTES) <= set(catalog.list_identities())


def test_domain_notes_cover_registry():
    assert set(catalog.DOMAIN_NOTES) == set(catalog.list_identities())


def test_sampling_is_seeded():
    first = catalog.sample_cases("EQ_2_4", 3, seed=5)
    again = catalog.sample_cases("EQ_2_4", 3, seed=5)
    assert first == again
    assert all(catalog.domain_reason("EQ_2_4", case.params) is None for case in first)


@pytest.mark.parametrize("identity_id", catalog.list_identities())
def test_every_identity_at_sampled_points(identity_id):
    for case in catalog.sample_cases(identity_id, 2, seed=123):
        report = catalog.verify(identity_id, case.params)
        assert report.passed, report.reason
