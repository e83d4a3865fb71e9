"""Registry of beta-integral identities with numeric left and right sides.

Each entry pairs an integral (or bilateral sum) with its closed form and
carries a domain check, a random parameter sampler and a default tolerance.
Half-line weights are written as ``K ∫_0^∞ W(s) ds`` where ``W`` is a
product of ``|Γ(x+is)|²`` factors, optionally over ``|Γ(2is)|²``.

The constants ``K`` and a few closed forms differ from the commonly printed
versions of these identities. ``PRINTED_FORM_NOTES`` records every such
change, and :func:`printed_rhs` evaluates the uncorrected right-hand sides
so the difference can be checked numerically.
"""

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import special

from .errors import (
    BetaIntegralsError,
    DivergenceError,
    DomainError,
)
from .gamma_core import (
    gamma_product,
    gamma_weight,
    log_gamma,
    rgamma_pair,
    sin_pi,
)
from .hypergeometric import SeriesSpec, f21_neg_axis, hyp2f1, pfq
from .index_transform import SECTION4_PARAMS, section4_lhs, section4_rhs
from .mellin_barnes import MBSpec, eval_mb, mb_residue_expand, sum_expansion
from .quadrature import (
    IntegrandHandle,
    QuadResult,
    bilateral_sum,
    integrate_halfline,
    integrate_pv_lattice,
)

TWO_PI = 2.0 * math.pi
#: Default truncation offset of the principal-value integral.
PV_ALPHA = 0.25
#: Values taken by the auxiliary arguments of the index integrals.
AUX_ARGUMENTS = (0.5, 1.0, 2.0)
_SAMPLE_RANGE = (0.3, 1.2)
_MAX_SAMPLE_TRIES = 10000


# helpers ---------------------------------------------------------------------

def weight_decay_exponent(numerators, denominators=(), double_gamma=True):
    """Algebraic decay exponent ``p`` of ``∏|Γ(n+is)|² / ∏|Γ(d+is)|² (/|Γ(2is)|²)``.

    By Stirling's formula ``|Γ(x+is)|² ~ 2π s^{2x-1} e^{-πs}``. The weight
    decays exponentially (``p = inf``) when the numerator has more factors
    than the denominator plus the optional ``|Γ(2is)|²``. With equal counts
    it behaves like ``s^{-p}``; with fewer it grows (``p = -inf``).
    """
    excess = len(numerators) - len(denominators) - (2 if double_gamma else 0)
    if excess > 0:
        return math.inf
    if excess < 0:
        return -math.inf
    power = sum(2 * x - 1 for x in numerators) - sum(2 * y - 1 for y in denominators)
    if double_gamma:
        power += 1
    return -power


def _weight_integral(numerators, denominators=(), tol=1e-10, scale=1.0):
    """``scale · ∫_0^∞ W(s) ds`` for a gamma weight."""
    decay = weight_decay_exponent(numerators, denominators)

    def f(s):
        return scale * gamma_weight(numerators, s, denominators)

    return integrate_halfline(IntegrandHandle(f, decay_exponent=decay), tol=tol)


def _positive(params, names):
    bad = [n for n in names if not params[n] > 0]
    return f"parameters {', '.join(bad)} must be positive" if bad else None


def _pairs(values):
    return [x + y for x, y in itertools.combinations(values, 2)]


def _f21_real(a, b, c, z, tol=1e-15):
    return float(np.real(hyp2f1(a, b, c, z, tol)))


def _mb_value(spec, tol):
    return float(eval_mb(spec, tol).real)


# registry entry ----------------------------------------------------------------

@dataclass(frozen=True)
class IdentitySpec:
    """One identity of the catalog.

    Attributes
    ----------
    id : str
    anchor : str
        Short human-readable name.
    param_names : tuple of str
    tolerance : float
        Default relative tolerance for :func:`verify`.
    domain : callable
        ``params -> None`` when admissible, else a reason string.
    lhs : callable
        ``(params, tol, options) -> QuadResult``.
    rhs : callable
        ``(params, tol, method) -> float``.
    sampler : callable
        ``numpy.random.Generator -> dict`` of raw draws (domain filtered later).
    methods : tuple of str
        Available right-hand-side evaluation methods.
    """

    id: str
    anchor: str
    param_names: tuple
    tolerance: float
    domain: Callable
    lhs: Callable
    rhs: Callable
    sampler: Callable
    methods: tuple = ("closed",)


@dataclass(frozen=True)
class IdentityCase:
    """An identity together with a concrete parameter point."""

    id: str
    params: dict


@dataclass
class VerificationReport:
    """Outcome of comparing both sides of an identity at one point.

    ``passed`` holds exactly when both sides are finite and
    ``rel_error <= tolerance``.
    """

    id: str
    params: dict
    lhs_value: float
    rhs_value: float
    rel_error: float
    tolerance: float
    passed: bool
    lhs_error_estimate: float
    runtime: float
    reason: str = ""


@dataclass(frozen=True)
class SymmetryReport:
    """Closed form at a point and at a permutation of a parameter group."""

    id: str
    names: tuple
    permutation: tuple
    value: float
    permuted_value: float
    rel_difference: float


REGISTRY = {}


def _register(spec):
    REGISTRY[spec.id] = spec
    return spec


def _uniform(names, low=_SAMPLE_RANGE[0], high=_SAMPLE_RANGE[1]):
    def draw(rng):
        return {n: float(rng.uniform(low, high)) for n in names}

    return draw


# (0.x) classical weights ----------------------------------------------------------

def _eq01_domain(v):
    msg = _positive(v, ("a1", "a2", "a3"))
    if msg:
        return msg
    if not v["b"] > v["a1"] + v["a2"] + v["a3"]:
        return "needs b > a1 + a2 + a3 for convergence"
    return None


def _eq01_lhs(v, tol, options):
    a = (v["a1"], v["a2"], v["a3"])
    return _weight_integral(a, (v["b"],), tol, 1.0 / TWO_PI)


def _eq01_rhs(v, tol, method):
    a = (v["a1"], v["a2"], v["a3"])
    b = v["b"]
    return gamma_product((b - sum(a),) + tuple(_pairs(a)), tuple(b - x for x in a))


def _eq01_sampler(rng):
    v = _uniform(("a1", "a2", "a3"))(rng)
    v["b"] = v["a1"] + v["a2"] + v["a3"] + float(rng.uniform(1.5, 4.0))
    return v


_register(IdentitySpec(
    "EQ_0_1", "EQ_0_1: beta integral of three numerator and one denominator gamma",
    ("a1", "a2", "a3", "b"), 1e-7, _eq01_domain, _eq01_lhs, _eq01_rhs, _eq01_sampler,
))

_A4 = ("a1", "a2", "a3", "a4")
_A5 = ("a1", "a2", "a3", "a4", "a5")


def _eq02_lhs(v, tol, options):
    return _weight_integral(tuple(v[n] for n in _A4), (), tol, 1.0 / TWO_PI)


def _eq02_rhs(v, tol, method):
    a = tuple(v[n] for n in _A4)
    return gamma_product(_pairs(a), (sum(a),))


_register(IdentitySpec(
    "EQ_0_2", "EQ_0_2: Wilson weight total mass (de Branges-Wilson integral)",
    _A4, 1e-7, lambda v: _positive(v, _A4), _eq02_lhs, _eq02_rhs, _uniform(_A4),
))

_EQ03 = ("a1", "a2", "b1", "b2", "b3")


def _eq03_lhs(v, tol, options):
    a = (v["a1"], v["a2"])
    b = (v["b1"], v["b2"], v["b3"])
    total = sum(a) + sum(b)

    def f(s):
        s = np.asarray(s, dtype=float)
        log_f = sum(log_gamma(x - 1j * s) for x in a) + sum(log_gamma(x + 1j * s) for x in b)
        log_f = log_f - log_gamma(total + 1j * s)
        with np.errstate(under="ignore"):
            return np.real(np.exp(log_f)) / math.pi

    return integrate_halfline(IntegrandHandle(f), tol=tol)


def _eq03_rhs(v, tol, method):
    a = (v["a1"], v["a2"])
    b = (v["b1"], v["b2"], v["b3"])
    num = tuple(x + y for x in a for y in b)
    den = tuple(a[0] + a[1] + y for y in _pairs(b))
    return gamma_product(num, den)


_register(IdentitySpec(
    "EQ_0_3", "EQ_0_3: second Barnes lemma as a real-line integral",
    _EQ03, 1e-7, lambda v: _positive(v, _EQ03), _eq03_lhs, _eq03_rhs, _uniform(_EQ03),
))


def _eq04_lhs(v, tol, options):
    a = tuple(v[n] for n in _A5)
    return _weight_integral(a, (sum(a),), tol, 1.0 / math.pi)


def _eq04_rhs(v, tol, method):
    a = tuple(v[n] for n in _A5)
    total = sum(a)
    return 2.0 * gamma_product(_pairs(a), tuple(total - x for x in a))


_register(IdentitySpec(
    "EQ_0_4", "EQ_0_4: Nassrallah-Rahman integral, five-parameter case",
    _A5, 1e-7, lambda v: _positive(v, _A5), _eq04_lhs, _eq04_rhs, _uniform(_A5),
))


def askey_weight(a, s):
    """``2πs/sin(2πs) · ∏ 1/(Γ(a_j+s)Γ(a_j-s))``, even, with simple poles at ``s ∈ ½ℤ \\ {0}``."""
    s = np.asarray(s, dtype=float)
    prod = np.ones_like(s)
    for x in a:
        prod = prod * rgamma_pair(x, s)
    at_zero = s == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(at_zero, 1.0, TWO_PI * s / np.where(at_zero, 1.0, sin_pi(2.0 * s)))
    return ratio * prod


def _askey_domain(v):
    msg = _positive(v, _A4)
    if msg:
        return msg
    if not sum(v[n] for n in _A4) > 3:
        return "the principal-value integral converges only for a1 + a2 + a3 + a4 > 3"
    return None


def _askey_lhs(v, tol, options):
    a = tuple(v[n] for n in _A4)
    alpha = options.get("pv_alpha", PV_ALPHA)
    handle = IntegrandHandle(
        lambda s: askey_weight(a, s),
        even=True,
        decay_exponent=2 * sum(a) - 5,
        pole_lattice=(0.5, 0.0),
    )
    return integrate_pv_lattice(handle, alpha, tol=tol)


def _askey_rhs(v, tol, method):
    a = tuple(v[n] for n in _A4)
    return gamma_product((sum(a) - 3,), tuple(x - 1 for x in _pairs(a)))


def askey_small_sum_sampler(rng):
    """Uniform draws on ``[0.3, 1.2]`` conditioned on ``Σa < 2.9``.

    Every such point lies outside the convergence domain ``Σa > 3``.
    """
    while True:
        v = _uniform(_A4)(rng)
        if sum(v.values()) < 2.9:
            return v


def askey_convergent_sampler(rng):
    """Draws with each ``a_j ∈ [1.0, 1.6]`` (so ``Σa > 4``) where the integral converges."""
    return {n: float(rng.uniform(1.0, 1.6)) for n in _A4}


_register(IdentitySpec(
    "EQ_0_5", "EQ_0_5: Askey integral, principal value near each pole",
    _A4, 1e-3, _askey_domain, _askey_lhs, _askey_rhs, askey_convergent_sampler,
))

_EQ06 = ("a1", "a2", "a3", "a4", "alpha")


def dougall_term(a, alpha, n):
    """``(α+n) ∏ 1/(Γ(a_j+α+n)Γ(a_j-α-n))`` for integer arrays ``n``."""
    t = alpha + np.asarray(n, dtype=float)
    out = t.copy()
    for x in a:
        out = out * rgamma_pair(x, t)
    return out


def _dougall_domain(v):
    a = tuple(v[n] for n in _A4)
    if sum(a) <= 3:
        return "bilateral sum needs Σa > 3"
    if abs(2 * v["alpha"] - round(2 * v["alpha"])) < 1e-12:
        return "alpha must not be a multiple of 1/2"
    return None


def _dougall_lhs(v, tol, options):
    a = tuple(v[n] for n in _A4)
    return bilateral_sum(lambda n: dougall_term(a, v["alpha"], n), tol=min(tol, 1e-12))


def _dougall_rhs(v, tol, method):
    a = tuple(v[n] for n in _A4)
    return float(sin_pi(2 * v["alpha"])) / TWO_PI * _askey_rhs(v, tol, method)


def _dougall_sampler(rng):
    v = {n: float(rng.uniform(1.5, 2.5)) for n in _A4}
    v["alpha"] = float(rng.uniform(0.1, 0.4))
    return v


_register(IdentitySpec(
    "EQ_0_6", "EQ_0_6: Dougall formula (bilateral well-poised sum)",
    _EQ06, 1e-8, _dougall_domain, _dougall_lhs, _dougall_rhs, _dougall_sampler,
))


# (2.x) Barnes-type integrals -----------------------------------------------------

def _barnes_first_domain(v):
    if not (v["a"] + v["b"] > 0 and v["c"] + v["d"] > 0):
        return "needs a + b > 0 and c + d > 0"
    return None


def _barnes_first_lhs(v, tol, options):
    """``∫_0^1 t^{a+b-1}(1-t)^{c+d-1} dt`` through ``t = x/(1+x)``."""
    p, q = v["a"] + v["b"], v["c"] + v["d"]

    def f(x):
        x = np.asarray(x, dtype=float)
        return x ** (p - 1) * (1 + x) ** (-p - q)

    return integrate_halfline(IntegrandHandle(f, decay_exponent=q + 1), tol=tol)


def _barnes_first_rhs(v, tol, method):
    p, q = v["a"] + v["b"], v["c"] + v["d"]
    return float(special.beta(p, q))


_register(IdentitySpec(
    "EQ_2_1", "EQ_2_1: beta integral B(a+b, c+d)",
    ("a", "b", "c", "d"), 1e-10, _barnes_first_domain, _barnes_first_lhs, _barnes_first_rhs,
    _uniform(("a", "b", "c", "d")),
))

_EQ22 = ("a", "b", "c", "d", "e")


def _eq22_lhs(v, tol, options):
    return _weight_integral(tuple(v[n] for n in _EQ22), (), tol, 1.0 / TWO_PI)


def _eq22_rhs(v, tol, method):
    a, b, c, d, e = (v[n] for n in _EQ22)
    pre = gamma_product(
        (a + b, a + c, a + d, a + e, b + c, b + d, b + e, c + d, c + e),
        (a + b + c + d, a + b + c + e),
    )
    series = pfq(SeriesSpec((a + c, b + c, a + b), (a + b + c + d, a + b + c + e), 1.0), tol=1e-15)
    return pre * float(series.value.real)


_register(IdentitySpec(
    "EQ_2_2", "EQ_2_2: five-parameter weight as a ₃F₂(1)",
    _EQ22, 1e-7, lambda v: _positive(v, _EQ22), _eq22_lhs, _eq22_rhs, _uniform(_EQ22),
))

_EQ23 = ("a", "b", "c", "d", "e", "f")


def eq23_mb_spec(v):
    """Barnes integral representing the six-parameter weight integral."""
    a, b, c, d, e, f = (v[n] for n in _EQ23)
    return MBSpec((a + b, a + e, a + f), (d - a, c - a, 0.0), (c + d,), (a + b + e + f,), 1.0)


def _eq23_prefactor(v):
    a, b, c, d, e, f = (v[n] for n in _EQ23)
    return gamma_product((a + c, a + d, c + d, b + e, b + f, e + f))


def _eq23_lhs(v, tol, options):
    return _weight_integral(tuple(v[n] for n in _EQ23), (), tol, 1.0 / TWO_PI)


def _mb_or_residue(spec, tol, method):
    if method in ("mb", "closed"):
        return _mb_value(spec, tol)
    if method == "residue":
        return float(sum_expansion(mb_residue_expand(spec, "right"), spec.z).real)
    raise ValueError(f"unknown method {method!r}")


def _eq23_rhs(v, tol, method):
    return _eq23_prefactor(v) * _mb_or_residue(eq23_mb_spec(v), 1e-12, method)


_register(IdentitySpec(
    "EQ_2_3", "EQ_2_3: six-parameter weight as a Barnes integral",
    _EQ23, 1e-6, lambda v: _positive(v, _EQ23), _eq23_lhs, _eq23_rhs, _uniform(_EQ23),
    ("mb", "residue"),
))

_EQ24 = ("a", "b", "p", "q", "u", "v")
_EQ25 = ("a", "p", "q", "u", "v")


def _ratio_domain(names):
    def check(v):
        msg = _positive(v, names)
        if msg:
            return msg
        if not v["a"] > max(v["u"], v["v"]):
            return "needs a > max(u, v)"
        return None

    return check


def eq24_mb_spec(v):
    """Barnes integral of the five-over-one weight integral."""
    a, b, p, q, u, w = (v[n] for n in _EQ24)
    return MBSpec((u + p, u + q, b + u, a - w), (w - u, 0.0), (), (u + a, u + b + p + q), 1.0)


def _eq24_prefactor(v):
    a, b, p, q, u, w = (v[n] for n in _EQ24)
    return gamma_product((u + w, p + q, p + b, q + b), (a - w, a - u))


def _eq24_lhs(v, tol, options):
    a, b, p, q, u, w = (v[n] for n in _EQ24)
    return _weight_integral((b, p, q, u, w), (a,), tol, 1.0 / TWO_PI)


def _eq24_rhs(v, tol, method):
    return _eq24_prefactor(v) * _mb_or_residue(eq24_mb_spec(v), 1e-12, method)


_register(IdentitySpec(
    "EQ_2_4", "EQ_2_4: five-over-one weight as a Barnes integral",
    _EQ24, 1e-6, _ratio_domain(_EQ24), _eq24_lhs, _eq24_rhs, _uniform(_EQ24), ("mb", "residue"),
))


def eq25_mb_spec(v):
    """Barnes integral of the four-over-one weight integral."""
    a, p, q, u, w = (v[n] for n in _EQ25)
    return MBSpec((u + p, u + q, a - w), (w - u, 0.0), (), (u + a,), 1.0)


def _eq25_prefactor(v):
    a, p, q, u, w = (v[n] for n in _EQ25)
    return gamma_product((u + w, p + q), (a - w, a - u))


def _eq25_lhs(v, tol, options):
    a, p, q, u, w = (v[n] for n in _EQ25)
    return _weight_integral((p, q, u, w), (a,), tol, 1.0 / TWO_PI)


def _eq25_rhs(v, tol, method):
    if method == "residue" and not v["p"] + v["q"] < 1:
        raise DivergenceError("the residue series of this integral converge only for p + q < 1")
    return _eq25_prefactor(v) * _mb_or_residue(eq25_mb_spec(v), 1e-12, method)


_register(IdentitySpec(
    "EQ_2_5", "EQ_2_5: four-over-one weight as a balanced Barnes integral",
    _EQ25, 1e-6, _ratio_domain(_EQ25), _eq25_lhs, _eq25_rhs, _uniform(_EQ25), ("mb", "residue"),
))


# (4.x) index integrals ------------------------------------------------------------

def _section4_sampler(names):
    def draw(rng):
        v = {}
        for n in names:
            if n in ("x", "y", "z"):
                v[n] = float(rng.choice(AUX_ARGUMENTS))
            else:
                v[n] = float(rng.uniform(*_SAMPLE_RANGE))
        return v

    return draw


def _section4_domain(names):
    def check(v):
        aux = [n for n in names if n in ("x", "y", "z")]
        bad = [n for n in aux if not v[n] >= 0]
        if bad:
            return f"arguments {', '.join(bad)} must be nonnegative"
        return _positive(v, [n for n in names if n not in aux])

    return check


_SECTION4_ANCHORS = {
    "EQ_4_1": "EQ_4_1: index integral of two ₂F₁ kernels, three gamma weight",
    "EQ_4_2": "EQ_4_2: index integral of one ₂F₁ kernel, four gamma weight",
    "EQ_4_3": "EQ_4_3: index integral of two ₂F₁ kernels, four gamma weight",
    "EQ_4_3_DIAG": "EQ_4_3_DIAG: equal-argument case of EQ_4_3",
    "EQ_4_4": "EQ_4_4: index integral of one ₂F₁ kernel, five gamma weight",
}

for _id, _names in SECTION4_PARAMS.items():
    _register(IdentitySpec(
        _id, _SECTION4_ANCHORS[_id], _names, 1e-6, _section4_domain(_names),
        (lambda eq: lambda v, tol, options: section4_lhs(eq, v, tol))(_id),
        (lambda eq: lambda v, tol, method: section4_rhs(eq, v, tol))(_id),
        _section4_sampler(_names),
    ))


# (1.x) Mellin-Barnes integrals of ₂F₁ products -----------------------------------------

_EQ110 = ("alpha", "rho", "p", "q", "r", "z")


def eq110_mb_spec(v):
    """Barnes integral for ``∫ x^{α-1}(x+z)^{-ρ} ₂F₁(p, q; r; -x) dx``."""
    al, rho, p, q, r, z = (v[n] for n in _EQ110)
    return MBSpec((al, p, q), (rho - al, 0.0), (), (r,), 1.0 / z)


def _eq110_domain(v):
    msg = _positive(v, _EQ110)
    if msg:
        return msg
    al, rho, p, q = v["alpha"], v["rho"], v["p"], v["q"]
    if not rho + min(p, q) > al:
        return "needs rho + min(p, q) > alpha for convergence at infinity"
    if not rho - al + min(al, p, q) > 0:
        return "left and right pole sequences of the Barnes integral overlap"
    return None


def _eq110_lhs(v, tol, options):
    al, rho, p, q, r, z = (v[n] for n in _EQ110)

    def f(x):
        x = np.asarray(x, dtype=float)
        return x ** (al - 1) * (x + z) ** (-rho) * np.real(f21_neg_axis(p, q, r, x))

    decay = 1 + rho + min(p, q) - al
    return integrate_halfline(IntegrandHandle(f, decay_exponent=decay, scale=1.0), tol=tol)


def _eq110_rhs(v, tol, method):
    al, rho, p, q, r, z = (v[n] for n in _EQ110)
    pre = z ** (al - rho) * gamma_product((r,), (p, q, rho))
    return pre * _mb_value(eq110_mb_spec(v), 1e-12)


def _eq110_sampler(rng):
    v = {n: float(rng.uniform(*_SAMPLE_RANGE)) for n in _EQ110[:-1]}
    v["z"] = float(rng.choice(AUX_ARGUMENTS))
    return v


_register(IdentitySpec(
    "EQ_1_10", "EQ_1_10: Mellin transform of (x+z)^-rho times a ₂F₁",
    _EQ110, 1e-7, _eq110_domain, _eq110_lhs, _eq110_rhs, _eq110_sampler,
))

_EQ111 = ("alpha", "p", "q", "r", "u", "v", "w", "omega", "omega_t")


def eq111_mb_spec(v):
    """Barnes integral for the Mellin transform of a product of two ₂F₁."""
    al, p, q, r, u, w_, w, om, omt = (v[n] for n in _EQ111)
    return MBSpec((al, u, w_), (p - al, q - al, 0.0), (r - al,), (w,), om / omt)


def _eq111_domain(v):
    msg = _positive(v, _EQ111)
    if msg:
        return msg
    al = v["alpha"]
    if not min(v["p"], v["q"]) + min(v["u"], v["v"]) > al:
        return "needs min(p, q) + min(u, v) > alpha for convergence at infinity"
    if not min(v["p"] - al, v["q"] - al, 0.0) > -min(al, v["u"], v["v"]):
        return "left and right pole sequences of the Barnes integral overlap"
    return None


def _eq111_lhs(v, tol, options):
    al, p, q, r, u, w_, w, om, omt = (v[n] for n in _EQ111)

    def f(x):
        x = np.asarray(x, dtype=float)
        return x ** (al - 1) * np.real(f21_neg_axis(p, q, r, om * x)) * np.real(f21_neg_axis(u, w_, w, omt * x))

    decay = 1 + min(p, q) + min(u, w_) - al
    return integrate_halfline(IntegrandHandle(f, decay_exponent=decay), tol=tol)


def _eq111_rhs(v, tol, method):
    al, p, q, r, u, w_, w, om, omt = (v[n] for n in _EQ111)
    pre = om ** (-al) * gamma_product((r, w), (u, w_, p, q))
    return pre * _mb_value(eq111_mb_spec(v), 1e-12)


def _eq111_sampler(rng):
    v = {n: float(rng.uniform(*_SAMPLE_RANGE)) for n in _EQ111[:-2]}
    v["omega"] = float(rng.choice(AUX_ARGUMENTS))
    v["omega_t"] = float(rng.choice(AUX_ARGUMENTS))
    return v


_register(IdentitySpec(
    "EQ_1_11", "EQ_1_11: Mellin transform of a product of two ₂F₁",
    _EQ111, 1e-7, _eq111_domain, _eq111_lhs, _eq111_rhs, _eq111_sampler,
))

_EQ112 = ("p", "q", "u", "v", "r", "omega", "omega_t")


def _eq112_domain(v):
    msg = _positive(v, _EQ112)
    if msg:
        return msg
    p, q, u, w, r = v["p"], v["q"], v["u"], v["v"], v["r"]
    if not min(p, q) + min(u, w) > r:
        return "needs min(p, q) + min(u, v) > r for convergence at infinity"
    if not p + q + u + w - 2 * r > 0:
        return "needs p + q + u + v > 2r"
    return None


def _eq112_lhs(v, tol, options):
    p, q, u, w, r, om, omt = (v[n] for n in _EQ112)

    def f(x):
        x = np.asarray(x, dtype=float)
        return x ** (r - 1) * np.real(f21_neg_axis(p, q, r, om * x)) * np.real(f21_neg_axis(u, w, r, omt * x))

    decay = 1 + min(p, q) + min(u, w) - r
    return integrate_halfline(IntegrandHandle(f, decay_exponent=decay), tol=tol)


def _eq112_rhs(v, tol, method):
    p, q, u, w, r, om, omt = (v[n] for n in _EQ112)
    pre = om ** (u - r) * omt ** (-u) * gamma_product(
        (r, r, p - r + u, q - r + u, p - r + w, q - r + w),
        (u, w, p, q, p + q + u + w - 2 * r),
    )
    return pre * _f21_real(p - r + u, q - r + u, p + q + u + w - 2 * r, 1 - om / omt)


def _eq112_sampler(rng):
    v = {n: float(rng.uniform(*_SAMPLE_RANGE)) for n in ("p", "q", "u", "v")}
    v["r"] = float(rng.uniform(0.1, 0.6))
    v["omega"] = float(rng.choice(AUX_ARGUMENTS))
    v["omega_t"] = float(rng.choice(AUX_ARGUMENTS))
    return v


_register(IdentitySpec(
    "EQ_1_12", "EQ_1_12: closed form of the two ₂F₁ Mellin transform at alpha = r = w",
    _EQ112, 1e-7, _eq112_domain, _eq112_lhs, _eq112_rhs, _eq112_sampler,
))

_EQ113 = ("mu", "nu", "alpha", "beta", "phi", "psi", "xi")


def eq113_mb_spec(v):
    """Barnes integral for the beta-weighted product of two ₂F₁ at ``1-z``."""
    mu, nu, al, be, ph, ps, xi = (v[n] for n in _EQ113)
    return MBSpec(
        (mu, mu + nu - al - be, ph, ps),
        (0.0, xi - ph - ps),
        (),
        (nu + mu - al, mu + nu - be),
        1.0,
    )


def _eq113_domain(v):
    mu, nu, al, be, ph, ps, xi = (v[n] for n in _EQ113)
    checks = {
        "mu": mu, "nu": nu, "phi": ph, "psi": ps, "xi - phi": xi - ph, "xi - psi": xi - ps,
        "mu + nu - alpha - beta": mu + nu - al - be,
        "mu + xi - phi - psi": mu + xi - ph - ps,
        "mu + nu - alpha - beta + xi - phi - psi": mu + nu - al - be + xi - ph - ps,
    }
    bad = [k for k, x in checks.items() if not x > 0]
    if bad:
        return f"needs {', '.join(bad)} > 0"
    left = -min(mu, mu + nu - al - be, ph, ps)
    if not min(0.0, xi - ph - ps) > left:
        return "left and right pole sequences of the Barnes integral overlap"
    return None


def _eq113_lhs(v, tol, options):
    """Integral over ``[0, 1]`` mapped by ``z = 1/(1+x)``; then ``1-z = x/(1+x)`` and
    ``₂F₁(a, b; c; x/(1+x)) = (1+x)^a ₂F₁(a, c-b; c; -x)``."""
    mu, nu, al, be, ph, ps, xi = (v[n] for n in _EQ113)

    def f(x):
        x = np.asarray(x, dtype=float)
        left = np.real(f21_neg_axis(al, nu - be, nu, x))
        right = np.real(f21_neg_axis(ph, xi - ps, xi, x))
        return x ** (nu - 1) * (1 + x) ** (al + ph - mu - nu) * left * right

    decay = 1 + min(mu, mu + nu - al - be) + min(0.0, xi - ph - ps)
    return integrate_halfline(IntegrandHandle(f, decay_exponent=decay), tol=tol)


def _eq113_rhs(v, tol, method):
    mu, nu, al, be, ph, ps, xi = (v[n] for n in _EQ113)
    pre = gamma_product((nu, xi), (ph, ps, xi - ph, xi - ps))
    return pre * _mb_value(eq113_mb_spec(v), 1e-12)


def _eq113_sampler(rng):
    v = {n: float(rng.uniform(*_SAMPLE_RANGE)) for n in ("mu", "nu", "phi", "psi")}
    v["alpha"] = float(rng.uniform(0.1, 0.6))
    v["beta"] = float(rng.uniform(0.1, 0.6))
    v["xi"] = v["phi"] + v["psi"] + float(rng.uniform(0.1, 0.8))
    return v


_register(IdentitySpec(
    "EQ_1_13", "EQ_1_13: beta-weighted product of two ₂F₁ at 1-z as a Barnes integral",
    _EQ113, 1e-7, _eq113_domain, _eq113_lhs, _eq113_rhs, _eq113_sampler,
))


# printed forms ----------------------------------------------------------------

#: How the implemented identities differ from their commonly printed forms.
PRINTED_FORM_NOTES = {
    "EQ_0_1": "printed left side carries 1/π in front of ∫_0^∞; the identity holds with 1/(2π)",
    "EQ_0_2": "printed left side carries 1/π in front of ∫_0^∞; the identity holds with 1/(2π)",
    "EQ_0_5": "printed right side carries an extra 1/(2π); the integral converges only for Σa > 3",
    "EQ_2_2": "printed left side carries 1/π in front of ∫_0^∞; the identity holds with 1/(2π)",
    "EQ_2_3": "printed left side carries 1/π in front of ∫_0^∞; the identity holds with 1/(2π)",
    "EQ_2_4": "printed prefactor has Γ(u-v) in the denominator where Γ(a-u) belongs",
    "EQ_2_5": "printed prefactor has Γ(u-v) in the denominator where Γ(a-u) belongs",
    "EQ_4_4": "printed kernel is ₂F₁(a±is; a+c; -y); the identity holds with ₂F₁(e±is; a+e; -y)",
    "EQ_1_13": "printed last Barnes factor is Γ(ξ-φ-ψ+s); the identity holds with Γ(ξ-φ-ψ-s)",
}


def printed_lhs_scale(identity_id):
    """Ratio of the printed left-side constant to the implemented one."""
    return 2.0 if identity_id in ("EQ_0_1", "EQ_0_2", "EQ_2_2", "EQ_2_3") else 1.0


def printed_rhs(identity_id, params, tol=1e-10):
    """Right-hand side exactly as commonly printed, for the identities that differ.

    Raises
    ------
    KeyError
        For identities whose printed right side is the implemented one.
    """
    v = dict(params)
    if identity_id == "EQ_0_5":
        return _askey_rhs(v, tol, "closed") / TWO_PI
    if identity_id == "EQ_2_4":
        a, b, p, q, u, w = (v[n] for n in _EQ24)
        pre = gamma_product((u + w, p + q, p + b, q + b), (a - w, u - w))
        return pre * _mb_value(eq24_mb_spec(v), tol)
    if identity_id == "EQ_2_5":
        a, p, q, u, w = (v[n] for n in _EQ25)
        pre = gamma_product((u + w, p + q), (a - w, u - w))
        return pre * _mb_value(eq25_mb_spec(v), tol)
    raise KeyError(f"{identity_id} has no separate printed right side")


#: Admissible parameter domains in words.
DOMAIN_NOTES = {
    "EQ_0_1": "a_j > 0, b > a1+a2+a3",
    "EQ_0_2": "a_j > 0",
    "EQ_0_3": "all parameters > 0",
    "EQ_0_4": "a_j > 0",
    "EQ_0_5": "a_j > 0, a1+a2+a3+a4 > 3",
    "EQ_0_6": "a1+a2+a3+a4 > 3, 2*alpha not an integer",
    "EQ_2_1": "a+b > 0, c+d > 0",
    "EQ_2_2": "all parameters > 0",
    "EQ_2_3": "all parameters > 0",
    "EQ_2_4": "all parameters > 0, a > max(u, v)",
    "EQ_2_5": "all parameters > 0, a > max(u, v)",
    "EQ_4_1": "a, b, c > 0; x, y >= 0",
    "EQ_4_2": "a, b, c, d > 0; y >= 0",
    "EQ_4_3": "a, b, c, d > 0; y, z >= 0",
    "EQ_4_3_DIAG": "a, b, c, d > 0; y >= 0",
    "EQ_4_4": "a, b, c, d, e > 0; y >= 0",
    "EQ_1_10": "all > 0, rho + min(p, q) > alpha, rho - alpha + min(alpha, p, q) > 0",
    "EQ_1_11": "all > 0, min(p, q) + min(u, v) > alpha, Barnes contour separates the poles",
    "EQ_1_12": "all > 0, min(p, q) + min(u, v) > r",
    "EQ_1_13": "mu, nu, phi, psi, xi-phi, xi-psi > 0 and the endpoint exponents positive",
}


# public API ---------------------------------------------------------------------

def list_identities():
    """Sorted identity ids."""
    return sorted(REGISTRY)


def get_identity(identity_id):
    """Registry entry for ``identity_id``.

    Raises
    ------
    DomainError
        For an unknown id.
    """
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise DomainError(f"unknown identity {identity_id!r}") from None


def _complete(spec, params):
    missing = [n for n in spec.param_names if n not in params]
    if missing:
        raise DomainError(f"{spec.id} is missing parameters {', '.join(missing)}")
    extra = [n for n in params if n not in spec.param_names]
    if extra:
        raise DomainError(f"{spec.id} has no parameters {', '.join(extra)}")
    return {n: float(params[n]) for n in spec.param_names}


def domain_reason(identity_id, params):
    """``None`` when ``params`` is admissible for the identity, else the reason."""
    spec = get_identity(identity_id)
    return spec.domain(_complete(spec, params))


def closed_form(identity_id, params, method="closed", tol=1e-10):
    """Right-hand side of an identity.

    Parameters
    ----------
    identity_id : str
    params : mapping
    method : str
        ``"closed"`` (default; the Barnes integral for identities stated
        through one), ``"mb"`` or ``"residue"`` where available.

    Raises
    ------
    DomainError
        Outside the admissible parameter domain.
    """
    spec = get_identity(identity_id)
    v = _complete(spec, params)
    reason = spec.domain(v)
    if reason:
        raise DomainError(f"{identity_id}: {reason}")
    if method not in spec.methods and method not in ("closed", "mb"):
        raise ValueError(f"{identity_id} supports methods {spec.methods}")
    return float(spec.rhs(v, tol, method))


def lhs_numeric(identity_id, params, tol=1e-10, **options):
    """Left-hand integral or sum of an identity as a :class:`QuadResult`.

    Keyword options: ``pv_alpha`` sets the truncation offset of the
    principal-value integral.
    """
    spec = get_identity(identity_id)
    v = _complete(spec, params)
    reason = spec.domain(v)
    if reason:
        raise DomainError(f"{identity_id}: {reason}")
    return spec.lhs(v, tol, options)


def verify(identity_id, params, tol=None, method="closed", **options):
    """Evaluate both sides and compare them.

    Never raises for numerical trouble: failures of either side are
    reported with ``passed = False`` and a reason.

    Returns
    -------
    VerificationReport
    """
    spec = get_identity(identity_id)
    tol = spec.tolerance if tol is None else tol
    start = time.perf_counter()
    lhs_val = rhs_val = math.nan
    lhs_err = math.nan
    reason = ""
    try:
        v = _complete(spec, params)
    except DomainError as exc:
        return VerificationReport(identity_id, dict(params), lhs_val, rhs_val, math.inf, tol, False, lhs_err, 0.0, str(exc))
    bad = spec.domain(v)
    if bad:
        return VerificationReport(identity_id, v, lhs_val, rhs_val, math.inf, tol, False, lhs_err,
                                  time.perf_counter() - start, f"out of domain: {bad}")
    quad_tol = min(tol * 1e-2, 1e-10)
    try:
        result = spec.lhs(v, quad_tol, options)
        lhs_val, lhs_err = float(result.value), float(result.abs_error_estimate)
    except (BetaIntegralsError, ArithmeticError, ValueError) as exc:
        reason = f"left side failed: {type(exc).__name__}: {exc}"
    try:
        rhs_val = float(spec.rhs(v, min(quad_tol, 1e-10), method))
    except (BetaIntegralsError, ArithmeticError, ValueError) as exc:
        reason = (reason + "; " if reason else "") + f"right side failed: {type(exc).__name__}: {exc}"
    finite = math.isfinite(lhs_val) and math.isfinite(rhs_val)
    if finite:
        denom = abs(rhs_val) if rhs_val != 0 else 1.0
        rel = abs(lhs_val - rhs_val) / denom
    else:
        rel = math.inf
    passed = finite and rel <= tol
    if finite and not passed:
        reason = f"relative error {rel:.3g} exceeds {tol:.3g}"
    return VerificationReport(identity_id, v, lhs_val, rhs_val, rel, tol, passed, lhs_err,
                              time.perf_counter() - start, reason)


def sample_params(identity_id, rng, max_tries=_MAX_SAMPLE_TRIES):
    """Draw an admissible parameter point with the identity's sampler.

    Parameters
    ----------
    rng : numpy.random.Generator
    """
    spec = get_identity(identity_id)
    for _ in range(max_tries):
        v = spec.sampler(rng)
        if spec.domain(v) is None:
            return v
    raise DomainError(f"no admissible sample for {identity_id} after {max_tries} draws")


def sample_cases(identity_id, count, seed):
    """``count`` admissible :class:`IdentityCase` objects from a seeded generator."""
    rng = np.random.default_rng(seed)
    return [IdentityCase(identity_id, sample_params(identity_id, rng)) for _ in range(count)]


#: Parameter groups under which the closed forms are invariant.
SYMMETRY_GROUPS = {
    "EQ_0_2": _A4,
    "EQ_0_4": _A5,
    "EQ_2_2": _EQ22,
    "EQ_2_3": _EQ23,
    "EQ_2_4": ("b", "p", "q", "u", "v"),
    "EQ_2_5": ("p", "q", "u", "v"),
}


def _resolve_permutation(names, permutation):
    """Mapping ``target name -> source name`` for a permutation of ``names``."""
    perm = tuple(permutation)
    if len(perm) == 2 and all(isinstance(x, str) for x in perm):
        x, y = perm
        if x not in names or y not in names:
            raise DomainError(f"swap {perm} is not inside the symmetric group {names}")
        mapping = {n: n for n in names}
        mapping[x], mapping[y] = y, x
        return mapping
    if sorted(perm) == sorted(names):
        return dict(zip(names, perm))
    if sorted(perm) == list(range(len(names))):
        return {dst: names[src] for dst, src in zip(names, perm)}
    raise DomainError(f"{perm} is not a permutation of {names}")


def symmetry_probe(identity_id, permutation, params, tol=1e-12):
    """Closed form at ``params`` and at the permuted parameters.

    The left-hand integrals are manifestly symmetric in the grouped
    parameters (``SYMMETRY_GROUPS``), so the closed forms must be as well
    even though they are not written symmetrically.

    Parameters
    ----------
    identity_id : str
        A key of ``SYMMETRY_GROUPS``.
    permutation : sequence
        A pair of names to swap, a reordering of the group's names, or a
        reordering of the indices ``0..k-1``.
    params : mapping

    Returns
    -------
    SymmetryReport

    Raises
    ------
    DomainError
        If the identity has no symmetry group or the permutation is invalid.
    """
    if identity_id not in SYMMETRY_GROUPS:
        raise DomainError(f"{identity_id} has no registered parameter symmetry")
    names = SYMMETRY_GROUPS[identity_id]
    mapping = _resolve_permutation(names, permutation)
    moved = dict(params)
    for dst, src in mapping.items():
        moved[dst] = params[src]
    base = closed_form(identity_id, params, tol=tol)
    value = closed_form(identity_id, moved, tol=tol)
    diff = abs(value - base) / max(abs(base), 1e-300)
    return SymmetryReport(identity_id, names, tuple(mapping[n] for n in names), base, value, diff)
