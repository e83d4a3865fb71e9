"""Mellin-Barnes integrals along a vertical contour and their residue sums.

An :class:`MBSpec` encodes

    (1/2πi) ∫ Γ[a_i + s, b_j - s / c_k - s, d_l + s] z^{-s} ds

over a vertical line that separates the left poles ``-a_i - n`` from the
right poles ``b_j + n``. :func:`eval_mb` integrates along that line and
:func:`mb_residue_expand` rewrites the integral as a finite sum of
``pFq`` series with gamma prefactors (simple poles only).
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as sp_integrate
from scipy import special

from .errors import CoincidentPoleError, ContourCollisionError, DomainError, NonConvergenceError
from .gamma_core import GammaRatioSpec, gamma_ratio
from .hypergeometric import SeriesSpec, hyp2f1, pfq
from .quadrature import IntegrandHandle, integrate_halfline

#: Parameters closer than this to an integer difference count as coincident.
COINCIDENT_TOL = 1e-9


def _as_tuple(values):
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class MBSpec:
    """Gamma-argument lists and argument of a Mellin-Barnes integral.

    Attributes
    ----------
    a_list : tuple of complex
        Numerator arguments ``a_i + s`` (left poles).
    b_list : tuple of complex
        Numerator arguments ``b_j - s`` (right poles).
    c_list : tuple of complex
        Denominator arguments ``c_k - s``.
    d_list : tuple of complex
        Denominator arguments ``d_l + s``.
    z : float
        Positive real argument of ``z^{-s}``.
    """

    a_list: tuple = field(default_factory=tuple)
    b_list: tuple = field(default_factory=tuple)
    c_list: tuple = field(default_factory=tuple)
    d_list: tuple = field(default_factory=tuple)
    z: float = 1.0

    def __post_init__(self):
        for name in ("a_list", "b_list", "c_list", "d_list"):
            object.__setattr__(self, name, _as_tuple(getattr(self, name)))
        z = complex(self.z)
        if z.imag != 0 or not z.real > 0:
            raise DomainError(f"MB argument must be real and positive, got {self.z!r}")
        object.__setattr__(self, "z", float(z.real))
        if len(self.a_list) + len(self.b_list) < len(self.c_list) + len(self.d_list):
            raise DomainError("MB integrand needs at least as many numerator as denominator gammas")

    @property
    def real_parameters(self):
        """True when every gamma argument is real."""
        return all(x.imag == 0 for x in self.a_list + self.b_list + self.c_list + self.d_list)

    @property
    def excess(self):
        """``m + n - k - l``; zero means the integrand decays only algebraically."""
        return len(self.a_list) + len(self.b_list) - len(self.c_list) - len(self.d_list)


@dataclass(frozen=True)
class ContourChoice:
    """Vertical line ``Re s = sigma`` and its distance to the nearest pole."""

    sigma: float
    margin: float


def find_contour(spec):
    """Place the contour at the midpoint of the gap between the pole series.

    Raises
    ------
    ContourCollisionError
        If no vertical line separates the two series.

    Examples
    --------
    >>> find_contour(MBSpec((1,), (1,)))
    ContourChoice(sigma=0.0, margin=1.0)
    """
    left = [-x for x in spec.a_list]
    right = list(spec.b_list)
    if not left and not right:
        return ContourChoice(0.0, math.inf)
    if not right:
        return ContourChoice(max(p.real for p in left) + 0.5, 0.5)
    if not left:
        return ContourChoice(min(p.real for p in right) - 0.5, 0.5)
    lp = max(left, key=lambda p: p.real)
    rp = min(right, key=lambda p: p.real)
    if lp.real >= rp.real:
        raise ContourCollisionError(lp, rp)
    return ContourChoice(0.5 * (lp.real + rp.real), 0.5 * (rp.real - lp.real))


def _log_integrand(spec, s):
    s = np.asarray(s, dtype=complex)
    total = np.zeros_like(s)
    for a in spec.a_list:
        total = total + special.loggamma(a + s)
    for b in spec.b_list:
        total = total + special.loggamma(b - s)
    for c in spec.c_list:
        total = total - special.loggamma(c - s)
    for d in spec.d_list:
        total = total - special.loggamma(d + s)
    return total - s * math.log(spec.z)


def mb_integrand(spec, s):
    """The gamma bracket times ``z^{-s}`` at complex ``s``."""
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(_log_integrand(spec, s))


def algebraic_decay(spec, sigma):
    """Power ``p`` with ``|integrand(sigma + it)| ~ |t|^{-p}`` for a balanced spec.

    From Stirling, ``|Γ(x + it)| ~ √(2π) |t|^{Re x - 1/2} e^{-π|t|/2}``.
    """
    power = sum(x.real + sigma - 0.5 for x in spec.a_list)
    power += sum(x.real - sigma - 0.5 for x in spec.b_list)
    power -= sum(x.real - sigma - 0.5 for x in spec.c_list)
    power -= sum(x.real + sigma - 0.5 for x in spec.d_list)
    return -power


def eval_mb(spec, tol=1e-10, sigma=None):
    """Numerically integrate a Mellin-Barnes integral along a vertical line.

    Parameters
    ----------
    spec : MBSpec
    tol : float
        Relative tolerance.
    sigma : float, optional
        Real part of the contour; defaults to :func:`find_contour`. It must
        lie strictly inside the separating gap.

    Returns
    -------
    complex

    Raises
    ------
    ContourCollisionError
        If the pole series overlap.
    DomainError
        If ``sigma`` is outside the separating gap.
    NonConvergenceError
        If the integrand does not decay along the line.

    Examples
    --------
    >>> spec = MBSpec(a_list=(0,), b_list=(1, 1), c_list=(2,), z=1.0)
    >>> abs(eval_mb(spec) - np.log(2)) < 1e-10
    True
    """
    contour = find_contour(spec)
    if sigma is None:
        sigma = contour.sigma
    else:
        sigma = float(sigma)
        left = [-x.real for x in spec.a_list]
        right = [x.real for x in spec.b_list]
        if (left and sigma <= max(left)) or (right and sigma >= min(right)):
            raise DomainError(f"contour Re s = {sigma} does not separate the pole series")
    if spec.excess > 0:
        return _eval_exponential(spec, sigma, tol)
    return _eval_balanced(spec, sigma, tol)


def _line(spec, sigma, sign):
    return lambda t: mb_integrand(spec, sigma + 1j * sign * np.asarray(t, dtype=float))


def _eval_exponential(spec, sigma, tol):
    parts = [(np.real, +1)] if spec.real_parameters else [
        (np.real, +1), (np.imag, +1), (np.real, -1), (np.imag, -1)]
    values = []
    for take, sign in parts:
        line = _line(spec, sigma, sign)
        handle = IntegrandHandle(lambda t, line=line, take=take: take(line(t)))
        mag = IntegrandHandle(lambda t, line=line: np.abs(line(t)))
        scale = integrate_halfline(mag, tol=1e-3).value
        values.append(integrate_halfline(handle, tol=tol, tol_abs=tol * scale).value)
    if spec.real_parameters:
        # conjugate symmetry: the two half-lines combine into 2 Re
        return complex(values[0] / math.pi)
    re = values[0] + values[2]
    im = values[1] + values[3]
    # (1/2πi) ∫ F i dt = (1/2π) ∫ F dt
    return complex(re, im) / (2 * math.pi)


def _eval_balanced(spec, sigma, tol):
    p = algebraic_decay(spec, sigma)
    omega = math.log(spec.z)
    if abs(omega) < 1e-14:
        if not p > 1:
            raise NonConvergenceError(f"MB integrand decays like |t|^-{p:.6g}: integral diverges")
        return _eval_algebraic(spec, sigma, tol, p)
    if not p > 0:
        raise NonConvergenceError(f"MB integrand decays like |t|^-{p:.6g}: integral diverges")
    # strip the z^{-it} oscillation and integrate it against a Fourier weight
    unit = MBSpec(spec.a_list, spec.b_list, spec.c_list, spec.d_list, 1.0)
    signs = (+1,) if spec.real_parameters else (+1, -1)
    total = 0j
    for sign in signs:
        def g(t, sign=sign):
            return complex(mb_integrand(unit, sigma + 1j * sign * t)) * spec.z ** (-sigma)

        scale = abs(g(1.0)) + abs(g(0.0))
        opts = dict(weight="cos", wvar=sign * omega, epsabs=tol * scale * 1e-2, limlst=200)
        opts_s = dict(weight="sin", wvar=sign * omega, epsabs=tol * scale * 1e-2, limlst=200)
        gr = lambda t, g=g: g(t).real
        gi = lambda t, g=g: g(t).imag
        # F = g e^{-iωt}: Re F = Re g cos ωt + Im g sin ωt, Im F = Im g cos ωt - Re g sin ωt
        rc = _fourier(gr, opts, tol)
        rs = _fourier(gr, opts_s, tol)
        ic = _fourier(gi, opts, tol)
        is_ = _fourier(gi, opts_s, tol)
        if spec.real_parameters:
            return complex((rc + is_) / math.pi)
        total += complex(rc + is_, ic - rs)
    return total / (2 * math.pi)


def _fourier(g, opts, tol):
    """QUADPACK Fourier integral over ``[0, ∞)`` with its error checked against the budget.

    QUADPACK warns when the cycle sums are tiny compared with their own
    rounding, which happens whenever the integral is zero to machine
    precision; only the returned error estimate decides failure.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sp_integrate.IntegrationWarning)
        value, err = sp_integrate.quad(g, 0, np.inf, **opts)[:2]
    if not err <= 1e3 * max(opts["epsabs"], tol * abs(value)):
        raise NonConvergenceError(f"Fourier-weighted MB integral error {err:.3g} exceeds the budget")
    return value


def _eval_algebraic(spec, sigma, tol, p):
    parts = [(np.real, +1)] if spec.real_parameters else [
        (np.real, +1), (np.imag, +1), (np.real, -1), (np.imag, -1)]
    values = []
    for take, sign in parts:
        line = _line(spec, sigma, sign)
        handle = IntegrandHandle(lambda t, line=line, take=take: take(line(t)), decay_exponent=p)
        values.append(integrate_halfline(handle, tol=tol).value)
    if spec.real_parameters:
        return complex(values[0] / math.pi)
    return complex(values[0] + values[2], values[1] + values[3]) / (2 * math.pi)


@dataclass(frozen=True)
class ResidueTerm:
    """One term ``prefactor · z^power · pFq(series)`` of a residue expansion."""

    prefactor: GammaRatioSpec
    power: complex
    series: SeriesSpec


def _check_simple(values, side):
    for i, x in enumerate(values):
        for y in values[i + 1:]:
            d = x - y
            if abs(d.imag) <= COINCIDENT_TOL and abs(d.real - round(d.real)) <= COINCIDENT_TOL:
                raise CoincidentPoleError(
                    f"{side} poles from parameters {x!r} and {y!r} differ by an integer"
                )


def mb_residue_expand(spec, side):
    """Rewrite an MB integral as a sum over the residues on one side.

    Parameters
    ----------
    spec : MBSpec
    side : {"left", "right"}

    Returns
    -------
    list of ResidueTerm
        One term per gamma factor whose poles lie on ``side``.

    Raises
    ------
    CoincidentPoleError
        If two pole series on ``side`` overlap (non-simple poles).
    """
    a, b, c, d = spec.a_list, spec.b_list, spec.c_list, spec.d_list
    m, n, k, l = len(a), len(b), len(c), len(d)
    terms = []
    if side == "left":
        _check_simple(a, "left")
        sign = (-1) ** (m + l)
        for i, ai in enumerate(a):
            others = [ar for r, ar in enumerate(a) if r != i]
            prefactor = GammaRatioSpec(
                tuple(ar - ai for ar in others) + tuple(bj + ai for bj in b),
                tuple(ck + ai for ck in c) + tuple(dl - ai for dl in d),
            )
            series = SeriesSpec(
                tuple(bj + ai for bj in b) + tuple(1 - dl + ai for dl in d),
                tuple(1 - ar + ai for ar in others) + tuple(ck + ai for ck in c),
                sign * spec.z,
            )
            terms.append(ResidueTerm(prefactor, ai, series))
    elif side == "right":
        _check_simple(b, "right")
        sign = (-1) ** (n + k)
        for j, bj in enumerate(b):
            others = [br for r, br in enumerate(b) if r != j]
            prefactor = GammaRatioSpec(
                tuple(ai + bj for ai in a) + tuple(br - bj for br in others),
                tuple(ck - bj for ck in c) + tuple(dl + bj for dl in d),
            )
            series = SeriesSpec(
                tuple(ai + bj for ai in a) + tuple(1 - ck + bj for ck in c),
                tuple(1 - br + bj for br in others) + tuple(dl + bj for dl in d),
                sign / spec.z,
            )
            terms.append(ResidueTerm(prefactor, -bj, series))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return terms


def sum_expansion(terms, z, tol=1e-15):
    """Numeric value of a residue expansion at argument ``z``.

    ``₂F₁`` terms with a real argument ``<= 1`` use the analytically
    continued :func:`hyp2f1`; everything else uses :func:`pfq`, which raises
    ``DivergenceError`` outside the region of convergence.
    """
    total = 0j
    for term in terms:
        factor = gamma_ratio(term.prefactor)
        if factor == 0:
            continue
        series = term.series
        x = series.argument
        if series.p == 2 and series.q == 1 and x.imag == 0 and x.real <= 1:
            value = complex(hyp2f1(*series.numerator_params, series.denominator_params[0], x.real, tol))
        else:
            value = pfq(series, tol).value
        total += factor * complex(z) ** term.power * value
    return total
