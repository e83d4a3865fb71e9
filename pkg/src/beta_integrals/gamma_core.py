"""Complex gamma arithmetic used by every weight and closed form.

The complex log-gamma comes from :func:`scipy.special.loggamma` (principal
branch). Everything else in this module is assembled in log space so that
products such as ``|Γ(a+is)|²/|Γ(2is)|²`` stay finite far beyond the point
where the individual factors overflow or underflow.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import GammaOverflowError, PoleError

#: Distance to a nonpositive integer below which an argument counts as a pole.
POLE_TOL = 1e-13
#: Tolerance for symbolic cancellation of equal numerator/denominator arguments.
CANCEL_TOL = 1e-12
_LOG_MAX = np.log(np.finfo(float).max)


def nearest_nonpositive_integer(z, tol=POLE_TOL):
    """Boolean mask of entries of ``z`` within ``tol`` of {0, -1, -2, ...}."""
    z = np.asarray(z, dtype=complex)
    re = z.real
    rounded = np.round(re)
    return (rounded <= 0) & (np.abs(re - rounded) <= tol) & (np.abs(z.imag) <= tol)


def _check_poles(z, context):
    bad = nearest_nonpositive_integer(z)
    if np.any(bad):
        raise PoleError(np.asarray(z, dtype=complex)[bad].flat[0], context)


def log_gamma(z):
    """Principal branch of ``log Γ(z)``.

    Parameters
    ----------
    z : complex or array_like
        Argument(s); must avoid the poles 0, -1, -2, ...

    Returns
    -------
    complex or ndarray
        ``log Γ(z)`` with ``exp(log_gamma(z)) == Γ(z)``.

    Raises
    ------
    PoleError
        If any argument is a nonpositive integer.
    """
    z_arr = np.asarray(z, dtype=complex)
    _check_poles(z_arr, "log_gamma")
    out = special.loggamma(z_arr)
    return out[()] if out.ndim == 0 else out


def gamma(z):
    """Complex gamma function via :func:`log_gamma`."""
    return np.exp(log_gamma(z))


def rgamma(z):
    """Reciprocal gamma ``1/Γ(z)``, entire, exactly zero at the poles."""
    z_arr = np.asarray(z, dtype=complex)
    poles = nearest_nonpositive_integer(z_arr)
    safe = np.where(poles, 1.0, z_arr)
    out = np.where(poles, 0.0, np.exp(-special.loggamma(safe)))
    return out[()] if out.ndim == 0 else out


def pochhammer(a, k):
    """Rising factorial ``(a)_k = a (a+1) ... (a+k-1)``.

    Small ``k`` uses the direct product, which is exact in structure and
    safe at any ``a``. Large ``k`` away from poles uses a gamma ratio.

    Parameters
    ----------
    a : complex or array_like
    k : int
        Nonnegative order.
    """
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    a_arr = np.asarray(a, dtype=complex)
    if k <= 64 or np.any(nearest_nonpositive_integer(a_arr, tol=1e-8)):
        out = np.ones_like(a_arr)
        for j in range(k):
            out = out * (a_arr + j)
    else:
        out = np.exp(special.loggamma(a_arr + k) - special.loggamma(a_arr))
    if np.all(a_arr.imag == 0):
        out = out.real
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class GammaRatioSpec:
    """Symbolic ``Γ[numerators / denominators]`` bracket.

    Attributes
    ----------
    numerator_args, denominator_args : tuple of complex
    """

    numerator_args: tuple = field(default_factory=tuple)
    denominator_args: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "numerator_args", tuple(complex(x) for x in self.numerator_args))
        object.__setattr__(self, "denominator_args", tuple(complex(x) for x in self.denominator_args))

    def cancelled(self):
        """Return a copy with equal numerator/denominator pairs removed."""
        num = list(self.numerator_args)
        den = list(self.denominator_args)
        kept_num = []
        for x in num:
            match = next((i for i, y in enumerate(den) if abs(x - y) <= CANCEL_TOL * max(1.0, abs(x))), None)
            if match is None:
                kept_num.append(x)
            else:
                den.pop(match)
        return GammaRatioSpec(tuple(kept_num), tuple(den))


def log_gamma_ratio(spec):
    """Complex logarithm of a gamma bracket after symbolic cancellation.

    Returns ``-inf`` when an uncancelled denominator argument is a pole,
    because the bracket then vanishes.
    """
    reduced = spec.cancelled()
    for x in reduced.numerator_args:
        if nearest_nonpositive_integer(x):
            raise PoleError(x, "gamma_ratio numerator")
    if any(nearest_nonpositive_integer(y) for y in reduced.denominator_args):
        return complex(-np.inf, 0.0)
    total = complex(np.sum(special.loggamma(np.asarray(reduced.numerator_args, dtype=complex))))
    total -= complex(np.sum(special.loggamma(np.asarray(reduced.denominator_args, dtype=complex))))
    return total


def gamma_ratio(spec):
    """Evaluate ``Γ[numerators / denominators]``.

    Raises
    ------
    PoleError
        For an uncancelled numerator pole.
    GammaOverflowError
        If the result exceeds the double-precision range.

    Examples
    --------
    >>> abs(gamma_ratio(GammaRatioSpec((3,), (2, 2))) - 2) < 1e-14
    True
    """
    log_value = log_gamma_ratio(spec)
    if log_value.real == -np.inf:
        return 0j
    if log_value.real > _LOG_MAX:
        raise GammaOverflowError(f"gamma ratio magnitude exp({log_value.real:.1f}) overflows")
    return complex(np.exp(log_value))


def gamma_product(num, den=()):
    """Real-valued shorthand for ``Γ[num / den]`` with real arguments."""
    value = gamma_ratio(GammaRatioSpec(tuple(num), tuple(den)))
    return value.real


def log_abs_sq_gamma(a, s):
    """``log |Γ(a+is)|²``, vectorized over ``a`` and ``s``."""
    z = np.asarray(a, dtype=complex) + 1j * np.asarray(s, dtype=float)
    _check_poles(z, "abs_sq_gamma")
    return 2.0 * special.loggamma(z).real


def abs_sq_gamma(a, s):
    """``|Γ(a+is)|²`` computed as ``exp(2 Re log Γ(a+is))``.

    Examples
    --------
    >>> round(float(abs_sq_gamma(1.0, 1.0)), 6)
    0.272029
    """
    out = np.exp(log_abs_sq_gamma(a, np.abs(np.asarray(s, dtype=float))))
    return out[()] if np.ndim(out) == 0 else out


def log_inv_abs_sq_gamma_2is(s):
    """``log(1/|Γ(2is)|²) = log(2|s| sinh(2π|s|)/π)``, ``-inf`` at ``s = 0``."""
    s = np.abs(np.asarray(s, dtype=float))
    y = 2.0 * np.pi * s
    with np.errstate(divide="ignore"):
        # log sinh(y) = y + log((1 - e^{-2y})/2), stable for every y > 0
        log_sinh = y + np.log(-np.expm1(-2.0 * y)) - np.log(2.0)
        out = np.log(2.0 * s) + log_sinh - np.log(np.pi)
    out = np.where(s == 0, -np.inf, out)
    return out[()] if out.ndim == 0 else out


def inv_abs_sq_gamma_2is(s):
    """``1/|Γ(2is)|² = 2 s sinh(2πs)/π``; regular, about ``4s²`` near zero."""
    s = np.asarray(s, dtype=float)
    out = 2.0 * s * np.sinh(2.0 * np.pi * s) / np.pi
    return out[()] if out.ndim == 0 else out


def log_gamma_weight(numerators, s, denominators=(), double_gamma=True):
    """Log of ``∏|Γ(n_k+is)|² / ∏|Γ(d_k+is)|²``, optionally over ``|Γ(2is)|²``.

    This is the common shape of every beta-integral weight.

    Parameters
    ----------
    numerators, denominators : sequence of float
        Shifts ``n_k`` and ``d_k``.
    s : array_like
        Real abscissae.
    double_gamma : bool
        Include the ``1/|Γ(2is)|²`` factor.
    """
    s = np.abs(np.asarray(s, dtype=float))
    total = np.zeros_like(s)
    for x in numerators:
        total = total + log_abs_sq_gamma(x, s)
    for x in denominators:
        total = total - log_abs_sq_gamma(x, s)
    if double_gamma:
        total = total + log_inv_abs_sq_gamma_2is(s)
    return total


def gamma_weight(numerators, s, denominators=(), double_gamma=True):
    """``exp`` of :func:`log_gamma_weight`; zero at ``s = 0`` when ``double_gamma``."""
    with np.errstate(over="ignore"):
        return np.exp(log_gamma_weight(numerators, s, denominators, double_gamma))


def sin_pi(x):
    """``sin(πx)`` accurate to full relative precision near the integers.

    With ``n`` the nearest integer, ``x - n`` is exact in floating point and
    ``sin(πx) = (-1)^n sin(π(x - n))``; integers give exact zeros.
    """
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    sign = np.where(np.remainder(n, 2.0) == 0, 1.0, -1.0)
    out = sign * np.sin(np.pi * (x - n))
    return out[()] if out.ndim == 0 else out


def rgamma_pair(a, t):
    """``1/(Γ(a+t) Γ(a-t))`` for real ``a`` and real ``t``, stable for large ``|t|``.

    For ``|t|`` beyond a few units the reflection formula turns the product
    into ``sin(π(a-|t|)) Γ(1-a+|t|) / (π Γ(a+|t|))``, which avoids the
    overflow of ``Γ(a+|t|)`` and the underflow of ``1/Γ(a-|t|)``.
    """
    t = np.abs(np.asarray(t, dtype=float))
    a = float(a)
    near = t < max(8.0, 2.0 * abs(a) + 8.0)
    out = np.empty_like(t)
    if np.any(near):
        tn = t[near]
        out[near] = (special.rgamma(a + tn) * special.rgamma(a - tn)).real
    far = ~near
    if np.any(far):
        tf = t[far]
        log_ratio = special.gammaln(1.0 - a + tf) - special.gammaln(a + tf)
        out[far] = sin_pi(a - tf) * np.exp(log_ratio) / np.pi
    return out[()] if out.ndim == 0 else out
