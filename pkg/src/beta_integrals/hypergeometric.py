"""Generalized hypergeometric series and ₂F₁ on the negative real axis.

``pfq`` sums the defining series by term ratios. Terminating series are
summed exactly. Inside the unit disk the tail is bounded with a ratio test.
At unit argument, where convergence is only algebraic, the partial sums are
Richardson-extrapolated using their known power-law error expansion.

``f21_neg_axis`` evaluates ``₂F₁(a, b; c; -x)`` for all ``x >= 0`` with
complex parameters. It uses the Pfaff transformation into ``[0, 1)`` for
moderate ``x`` and the ``1/x`` connection formula for large ``x``.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DivergenceError, PoleError
from .gamma_core import GammaRatioSpec, gamma_ratio, nearest_nonpositive_integer

TERMINATE_TOL = 1e-12
_EPS = np.finfo(float).eps
#: Above this ``x`` the negative-axis evaluator switches to the 1/x expansion.
X_SWITCH = 1.5
#: Radius and node count of the circle average used near degenerate ``b - a``.
CIRCLE_RADIUS = 0.25
CIRCLE_NODES = 32
#: Distance of ``b - a`` from an integer below which the circle average is used.
NEAR_DEGENERATE = 1e-3


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of ``pFq(numerators; denominators; argument)``."""

    numerator_params: tuple
    denominator_params: tuple
    argument: complex

    def __post_init__(self):
        object.__setattr__(self, "numerator_params", tuple(complex(x) for x in self.numerator_params))
        object.__setattr__(self, "denominator_params", tuple(complex(x) for x in self.denominator_params))
        object.__setattr__(self, "argument", complex(self.argument))

    @property
    def p(self):
        return len(self.numerator_params)

    @property
    def q(self):
        return len(self.denominator_params)


@dataclass(frozen=True)
class EvalResult:
    """Value of a series with convergence metadata."""

    value: complex
    terms_used: int
    converged: bool
    terminating: bool
    error_estimate: float = 0.0


def _terminating_order(params):
    """Smallest ``n`` with some parameter equal to ``-n``, or ``None``."""
    orders = []
    for x in params:
        x = complex(x)
        n = round(x.real)
        if n <= 0 and abs(x.real - n) <= TERMINATE_TOL and abs(x.imag) <= TERMINATE_TOL:
            orders.append(-n)
    return min(orders) if orders else None


def _series(num, den, z, tol, max_terms):
    """Vectorized partial summation of the pFq series.

    Parameters are lists of arrays broadcastable against ``z``. Stops per
    element when three consecutive terms and a ratio-test tail are below
    ``tol`` relative to the running sum. Also returns the largest term
    modulus, which bounds the cancellation error of the sum.
    """
    z = np.asarray(z, dtype=complex)
    shape = np.broadcast_shapes(z.shape, *[np.shape(x) for x in num], *[np.shape(x) for x in den])
    z = np.broadcast_to(z, shape)
    num = [np.broadcast_to(np.asarray(x, dtype=complex), shape) for x in num]
    den = [np.broadcast_to(np.asarray(x, dtype=complex), shape) for x in den]
    term = np.ones(shape, dtype=complex)
    total = np.ones(shape, dtype=complex)
    quiet = np.zeros(shape, dtype=int)
    done = np.zeros(shape, dtype=bool)
    absz = np.abs(z)
    peak = np.ones(shape)
    k = 0
    for k in range(max_terms):
        ratio = np.ones(shape, dtype=complex) * z / (k + 1)
        for x in num:
            ratio = ratio * (x + k)
        for x in den:
            ratio = ratio / (x + k)
        term = np.where(done, 0.0, term * ratio)
        total = total + term
        peak = np.maximum(peak, np.abs(term))
        scale = np.maximum(np.abs(total), 1e-300)
        small = np.abs(term) <= tol * scale
        quiet = np.where(small, quiet + 1, 0)
        rho = np.maximum(np.abs(ratio), absz)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(rho < 1, np.abs(term) * rho / (1 - rho), np.inf)
        tail = np.where(term == 0, 0.0, tail)
        done = done | ((quiet >= 3) & (tail <= tol * scale))
        if np.all(done):
            break
    return total, k + 1, done, peak


def _richardson(partial_sums, sizes, exponents):
    """Extrapolate ``S(N) = S + Σ_j c_j N^{-exponents[j]}`` to ``N → ∞``.

    ``sizes`` must double at each step. Returns the most self-consistent
    diagonal entry and the size of its last correction.
    """
    rows = [[complex(s)] for s in partial_sums]
    best, best_err = rows[0][0], np.inf
    for i in range(1, len(rows)):
        for j in range(1, i + 1):
            factor = 2.0 ** exponents[j - 1]
            prev = rows[i][j - 1]
            rows[i].append(prev + (prev - rows[i - 1][j - 1]) / (factor - 1.0))
        err = abs(rows[i][i] - rows[i - 1][i - 1])
        if err < best_err:
            best, best_err = rows[i][i], err
    return best, best_err


def _unit_argument_sum(num, den, z, tol):
    """Sum a ``q+1 F q`` series at ``|z| = 1`` with ``Re(excess) > 0``."""
    excess = sum(den) - sum(num)
    scale = max([1.0] + [abs(x) for x in num + den])
    n0 = 64
    while n0 < 4 * scale:
        n0 *= 2
    levels = 8
    n_max = n0 * 2 ** (levels - 1)
    k = np.arange(n_max, dtype=float)
    ratio = np.full(n_max, complex(z)) / (k + 1)
    for x in num:
        ratio = ratio * (x + k)
    for x in den:
        ratio = ratio / (x + k)
    terms = np.concatenate(([1.0 + 0j], np.cumprod(ratio)))
    sums = np.cumsum(terms)
    sizes = [n0 * 2 ** i for i in range(levels)]
    if abs(z - 1) < 1e-14:
        # S(N) - S ~ N^{-e}(c0 + c1/N + ...)
        partial = [sums[n] for n in sizes]
        exps = [excess + j for j in range(levels)]
    elif abs(z + 1) < 1e-14:
        # even partial sums of an alternating tail ~ N^{-1-e}(c0 + c1/N + ...)
        partial = [sums[n] for n in sizes]
        exps = [excess + 1 + j for j in range(levels)]
    else:
        value = sums[-1]
        err = abs(terms[-1]) * n_max
        return value, n_max, err
    value, err = _richardson(partial, sizes, exps)
    return value, n_max, err


def pfq(spec, tol=1e-15, max_terms=100000):
    """Evaluate the generalized hypergeometric series.

    Parameters
    ----------
    spec : SeriesSpec
    tol : float
        Relative truncation tolerance.
    max_terms : int
        Cap on the number of terms inside the unit disk.

    Returns
    -------
    EvalResult

    Raises
    ------
    DivergenceError
        Unless the series terminates, ``p <= q``, ``p = q + 1`` with
        ``|z| < 1``, or ``p = q + 1`` at unit argument with
        ``Re(Σ denominators - Σ numerators) > 0``.
    PoleError
        A denominator Pochhammer symbol vanishes before the series stops.

    Examples
    --------
    >>> abs(pfq(SeriesSpec((1, 1), (3,), 1)).value - 2) < 1e-10
    True
    """
    num = list(spec.numerator_params)
    den = list(spec.denominator_params)
    z = spec.argument
    n_term = _terminating_order(num)
    for b in den:
        m = _terminating_order([b])
        if m is not None and (n_term is None or n_term > m):
            raise PoleError(b, "pfq denominator")
    if n_term is not None:
        total = 1.0 + 0j
        term = 1.0 + 0j
        for k in range(n_term):
            ratio = z / (k + 1)
            for x in num:
                ratio *= x + k
            for x in den:
                ratio /= x + k
            term *= ratio
            total += term
        return EvalResult(total, n_term + 1, True, True)
    if z == 0:
        return EvalResult(1.0 + 0j, 1, True, False)
    p, q = len(num), len(den)
    if p > q + 1:
        raise DivergenceError(f"{p}F{q} series has zero radius of convergence")
    if p <= q or abs(z) < 1 - 1e-14:
        value, used, done, _ = _series(num, den, z, tol, max_terms)
        return EvalResult(complex(value), used, bool(done), False)
    if p == q + 1 and abs(abs(z) - 1) <= 1e-14:
        excess = sum(den) - sum(num)
        if excess.real <= 0:
            raise DivergenceError(
                f"unit-argument series needs Re(Σb - Σa) > 0, got {excess.real:.6g}"
            )
        value, used, err = _unit_argument_sum(num, den, z, tol)
        converged = err <= max(tol, 1e-13) * max(abs(value), 1e-300) * 1e3
        return EvalResult(complex(value), used, bool(converged), False, float(err))
    raise DivergenceError(f"{p}F{q} series diverges at argument {z!r}")


def gauss_2f1_unit(a, b, c):
    """Gauss sum ``₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))``.

    Raises
    ------
    DivergenceError
        If ``Re(c - a - b) <= 0``.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if (c - a - b).real <= 0:
        raise DivergenceError("Gauss sum needs Re(c - a - b) > 0")
    return gamma_ratio(GammaRatioSpec((c, c - a - b), (c - a, c - b)))


def _log_or_zero(z):
    """``loggamma`` with poles mapped to ``+inf`` (so ``exp(-...)`` gives 0)."""
    poles = nearest_nonpositive_integer(z)
    safe = np.where(poles, 1.0, z)
    return np.where(poles, np.inf, special.loggamma(safe))


def _f21_pfaff(a, b, c, x, tol):
    """``(1+x)^{-a} ₂F₁(a, c-b; c; x/(1+x))`` choosing the milder Pfaff variant."""
    w = x / (1.0 + x)
    grow1 = np.maximum(np.abs(a), np.abs(c - b))
    grow2 = np.maximum(np.abs(b), np.abs(c - a))
    # a terminating numerator keeps its series finite, so prefer it
    term_a = nearest_nonpositive_integer(a, TERMINATE_TOL)
    term_b = nearest_nonpositive_integer(b, TERMINATE_TOL)
    use_first = np.where(term_a, True, np.where(term_b, False, grow1 <= grow2))
    lead = np.where(use_first, a, b)
    other = np.where(use_first, c - b, c - a)
    value, _, _, peak = _series([lead, other], [c], w, tol, 20000)
    factor = np.exp(-lead * np.log1p(x))
    return factor * value, np.abs(factor) * peak * _EPS


def _f21_inverse(a, b, c, x, tol):
    """``₂F₁(a, b; c; -x)`` from the two-term expansion in ``-1/x``."""
    logx = np.log(x)
    total = np.zeros(np.broadcast(a, b, c, x).shape, dtype=complex)
    for p1, p2 in ((a, b), (b, a)):
        log_pref = special.loggamma(c) + special.loggamma(p2 - p1) - p1 * logx
        log_pref = log_pref - _log_or_zero(p2) - _log_or_zero(c - p1)
        series, _, _, _ = _series([p1, p1 - c + 1], [p1 - p2 + 1], -1.0 / x, tol, 20000)
        total = total + np.exp(log_pref) * series
    return total


def _f21_shifted(a, b, c, x, tol):
    """``₂F₁(a, b; c; -x)`` from the two-term expansion in ``1/(1+x)``.

    For large imaginary parts of ``a`` and ``b`` this loses far fewer digits
    to cancellation than the Pfaff series. Returns the value and a rounding
    error estimate (infinite where ``b - a`` is an integer).
    """
    log1px = np.log1p(x)
    shape = np.broadcast(a, b, c, x).shape
    total = np.zeros(shape, dtype=complex)
    err = np.zeros(shape)
    with np.errstate(invalid="ignore", over="ignore"):
        for p1, p2 in ((a, b), (b, a)):
            log_pref = special.loggamma(c) - p1 * log1px
            log_pref = log_pref - _log_or_zero(p2) - _log_or_zero(c - p1)
            log_pref = log_pref + _log_or_zero(p2 - p1)
            series, _, _, peak = _series([p1, c - p2], [p1 - p2 + 1], 1.0 / (1.0 + x), tol, 20000)
            pref = np.exp(log_pref)
            total = total + pref * series
            err = err + np.abs(pref) * peak * _EPS
    bad = ~np.isfinite(total) | ~np.isfinite(err)
    err = np.where(bad, np.inf, err)
    total = np.where(bad, 0.0, total)
    return total, err


def _f21_large_x(a, b, c, x, tol):
    """Large-``x`` branch with a circle average when ``b - a`` is near an integer.

    Away from integer ``b - a`` the two-term expansion loses a factor of
    about ``1/(δ ln x)`` to cancellation (``δ`` the distance to the integer),
    which is harmless for ``δ >= NEAR_DEGENERATE``. Closer to an integer the
    value is the mean over a circle in ``a``. Its radius shrinks like
    ``1/ln x`` so that ``x^{-a}`` varies by at most a factor ``e^{1/2}``
    around the circle.
    """
    diff = b - a
    dist = np.hypot(diff.real - np.round(diff.real), diff.imag)
    near = dist < NEAR_DEGENERATE
    out = np.empty(np.broadcast(a, b, c, x).shape, dtype=complex)
    if np.any(~near):
        idx = ~near
        out[idx] = _f21_inverse(a[idx], b[idx], c[idx], x[idx], tol)
    if np.any(near):
        idx = near
        radius = np.minimum(CIRCLE_RADIUS, 0.5 / np.log(x[idx]))
        # F is entire in a, so its value is the mean over a circle around a
        acc = np.zeros(np.count_nonzero(idx), dtype=complex)
        for j in range(CIRCLE_NODES):
            shift = radius * np.exp(2j * np.pi * (j + 0.5) / CIRCLE_NODES)
            acc += _f21_inverse(a[idx] + shift, b[idx], c[idx], x[idx], tol)
        out[idx] = acc / CIRCLE_NODES
    return out


def f21_neg_axis(a, b, c, x, tol=1e-16):
    """``₂F₁(a, b; c; -x)`` for real ``x >= 0`` and complex parameters.

    Parameters
    ----------
    a, b, c : complex or array_like
    x : float or array_like
        Nonnegative; all inputs broadcast together.

    Returns
    -------
    complex or ndarray of complex

    Raises
    ------
    PoleError
        If ``c`` is a nonpositive integer.

    Examples
    --------
    >>> abs(f21_neg_axis(1, 1, 2, 1.0) - np.log(2)) < 1e-14
    True
    """
    a, b, c, x = np.broadcast_arrays(
        np.asarray(a, dtype=complex),
        np.asarray(b, dtype=complex),
        np.asarray(c, dtype=complex),
        np.asarray(x, dtype=float),
    )
    if np.any(nearest_nonpositive_integer(c)):
        raise PoleError(c[nearest_nonpositive_integer(c)].flat[0], "f21_neg_axis c")
    if np.any(x < 0):
        raise ValueError("f21_neg_axis needs x >= 0")
    out = np.empty(x.shape, dtype=complex)
    terminating = nearest_nonpositive_integer(a, TERMINATE_TOL) | nearest_nonpositive_integer(b, TERMINATE_TOL)
    small = (x <= X_SWITCH) | terminating
    if np.any(small):
        idx = small
        value, err = _f21_pfaff(a[idx], b[idx], c[idx], x[idx], tol)
        # large imaginary parameters make the Pfaff series cancel badly;
        # the expansion in 1/(1+x) is then much better conditioned
        risky = (err > 1e-13 * np.abs(value)) & ~terminating[idx]
        if np.any(risky):
            sub = np.flatnonzero(idx)[risky]
            alt, alt_err = _f21_shifted(a.flat[sub], b.flat[sub], c.flat[sub], x.flat[sub], tol)
            better = alt_err < err[risky]
            value[risky] = np.where(better, alt, value[risky])
        out[idx] = value
    if np.any(~small):
        big = ~small
        out[big] = _f21_large_x(a[big], b[big], c[big], x[big], tol)
    return out[()] if out.ndim == 0 else out


def hyp2f1(a, b, c, z, tol=1e-16):
    """``₂F₁(a, b; c; z)`` for real ``z <= 1``.

    Negative ``z`` goes through :func:`f21_neg_axis`, ``0 <= z < 1`` through
    the direct series, and ``z = 1`` through the Gauss sum.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr > 1):
        raise DivergenceError("hyp2f1 is only provided for real z <= 1")
    a_, b_, c_, z_ = np.broadcast_arrays(
        np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), np.asarray(c, dtype=complex), z_arr
    )
    out = np.empty(z_.shape, dtype=complex)
    neg = z_ < 0
    if np.any(neg):
        out[neg] = f21_neg_axis(a_[neg], b_[neg], c_[neg], -z_[neg], tol)
    mid = (z_ >= 0) & (z_ <= 0.5)
    if np.any(mid):
        out[mid], _, _, _ = _series([a_[mid], b_[mid]], [c_[mid]], z_[mid], tol, 100000)
    # Pfaff: F(a, b; c; z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)) moves (1/2, 1) onto the negative axis
    upper = (z_ > 0.5) & (z_ < 1)
    if np.any(upper):
        zu = z_[upper]
        out[upper] = (1 - zu) ** (-a_[upper]) * f21_neg_axis(a_[upper], c_[upper] - b_[upper], c_[upper], zu / (1 - zu), tol)
    one = z_ == 1
    for idx in np.ndindex(z_.shape):
        if one[idx]:
            out[idx] = gauss_2f1_unit(a_[idx], b_[idx], c_[idx])
    return out[()] if out.ndim == 0 else out
