"""Wilson polynomials, their orthogonality and the finite orthogonal systems.

Polynomials are even in ``s`` and are stored in the variable ``t = s²``.
The natural basis is ``h_k(t) = (a+is)_k (a-is)_k = ∏_{j<k} (t + (a+j)²)``,
monic of degree ``k``. A linear functional ``ℓ`` known through its moments
``ℓ(h_k)`` turns Gram matrices into pure gamma arithmetic.

Every weight integral over ``[0, ∞)`` carries the factor ``1/(2π)``. This is
the normalization under which the total mass of the four-parameter weight
equals ``∏Γ(a_j+a_k)/Γ(a+b+c+d)``.

Functionals
-----------
``CLASSICAL_W``
    ``(1/2π) ∫_0^∞ f(s²) ∏|Γ(a_j+is)|² / |Γ(2is)|² ds``.
``W1``
    ``(1/2π) ∫_0^∞ f(s²) |Γ(p+is)Γ(u+is)Γ(v+is)|² / |Γ(2is)Γ(q+is)|² ds``;
    finitely many moments; Wilson parameters ``(p, u, v, 1-q)``.
``W2_DOUGALL``
    ``Σ_n (α+n) φ(α+n) f(-(α+n)²)`` with ``φ(x) = ∏ 1/(Γ(a_j+x)Γ(a_j-x))``;
    Wilson parameters ``1 - a_j``.
``W3_ASKEY``
    ``PV ∫_ℝ f(-x²) 2πx/sin(2πx) φ(x) dx``; same Wilson parameters.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError
from .gamma_core import (
    gamma_product,
    gamma_weight,
    pochhammer,
    sin_pi,
)
from .identity_catalog import askey_weight, dougall_term
from .quadrature import (
    IntegrandHandle,
    bilateral_sum,
    integrate_halfline,
    integrate_pv_lattice,
)

TWO_PI = 2.0 * math.pi
KINDS = ("CLASSICAL_W", "W1", "W2_DOUGALL", "W3_ASKEY")
ALGEBRAIC = "ALGEBRAIC"
NUMERIC = "NUMERIC"


@dataclass(frozen=True)
class WilsonParams:
    """Parameter quadruple ``(a, b, c, d)`` of the Wilson polynomials.

    Any real values are allowed. The coefficients are formed as
    ``(a+b+k)_{n-k}`` rather than ``(a+b)_n/(a+b)_k``, so nonpositive
    integer sums such as those of the finite systems cause no poles.
    """

    a: float
    b: float
    c: float
    d: float

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def total(self):
        return self.a + self.b + self.c + self.d

    def permuted(self, permutation):
        """Parameters reordered by an index permutation of ``(a, b, c, d)``."""
        values = self.as_tuple()
        return WilsonParams(*(values[i] for i in permutation))


@dataclass(frozen=True)
class EvenPolynomial:
    """Polynomial ``Σ c_j t^j`` in ``t = s²``; even in ``s`` by construction."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(float(x) for x in self.coefficients) or (0.0,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        nz = [j for j, x in enumerate(self.coefficients) if x != 0]
        return nz[-1] if nz else 0

    def in_t(self, t):
        """Value at ``t`` (which may be negative: ``t = -x²`` for imaginary ``s``)."""
        return Polynomial(self.coefficients)(np.asarray(t, dtype=float))

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return self.in_t(s * s)

    def __mul__(self, other):
        product = Polynomial(self.coefficients) * Polynomial(other.coefficients)
        return EvenPolynomial(tuple(product.coef))


def h_basis_polynomial(k, base_point):
    """``h_k(t) = ∏_{j<k} (t + (base+j)²)`` as an :class:`EvenPolynomial`."""
    poly = Polynomial([1.0])
    for j in range(k):
        poly = poly * Polynomial([(base_point + j) ** 2, 1.0])
    return EvenPolynomial(tuple(poly.coef))


def h_basis_expand(poly, base_point):
    """Coefficients ``c_k`` with ``poly = Σ c_k h_k``.

    Back substitution from the top degree, using that ``h_k`` is monic of
    degree ``k`` in ``t``.

    Examples
    --------
    >>> [round(x, 12) for x in h_basis_expand(EvenPolynomial((0.0, 1.0)), 0.5)]
    [-0.25, 1.0]
    """
    rest = Polynomial(poly.coefficients)
    n = len(poly.coefficients) - 1
    out = np.zeros(n + 1)
    for k in range(n, -1, -1):
        coef = rest.coef[k] if k < len(rest.coef) else 0.0
        out[k] = coef
        if coef != 0:
            rest = rest - coef * Polynomial(h_basis_polynomial(k, base_point).coefficients)
    return out


def wilson_h_coefficients(wp, n):
    """Coefficients of ``p_n`` in the ``h_k`` basis at base point ``a``.

    ``(-n)_k (n+a+b+c+d-1)_k / k! · (a+b+k)_{n-k} (a+c+k)_{n-k} (a+d+k)_{n-k}``,
    which is ``(a+b)_n(a+c)_n(a+d)_n (-n)_k (n+a+b+c+d-1)_k / ((a+b)_k (a+c)_k (a+d)_k k!)``
    without the divisions.
    """
    a, b, c, d = wp.as_tuple()
    out = np.zeros(n + 1)
    lead = 1.0
    for k in range(n + 1):
        tail = 1.0
        for x in (a + b, a + c, a + d):
            tail *= float(np.real(pochhammer(x + k, n - k)))
        out[k] = lead * tail
        lead *= (-n + k) * (n + wp.total - 1 + k) / (k + 1)
    return out


def wilson_polynomial(wp, n):
    """``p_n(a, b, c, d; t)`` as an :class:`EvenPolynomial` in ``t = s²``."""
    total = Polynomial([0.0])
    for k, coef in enumerate(wilson_h_coefficients(wp, n)):
        total = total + coef * Polynomial(h_basis_polynomial(k, wp.a).coefficients)
    return EvenPolynomial(tuple(total.coef))


def wilson_eval(wp, n, s):
    """Wilson polynomial ``p_n(s²)`` from its terminating ₄F₃ sum.

    ``(a+b)_n(a+c)_n(a+d)_n ₄F₃(-n, n+a+b+c+d-1, a+is, a-is; a+b, a+c, a+d; 1)``.

    Examples
    --------
    >>> wp = WilsonParams(0.5, 0.5, 0.5, 0.5)
    >>> float(wilson_eval(wp, 1, 0.0)), float(wilson_eval(wp, 1, 1.0))
    (0.5, -1.5)
    """
    s = np.asarray(s, dtype=float)
    t = s * s
    coeffs = wilson_h_coefficients(wp, n)
    out = np.zeros_like(t)
    h = np.ones_like(t)
    for k, coef in enumerate(coeffs):
        out = out + coef * h
        h = h * (t + (wp.a + k) ** 2)
    return out[()] if out.ndim == 0 else out


def symmetry_check(wp, n, permutation, s_grid=(0.0, 0.3, 0.7, 1.1, 1.9, 3.0)):
    """Largest ``|p_n(wp) - p_n(permuted wp)|`` over ``s_grid``, relative to ``max|p_n|``.

    The Wilson polynomials are symmetric in all four parameters; for
    permutations moving ``a`` this is a numerical form of Whipple's
    transformation of terminating balanced ₄F₃ series.
    """
    s = np.asarray(s_grid, dtype=float)
    base = wilson_eval(wp, n, s)
    moved = wilson_eval(wp.permuted(permutation), n, s)
    scale = max(float(np.max(np.abs(base))), 1e-300)
    return float(np.max(np.abs(base - moved))) / scale


# classical orthogonality ---------------------------------------------------------------

def classical_weight(wp, s):
    """``(1/2π) ∏|Γ(a_j+is)|² / |Γ(2is)|²``."""
    return gamma_weight(wp.as_tuple(), s) / TWO_PI


def wilson_norm(wp, n):
    """Squared norm ``(1/2π)∫_0^∞ p_n² w ds`` (quadrature-confirmed form).

    ``n! ∏_{j<k} Γ(n+a_j+a_k) / (Γ(n+a+b+c+d-1) (2n+a+b+c+d-1))``.
    """
    pairs = [x + y for i, x in enumerate(wp.as_tuple()) for y in wp.as_tuple()[i + 1:]]
    return math.factorial(n) * gamma_product(tuple(n + x for x in pairs), (n + wp.total - 1,)) / (
        2 * n + wp.total - 1
    )


def printed_wilson_norm(wp, n):
    """The norm with ``Γ(n+a+b+c+d)`` in place of ``Γ(n+a+b+c+d-1)``.

    It is smaller than :func:`wilson_norm` by the factor ``n+a+b+c+d-1``.
    """
    return wilson_norm(wp, n) / (n + wp.total - 1)


def classical_gram(wp, n_max, tol=1e-11):
    """Gram matrix ``G_mn = (1/2π)∫_0^∞ p_m p_n ∏|Γ(a_j+is)|²/|Γ(2is)|² ds`` by quadrature.

    Raises
    ------
    DomainError
        Unless ``a, b, c, d > 0``.
    """
    if not all(x > 0 for x in wp.as_tuple()):
        raise DomainError("the classical weight needs a, b, c, d > 0")
    polys = [wilson_polynomial(wp, n) for n in range(n_max + 1)]
    gram = np.zeros((n_max + 1, n_max + 1))
    for m in range(n_max + 1):
        for n in range(m, n_max + 1):
            pm, pn = polys[m], polys[n]

            def f(s, pm=pm, pn=pn):
                return pm(s) * pn(s) * classical_weight(wp, s)

            def f_abs(s, pm=pm, pn=pn):
                return np.abs(f(s))

            scale = integrate_halfline(IntegrandHandle(f_abs), tol=1e-6).value
            gram[m, n] = gram[n, m] = integrate_halfline(IntegrandHandle(f), tol=tol, tol_abs=tol * scale).value
    return gram


# Jacobi-type biorthogonality ---------------------------------------------------------

def jacobi_pairing_matrix(mu, nu, size):
    """``B(e_k, f_l) = Γ(ν+k+l)/Γ(μ+ν+k+l)`` for ``k, l < size``.

    This is ``∫_0^1 x^{k+l} x^{ν-1}(1-x)^{μ-1} dx / Γ(μ)``.
    """
    return np.array([[gamma_product((nu + k + l,), (mu + nu + k + l,)) for l in range(size)] for k in range(size)])


def jacobi_coefficients(mu, nu, n):
    """``(-n)_j (n+μ+ν-1)_j / ((ν)_j j!)`` for ``j = 0..n``."""
    out = np.zeros(n + 1)
    term = 1.0
    for j in range(n + 1):
        out[j] = term
        term *= (-n + j) * (n + mu + nu - 1 + j) / ((nu + j) * (j + 1))
    return out


def jacobi_coefficients_exact(mu, nu, n):
    """:func:`jacobi_coefficients` in rational arithmetic (rational ``μ``, ``ν``)."""
    mu, nu = Fraction(mu), Fraction(nu)
    out = []
    term = Fraction(1)
    for j in range(n + 1):
        out.append(term)
        term *= Fraction(-n + j) * (n + mu + nu - 1 + j) / ((nu + j) * (j + 1))
    return out


def jacobi_norm(mu, nu, n):
    """Confirmed ``B(R_n, T_n) = n! Γ(μ+n) Γ(ν)² / (Γ(μ) Γ(ν+n) Γ(n+μ+ν-1) (2n+μ+ν-1))``."""
    return math.factorial(n) * gamma_product((mu + n, nu, nu), (mu, nu + n, n + mu + nu - 1)) / (2 * n + mu + nu - 1)


def printed_jacobi_norm(mu, nu, n):
    """``n! Γ(ν) Γ(μ+n) / (Γ(ν+n) Γ(n+μ+ν-1) (2n+μ+ν-1))``; equals ``Γ(μ)/Γ(ν)`` times :func:`jacobi_norm`."""
    return math.factorial(n) * gamma_product((nu, mu + n), (nu + n, n + mu + nu - 1)) / (2 * n + mu + nu - 1)


def jacobi_biorthogonal(mu, nu, N, exact=True):
    """Biorthogonality of ``R_n, T_n`` (``n < N``) under the pairing ``B``.

    ``R_n`` and ``T_n`` share the coefficient vector of
    :func:`jacobi_coefficients`. The pairing matrix is a Hankel matrix of
    moments whose condition number grows quickly with ``N``. With
    ``exact=True`` the parameters are converted exactly to rationals, the
    moment ratios ``B_m/B_0 = ∏_{i<m} (ν+i)/(μ+ν+i)`` and all sums are formed
    in rational arithmetic, and only the common factor ``B_0`` is a float.

    Returns
    -------
    residual : float
        ``max_{k≠l} |B(R_k, T_l)| / sqrt(|B(R_k,T_k) B(R_l,T_l)|)``.
    norms : ndarray
        Diagonal values ``B(R_n, T_n)``.

    Raises
    ------
    DomainError
        Unless ``μ, ν > 0`` and ``1 <= N <= 20``.
    """
    if not (mu > 0 and nu > 0):
        raise DomainError("needs mu, nu > 0")
    if not 1 <= N <= 20:
        raise DomainError("N must lie in 1..20")
    if exact:
        m, v = Fraction(mu), Fraction(nu)
        ratios = [Fraction(1)]
        for i in range(2 * N):
            ratios.append(ratios[-1] * (v + i) / (m + v + i))
        coeffs = [jacobi_coefficients_exact(m, v, n) for n in range(N)]
        gram_q = [[sum(ci * cj * ratios[i + j] for i, ci in enumerate(coeffs[k]) for j, cj in enumerate(coeffs[l]))
                   for l in range(N)] for k in range(N)]
        gram = gamma_product((nu,), (mu + nu,)) * np.array([[float(x) for x in row] for row in gram_q])
    else:
        pairing = jacobi_pairing_matrix(mu, nu, N)
        coeff_matrix = np.zeros((N, N))
        for n in range(N):
            coeff_matrix[n, : n + 1] = jacobi_coefficients(mu, nu, n)
        gram = coeff_matrix @ pairing @ coeff_matrix.T
    norms = np.diag(gram).copy()
    scale = np.sqrt(np.abs(np.outer(norms, norms)))
    off = np.abs(gram - np.diag(norms)) / scale
    return float(np.max(off)), norms


# moment functionals --------------------------------------------------------------------

@dataclass(frozen=True)
class MomentFunctional:
    """Linear functional on even polynomials, known by its moments ``ℓ(h_k)``.

    Attributes
    ----------
    kind : str
        One of ``KINDS``.
    params : dict
        ``a, b, c, d`` (CLASSICAL_W); ``p, u, v, q`` (W1);
        ``a1..a4, alpha`` (W2_DOUGALL); ``a1..a4`` (W3_ASKEY).
    base_point : float
        Base point of the ``h_k`` basis: ``a``, ``p`` or ``1 - a1``.
    """

    kind: str
    params: dict
    base_point: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown functional kind {self.kind!r}")

    @property
    def max_moment(self):
        """Largest ``k`` with a finite moment ``ℓ(h_k)`` (``None`` when unbounded)."""
        v = self.params
        if self.kind == "CLASSICAL_W":
            return None
        if self.kind == "W1":
            budget = v["q"] - v["p"] - v["u"] - v["v"]
        else:
            budget = sum(v[f"a{j}"] for j in range(1, 5)) - 3
        return math.ceil(budget) - 1


def _a4(params):
    return tuple(params[f"a{j}"] for j in range(1, 5))


def classical_functional(wp):
    return MomentFunctional("CLASSICAL_W", dict(zip("abcd", wp.as_tuple())), wp.a)


def w1_functional(p, u, v, q):
    return MomentFunctional("W1", {"p": p, "u": u, "v": v, "q": q}, p)


def w2_functional(a, alpha):
    params = {f"a{j + 1}": x for j, x in enumerate(a)}
    params["alpha"] = alpha
    return MomentFunctional("W2_DOUGALL", params, 1 - a[0])


def w3_functional(a):
    return MomentFunctional("W3_ASKEY", {f"a{j + 1}": x for j, x in enumerate(a)}, 1 - a[0])


def _askey_moment(a, k):
    a1, rest = a[0], a[1:]
    num = (sum(a) - k - 3,)
    den = tuple(a1 + x - k - 1 for x in rest) + tuple(
        x + y - 1 for i, x in enumerate(rest) for y in rest[i + 1:]
    )
    return gamma_product(num, den)


def moment(mf, k):
    """Closed-form moment ``ℓ(h_k)``.

    * CLASSICAL_W: ``Γ(a+b+k)Γ(a+c+k)Γ(a+d+k)Γ(b+c)Γ(b+d)Γ(c+d)/Γ(a+b+c+d+k)``.
    * W1: ``Γ(p+u+k)Γ(p+v+k)Γ(u+v)Γ(q-p-u-v-k)/(Γ(q-p-k)Γ(q-u)Γ(q-v))``.
    * W3_ASKEY: ``M_k = Γ(Σa-k-3) / (∏_{j≥2} Γ(a_1+a_j-k-1) ∏_{2≤j<l} Γ(a_j+a_l-1))``.
    * W2_DOUGALL: ``sin(2πα)/(2π) · M_k``.

    Raises
    ------
    DomainError
        If ``k`` exceeds the range of finite moments.
    """
    v = mf.params
    if mf.max_moment is not None and k > mf.max_moment:
        raise DomainError(f"moment h_{k} of {mf.kind} diverges (largest finite order {mf.max_moment})")
    if mf.kind == "CLASSICAL_W":
        a, b, c, d = v["a"], v["b"], v["c"], v["d"]
        return gamma_product((a + b + k, a + c + k, a + d + k, b + c, b + d, c + d), (a + b + c + d + k,))
    if mf.kind == "W1":
        p, u, w, q = v["p"], v["u"], v["v"], v["q"]
        return gamma_product((p + u + k, p + w + k, u + w, q - p - u - w - k), (q - p - k, q - u, q - w))
    m_k = _askey_moment(_a4(v), k)
    if mf.kind == "W3_ASKEY":
        return m_k
    return float(sin_pi(2 * v["alpha"])) / TWO_PI * m_k


def printed_moment_w1(p, u, v, q, k):
    """W1 moment with ``Γ(p-v)`` in place of ``Γ(q-v)`` in the denominator.

    At ``p = v`` this vanishes, which the quadrature oracle rules out.
    """
    return gamma_product((p + v + k, p + u + k, u + v, q - u - v - p - k), (q - p - k, q - u, p - v))


def apply_functional(mf, poly):
    """``ℓ(poly)`` by expansion in the ``h_k`` basis."""
    coeffs = h_basis_expand(poly, mf.base_point)
    return float(sum(c * moment(mf, k) for k, c in enumerate(coeffs) if c != 0))


# finite systems ----------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSystem:
    """A functional, the Wilson parameters orthogonal for it and the degree bound."""

    functional: MomentFunctional
    wilson_params: WilsonParams
    n_max: int


def _largest_degree(budget):
    """Largest integer ``n`` with ``4n < budget`` (``-1`` if none)."""
    return math.ceil(budget / 4) - 1


def finite_system(kind, params):
    """Build a :class:`FiniteSystem` for ``W1``, ``W2_DOUGALL`` or ``W3_ASKEY``.

    Degree bounds: ``4n < q-p-u-v-1`` for W1 and ``4n < a1+a2+a3+a4-3`` for
    the other two.

    Raises
    ------
    DomainError
        For an unknown kind or when no degree is admissible.
    """
    if kind == "W1":
        p, u, v, q = (params[n] for n in ("p", "u", "v", "q"))
        mf = w1_functional(p, u, v, q)
        wp = WilsonParams(p, u, v, 1 - q)
        n_max = _largest_degree(q - p - u - v - 1)
    elif kind in ("W2_DOUGALL", "W3_ASKEY"):
        a = _a4(params)
        mf = w2_functional(a, params["alpha"]) if kind == "W2_DOUGALL" else w3_functional(a)
        wp = WilsonParams(*(1 - x for x in a))
        n_max = _largest_degree(sum(a) - 3)
    else:
        raise DomainError(f"{kind!r} is not a finite system")
    if n_max < 0:
        raise DomainError(f"{kind} has no admissible degree for {params}")
    return FiniteSystem(mf, wp, n_max)


def _numeric_pairing(fs, pk, pl, tol, tol_abs):
    mf = fs.functional
    v = mf.params
    prod = pk * pl
    if mf.kind == "W1":
        nums = (v["p"], v["u"], v["v"])

        def f(s):
            return prod(s) * gamma_weight(nums, s, (v["q"],)) / TWO_PI

        decay = 2 * (v["q"] - sum(nums)) + 1 - 2 * prod.degree
        return integrate_halfline(IntegrandHandle(f, decay_exponent=decay), tol=tol, tol_abs=tol_abs).value
    a = _a4(v)
    if mf.kind == "W2_DOUGALL":
        alpha = v["alpha"]

        def term(n):
            x = alpha + np.asarray(n, dtype=float)
            return dougall_term(a, alpha, n) * prod.in_t(-x * x)

        return bilateral_sum(term, tol=tol, tol_abs=tol_abs).value
    decay = 2 * sum(a) - 5 - 2 * prod.degree
    if not decay > 1:
        raise DomainError("the principal-value pairing diverges for this degree")
    handle = IntegrandHandle(
        lambda x: askey_weight(a, x) * prod.in_t(-np.asarray(x) ** 2),
        even=True,
        decay_exponent=decay,
        pole_lattice=(0.5, 0.0),
    )
    return integrate_pv_lattice(handle, 0.25, tol=tol, tol_abs=tol_abs).value


def finite_gram(fs, mode=ALGEBRAIC, tol=1e-10):
    """Gram matrix ``G_kl = ℓ(p_k p_l)`` for ``k, l <= n_max``.

    Parameters
    ----------
    fs : FiniteSystem
    mode : {"ALGEBRAIC", "NUMERIC"}
        ALGEBRAIC expands ``p_k p_l`` in the ``h`` basis and applies the
        closed-form moments. NUMERIC integrates against the weight (W1),
        sums the bilateral series (W2) or takes the principal value (W3).
    tol : float
        Relative tolerance of the NUMERIC evaluations.

    Raises
    ------
    DomainError
        If NUMERIC is requested outside the convergence regime (W3 needs
        ``Σa > 3`` beyond the degree of ``p_k p_l``).
    """
    n = fs.n_max + 1
    polys = [wilson_polynomial(fs.wilson_params, k) for k in range(n)]
    gram = np.zeros((n, n))
    if mode == ALGEBRAIC:
        for k in range(n):
            for l in range(k, n):
                gram[k, l] = gram[l, k] = apply_functional(fs.functional, polys[k] * polys[l])
        return gram
    if mode != NUMERIC:
        raise ValueError("mode must be ALGEBRAIC or NUMERIC")
    if fs.functional.kind == "W3_ASKEY" and not sum(_a4(fs.functional.params)) > 3:
        raise DomainError("NUMERIC mode for the Askey weight needs a1 + a2 + a3 + a4 > 3")
    for k in range(n):
        gram[k, k] = _numeric_pairing(fs, polys[k], polys[k], tol, 0.0)
    for k in range(n):
        for l in range(k + 1, n):
            floor = tol * math.sqrt(abs(gram[k, k] * gram[l, l]))
            gram[k, l] = gram[l, k] = _numeric_pairing(fs, polys[k], polys[l], tol, floor)
    return gram


def offdiagonal_residual(gram):
    """``max_{k≠l} |G_kl| / sqrt(|G_kk G_ll|)``."""
    d = np.sqrt(np.abs(np.diag(gram)))
    scale = np.outer(d, d)
    off = np.abs(gram - np.diag(np.diag(gram))) / scale
    return float(np.max(off)) if gram.shape[0] > 1 else 0.0


def gram_proportionality(gram, reference, rel_floor=1e-9):
    """Common ratio ``gram / reference`` over the entries that are not numerically zero.

    Returns
    -------
    constant : float
        Ratio at the largest reference entry.
    spread : float
        ``max |ratio/constant - 1|`` over entries with
        ``|reference| > rel_floor · max|reference|``.
    """
    ref = np.asarray(reference, dtype=float)
    cur = np.asarray(gram, dtype=float)
    mask = np.abs(ref) > rel_floor * np.max(np.abs(ref))
    ratios = cur[mask] / ref[mask]
    constant = float(ratios[np.argmax(np.abs(ref[mask]))])
    return constant, float(np.max(np.abs(ratios / constant - 1)))
