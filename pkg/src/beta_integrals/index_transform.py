"""The index hypergeometric (Jacobi/Olevsky) transform and its image catalog.

For ``a, b > 0`` the transform

    J f(s) = (1/Γ(a+b)) ∫_0^∞ f(x) K_s(x) x^{a+b-1} (1+x)^{a-b} dx,
    K_s(x) = ₂F₁(a+is, a-is; a+b; -x),

is unitary onto ``L²`` of ``(1/2π) |Γ(a+is)Γ(b+is)/Γ(2is)|² ds`` on
``[0, ∞)``; the inverse carries the factor ``1/(2π Γ(a+b))``.

Images of elementary sources are stored in closed form and never recomputed
by numeric transforms inside another integral.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .gamma_core import abs_sq_gamma, gamma_product, gamma_weight
from .hypergeometric import f21_neg_axis, hyp2f1
from .mellin_barnes import MBSpec, eval_mb
from .quadrature import IntegrandHandle, integrate_halfline

#: Normalization of the spectral side: ``(1/2π) ∫_0^∞ ... ds``.
SPECTRAL_NORM = 1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class JParams:
    """Parameters ``a, b > 0`` of the transform."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"transform parameters must be positive, got a={self.a}, b={self.b}")


def kernel_2f1(A, C, y, s):
    """``Re ₂F₁(A+is, A-is; C; -y)``, real for real ``A, C, y, s``.

    Vectorized over ``y`` and ``s``. Raises if the imaginary part is not
    negligible, which would indicate a loss of accuracy.
    """
    s = np.asarray(s, dtype=float)
    value = f21_neg_axis(A + 1j * s, A - 1j * s, C, y)
    re, im = np.real(value), np.imag(value)
    if np.any(np.abs(im) > 1e-8 * np.maximum(np.abs(re), 1e-300) + 1e-14):
        raise ArithmeticError("kernel lost accuracy: imaginary part is not negligible")
    return re


def _weighted(weight, *factors):
    """``weight * Π factor()`` evaluating the factors only where ``weight != 0``.

    The kernels are only needed where the gamma weight has not underflowed,
    which keeps them away from extreme spectral parameters.
    """
    weight = np.asarray(weight, dtype=float)
    out = np.zeros(np.shape(weight))
    live = weight != 0
    if np.any(live):
        value = weight[live]
        for factor in factors:
            value = value * factor(live)
        out[live] = value
    return out


def kernel(p, s, x):
    """Transform kernel ``₂F₁(a+is, a-is; a+b; -x)``."""
    return kernel_2f1(p.a, p.a + p.b, x, s)


def source_measure(p, x):
    """``x^{a+b-1} (1+x)^{a-b}``."""
    x = np.asarray(x, dtype=float)
    return x ** (p.a + p.b - 1) * (1 + x) ** (p.a - p.b)


def spectral_density(p, s):
    """``|Γ(a+is)Γ(b+is)/Γ(2is)|²``."""
    return gamma_weight((p.a, p.b), s)


def j_forward(p, f, s, tol=1e-10, source_decay=math.inf):
    """Numeric transform ``J f(s)``.

    Parameters
    ----------
    p : JParams
    f : callable
        Vectorized source function on ``x >= 0``.
    s : float
        Spectral parameter.
    tol : float
        Relative tolerance.
    source_decay : float
        ``q`` with ``|f(x)| ~ x^{-q}`` at infinity. The kernel decays like
        ``x^{-a}`` (times a logarithm at ``s = 0``), so ``q > a`` is needed.

    Returns
    -------
    QuadResult
    """
    decay = source_decay - p.a + 1 if math.isfinite(source_decay) else math.inf
    norm = gamma_product((), (p.a + p.b,))

    def integrand(x):
        return f(x) * kernel(p, s, x) * source_measure(p, x) * norm

    handle = IntegrandHandle(integrand, decay_exponent=decay)
    return integrate_halfline(handle, tol=tol)


def j_inverse(p, g, x, tol=1e-10, image_decay=math.inf):
    """Numeric inverse transform ``(1/(2πΓ(a+b))) ∫_0^∞ g K w ds`` at ``x``.

    ``image_decay`` is ``r`` with ``|g(s)| ~ s^{-r}``; ``inf`` for the
    exponentially decaying catalog images.
    """
    # w ~ s^{2a+2b-1}, K ~ s^{1/2-a-b} at fixed x
    decay = image_decay - p.a - p.b + 0.5 if math.isfinite(image_decay) else math.inf
    norm = SPECTRAL_NORM * gamma_product((), (p.a + p.b,))

    def integrand(s):
        s = np.asarray(s, dtype=float)
        return _weighted(g(s) * spectral_density(p, s) * norm, lambda m: kernel(p, s[m], x))

    handle = IntegrandHandle(integrand, decay_exponent=decay)
    return integrate_halfline(handle, tol=tol)


@dataclass(frozen=True)
class ImagePair:
    """A source function with its closed-form transform.

    Attributes
    ----------
    id : str
    extra_params : dict
    jparams : JParams
    source, image : callable
    source_decay : float
        ``q`` with ``|source(x)| ~ x^{-q}``.
    image_decay : float
        ``r`` with ``|image(s)| ~ s^{-r}`` (``inf`` for exponential decay).
    """

    id: str
    extra_params: dict
    jparams: JParams
    source: Callable
    image: Callable
    source_decay: float
    image_decay: float = math.inf


IMAGE_IDS = ("L11A", "L11B", "L11C", "L12A", "L12B", "L12C")

IMAGE_PARAMS = {
    "L11A": ("c",),
    "L11B": ("c", "z"),
    "L11C": ("u",),
    "L12A": ("p", "q", "y"),
    "L12B": ("p", "q"),
    "L12C": ("c", "d"),
}

IMAGE_DESCRIPTIONS = {
    "L11A": "(1+x)^(-a-c)  ->  |G(c+is)|^2 / (G(c+a) G(c+b))",
    "L11B": "(1+x)^(b-a) (x+z)^(-c-b)  ->  L11A image * 2F1(c+is, c-is; c+a; 1-z)",
    "L11C": "x^(-u-a)  ->  G(b-u)/G(a+u) * |G(u+is)/G(b+is)|^2",
    "L12A": "2F1(p+b, q+b; a+b; -x/y) (1+x)^(b-a)  ->  y^(b+p) * L12B image * 2F1(p+is, p-is; p+q; 1-y)",
    "L12B": "2F1(p+b, q+b; a+b; -x) (1+x)^(b-a)  ->  G(a+b) |G(p+is)G(q+is)/G(a+is)|^2 / (G(p+q)G(p+b)G(q+b))",
    "L12C": "2F1(a+c, a+d; a+b+c+d; -x)  ->  G(a+b+c+d) |G(c+is)G(d+is)|^2 / (G(a+c)G(a+d)G(b+c)G(b+d)G(c+d))",
}


def _f21_real_argument(A, C, w, s):
    """``Re ₂F₁(A+is, A-is; C; w)`` for real ``w <= 1``."""
    s = np.asarray(s, dtype=float)
    if w <= 0:
        return kernel_2f1(A, C, -w, s)
    return np.real(hyp2f1(A + 1j * s, A - 1j * s, C, np.full(s.shape, w)))


def image_pair(pair_id, extra_params, p):
    """Build the catalog entry ``pair_id`` at the given parameters.

    Raises
    ------
    DomainError
        Unknown id, missing parameters or parameters outside the domain.
    """
    if pair_id not in IMAGE_PARAMS:
        raise DomainError(f"unknown image pair {pair_id!r}")
    missing = [k for k in IMAGE_PARAMS[pair_id] if k not in extra_params]
    if missing:
        raise DomainError(f"{pair_id} needs parameters {missing}")
    e = {k: float(extra_params[k]) for k in IMAGE_PARAMS[pair_id]}
    a, b = p.a, p.b
    if any(v <= 0 for v in e.values()):
        raise DomainError(f"{pair_id} parameters must be positive: {e}")

    if pair_id == "L11A":
        c = e["c"]
        const = gamma_product((), (c + a, c + b))
        return ImagePair(
            pair_id, e, p,
            lambda x: (1 + np.asarray(x, dtype=float)) ** (-a - c),
            lambda s: const * abs_sq_gamma(c, s),
            a + c,
        )
    if pair_id == "L11B":
        c, z = e["c"], e["z"]
        const = gamma_product((), (c + a, c + b))
        return ImagePair(
            pair_id, e, p,
            lambda x: (1 + np.asarray(x, dtype=float)) ** (b - a) * (np.asarray(x, dtype=float) + z) ** (-c - b),
            lambda s: const * abs_sq_gamma(c, s) * _f21_real_argument(c, c + a, 1 - z, s),
            a + c,
        )
    if pair_id == "L11C":
        u = e["u"]
        if not u < b:
            raise DomainError("L11C needs 0 < u < b")
        const = gamma_product((b - u,), (a + u,))
        return ImagePair(
            pair_id, e, p,
            lambda x: np.asarray(x, dtype=float) ** (-u - a),
            lambda s: const * gamma_weight((u,), s, (b,), double_gamma=False),
            a + u,
            2 * (b - u),
        )
    if pair_id in ("L12A", "L12B"):
        pp, q = e["p"], e["q"]
        y = e.get("y", 1.0)
        const = y ** (b + pp) * gamma_product((a + b,), (pp + q, pp + b, q + b))

        def image(s):
            base = const * gamma_weight((pp, q), s, (a,), double_gamma=False)
            if y == 1.0:
                return base
            return base * _f21_real_argument(pp, pp + q, 1 - y, s)

        def source(x):
            x = np.asarray(x, dtype=float)
            return np.real(f21_neg_axis(pp + b, q + b, a + b, x / y)) * (1 + x) ** (b - a)

        return ImagePair(pair_id, e, p, source, image, a + min(pp, q))
    c, d = e["c"], e["d"]
    const = gamma_product((a + b + c + d,), (a + c, a + d, b + c, b + d, c + d))
    return ImagePair(
        pair_id, e, p,
        lambda x: np.real(f21_neg_axis(a + c, a + d, a + b + c + d, np.asarray(x, dtype=float))),
        lambda s: const * gamma_weight((c, d), s, double_gamma=False),
        a + min(c, d),
    )


def image_residual(pair_id, extra_params, p, s_grid=(0.0, 0.5, 1.0, 2.0), tol=1e-10):
    """Worst relative residual between numeric ``J source`` and the closed image.

    Examples
    --------
    >>> image_residual("L11A", {"c": 1.0}, JParams(1.0, 1.0), (0.0,)) < 1e-8
    True
    """
    pair = image_pair(pair_id, extra_params, p)
    worst = 0.0
    for s in s_grid:
        numeric = j_forward(p, pair.source, float(s), tol, pair.source_decay).value
        exact = float(pair.image(np.array([float(s)]))[0])
        worst = max(worst, abs(numeric - exact) / max(abs(exact), 1e-300))
    return worst


def plancherel_pair(p, pair1, pair2, tol=1e-10):
    """Both sides of the Plancherel identity for two catalog pairs.

    Returns
    -------
    (lhs, rhs) : tuple of float
        ``∫ f1 f2 x^{a+b-1}(1+x)^{a-b} dx`` and
        ``(1/2π) ∫_0^∞ g1 g2 |Γ(a+is)Γ(b+is)/Γ(2is)|² ds``.
    """
    src_decay = pair1.source_decay + pair2.source_decay - 2 * p.a + 1
    lhs = integrate_halfline(
        IntegrandHandle(lambda x: pair1.source(x) * pair2.source(x) * source_measure(p, x), decay_exponent=src_decay),
        tol=tol,
    ).value
    img_decay = pair1.image_decay + pair2.image_decay - 2 * p.a - 2 * p.b + 1
    rhs = SPECTRAL_NORM * integrate_halfline(
        IntegrandHandle(lambda s: pair1.image(s) * pair2.image(s) * spectral_density(p, s), decay_exponent=img_decay),
        tol=tol,
    ).value
    return lhs, rhs


# index integrals obtained from the Plancherel identity

SECTION4_PARAMS = {
    "EQ_4_1": ("a", "b", "c", "x", "y"),
    "EQ_4_2": ("a", "b", "c", "d", "y"),
    "EQ_4_3": ("a", "b", "c", "d", "y", "z"),
    "EQ_4_3_DIAG": ("a", "b", "c", "d", "y"),
    "EQ_4_4": ("a", "b", "c", "d", "e", "y"),
}


def _section4_integrand(eq_id, v):
    a, b, c, d = v["a"], v["b"], v["c"], v.get("d")
    if eq_id == "EQ_4_1":
        def f(s):
            return _weighted(
                gamma_weight((a, b, c), s),
                lambda m: kernel_2f1(c, a + c, v["y"], s[m]),
                lambda m: kernel_2f1(b, a + b, v["x"], s[m]),
            )
    elif eq_id == "EQ_4_2":
        def f(s):
            return _weighted(gamma_weight((a, b, c, d), s), lambda m: kernel_2f1(c, a + c, v["y"], s[m]))
    elif eq_id in ("EQ_4_3", "EQ_4_3_DIAG"):
        z = v["z"] if eq_id == "EQ_4_3" else v["y"]

        def f(s):
            return _weighted(
                gamma_weight((a, b, c, d), s) / math.pi,
                lambda m: kernel_2f1(c, a + c, v["y"], s[m]),
                lambda m: kernel_2f1(d, a + d, z, s[m]),
            )
    else:
        e = v["e"]

        def f(s):
            return _weighted(gamma_weight((a, b, c, d, e), s) / math.pi, lambda m: kernel_2f1(e, a + e, v["y"], s[m]))
    return lambda s: f(np.asarray(s, dtype=float))


def section4_lhs(eq_id, v, tol=1e-10):
    """Left-hand index integral of a section-4 identity (as printed)."""
    handle = IntegrandHandle(_section4_integrand(eq_id, v))
    return integrate_halfline(handle, tol=tol)


def section4_rhs(eq_id, v, tol=1e-10):
    """Right-hand side of a section-4 identity with the verified constants."""
    a, b, c = v["a"], v["b"], v["c"]
    if eq_id == "EQ_4_1":
        x, y = v["x"], v["y"]
        return 2 * math.pi * gamma_product((a + b, a + c, b + c)) / (1 + x + y) ** (c + b)
    d = v["d"]
    total = a + b + c + d
    six = gamma_product((a + b, a + c, a + d, b + c, b + d, c + d), (total,))
    if eq_id == "EQ_4_2":
        return 2 * math.pi * six * float(np.real(hyp2f1(b + c, c + d, total, -v["y"])))
    if eq_id == "EQ_4_3_DIAG":
        return 2 * six * float(np.real(hyp2f1(2 * b + c + d, c + d, total, -v["y"])))
    if eq_id == "EQ_4_3":
        y, z = v["y"], v["z"]

        def integrand(t):
            t = np.asarray(t, dtype=float)
            return t ** (a + b - 1) * (1 + t) ** (b - a) / ((t + y + 1) ** (b + c) * (t + z + 1) ** (b + d))

        # integrand ~ t^{a+b-1+b-a-2b-c-d} = t^{-1-c-d}
        inner = integrate_halfline(IntegrandHandle(integrand, decay_exponent=1 + c + d), tol=tol).value
        return 2 * gamma_product((c + a, c + b, d + a, d + b)) * inner
    e, y = v["e"], v["y"]
    spec = MBSpec((a + b, a + c, a + d), (e - a, 0.0), (), (total,), 1.0 / (1.0 + y))
    mb = eval_mb(spec, tol).real
    return 2 * gamma_product((a + e, b + c, b + d, c + d)) * (1 + y) ** (a - e) * mb


def section4_verify(eq_id, params, tol=1e-6):
    """Two-sided check of a section-4 identity; see :func:`identity_catalog.verify`."""
    from .identity_catalog import verify

    if eq_id not in SECTION4_PARAMS:
        raise DomainError(f"{eq_id!r} is not a section-4 identity")
    return verify(eq_id, params, tol)
