"""Bi-orthogonal generalizations of the Hermite polynomials.

Two families ``P_n(x, s)`` and ``Q_n(x, s)``, ``-1 < s < 1``, generated by
the three-term recurrences

    P_n = 2/(1-s) x P_{n-1} + (n-1) 2(s - s^2 - 1)/(1-s) P_{n-2}
    Q_n = 2/(1+s^2-s) x Q_{n-1} + (n-1) 2(s-1)/(1+s^2-s) Q_{n-2}

with ``P_0 = Q_0 = 1``.  Both reduce to the physicists' Hermite polynomials
at ``s = 0`` and satisfy

    ∫ P_n Q_m exp(-mu(s) x^2) dx = sqrt(pi/mu(s)) 2^n n! δ_nm,
    mu(s) = 1 / ((1-s)(1-s+s^2)).
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import ParameterDomainError, QuadratureError
from .quadrature import gauss_hermite_extended

__all__ = [
    "PolyCoeffs",
    "recurrence_constants",
    "p_poly",
    "q_poly",
    "hermite_poly",
    "eval_poly",
    "eval_family",
    "weight_exponent",
    "biortho_expected",
    "biortho_integral",
    "biortho_gram",
    "derivative_relation_residual",
]

FAMILIES = ("P", "Q", "H")


@dataclass(frozen=True)
class PolyCoeffs:
    """Power-basis coefficients; ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: np.ndarray
    family: str
    s: float

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x):
        return eval_poly(self, x)


def _check_s(s):
    if not -1.0 < s < 1.0:
        raise ParameterDomainError(f"s must be restricted to the open interval (-1, 1), got {s}")


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterDomainError(f"polynomial degree must be a non-negative integer, got {n!r}")


def recurrence_constants(family, s=0.0):
    """Return ``(A, C)`` with ``R_n = A x R_{n-1} + (n-1) C R_{n-2}``."""
    if family == "H":
        return 2.0, -2.0
    _check_s(s)
    if family == "P":
        return 2.0 / (1.0 - s), 2.0 * (s - s * s - 1.0) / (1.0 - s)
    if family == "Q":
        d = 1.0 + s * s - s
        return 2.0 / d, 2.0 * (s - 1.0) / d
    raise ParameterDomainError(f"unknown polynomial family {family!r}; expected one of {FAMILIES}")


def _build(family, n, s):
    _check_n(n)
    a, c = recurrence_constants(family, s)
    prev = np.zeros(1)
    cur = np.ones(1)
    for k in range(1, n + 1):
        nxt = np.zeros(k + 1)
        nxt[1:] = a * cur
        if k >= 2:
            nxt[: k - 1] += (k - 1) * c * prev
        prev, cur = cur, nxt
    return PolyCoeffs(cur, family, float(s))


def p_poly(n, s):
    """Coefficients of ``P_n(x, s)``."""
    return _build("P", n, s)


def q_poly(n, s):
    """Coefficients of ``Q_n(x, s)``."""
    return _build("Q", n, s)


def hermite_poly(n):
    """Coefficients of the physicists' Hermite polynomial ``H_n``."""
    return _build("H", n, 0.0)


def eval_poly(p, x):
    """Horner evaluation of a :class:`PolyCoeffs` (or plain coefficient array)."""
    c = p.coeffs if isinstance(p, PolyCoeffs) else np.asarray(p)
    x = np.asarray(x)
    result = np.full(x.shape, c[-1], dtype=np.result_type(c, x))
    for ck in c[-2::-1]:
        result = result * x + ck
    return result if result.ndim else result[()]


def eval_family(family, n, s, x):
    """Evaluate ``R_n(x, s)`` pointwise with the three-term recurrence.

    Pointwise recurrence avoids the cancellation Horner suffers from on
    large-degree power-basis coefficients.  The dtype of ``x`` is kept, so
    long-double input yields long-double output.
    """
    _check_n(n)
    a, c = recurrence_constants(family, s)
    x = np.asarray(x)
    if x.dtype == np.longdouble:
        a, c = np.longdouble(a), np.longdouble(c)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = a * x
    for k in range(2, n + 1):
        prev, cur = cur, a * x * cur + (k - 1) * c * prev
    return cur


def weight_exponent(s):
    """``mu(s) = 1/((1-s)(1-s+s^2))``, the exponent of the bi-orthogonality weight."""
    _check_s(s)
    return 1.0 / ((1.0 - s) * (1.0 - s + s * s))


def biortho_expected(n, m, s):
    """Closed-form value of ``∫ P_n Q_m exp(-mu x^2) dx``."""
    if n != m:
        return 0.0
    return math.sqrt(math.pi * (1.0 - s) * (1.0 - s + s * s)) * 2.0**n * math.factorial(n)


def _default_order(n, m):
    return max(40, n + m + 8)


def biortho_integral(n, m, s, quad_order=None):
    """Gauss-Hermite value of ``∫ P_n(x,s) Q_m(x,s) exp(-mu(s) x^2) dx``.

    The substitution ``t = sqrt(mu) x`` maps the weight onto ``exp(-t^2)``;
    the integrand is then a polynomial of degree ``n+m``.  A long-double rule
    is used because for ``m >> n`` the quadrature terms exceed the result by
    ``sqrt(2^m m!)``.
    """
    _check_n(n)
    _check_n(m)
    mu = weight_exponent(s)
    order = _default_order(n, m) if quad_order is None else quad_order
    if order < n + m + 2:
        raise QuadratureError(
            f"quad_order={order} is not exact for degree {n + m}; need at least {n + m + 2}"
        )
    rule = gauss_hermite_extended(order)
    ld = np.longdouble
    root_mu = np.sqrt(ld(1) / ((1 - ld(s)) * (1 - ld(s) + ld(s) * ld(s))))
    x = rule.nodes / root_mu
    total = np.sum(rule.weights * eval_family("P", n, ld(s), x) * eval_family("Q", m, ld(s), x))
    return float(total / root_mu)


def biortho_gram(n_max, s, quad_order=None):
    """Matrix of :func:`biortho_integral` values for ``n, m <= n_max``."""
    g = np.empty((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            g[n, m] = biortho_integral(n, m, s, quad_order)
    return g


def _derivative(c):
    return c[1:] * np.arange(1, len(c))


def derivative_relation_residual(n, s, x=None):
    """Residuals of ``P_n' = 2n/(1-s) P_{n-1}`` and ``Q_n' = 2n/(1-s+s^2) Q_{n-1}``.

    Returns ``(res_p, res_q)``, each the largest pointwise deviation over the
    sample points ``x`` divided by ``max(1, max|R_n'(x)|)``.
    """
    if n < 1:
        raise ParameterDomainError(f"derivative relation needs n >= 1, got {n}")
    _check_s(s)
    x = np.linspace(-2.0, 2.0, 41) if x is None else np.asarray(x)
    out = []
    for family, factor in (("P", 2.0 * n / (1.0 - s)), ("Q", 2.0 * n / (1.0 - s + s * s))):
        hi = _build(family, n, s).coeffs
        lo = _build(family, n - 1, s).coeffs
        lhs = eval_poly(_derivative(hi), x)
        rhs = factor * eval_poly(lo, x)
        out.append(float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs)))))
    return tuple(out)
