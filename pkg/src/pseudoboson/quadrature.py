"""Gaussian quadrature rules.

Hermite and Laguerre rules start from the Golub-Welsch method: the nodes
are the eigenvalues of the symmetric tridiagonal Jacobi matrix of the
orthonormal polynomials.  The nodes are then polished by Newton steps and the
weights taken from the Christoffel function ``1 / sum_j p_j(x)**2``, both in
long double, which keeps even the smallest outer weights accurate to
relative precision.  Rules are cached per order and returned with read-only
arrays, so repeated calls hand back the very same (bit-identical) objects.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import QuadratureError

__all__ = [
    "QuadratureRule",
    "gauss_hermite",
    "gauss_hermite_extended",
    "gauss_laguerre",
    "polar_rule",
    "MAX_ORDER",
    "LAGUERRE_MAX_ORDER",
]

MAX_ORDER = 200
# beyond this order the smallest Laguerre weight underflows double precision
LAGUERRE_MAX_ORDER = 195


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a Gaussian rule.

    ``kind`` is one of ``"hermite"`` (weight ``exp(-x**2)`` on the real
    line), ``"laguerre"`` (weight ``exp(-u)`` on ``[0, inf)``) or ``"polar"``
    (complex nodes for the normalized Gaussian measure on the plane).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    order: tuple

    def integrate(self, f):
        """Apply the rule to a vectorized callable."""
        return np.sum(self.weights * f(self.nodes))


def _check_order(order):
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise QuadratureError(f"quadrature order must be an integer, got {order!r}")
    if not 1 <= order <= MAX_ORDER:
        raise QuadratureError(f"quadrature order must lie in [1, {MAX_ORDER}], got {order}")


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _golub_welsch(diag, offdiag, mu0):
    if len(diag) == 1:
        return np.array([diag[0]], dtype=float), np.array([mu0])
    nodes, vecs = eigh_tridiagonal(diag, offdiag)
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


def _orthonormal_hermite_ld(x, upto):
    """Orthonormal Hermite polynomials p_0..p_upto at x, in long double."""
    ld = np.longdouble
    p = [np.full_like(x, ld(1) / np.sqrt(np.sqrt(ld(np.pi))))]
    if upto >= 1:
        p.append(np.sqrt(ld(2)) * x * p[0])
    for j in range(2, upto + 1):
        p.append(np.sqrt(ld(2) / j) * x * p[-1] - np.sqrt(ld(j - 1) / j) * p[-2])
    return p


@lru_cache(maxsize=None)
def _hermite_ld(order):
    _check_order(order)
    k = np.arange(1, order)
    nodes, _ = _golub_welsch(np.zeros(order), np.sqrt(k / 2.0), math.sqrt(math.pi))
    x = nodes.astype(np.longdouble)
    if order > 1:
        for _ in range(3):
            p = _orthonormal_hermite_ld(x, order)
            # p_K' = sqrt(2K) p_{K-1}
            x = x - p[order] / (np.sqrt(np.longdouble(2 * order)) * p[order - 1])
    x = (x - x[::-1]) / 2
    p = _orthonormal_hermite_ld(x, order - 1)
    # Christoffel function: relative accuracy even for the tiny outer weights,
    # which the first eigenvector components only resolve to eps * max weight
    weights = 1 / np.sum(np.array(p) ** 2, axis=0)
    weights = (weights + weights[::-1]) / 2
    return x, weights


@lru_cache(maxsize=None)
def gauss_hermite(order):
    """Gauss-Hermite rule for ``∫ f(x) exp(-x**2) dx``.

    Exact for polynomials of degree ``2*order - 1``.  Nodes are symmetrized
    about zero so that parity arguments hold exactly.
    """
    x, w = _hermite_ld(order)
    return QuadratureRule(_frozen(x.astype(float)), _frozen(w.astype(float)), "hermite", (order,))


@lru_cache(maxsize=None)
def gauss_hermite_extended(order):
    """Gauss-Hermite rule refined to long-double precision.

    Golub-Welsch nodes are polished by Newton steps on the orthonormal
    three-term recurrence evaluated in ``np.longdouble`` and the weights are
    computed from the Christoffel function ``1 / sum_j p_j(x)**2``.  Use
    this rule for integrands whose terms span many orders of magnitude, where
    a double-precision rule loses the last few digits to node rounding.
    The arrays have dtype ``np.longdouble``; on platforms where that is
    plain double the result equals :func:`gauss_hermite`.
    """
    x, w = _hermite_ld(order)
    return QuadratureRule(_frozen(x), _frozen(w), "hermite", (order,))


def _laguerre_ld(u, upto):
    """Laguerre polynomials L_0..L_upto at u (orthonormal for exp(-u)), in long double."""
    p = [np.ones_like(u)]
    if upto >= 1:
        p.append(1 - u)
    for j in range(1, upto):
        p.append(((2 * j + 1 - u) * p[-1] - j * p[-2]) / (j + 1))
    return p


@lru_cache(maxsize=None)
def gauss_laguerre(order):
    """Gauss-Laguerre rule for ``∫_0^inf f(u) exp(-u) du``.

    Nodes are polished and weights taken from the Christoffel function in
    long double, as for :func:`gauss_hermite`.
    """
    _check_order(order)
    if order > LAGUERRE_MAX_ORDER:
        raise QuadratureError(
            f"Laguerre order {order} exceeds {LAGUERRE_MAX_ORDER}: its outer weights underflow"
        )
    k = np.arange(order)
    nodes, _ = _golub_welsch(2.0 * k + 1.0, np.arange(1.0, order), 1.0)
    u = nodes.astype(np.longdouble)
    for _ in range(3):
        p = _laguerre_ld(u, order)
        # u L_K' = K (L_K - L_{K-1})
        u = u - u * p[order] / (order * (p[order] - p[order - 1]))
    weights = 1 / np.sum(np.array(_laguerre_ld(u, order - 1)) ** 2, axis=0)
    return QuadratureRule(_frozen(u.astype(float)), _frozen(weights.astype(float)), "laguerre", (order,))


@lru_cache(maxsize=None)
def polar_rule(k_r, k_theta):
    """Product rule for the normalized Gaussian measure on the complex plane.

    ``sum(w * f(z))`` approximates ``(1/pi) ∫ f(z) exp(-|z|**2) d^2z``.  With
    ``u = |z|**2`` the measure factorizes as ``exp(-u) du * dtheta / (2 pi)``,
    so the radial part is a Laguerre rule in ``u`` and the angular part is the
    uniform ``k_theta``-point rule.  Monomials ``z**n conj(z)**m`` are
    integrated exactly (giving ``n! δ_nm``) whenever ``(n+m)/2 <= 2*k_r - 1``
    and ``|n - m| < k_theta``.
    """
    for k in (k_r, k_theta):
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 1:
            raise QuadratureError(f"polar rule orders must be positive integers, got {k!r}")
    radial = gauss_laguerre(k_r)
    theta = 2.0 * np.pi * np.arange(k_theta) / k_theta
    nodes = np.sqrt(radial.nodes)[:, None] * np.exp(1j * theta)[None, :]
    weights = np.repeat(radial.weights[:, None] / k_theta, k_theta, axis=1)
    return QuadratureRule(_frozen(nodes.ravel()), _frozen(weights.ravel()), "polar", (k_r, k_theta))
