"""Pseudo-boson coherent states in coefficient space.

For a bi-basis ``{psi_n}``, ``{phi_n}`` the pair

    |alpha>  = exp(-|alpha|^2/2) sum_n alpha^n / sqrt(n!) psi_n
    |alpha>' = exp(-|alpha|^2/2) sum_n alpha^n / sqrt(n!) phi_n

consists of eigenvectors of ``b`` and ``b' = b~†`` with eigenvalue ``alpha``.
The pair is bi-normalized, ``<alpha|alpha>' = 1``, although neither vector
is normalized on its own when ``s != 0``.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.linalg import expm
from scipy.special import gammainc

from .exceptions import NumericalDegradationError, QuadratureError, TruncationError
from .fock import DEFAULT_TAIL_TOL, StateVector, _state, edge_weight
from .quadrature import polar_rule

__all__ = [
    "CoherentPair",
    "poisson_tail",
    "required_n_max",
    "coherent_coefficients",
    "coherent_vector",
    "eigen_residual",
    "displaced_vacuum",
    "biovercompleteness_residual",
]

SERIES_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class CoherentPair:
    """``ket`` is ``|alpha>`` over the psi-family, ``dual`` is ``|alpha>'`` over the phi-family."""

    alpha: complex
    ket: StateVector
    dual: StateVector
    basis: object

    @property
    def binormalization(self):
        """``<alpha|alpha>'``; equals 1 up to the series tail."""
        return self.ket.overlap(self.dual)

    @property
    def coeffs(self):
        return self.basis.coeffs


def poisson_tail(alpha, n_max):
    """Weight ``exp(-|alpha|^2) sum_{n > n_max} |alpha|^(2n) / n!`` dropped by the series."""
    x = abs(alpha) ** 2
    if x == 0.0:
        return 0.0
    return float(gammainc(n_max + 1, x))


def required_n_max(alpha):
    """Series length used by the test suites: ``|alpha|^2 + 10 |alpha| + 20``."""
    r = abs(alpha)
    return int(math.ceil(r * r + 10.0 * r + 20.0))


def coherent_coefficients(alpha, n_max):
    """``exp(-|alpha|^2/2) alpha^n / sqrt(n!)`` for ``n = 0..n_max``."""
    alpha = complex(alpha)
    c = np.empty(n_max + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_max + 1):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return c


def coherent_vector(alpha, basis, tail_tol=SERIES_TAIL_TOL):
    """Series coherent pair over a bi-basis.

    Raises
    ------
    TruncationError
        If the Poisson weight beyond ``basis.n_max`` is not below ``tail_tol``.
    """
    alpha = complex(alpha)
    tail = poisson_tail(alpha, basis.n_max)
    if tail >= tail_tol:
        raise TruncationError(
            f"coherent series tail {tail:.3e} >= {tail_tol:.1e} for |alpha|={abs(alpha):.3g} "
            f"at n_max={basis.n_max}; need n_max of about {required_n_max(alpha)}"
        )
    c = coherent_coefficients(alpha, basis.n_max)
    return CoherentPair(alpha, _state(basis.psi @ c), _state(basis.phi @ c), basis)


def eigen_residual(pair, cp):
    """Relative residuals ``(||B ket - alpha ket||/||ket||, ||B' dual - alpha dual||/||dual||)``.

    ``pair`` may be ``None``, in which case the ladder pair of the coherent
    state's bi-basis is used.
    """
    pair = cp.basis.pair if pair is None else pair
    out = []
    for op, v in ((pair.B, cp.ket.coeffs), (pair.Bprime, cp.dual.coeffs)):
        out.append(float(np.linalg.norm(op @ v - cp.alpha * v) / np.linalg.norm(v)))
    return tuple(out)


def _checked(v, tail_tol):
    if not np.all(np.isfinite(v)):
        raise NumericalDegradationError("matrix exponential produced non-finite values")
    weight = edge_weight(v)
    if weight >= tail_tol:
        raise TruncationError(
            f"displaced vacuum reaches the truncation edge (edge weight {weight:.3e}); "
            "|alpha| exceeds what this dim can hold"
        )
    return _state(v)


def displaced_vacuum(alpha, pair, vacuum, metric=None, basis=None, tail_tol=DEFAULT_TAIL_TOL):
    """``D(alpha)|0> = exp(alpha b# - conj(alpha) b)|0>``.

    By default ``b#`` is realized by ``Btilde`` and the exponential of the
    full truncated generator is applied to ``vacuum``.  When ``metric`` (and
    the ``basis`` it was built from) is given, ``b# = eta^-1 B† eta`` is used
    instead, with the generator compressed onto the span of the psi-family,
    the subspace on which the truncated metric is trustworthy.

    Raises
    ------
    NumericalDegradationError
        If the exponential is not finite.
    TruncationError
        If the result carries weight at the truncation edge.
    """
    alpha = complex(alpha)
    if metric is None:
        gen = alpha * pair.Btilde - np.conj(alpha) * pair.B
        return _checked(expm(gen) @ vacuum.coeffs, tail_tol)
    if basis is None:
        raise ValueError("the metric realization needs the bi-basis the metric was built from")
    psi, phi = basis.psi, basis.phi
    bsharp_psi = metric.eta_inv @ (pair.B.conj().T @ (metric.eta @ psi))
    gen = phi.conj().T @ (alpha * bsharp_psi - np.conj(alpha) * (pair.B @ psi))
    start = phi.conj().T @ vacuum.coeffs
    return _checked(psi @ (expm(gen) @ start), tail_tol)


def biovercompleteness_residual(basis, k_r=None, k_theta=None):
    """Polar-quadrature check of the two coherent-state resolutions of the identity.

    The operators ``(1/pi) ∫ |alpha>' <alpha| d^2 alpha`` and
    ``(1/pi) ∫ |alpha> <alpha|' d^2 alpha`` are accumulated from the series
    coherent vectors at the nodes of :func:`polar_rule`.  The first equals
    ``sum |phi_n><psi_n|`` and is tested through ``<psi_m| . |phi_k>``, the
    second equals ``sum |psi_n><phi_n|`` and is tested through
    ``<phi_m| . |psi_k>``; both must give ``δ_mk``.

    Returns
    -------
    dict
        ``prime_ket`` and ``ket_prime`` max-norm residuals for the two
        orderings, and ``monomial`` for the rule's own moment identity.

    Raises
    ------
    QuadratureError
        If ``k_r < n_max + 1`` or ``k_theta < 2 n_max + 1``.
    """
    n_max = basis.n_max
    k_r = n_max + 4 if k_r is None else k_r
    k_theta = 2 * (n_max + 4) if k_theta is None else k_theta
    if k_r < n_max + 1 or k_theta < 2 * n_max + 1:
        raise QuadratureError(
            f"polar rule ({k_r}, {k_theta}) is not exact for n_max={n_max}; "
            f"need k_r >= {n_max + 1} and k_theta >= {2 * n_max + 1}"
        )
    rule = polar_rule(k_r, k_theta)
    z = rule.nodes
    # series coefficients without the exp(-|alpha|^2/2) factors, which the
    # Laguerre weight already carries
    n = np.arange(n_max + 1)
    log_fact = np.array([math.lgamma(k + 1) for k in n])
    mono = z[None, :] ** n[:, None] * np.exp(-0.5 * log_fact)[:, None]
    psi, phi = basis.psi, basis.phi
    kets = psi @ mono
    duals = phi @ mono
    w = rule.weights
    # <x| sum_j w_j |d_j><k_j| |y> = (x† D) W (K† y): the bi-basis elements of
    # the accumulated operator without forming the dim x dim matrix
    prime_ket = ((psi.conj().T @ duals) * w) @ (kets.conj().T @ phi)
    ket_prime = ((phi.conj().T @ kets) * w) @ (duals.conj().T @ psi)
    eye = np.eye(n_max + 1)
    return {
        "prime_ket": float(np.max(np.abs(prime_ket - eye))),
        "ket_prime": float(np.max(np.abs(ket_prime - eye))),
        "monomial": float(np.max(np.abs((mono * w) @ mono.conj().T - eye))),
    }
