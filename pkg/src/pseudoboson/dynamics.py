"""The pseudo-Hermitian oscillator ``H = omega (b# b + 1/2)`` and its dynamics.

``b#`` is realized by ``Btilde``; on the span of the bi-basis this agrees
with the metric form ``eta^-1 B† eta`` (see :func:`metric_hamiltonian_residual`).
``H psi_n = omega (n + 1/2) psi_n`` and ``H† phi_n = omega (n + 1/2) phi_n``,
so a coherent pair evolves into another coherent pair:

    exp(-iHt)|alpha>    = exp(-i omega t/2) |alpha exp(-i omega t)>
    exp(-iH†t)|alpha>'  = exp(-i omega t/2) |alpha exp(-i omega t)>'
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np
from scipy.linalg import expm

from .coherent import coherent_vector
from .exceptions import NumericalDegradationError, ParameterDomainError
from .fock import _state
from .ladder import number_operators

__all__ = [
    "OscillatorHamiltonian",
    "STEP_NORM",
    "hamiltonian",
    "evolve_matrix",
    "evolve_trusted",
    "evolve_spectral",
    "temporal_stability_residual",
    "energy_residuals",
    "pt_residuals",
    "parity_matrix",
    "trusted_spectrum",
    "metric_hamiltonian_residual",
]

# largest 1-norm of -iHt handed to a single matrix exponential
STEP_NORM = 16.0


@dataclass(frozen=True)
class OscillatorHamiltonian:
    H: np.ndarray
    omega: float
    coeffs: object
    dim: int


def hamiltonian(pair, omega=1.0):
    """``omega (Btilde B + I/2)`` on the truncated space of ``pair``."""
    if not omega > 0 or not math.isfinite(omega):
        raise ParameterDomainError(f"omega must be positive and finite, got {omega}")
    N = number_operators(pair).N
    H = float(omega) * (N + 0.5 * np.eye(pair.dim))
    H.setflags(write=False)
    return OscillatorHamiltonian(H, float(omega), pair.coeffs, pair.dim)


def _propagator(ham, t, dagger):
    gen = -1j * t * (ham.H.conj().T if dagger else ham.H)
    steps = max(1, math.ceil(np.linalg.norm(gen, 1) / STEP_NORM))
    return expm(gen / steps), steps


def evolve_matrix(ham, t, v, dagger=False):
    """``exp(-iHt) v`` (``exp(-iH†t) v`` when ``dagger``).

    The exponent is split into equal steps whose 1-norm stays below
    :data:`STEP_NORM`; the step propagator is computed once and applied
    repeatedly.
    """
    coeffs = getattr(v, "coeffs", v)
    if t == 0:
        return _state(np.array(coeffs, dtype=complex))
    step, count = _propagator(ham, t, dagger)
    out = np.asarray(coeffs, dtype=complex)
    for _ in range(count):
        out = step @ out
    if not np.all(np.isfinite(out)):
        raise NumericalDegradationError(f"time evolution produced non-finite values at t={t}")
    return _state(out)


def evolve_trusted(ham, basis, t, v, dagger=False):
    """Evolution compressed onto the span of the bi-basis.

    ``v`` is expanded as ``sum <phi_n|v> psi_n`` (or ``sum <psi_n|v> phi_n``
    when ``dagger``), the compressed Hamiltonian ``<phi_m|H|psi_n>`` is
    exponentiated and the result mapped back.  This avoids the spurious
    complex eigenvalues that a truncated ``H`` can have near the edge, which
    make the full exponential useless for families whose truncated
    Hamiltonian is not similar to a real symmetric matrix.
    """
    coeffs = np.asarray(getattr(v, "coeffs", v), dtype=complex)
    left, right = (basis.psi, basis.phi) if dagger else (basis.phi, basis.psi)
    op = ham.H.conj().T if dagger else ham.H
    small = left.conj().T @ (op @ right)
    out = right @ (expm(-1j * t * small) @ (left.conj().T @ coeffs))
    if not np.all(np.isfinite(out)):
        raise NumericalDegradationError(f"time evolution produced non-finite values at t={t}")
    return _state(out)


def evolve_spectral(alpha, t, omega=1.0):
    """``(exp(-i omega t/2), alpha exp(-i omega t))``."""
    return cmath.exp(-0.5j * omega * t), complex(alpha) * cmath.exp(-1j * omega * t)


def temporal_stability_residual(ham, basis, alpha, t, tail_tol=None, method="matrix"):
    """Distance between matrix evolution and the spectral rule for a coherent pair.

    ``method`` selects :func:`evolve_matrix` (``"matrix"``, the full truncated
    exponential) or :func:`evolve_trusted` (``"trusted"``).

    Returns
    -------
    dict
        ``psi``: ``||exp(-iHt)|alpha> - phase |alpha(t)>||``,
        ``phi``: the same for ``|alpha>'`` under ``exp(-iH†t)``,
        ``binorm``: ``|<evolved ket|evolved dual> - 1|``.
    """
    kwargs = {} if tail_tol is None else {"tail_tol": tail_tol}
    start = coherent_vector(alpha, basis, **kwargs)
    phase, alpha_t = evolve_spectral(alpha, t, ham.omega)
    target = coherent_vector(alpha_t, basis, **kwargs)
    if method == "matrix":
        ket = evolve_matrix(ham, t, start.ket)
        dual = evolve_matrix(ham, t, start.dual, dagger=True)
    elif method == "trusted":
        ket = evolve_trusted(ham, basis, t, start.ket)
        dual = evolve_trusted(ham, basis, t, start.dual, dagger=True)
    else:
        raise ParameterDomainError(f"method must be 'matrix' or 'trusted', got {method!r}")
    return {
        "psi": float(np.linalg.norm(ket.coeffs - phase * target.ket.coeffs)),
        "phi": float(np.linalg.norm(dual.coeffs - phase * target.dual.coeffs)),
        "binorm": abs(ket.overlap(dual) - 1.0),
    }


def energy_residuals(ham, basis):
    """Relative residuals of ``H psi_n = E_n psi_n`` and ``H† phi_n = E_n phi_n``."""
    energies = ham.omega * (np.arange(basis.n_max + 1) + 0.5)
    out = []
    for op, v in ((ham.H, basis.psi), (ham.H.conj().T, basis.phi)):
        r = np.linalg.norm(op @ v - v * energies, axis=0) / np.linalg.norm(v, axis=0)
        out.append(float(r.max()))
    return tuple(out)


def parity_matrix(dim):
    return np.diag((-1.0) ** np.arange(dim))


def pt_residuals(ham):
    """``parity``: ``max|P H P - H|``; ``imag``: ``max|Im H|``.

    Both vanishing means ``H`` commutes with parity and with complex
    conjugation, hence with their product.
    """
    p = (-1.0) ** np.arange(ham.dim)
    php = p[:, None] * ham.H * p[None, :]
    return {
        "parity": float(np.max(np.abs(php - ham.H))),
        "imag": float(np.max(np.abs(ham.H.imag))),
    }


def trusted_spectrum(ham, count):
    """Lowest ``count`` eigenvalues of the truncated ``H`` (by real part).

    Returns the eigenvalues and the largest imaginary part among them.
    """
    ev = np.linalg.eigvals(ham.H)
    ev = ev[np.argsort(ev.real)][:count]
    return ev.real, float(np.max(np.abs(ev.imag)))


def metric_hamiltonian_residual(ham, pair, met, basis):
    """Bi-basis elements of ``omega (eta^-1 B† eta B + 1/2) - H`` for ``n <= n_max - 1``."""
    k = basis.n_max
    psi, phi = basis.psi[:, :k], basis.phi[:, :k]
    sharp = met.eta_inv @ (pair.B.conj().T @ (met.eta @ (pair.B @ psi)))
    h_metric = ham.omega * (sharp + 0.5 * psi)
    return float(np.max(np.abs(phi.conj().T @ (h_metric - ham.H @ psi))))
