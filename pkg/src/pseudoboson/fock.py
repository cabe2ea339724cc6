"""Bi-orthonormal pseudo-boson Fock states and the metric operator.

States are coefficient vectors in the canonical (Hermitian) Fock basis.
The two families are

    psi_n = b~^n |0> / sqrt(n!),      phi_n = (b†)^n |0>' / sqrt(n!),

where ``b|0> = 0`` and ``b'|0>' = 0`` with ``b' = b~†``.  Vacuum scale
convention: both vacua share the position-space prefactor
``((gamma + gamma')/(2 pi))^(1/4)`` (the value of the wave function at
``x = 0``), which makes ``<0|0>' = 1`` and reproduces ``N(s)`` for the
standard family.  The final bi-normalization step only removes rounding and
truncation error.

Identities that hold in infinite dimension but not for the truncated families
(resolutions of the identity, metric inverse) are evaluated as bi-basis
matrix elements, which is the form in which they remain exact at finite
truncation.
"""

from dataclasses import dataclass
import logging
import math

import numpy as np

from .exceptions import (
    DegeneratePairingError,
    DimensionError,
    NumericalDegradationError,
    TruncationError,
)
from .ladder import build_ladder_pair, number_operators

__all__ = [
    "DEFAULT_TAIL_TOL",
    "MAX_DIM",
    "StateVector",
    "BiBasis",
    "MetricOperator",
    "tail_mass",
    "edge_weight",
    "vacuum",
    "prime_vacuum",
    "bi_normalize",
    "build_bi_basis",
    "metric",
    "pseudo_adjoint_residuals",
    "resolution_of_identity",
    "number_eigen_residuals",
    "metric_action_residual",
    "parity_violation",
]

log = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-12
MAX_DIM = 2048
BIORTHO_HARD_LIMIT = 1e-8
PAIRING_TOL = 1e-13


def tail_mass(coeffs):
    """Relative weight of the last two canonical levels."""
    total = np.vdot(coeffs, coeffs).real
    if total == 0.0:
        return 0.0
    return float(np.vdot(coeffs[-2:], coeffs[-2:]).real / total)


@dataclass(frozen=True)
class StateVector:
    coeffs: np.ndarray
    tail_mass: float

    @property
    def dim(self):
        return len(self.coeffs)

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def overlap(self, other):
        """``<self|other>``, antilinear in ``self``."""
        return complex(np.vdot(self.coeffs, other.coeffs))


def _state(coeffs):
    coeffs = np.asarray(coeffs, dtype=complex)
    coeffs.setflags(write=False)
    return StateVector(coeffs, tail_mass(coeffs))


def _gamma(ratio):
    # b ∝ (1+r) x + (1-r) d/dx annihilates exp(-gamma x^2 / 2)
    return (1.0 + ratio) / (1.0 - ratio)


def _shared_prefactor(coeffs):
    g, gp = _gamma(coeffs.vacuum_ratio), _gamma(coeffs.prime_vacuum_ratio)
    return ((g + gp) / (2.0 * math.pi)) ** 0.25


def _gaussian_vacuum(ratio, prefactor, dim, tail_tol, label):
    c = np.zeros(dim)
    # exp(-gamma x^2/2) has c_0 = pi^(1/4) sqrt(1 - ratio) in the oscillator basis
    c[0] = prefactor * math.pi**0.25 * math.sqrt(1.0 - ratio)
    for n in range(1, dim - 1):
        c[n + 1] = -ratio * math.sqrt(n / (n + 1)) * c[n - 1]
    state = _state(c)
    if state.tail_mass >= tail_tol:
        raise TruncationError(
            f"{label} tail mass {state.tail_mass:.3e} >= {tail_tol:.1e} at dim={dim}; "
            "use a larger dim"
        )
    return state


def vacuum(pair, tail_tol=DEFAULT_TAIL_TOL):
    """The b-vacuum: ``u1 sqrt(n+1) c_{n+1} + u2 sqrt(n) c_{n-1} = 0``, ``c_1 = 0``."""
    coeffs = pair.coeffs
    return _gaussian_vacuum(
        coeffs.vacuum_ratio, _shared_prefactor(coeffs), pair.dim, tail_tol, "b-vacuum"
    )


def prime_vacuum(pair, tail_tol=DEFAULT_TAIL_TOL):
    """The b'-vacuum, annihilated by ``b' = Btilde† = v2 a + v1 a†``."""
    coeffs = pair.coeffs
    return _gaussian_vacuum(
        coeffs.prime_vacuum_ratio, _shared_prefactor(coeffs), pair.dim, tail_tol, "b'-vacuum"
    )


def bi_normalize(psi0, phi0):
    """Rescale ``phi0`` so that ``<psi0|phi0> = 1``; ``psi0`` is returned unchanged."""
    ov = psi0.overlap(phi0)
    if abs(ov) < PAIRING_TOL:
        raise DegeneratePairingError(f"vacuum overlap {abs(ov):.3e} is numerically zero")
    return psi0, _state(phi0.coeffs / ov)


@dataclass(frozen=True)
class BiBasis:
    """Columns ``psi[:, n]`` and ``phi[:, n]`` for ``n = 0..n_max``.

    ``pair`` is the ladder pair the families were built from; it may have a
    larger ``dim`` than the one requested if automatic escalation kicked in.
    """

    pair: object
    psi: np.ndarray
    phi: np.ndarray
    n_max: int
    gram: np.ndarray
    biorthonormality_residual: float
    max_edge_weight: float

    @property
    def dim(self):
        return self.pair.dim

    @property
    def coeffs(self):
        return self.pair.coeffs

    @property
    def psis(self):
        return [_state(self.psi[:, n]) for n in range(self.n_max + 1)]

    @property
    def phis(self):
        return [_state(self.phi[:, n]) for n in range(self.n_max + 1)]


def edge_weight(coeffs):
    """Edge amplitude scaled by ``dim``: ``dim * sqrt(tail_mass)``.

    Number-type operators have entries of order ``dim`` at the truncation
    edge, so a relative edge amplitude ``sqrt(tail_mass)`` turns into a
    relative operator residual of about ``dim * sqrt(tail_mass)``.  Raised
    states are accepted only when this residual scale is below ``tail_tol``.
    """
    return math.sqrt(tail_mass(coeffs)) * len(coeffs)


def _ladder_apply(c_a, c_adag, v, sq):
    """``(c_a a + c_adag a†) v`` for a real vector, using ``sq[k] = sqrt(k)``."""
    out = np.zeros_like(v)
    out[:-1] += c_a * sq[1:] * v[1:]
    out[1:] += c_adag * sq[1:] * v[:-1]
    return out


def _raise_family(c_a, c_adag, start, n_max, tail_tol, label):
    """Apply ``c_a a + c_adag a†`` repeatedly to ``start``, dividing by ``sqrt(n)``.

    The raised vectors are obtained by heavy cancellation (their entries are
    far smaller than those of the same recurrence run on absolute values), so
    the recurrence runs in extended precision on the real coefficients.
    """
    ld = np.longdouble
    sq = np.sqrt(np.arange(len(start.coeffs), dtype=ld))
    v = start.coeffs.real.astype(ld)
    cols = [start.coeffs]
    worst = edge_weight(start.coeffs)
    for n in range(1, n_max + 1):
        v = _ladder_apply(ld(c_a), ld(c_adag), v, sq) / np.sqrt(ld(n))
        col = v.astype(complex)
        t = edge_weight(col)
        if t >= tail_tol:
            raise TruncationError(
                f"{label}_{n} edge weight {t:.3e} >= {tail_tol:.1e} at dim={len(col)}; "
                "use a larger dim"
            )
        worst = max(worst, t)
        cols.append(col)
    return np.column_stack(cols), worst


def _construct(pair, n_max, tail_tol):
    psi0, phi0 = bi_normalize(vacuum(pair, tail_tol), prime_vacuum(pair, tail_tol))
    c = pair.coeffs
    # Btilde = v1 a + v2 a†  and  B† = u2 a + u1 a†
    psi, tail_psi = _raise_family(c.v1, c.v2, psi0, n_max, tail_tol, "psi")
    phi, tail_phi = _raise_family(c.u2, c.u1, phi0, n_max, tail_tol, "phi")
    gram = psi.conj().T @ phi
    dev = np.abs(gram - np.eye(n_max + 1))
    residual = float(dev.max())
    if residual > BIORTHO_HARD_LIMIT:
        n, m = np.unravel_index(np.argmax(dev), dev.shape)
        raise NumericalDegradationError(
            f"bi-orthonormality residual {residual:.3e} at (n, m) = ({n}, {m})"
        )
    for a in (psi, phi, gram):
        a.setflags(write=False)
    return BiBasis(pair, psi, phi, n_max, gram, residual, max(tail_psi, tail_phi))


def build_bi_basis(pair, n_max, tail_tol=DEFAULT_TAIL_TOL, escalate=True, max_dim=MAX_DIM):
    """Build ``{psi_n}`` and ``{phi_n}`` for ``n <= n_max``.

    If any state fails the tail test and ``escalate`` is true, ``dim`` is
    doubled (up to ``max_dim``) and the pair rebuilt.  The returned
    :class:`BiBasis` carries the pair actually used.
    """
    if isinstance(n_max, bool) or not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise DimensionError(f"n_max must be a non-negative integer, got {n_max!r}")
    if n_max > pair.dim // 2 - 2:
        raise DimensionError(
            f"n_max={n_max} leaves no raising headroom at dim={pair.dim}; "
            f"need n_max <= {pair.dim // 2 - 2}"
        )
    while True:
        try:
            return _construct(pair, n_max, tail_tol)
        except TruncationError:
            if not escalate or 2 * pair.dim > max_dim:
                raise
            log.info("escalating dim %d -> %d", pair.dim, 2 * pair.dim)
            pair = build_ladder_pair(pair.coeffs, 2 * pair.dim)


@dataclass(frozen=True)
class MetricOperator:
    """``eta = sum |phi_n><phi_n|`` and ``eta_inv = sum |psi_n><psi_n|``."""

    eta: np.ndarray
    eta_inv: np.ndarray
    hermiticity_residual: float
    inverse_residual: float
    min_trusted_eigenvalue: float


def metric(basis):
    """Metric operator of a bi-basis.

    ``inverse_residual`` is the larger of the relative residuals of
    ``eta_inv eta psi_n = psi_n`` and ``eta eta_inv phi_n = phi_n``: the
    truncated product is the identity only on the span of the families.
    ``min_trusted_eigenvalue`` is the smallest eigenvalue of ``eta``
    compressed onto the span of ``{phi_n}``.
    """
    psi, phi = basis.psi, basis.phi
    eta = phi @ phi.conj().T
    eta_inv = psi @ psi.conj().T
    herm = max(
        float(np.max(np.abs(eta - eta.conj().T))),
        float(np.max(np.abs(eta_inv - eta_inv.conj().T))),
    )
    eta = 0.5 * (eta + eta.conj().T)
    eta_inv = 0.5 * (eta_inv + eta_inv.conj().T)

    def rel(a, b):
        return float(np.max(np.linalg.norm(a - b, axis=0) / np.linalg.norm(b, axis=0)))

    inv = max(rel(eta_inv @ (eta @ psi), psi), rel(eta @ (eta_inv @ phi), phi))
    q, _ = np.linalg.qr(phi)
    lam = np.linalg.eigvalsh(q.conj().T @ eta @ q)
    for a in (eta, eta_inv):
        a.setflags(write=False)
    return MetricOperator(eta, eta_inv, herm, inv, float(lam.min()))


def metric_action_residual(basis, met):
    """``max_n ||eta psi_n - phi_n||``."""
    return float(np.max(np.linalg.norm(met.eta @ basis.psi - basis.phi, axis=0)))


def _shift(n, offset):
    """Matrix ``sqrt(k) δ_{m, k+offset}`` pattern with ``m, k < n``."""
    out = np.zeros((n, n))
    for k in range(n):
        m = k + offset
        if 0 <= m < n:
            out[m, k] = math.sqrt(max(k, m))
    return out


def pseudo_adjoint_residuals(pair, met, basis):
    """Max-norm residuals of the pseudo-adjointness relations.

    Relations acting on the psi-family are sandwiched as ``<phi_m| X |psi_n>``
    and those acting on the phi-family as ``<psi_m| X |phi_n>``, with
    ``n, m <= n_max - 1``.

    Keys
    ----
    btilde        eta^-1 B† eta - Btilde
    bprime        eta B eta^-1 - Btilde†
    number        eta^-1 N† eta - N
    number_prime  eta N'† eta^-1 - N'
    projector_*   the projector forms, e.g. <phi_m|B|psi_n> = sqrt(n) δ_{m,n-1}
    """
    k = basis.n_max
    psi, phi = basis.psi[:, :k], basis.phi[:, :k]
    eta, eta_inv = met.eta, met.eta_inv
    B, Bt = pair.B, pair.Btilde
    Bd, Bp = B.conj().T, Bt.conj().T
    nums = number_operators(pair)
    N, Np = nums.N, nums.Nprime

    def on_psi(x):
        return phi.conj().T @ (x @ psi)

    def on_phi(x):
        return psi.conj().T @ (x @ phi)

    def mx(a):
        return float(np.max(np.abs(a)))

    lower, upper = _shift(k, -1), _shift(k, 1)
    return {
        "btilde": mx(phi.conj().T @ eta_inv @ (Bd @ (eta @ psi)) - on_psi(Bt)),
        "bprime": mx(psi.conj().T @ eta @ (B @ (eta_inv @ phi)) - on_phi(Bp)),
        "number": mx(phi.conj().T @ eta_inv @ (N.conj().T @ (eta @ psi)) - on_psi(N)),
        "number_prime": mx(
            psi.conj().T @ eta @ (Np.conj().T @ (eta_inv @ phi)) - on_phi(Np)
        ),
        "projector_b": mx(on_psi(B) - lower),
        "projector_btilde": mx(on_psi(Bt) - upper),
        "projector_bprime": mx(on_phi(Bp) - lower),
        "projector_bdagger": mx(on_phi(Bd) - upper),
    }


def resolution_of_identity(basis):
    """Residuals of ``sum |psi_n><phi_n| = 1 = sum |phi_n><psi_n|``.

    ``psi_phi`` and ``phi_psi`` are bi-basis matrix elements (must vanish);
    ``canonical`` is the raw ``max|sum psi_n phi_n† - I|`` over the whole
    truncated space, reported for contrast: for ``s != 0`` the truncated sum
    is an oblique projector, not the identity.
    """
    psi, phi = basis.psi, basis.phi
    eye = np.eye(basis.n_max + 1)
    r1 = psi @ phi.conj().T
    r2 = phi @ psi.conj().T
    return {
        "psi_phi": float(np.max(np.abs(phi.conj().T @ r1 @ psi - eye))),
        "phi_psi": float(np.max(np.abs(psi.conj().T @ r2 @ phi - eye))),
        "canonical": float(np.max(np.abs(r1 - np.eye(basis.dim)))),
    }


def number_eigen_residuals(basis):
    """Largest relative residuals of ``N psi_n = n psi_n`` and ``N' phi_n = n phi_n``."""
    nums = number_operators(basis.pair)
    n = np.arange(basis.n_max + 1)

    def rel(op, v):
        return float(np.max(np.linalg.norm(op @ v - v * n, axis=0) / np.linalg.norm(v, axis=0)))

    return rel(nums.N, basis.psi), rel(nums.Nprime, basis.phi)


def parity_violation(basis):
    """Largest coefficient sitting on a level of the wrong parity (exactly 0 expected)."""
    levels = np.arange(basis.dim)[:, None]
    wrong = (levels - np.arange(basis.n_max + 1)[None, :]) % 2 == 1
    return float(max(np.abs(basis.psi[wrong]).max(initial=0.0), np.abs(basis.phi[wrong]).max(initial=0.0)))
