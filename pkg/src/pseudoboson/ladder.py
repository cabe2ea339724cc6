"""Truncated matrix representations of deformed boson ladder operators.

A ladder pair is ``b = u1 a + u2 a†`` and ``b~ = v1 a + v2 a†`` with real
coefficients obeying ``u1 v2 - u2 v1 = 1``, so that ``[b, b~] = 1``.  On a
truncated Fock space ``{|0>, ..., |dim-1>}`` the canonical commutator
``[a, a†]`` picks up a spurious ``-(dim-1)`` in its last diagonal entry;
every algebraic identity is therefore checked on a leading sub-block only.
"""

from dataclasses import dataclass, field
import numbers

import numpy as np
from scipy import sparse

from .exceptions import ConstructionError, DimensionError, ParameterDomainError

__all__ = [
    "MIN_DIM",
    "DEFAULT_DIM",
    "FamilyCoefficients",
    "LadderPair",
    "NumberPair",
    "build_annihilation",
    "standard_family",
    "alternate_family",
    "build_ladder_pair",
    "number_operators",
    "commutator",
    "commutator_tolerance",
    "algebra_residuals",
]

MIN_DIM = 4
DEFAULT_DIM = 64
CONSTRAINT_TOL = 1e-14
COMMUTATOR_TOL = 1e-12


def _check_dim(dim):
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
        raise DimensionError(f"dim must be an integer, got {dim!r}")
    if dim < MIN_DIM:
        raise DimensionError(f"dim must be at least {MIN_DIM}, got {dim}")


def _check_s(s):
    if not isinstance(s, numbers.Real):
        raise ParameterDomainError(f"s must be real, got {s!r}")
    if not -1.0 < s < 1.0:
        raise ParameterDomainError(f"s must be restricted to the open interval (-1, 1), got {s}")


@dataclass(frozen=True)
class FamilyCoefficients:
    """Real coefficients of ``b = u1 a + u2 a†`` and ``b~ = v1 a + v2 a†``.

    Construction fails unless ``u1 v2 - u2 v1 = 1`` (to 1e-14) and both the
    b-vacuum (``|u2/u1| < 1``) and the b'-vacuum (``|v1/v2| < 1``, with
    ``b' = b~† = v2 a + v1 a†``) are normalizable.
    """

    u1: float
    u2: float
    v1: float
    v2: float
    name: str = "custom"
    s: float = None

    def __post_init__(self):
        for label in ("u1", "u2", "v1", "v2"):
            value = getattr(self, label)
            if isinstance(value, bool) or not isinstance(value, numbers.Real):
                raise ConstructionError(f"coefficient {label}={value!r} must be a real number")
            if not np.isfinite(value):
                raise ConstructionError(f"coefficient {label}={value!r} is not finite")
            object.__setattr__(self, label, float(value))
        if abs(self.constraint - 1.0) > CONSTRAINT_TOL:
            raise ConstructionError(
                f"commutator constraint u1*v2 - u2*v1 = {self.constraint!r} != 1"
            )
        if self.u1 == 0.0 or abs(self.u2 / self.u1) >= 1.0:
            raise ConstructionError(
                f"b-vacuum not normalizable: |u2/u1| must be < 1 (u1={self.u1}, u2={self.u2})"
            )
        if self.v2 == 0.0 or abs(self.v1 / self.v2) >= 1.0:
            raise ConstructionError(
                f"b'-vacuum not normalizable: |v1/v2| must be < 1 (v1={self.v1}, v2={self.v2})"
            )

    @property
    def constraint(self):
        return self.u1 * self.v2 - self.u2 * self.v1

    @property
    def vacuum_ratio(self):
        """``u2/u1``; the b-vacuum has ``c_{n+1} = -ratio sqrt(n/(n+1)) c_{n-1}``."""
        return self.u2 / self.u1

    @property
    def prime_vacuum_ratio(self):
        """``v1/v2``, the analogous ratio for the b'-vacuum."""
        return self.v1 / self.v2

    @property
    def is_hermitian_limit(self):
        return self.u1 == self.v2 == 1.0 and self.u2 == self.v1 == 0.0


def standard_family(s):
    """``b(s) = a + s a†``, ``b~(s) = s a + (1 + s^2) a†``."""
    _check_s(s)
    s = float(s)
    return FamilyCoefficients(1.0, s, s, 1.0 + s * s, name="standard", s=s)


def alternate_family(s):
    """``b_2(s) = a + s a†``, ``b~_2(s) = -s a + (1 - s^2) a†``.

    The b'-vacuum requires ``s/(1 - s^2) < 1`` in magnitude, i.e.
    ``|s| < (sqrt(5) - 1)/2``; outside that range construction fails.
    """
    _check_s(s)
    s = float(s)
    return FamilyCoefficients(1.0, s, -s, 1.0 - s * s, name="alternate", s=s)


def build_annihilation(dim):
    """Truncated canonical annihilation matrix: ``sqrt(n)`` at ``(n-1, n)``."""
    _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def commutator(x, y):
    return x @ y - y @ x


def _banded_product(x, y):
    # ladder matrices are banded; a sparse product avoids O(dim^3) work
    return (sparse.csr_matrix(x) @ sparse.csr_matrix(y)).toarray()


def _banded_commutator(x, y):
    sx, sy = sparse.csr_matrix(x), sparse.csr_matrix(y)
    return (sx @ sy - sy @ sx).toarray()


@dataclass(frozen=True)
class LadderPair:
    """Matrices ``B`` (for b) and ``Btilde`` (for b~) on a truncated space."""

    B: np.ndarray
    Btilde: np.ndarray
    coeffs: FamilyCoefficients
    dim: int
    commutator_residual: float = field(default=float("nan"))

    @property
    def Bprime(self):
        """``b' = b~†``, the annihilator of the prime vacuum."""
        return self.Btilde.conj().T


@dataclass(frozen=True)
class NumberPair:
    """``N = b~ b`` and ``N' = b† b~†``."""

    N: np.ndarray
    Nprime: np.ndarray


def _frozen(a):
    a.setflags(write=False)
    return a


def commutator_tolerance(B, Bt):
    """``1e-12``, or the rounding floor of ``B Btilde - Btilde B`` if larger.

    Diagonal entries of the two products grow like ``dim``; beyond a few
    hundred levels their difference cannot be resolved to 1e-12 in double
    precision.
    """
    scale = np.max(np.abs(B)) * np.max(np.abs(Bt))
    return max(COMMUTATOR_TOL, 8.0 * np.finfo(float).eps * scale)


def build_ladder_pair(coeffs, dim=DEFAULT_DIM):
    """Assemble ``B`` and ``Btilde`` and verify ``[B, Btilde] = 1`` on the leading block."""
    if not isinstance(coeffs, FamilyCoefficients):
        raise ConstructionError(f"expected FamilyCoefficients, got {type(coeffs).__name__}")
    a = build_annihilation(dim)
    ad = a.conj().T
    B = coeffs.u1 * a + coeffs.u2 * ad
    Bt = coeffs.v1 * a + coeffs.v2 * ad
    block = _banded_commutator(B, Bt)[: dim - 1, : dim - 1]
    residual = float(np.max(np.abs(block - np.eye(dim - 1))))
    if residual >= commutator_tolerance(B, Bt):
        raise ConstructionError(
            f"[B, Btilde] - 1 on the leading {dim - 1}x{dim - 1} block is {residual:.3e}"
        )
    return LadderPair(_frozen(B), _frozen(Bt), coeffs, int(dim), residual)


def number_operators(pair):
    """Number operators of a ladder pair; ``Nprime`` equals ``N†``."""
    N = _banded_product(pair.Btilde, pair.B)
    Nprime = _banded_product(pair.B.conj().T, pair.Btilde.conj().T)
    return NumberPair(_frozen(N), _frozen(Nprime))


def algebra_residuals(pair, numbers=None):
    """Max-norm residuals of the ladder algebra on the trusted leading blocks.

    Keys: ``commutator`` for ``[b, b~] - 1`` on the leading ``dim-1`` block,
    ``b_number`` for ``[b, N] - b`` and ``btilde_number`` for
    ``[b~, N] + b~`` on the leading ``dim-2`` block.
    """
    numbers = number_operators(pair) if numbers is None else numbers
    d = pair.dim
    B, Bt, N = pair.B, pair.Btilde, numbers.N
    k = d - 2
    return {
        "commutator": float(
            np.max(np.abs(_banded_commutator(B, Bt)[: d - 1, : d - 1] - np.eye(d - 1)))
        ),
        "b_number": float(np.max(np.abs((_banded_commutator(B, N) - B)[:k, :k]))),
        "btilde_number": float(np.max(np.abs((_banded_commutator(Bt, N) + Bt)[:k, :k]))),
    }
