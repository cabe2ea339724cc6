"""Extended-precision bi-basis for ill-conditioned ladder families.

For some families the canonical coefficients of ``psi_n`` and ``phi_n`` are
obtained through massive cancellation: ``sum_k |psi_n[k]| |phi_m[k]|``
exceeds ``|<psi_n|phi_m>|`` by ten or more orders of magnitude.  Double
precision then cannot represent the families well enough for the
bi-orthonormality and metric identities to hold to 1e-10, whatever the
algorithm.  This module repeats the construction with ``mpmath`` at a chosen
number of decimal digits and evaluates the same residuals as
:mod:`pseudoboson.fock`, expressed through small bi-basis Gram matrices so
that no ``dim x dim`` operator is ever formed:

    eta psi_n                   = sum_k phi_k <phi_k|psi_n>
    <phi| eta^-1 B† eta |psi>   = (Phi†Psi) (Psi† B† Phi) (Phi†Psi)
    <psi| eta B eta^-1 |phi>    = (Psi†Phi) (Phi† B Psi) (Psi†Phi)

Only real families are supported, which covers every
:class:`~pseudoboson.ladder.FamilyCoefficients`.
"""

from dataclasses import dataclass
import logging

import mpmath
import numpy as np

from .exceptions import (
    DegeneratePairingError,
    DimensionError,
    NumericalDegradationError,
    ParameterDomainError,
    TruncationError,
)
from .fock import (
    DEFAULT_TAIL_TOL,
    MAX_DIM,
    build_bi_basis,
    metric,
    metric_action_residual,
    pseudo_adjoint_residuals,
)
from .ladder import build_ladder_pair

__all__ = ["ExtendedBiBasis", "build_extended_bi_basis", "extended_residuals", "family_residuals"]

log = logging.getLogger(__name__)

DEFAULT_DPS = 40
# bi-orthonormality residual above which "auto" abandons double precision;
# larger values signal cancellation that spoils the metric identities by
# several further orders of magnitude
AUTO_DOUBLE_LIMIT = 1e-12


@dataclass(frozen=True)
class ExtendedBiBasis:
    """Columns of ``psi`` and ``phi`` as object arrays of ``mpmath.mpf``."""

    coeffs: object
    psi: np.ndarray
    phi: np.ndarray
    n_max: int
    dim: int
    ctx: object
    max_edge_weight: float

    @property
    def dps(self):
        return self.ctx.dps


def _vacuum(ratio, prefactor, dim, ctx):
    # same scale convention as the double-precision vacua
    c = np.array([ctx.mpf(0)] * dim, dtype=object)
    c[0] = prefactor * ctx.root(ctx.pi, 4) * ctx.sqrt(1 - ratio)
    for n in range(1, dim - 1):
        c[n + 1] = -ratio * ctx.sqrt(ctx.mpf(n) / (n + 1)) * c[n - 1]
    return c


def _apply(c_a, c_adag, v, sq):
    out = np.array([v[0] * 0] * len(v), dtype=object)
    out[:-1] += c_a * sq[1:] * v[1:]
    out[1:] += c_adag * sq[1:] * v[:-1]
    return out


def _edge_weight(v, ctx):
    total = ctx.fsum(x * x for x in v)
    return float(ctx.sqrt(ctx.fsum(x * x for x in v[-2:]) / total) * len(v))


def _dot(a, b, ctx):
    return ctx.fsum(x * y for x, y in zip(a, b))


def _construct(coeffs, n_max, dim, tail_tol, ctx):
    u1, u2, v1, v2 = (ctx.mpf(x) for x in (coeffs.u1, coeffs.u2, coeffs.v1, coeffs.v2))
    sq = np.array([ctx.sqrt(k) for k in range(dim)], dtype=object)
    r, rp = u2 / u1, v1 / v2
    gamma, gamma_p = (1 + r) / (1 - r), (1 + rp) / (1 - rp)
    prefactor = ctx.root((gamma + gamma_p) / (2 * ctx.pi), 4)
    psi0 = _vacuum(r, prefactor, dim, ctx)
    phi0 = _vacuum(rp, prefactor, dim, ctx)
    ov = _dot(psi0, phi0, ctx)
    if abs(ov) < ctx.mpf(10) ** (-ctx.dps // 2):
        raise DegeneratePairingError("vacuum overlap is numerically zero")
    phi0 = phi0 / ov
    cols_psi, cols_phi = [psi0], [phi0]
    worst = max(_edge_weight(psi0, ctx), _edge_weight(phi0, ctx))
    for n in range(1, n_max + 1):
        root = ctx.sqrt(n)
        cols_psi.append(_apply(v1, v2, cols_psi[-1], sq) / root)
        cols_phi.append(_apply(u2, u1, cols_phi[-1], sq) / root)
        for label, v in (("psi", cols_psi[-1]), ("phi", cols_phi[-1])):
            w = _edge_weight(v, ctx)
            if w >= tail_tol:
                raise TruncationError(f"{label}_{n} edge weight {w:.3e} >= {tail_tol:.1e} at dim={dim}")
            worst = max(worst, w)
    return np.column_stack(cols_psi), np.column_stack(cols_phi), worst


def build_extended_bi_basis(coeffs, n_max, dim=64, tail_tol=DEFAULT_TAIL_TOL, dps=DEFAULT_DPS,
                            max_dim=MAX_DIM):
    """Extended-precision analogue of :func:`pseudoboson.fock.build_bi_basis`.

    ``dim`` is doubled until every raised state passes the edge test.  The
    vacua follow the same scale convention as the double-precision ones.
    """
    if n_max < 0:
        raise DimensionError(f"n_max must be non-negative, got {n_max}")
    while n_max > dim // 2 - 2:
        dim *= 2
    ctx = mpmath.MPContext()
    ctx.dps = dps
    while True:
        try:
            psi, phi, worst = _construct(coeffs, n_max, dim, tail_tol, ctx)
            return ExtendedBiBasis(coeffs, psi, phi, n_max, dim, ctx, worst)
        except TruncationError:
            if 2 * dim > max_dim:
                raise
            log.info("escalating extended dim %d -> %d", dim, 2 * dim)
            dim *= 2


def _gram(a, b):
    return a.T.dot(b)


def _max_abs(m):
    return float(max(abs(x) for x in np.asarray(m).ravel()))


def extended_residuals(ebasis):
    """Residuals of the bi-basis identities, evaluated at the basis precision.

    Keys
    ----
    biorthonormality  max |<psi_n|phi_m> - δ_nm|
    metric_action     max_n ||eta psi_n - phi_n||
    btilde            bi-basis elements of eta^-1 B† eta - Btilde
    bprime            bi-basis elements of eta B eta^-1 - Btilde†
    """
    c = ebasis.coeffs
    psi, phi = ebasis.psi, ebasis.phi
    dim, k = ebasis.dim, ebasis.n_max
    ctx = ebasis.ctx
    sq = np.array([ctx.sqrt(j) for j in range(dim)], dtype=object)
    u1, u2, v1, v2 = (ctx.mpf(x) for x in (c.u1, c.u2, c.v1, c.v2))

    def columns(op, m):
        return np.column_stack([op(m[:, j]) for j in range(m.shape[1])])

    eye = np.eye(k + 1, dtype=object)
    g_psi_phi = _gram(psi, phi)
    biortho = _max_abs(g_psi_phi - eye)

    eta_psi = phi.dot(_gram(phi, psi))
    diff = eta_psi - phi
    action = max(float(ctx.sqrt(ctx.fsum(x * x for x in diff[:, j]))) for j in range(k + 1))

    def B(v):
        return _apply(u1, u2, v, sq)

    def Bt(v):
        return _apply(v1, v2, v, sq)

    def Bdag(v):
        return _apply(u2, u1, v, sq)

    def Btdag(v):
        return _apply(v2, v1, v, sq)

    # eta and eta^-1 run over all n_max + 1 states; the sandwich uses the
    # first n_max, whose images under the ladder operators stay in the span
    ps, ph = psi[:, :k], phi[:, :k]
    a_phi_psi = _gram(phi, psi)
    a_psi_phi = _gram(psi, phi)
    sharp = a_phi_psi[:k, :].dot(_gram(psi, columns(Bdag, phi))).dot(a_phi_psi[:, :k])
    btilde = _max_abs(sharp - _gram(ph, columns(Bt, ps)))
    prime = a_psi_phi[:k, :].dot(_gram(phi, columns(B, psi))).dot(a_psi_phi[:, :k])
    bprime = _max_abs(prime - _gram(ps, columns(Btdag, ph)))
    return {
        "biorthonormality": biortho,
        "metric_action": action,
        "btilde": btilde,
        "bprime": bprime,
    }


def family_residuals(coeffs, n_max, dim=64, precision="auto", tail_tol=DEFAULT_TAIL_TOL, dps=DEFAULT_DPS):
    """Bi-orthonormality, metric-action and pseudo-adjoint residuals of a family.

    ``precision`` is ``"double"`` (the :mod:`pseudoboson.fock` pipeline),
    ``"extended"`` (this module) or ``"auto"``, which keeps the double
    precision result only if its bi-orthonormality residual is at most
    :data:`AUTO_DOUBLE_LIMIT`.
    The returned dict carries the precision actually used under ``precision``.

    Raises
    ------
    NumericalDegradationError
        With ``precision="double"`` when the family is too ill-conditioned.
    """
    if precision not in ("auto", "double", "extended"):
        raise ParameterDomainError(f"precision must be auto, double or extended, got {precision!r}")
    if precision != "extended":
        try:
            pair = build_ladder_pair(coeffs, dim)
            while n_max > pair.dim // 2 - 2:
                pair = build_ladder_pair(coeffs, 2 * pair.dim)
            basis = build_bi_basis(pair, n_max, tail_tol)
        except NumericalDegradationError as exc:
            if precision == "double":
                raise
            log.info("double precision degraded (%s); switching to %d digits", exc, dps)
        else:
            if precision == "auto" and basis.biorthonormality_residual > AUTO_DOUBLE_LIMIT:
                log.info("double-precision bi-orthonormality %.1e; switching to %d digits",
                         basis.biorthonormality_residual, dps)
                return family_residuals(coeffs, n_max, dim, "extended", tail_tol, dps)
            met = metric(basis)
            pa = pseudo_adjoint_residuals(basis.pair, met, basis)
            return {
                "biorthonormality": basis.biorthonormality_residual,
                "metric_action": metric_action_residual(basis, met),
                "btilde": pa["btilde"],
                "bprime": pa["bprime"],
                "precision": "double",
                "dim": basis.dim,
            }
    ebasis = build_extended_bi_basis(coeffs, n_max, dim, tail_tol, dps)
    out = extended_residuals(ebasis)
    out["precision"] = f"extended ({ebasis.dps} digits)"
    out["dim"] = ebasis.dim
    return out
