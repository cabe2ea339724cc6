"""Closed-form position-space wave functions for the standard family.

Coordinate convention: ``a = (x + d/dx)/sqrt(2)``.  With it

    b(s)  = ((1+s) x + (1-s) d/dx) / sqrt(2)
    b'(s) = ((1+s+s^2) x + (1-s+s^2) d/dx) / sqrt(2)

annihilate the ground states

    psi_0 = N(s) exp(-(1+s)/(2(1-s)) x^2)
    phi_0 = N(s) exp(-(1+s+s^2)/(2(1-s+s^2)) x^2),   N(s) = (pi (1-s)(1-s+s^2))^(-1/4).

Coherent-state prefactors follow from summing the Fock expansion with the
generating function ``sum R_n t^n / n! = exp(A x t + C t^2 / 2)`` of the
recurrence ``R_n = A x R_{n-1} + (n-1) C R_{n-2}``, so position-space and
coefficient-space coherent states coincide exactly.
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np

from .exceptions import IntegrationError, ParameterDomainError
from .polynomials import eval_family, recurrence_constants
from .quadrature import gauss_hermite

__all__ = [
    "GaussianProfile",
    "Wavefunction",
    "PositionGrid",
    "normalization_constant",
    "ground_gamma",
    "ground_profile",
    "ground_wavefunction",
    "fock_wavefunction",
    "coherent_prefactors",
    "coherent_profile",
    "coherent_wavefunction",
    "binormalization_integral",
    "ground_state",
    "fock_state",
    "coherent_state",
    "position_overlap",
    "hermite_functions",
    "expand_state",
    "annihilation_residual",
    "sample",
]

WHICH = ("psi", "phi")
DEFAULT_OVERLAP_ORDER = 100


def _check_s(s):
    if not -1.0 < s < 1.0:
        raise ParameterDomainError(f"s must be restricted to the open interval (-1, 1), got {s}")


def _check_which(which):
    if which not in WHICH:
        raise ParameterDomainError(f"which must be 'psi' or 'phi', got {which!r}")


def _family(which):
    return "P" if which == "psi" else "Q"


def normalization_constant(s):
    """``N(s) = (pi (1-s)(1-s+s^2))^(-1/4)``."""
    _check_s(s)
    return (math.pi * (1.0 - s) * (1.0 - s + s * s)) ** -0.25


def ground_gamma(s, which):
    """Exponent coefficient ``gamma`` with ground state ``∝ exp(-gamma x^2 / 2)``."""
    _check_s(s)
    _check_which(which)
    if which == "psi":
        return (1.0 + s) / (1.0 - s)
    return (1.0 + s + s * s) / (1.0 - s + s * s)


@dataclass(frozen=True)
class GaussianProfile:
    """``prefactor * exp(-gamma x^2 / 2 + linear x)``."""

    gamma: float
    linear: complex = 0.0
    prefactor: complex = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ParameterDomainError(f"gamma must be positive (normalizable), got {self.gamma}")

    def __call__(self, x):
        x = np.asarray(x)
        return self.prefactor * np.exp(-0.5 * self.gamma * x * x + self.linear * x)


@dataclass(frozen=True)
class Wavefunction:
    """A Gaussian profile times an optional polynomial factor ``R_n(x, s)``."""

    profile: GaussianProfile
    family: str = None
    n: int = 0
    s: float = 0.0
    scale: float = 1.0

    def __call__(self, x):
        x = np.asarray(x)
        if not np.iscomplexobj(x):
            x = x.astype(float)
        values = self.profile(x)
        if self.family is not None:
            values = values * (self.scale * eval_family(self.family, self.n, self.s, x))
        return values


@dataclass(frozen=True)
class PositionGrid:
    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValueError("points and values must have matching lengths")


def ground_profile(s, which):
    return GaussianProfile(ground_gamma(s, which), 0.0, normalization_constant(s))


def ground_state(s, which):
    return Wavefunction(ground_profile(s, which))


def ground_wavefunction(s, which, x):
    """``psi_0(x, s)`` or ``phi_0(x, s)``."""
    return ground_profile(s, which)(x).real


def fock_state(n, s, which):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterDomainError(f"n must be a non-negative integer, got {n!r}")
    scale = 1.0 / math.sqrt(2.0**n * math.factorial(n))
    return Wavefunction(ground_profile(s, which), _family(which), int(n), float(s), scale)


def fock_wavefunction(n, s, which, x):
    """``psi_n = P_n psi_0 / sqrt(2^n n!)`` or ``phi_n = Q_n phi_0 / sqrt(2^n n!)``."""
    return fock_state(n, s, which)(x).real


def coherent_prefactors(alpha, s):
    """``(N(s, alpha), N'(s, alpha))`` fixed by the Fock expansion.

    ``N = N(s) exp(-|alpha|^2/2 + C_P alpha^2/4)`` and likewise ``N'`` with
    ``C_Q``, where ``C`` is the constant of the polynomial recurrence.  These
    are complex for complex ``alpha``; the product ``N * conj(N')`` is what the
    bi-normalization condition fixes.
    """
    n0 = normalization_constant(s)
    alpha = complex(alpha)
    damp = -0.5 * abs(alpha) ** 2
    out = []
    for fam in ("P", "Q"):
        _, c = recurrence_constants(fam, s)
        out.append(n0 * cmath.exp(damp + 0.25 * c * alpha * alpha))
    return tuple(out)


def coherent_profile(alpha, s, which):
    _check_which(which)
    alpha = complex(alpha)
    n_psi, n_phi = coherent_prefactors(alpha, s)
    if which == "psi":
        return GaussianProfile(ground_gamma(s, "psi"), math.sqrt(2.0) * alpha / (1.0 - s), n_psi)
    return GaussianProfile(
        ground_gamma(s, "phi"), math.sqrt(2.0) * alpha / (1.0 - s + s * s), n_phi
    )


def coherent_state(alpha, s, which):
    return Wavefunction(coherent_profile(alpha, s, which))


def coherent_wavefunction(alpha, s, which, x):
    """``psi_alpha(x, s)`` or ``phi_alpha(x, s)`` (complex valued)."""
    return coherent_profile(alpha, s, which)(x)


def binormalization_integral(alpha, s):
    """Closed form of ``∫ conj(phi^_alpha) psi^_alpha dx`` for the bare exponentials.

    ``sqrt(pi (1-s)(1-s+s^2)) exp(beta^2 / (2 (1-s)(1-s+s^2)))`` with
    ``beta = (2 - 2s + s^2) Re(alpha) + i s^2 Im(alpha)``.  Multiplied by
    ``N * conj(N')`` it must give 1.
    """
    _check_s(s)
    alpha = complex(alpha)
    d = (1.0 - s) * (1.0 - s + s * s)
    beta = (2.0 - 2.0 * s + s * s) * alpha.real + 1j * s * s * alpha.imag
    return math.sqrt(math.pi * d) * cmath.exp(beta * beta / (2.0 * d))


def _profile_of(f):
    if isinstance(f, Wavefunction):
        return f.profile
    return getattr(f, "profile", None) if not isinstance(f, GaussianProfile) else f


def _estimate_gaussian(h):
    x = np.linspace(-12.0, 12.0, 241)
    v = np.abs(h(x))
    keep = v > 1e-250 * v.max() if v.max() > 0 else np.zeros_like(v, dtype=bool)
    if keep.sum() < 3:
        raise IntegrationError("integrand vanishes on the probe grid")
    coef = np.polyfit(x[keep], np.log(v[keep]), 2)
    kappa = -coef[0]
    if not kappa > 0:
        raise IntegrationError("integrand does not decay like a Gaussian")
    return kappa, coef[1] / (2.0 * kappa)


def position_overlap(f, g, quad_order=DEFAULT_OVERLAP_ORDER):
    """``∫ conj(f(x)) g(x) dx`` by Gauss-Hermite after Gaussian rescaling.

    When both arguments carry a :class:`GaussianProfile` the width and the
    (possibly complex) saddle point of the combined Gaussian are read off
    exactly, which removes the oscillation a complex linear term would
    otherwise cause.  For plain callables both are fitted from
    ``log|conj(f) g|`` on a real probe grid.  An integrand that is not small
    at the outermost nodes raises :class:`IntegrationError`.
    """
    pf, pg = _profile_of(f), _profile_of(g)
    if pf is not None and pg is not None:
        # conj(f(conj z)) g(z) is entire and equals the integrand on the real
        # line, so the contour may pass through the complex saddle point
        def h(z):
            return np.conj(f(np.conj(z))) * g(z)

        kappa = 0.5 * (pf.gamma + pg.gamma)
        center = complex(np.conj(pf.linear) + pg.linear) / (2.0 * kappa)
    else:
        def h(z):
            return np.conj(f(z)) * g(z)

        kappa, center = _estimate_gaussian(h)
    rule = gauss_hermite(quad_order)
    t = rule.nodes
    root = math.sqrt(kappa)
    values = h(center + t / root)
    if not np.all(np.isfinite(values)):
        raise IntegrationError("integrand is not finite at the quadrature nodes")
    mags = np.abs(values)
    peak = mags.max()
    if peak > 0 and max(mags[0], mags[-1]) > 1e-8 * peak:
        raise IntegrationError("integrand does not decay at the outer quadrature nodes")
    # the weight exp(-t^2) is divided out; exp(t^2) stays finite for order <= 200
    return complex(np.sum(rule.weights * values * np.exp(t * t)) / root)


def hermite_functions(kmax, x):
    """Oscillator eigenfunctions ``h_0..h_kmax`` at ``x`` (rows index ``k``)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = math.pi**-0.25 * np.exp(-0.5 * x * x)
    if kmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for k in range(2, kmax + 1):
        out[k] = math.sqrt(2.0 / k) * x * out[k - 1] - math.sqrt((k - 1) / k) * out[k - 2]
    return out


def expand_state(coeffs, x):
    """Position-space values of a canonical Fock coefficient vector."""
    coeffs = getattr(coeffs, "coeffs", coeffs)
    h = hermite_functions(len(coeffs) - 1, x)
    return np.tensordot(coeffs, h, axes=1)


def annihilation_residual(s, which, x, h=1e-5):
    """Max ``|b psi_0|`` (``which='psi'``) or ``|b' phi_0|`` via central differences."""
    x = np.asarray(x, dtype=float)
    f = ground_profile(s, which)
    if which == "psi":
        cx, cd = 1.0 + s, 1.0 - s
    else:
        cx, cd = 1.0 + s + s * s, 1.0 - s + s * s
    deriv = (f(x + h) - f(x - h)) / (2.0 * h)
    return float(np.max(np.abs((cx * x * f(x) + cd * deriv) / math.sqrt(2.0))))


def sample(wavefunction, xmin, xmax, count):
    """Evaluate a wave function on a uniform grid."""
    if count < 2 or not xmax > xmin:
        raise ParameterDomainError("grid needs xmax > xmin and at least two points")
    pts = np.linspace(xmin, xmax, count)
    return PositionGrid(pts, np.asarray(wavefunction(pts), dtype=complex))
