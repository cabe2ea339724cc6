"""Pseudo-bosons built from a deformed harmonic-oscillator ladder pair.

The package represents ``b = u1 a + u2 a†`` and ``b~ = v1 a + v2 a†`` with
``[b, b~] = 1`` on a truncated Fock space, builds the bi-orthonormal families
``psi_n`` and ``phi_n`` together with their metric operator, the
bi-orthogonal polynomials ``P_n`` and ``Q_n``, closed-form position-space
wave functions, bi-normalized coherent states and the pseudo-Hermitian
oscillator ``omega (b# b + 1/2)``.
"""

from .coherent import (
    CoherentPair,
    biovercompleteness_residual,
    coherent_vector,
    displaced_vacuum,
    eigen_residual,
)
from .dynamics import (
    OscillatorHamiltonian,
    evolve_matrix,
    evolve_spectral,
    hamiltonian,
    pt_residuals,
    temporal_stability_residual,
)
from .exceptions import (
    ConstructionError,
    DegeneratePairingError,
    DimensionError,
    IntegrationError,
    NumericalDegradationError,
    ParameterDomainError,
    PseudoBosonError,
    QuadratureError,
    TruncationError,
)
from .extended import ExtendedBiBasis, build_extended_bi_basis, family_residuals
from .fock import (
    BiBasis,
    MetricOperator,
    StateVector,
    bi_normalize,
    build_bi_basis,
    metric,
    prime_vacuum,
    pseudo_adjoint_residuals,
    resolution_of_identity,
    vacuum,
)
from .ladder import (
    FamilyCoefficients,
    LadderPair,
    NumberPair,
    algebra_residuals,
    alternate_family,
    build_annihilation,
    build_ladder_pair,
    number_operators,
    standard_family,
)
from .polynomials import (
    PolyCoeffs,
    biortho_integral,
    derivative_relation_residual,
    eval_poly,
    hermite_poly,
    p_poly,
    q_poly,
)
from .position import (
    GaussianProfile,
    PositionGrid,
    coherent_wavefunction,
    fock_wavefunction,
    ground_wavefunction,
    normalization_constant,
    position_overlap,
)
from .quadrature import QuadratureRule, gauss_hermite, gauss_laguerre, polar_rule

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
