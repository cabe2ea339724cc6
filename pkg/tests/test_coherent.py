import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import basis_for, metric_for
from pseudoboson.coherent import (
    biovercompleteness_residual,
    coherent_coefficients,
    coherent_vector,
    displaced_vacuum,
    eigen_residual,
    poisson_tail,
    required_n_max,
)
from pseudoboson.exceptions import QuadratureError, TruncationError
from pseudoboson.fock import vacuum
from pseudoboson.ladder import build_ladder_pair, standard_family
from pseudoboson.position import coherent_wavefunction, expand_state

alphas = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def test_alpha_zero_is_the_vacuum_pair():
    basis = basis_for(0.5, 20)
    cp = coherent_vector(0.0, basis)
    np.testing.assert_array_equal(cp.ket.coeffs, basis.psi[:, 0])
    np.testing.assert_array_equal(cp.dual.coeffs, basis.phi[:, 0])


def test_hermitian_limit_gives_glauber_coefficients():
    alpha = 0.8 + 0.3j
    cp = coherent_vector(alpha, basis_for(0.0, 30))
    n = np.arange(31)
    want = np.exp(-abs(alpha) ** 2 / 2) * alpha**n / np.sqrt([float(math.factorial(k)) for k in n])
    np.testing.assert_allclose(cp.ket.coeffs[:31], want, atol=1e-15)
    assert cp.ket.norm() == pytest.approx(1.0, abs=1e-12)


def test_required_n_max_and_tail():
    assert required_n_max(2.0) == 44
    assert required_n_max(0) == 20
    assert poisson_tail(0.0, 3) == 0.0
    # exp(-x) sum_{n>1} x^n/n! for x = 1
    assert poisson_tail(1.0, 1) == pytest.approx(1 - 2 / math.e, rel=1e-13)
    np.testing.assert_allclose(coherent_coefficients(1.0, 2), [math.exp(-0.5), math.exp(-0.5), math.exp(-0.5) / math.sqrt(2)])


@given(alphas, st.sampled_from([0.0, 0.5, -0.5]))
@settings(max_examples=30, deadline=None)
def test_eigen_and_binormalization(alpha, s):
    basis = basis_for(s, required_n_max(alpha))
    cp = coherent_vector(alpha, basis)
    assert max(eigen_residual(None, cp)) < 1e-8
    assert abs(cp.binormalization - 1.0) < 1e-10


def test_binormalization_at_large_s_needs_looser_tail():
    for s in (0.9, -0.9):
        basis = basis_for(s, 22)
        cp = coherent_vector(2.0, basis, tail_tol=1e-9)
        assert abs(cp.binormalization - 1.0) < 1e-8


def test_kets_are_not_normalized_away_from_hermitian_limit():
    cp = coherent_vector(1.0, basis_for(0.9, 22), tail_tol=1e-9)
    assert abs(cp.ket.norm() ** 2 - 1.0) > 1e-3


def test_series_truncation_is_reported_and_degrades():
    alpha = 1.5
    basis = basis_for(0.5, required_n_max(alpha))
    with pytest.raises(TruncationError):
        coherent_vector(alpha, basis_for(0.5, 8))
    full = eigen_residual(None, coherent_vector(alpha, basis))
    short = basis_for(0.5, required_n_max(alpha) // 4)
    half = eigen_residual(None, coherent_vector(alpha, short, tail_tol=math.inf))
    assert max(half) > 100 * max(full)


@pytest.mark.parametrize("s", [0.5, -0.5])
def test_series_matches_closed_form_wavefunction(s):
    # expanding |alpha> in oscillator eigenfunctions reproduces the closed
    # form with the complex prefactor N(s, alpha)
    alpha = 0.6 + 0.2j
    basis = basis_for(s, required_n_max(alpha))
    cp = coherent_vector(alpha, basis)
    x = np.linspace(-3, 3, 25)
    for which, state in (("psi", cp.ket), ("phi", cp.dual)):
        closed = coherent_wavefunction(alpha, s, which, x)
        np.testing.assert_allclose(expand_state(state, x), closed, atol=1e-10)


@pytest.mark.parametrize("alpha", [1.0, 1j, 1 + 1j])
def test_displacement_routes_agree(alpha):
    s = 0.5
    basis = basis_for(s, required_n_max(alpha))
    target = coherent_vector(alpha, basis).ket.coeffs
    direct = displaced_vacuum(alpha, basis.pair, basis.psis[0])
    via_metric = displaced_vacuum(alpha, basis.pair, basis.psis[0], metric_for(s, required_n_max(alpha)), basis)
    assert np.linalg.norm(direct.coeffs - target) < 1e-7
    assert np.linalg.norm(via_metric.coeffs - target) < 1e-7


def test_displacement_needs_basis_with_metric():
    basis = basis_for(0.5, 20)
    with pytest.raises(ValueError):
        displaced_vacuum(1.0, basis.pair, basis.psis[0], metric_for(0.5, 20))


def test_displacement_too_large_for_dim():
    pair = build_ladder_pair(standard_family(0.5), 32)
    with pytest.raises(TruncationError):
        displaced_vacuum(4.0, pair, vacuum(pair))


def test_biovercompleteness_and_order_checks():
    basis = basis_for(0.5, 10)
    res = biovercompleteness_residual(basis)
    assert max(res.values()) < 1e-10
    with pytest.raises(QuadratureError):
        biovercompleteness_residual(basis, k_r=10)
    with pytest.raises(QuadratureError):
        biovercompleteness_residual(basis, k_theta=20)
