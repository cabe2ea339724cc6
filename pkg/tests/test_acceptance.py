"""Acceptance criteria, each at its stated tolerance.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.  Run directly with ``python
tests/test_acceptance.py`` or as part of ``pytest``.
"""

import functools
import math
import time

import numpy as np
import pytest

from helpers import S_MODERATE, S_SET, basis_for, hermite_integer_coeffs, metric_for, pair_for
from pseudoboson.coherent import (
    biovercompleteness_residual,
    coherent_vector,
    displaced_vacuum,
    eigen_residual,
    required_n_max,
)
from pseudoboson.dynamics import hamiltonian, pt_residuals, temporal_stability_residual
from pseudoboson.exceptions import ConstructionError, NumericalDegradationError
from pseudoboson.extended import family_residuals
from pseudoboson.fock import metric_action_residual, pseudo_adjoint_residuals
from pseudoboson.ladder import algebra_residuals, alternate_family
from pseudoboson.polynomials import biortho_expected, biortho_integral, eval_poly, p_poly, q_poly
from pseudoboson.position import expand_state, fock_wavefunction


def _report(label, value, tol):
    print(f"{label}: {value:.3e} (tol {tol:.0e})")


# 1 -------------------------------------------------------------------------


@pytest.mark.criterion(1)
def test_c01_hermite_recovery():
    start = time.perf_counter()
    for n in range(21):
        expected = hermite_integer_coeffs(n)
        for build in (p_poly, q_poly):
            got = build(n, 0.0).coeffs
            # every coefficient is an integer below 2**53 for n <= 20, so the
            # comparison is exact
            assert [int(c) for c in got] == expected
            assert np.all(got == np.array(expected, dtype=float))
    elapsed = time.perf_counter() - start
    _report("criterion 1 runtime [s]", elapsed, 1.0)
    assert elapsed < 1.0


# 2 -------------------------------------------------------------------------


def _printed_low_order(x, s):
    d = 1 - s + s * s
    return {
        ("P", 1): 2 * x / (1 - s),
        ("P", 2): 4 * x * x / (1 - s) ** 2 + 2 * (s - s * s - 1) / (1 - s),
        ("Q", 1): 2 * x / d,
        ("Q", 2): 4 * x * x / d**2 + 2 * (s - 1) / d,
    }


@pytest.mark.criterion(2)
def test_c02_low_order_polynomials():
    rng = np.random.default_rng(20240611)
    xs = rng.uniform(-3.0, 3.0, 10)
    ss = rng.uniform(-0.95, 0.95, 10)
    worst = 0.0
    for x, s in zip(xs, ss):
        for (fam, n), want in _printed_low_order(x, s).items():
            got = eval_poly((p_poly if fam == "P" else q_poly)(n, s), x)
            err = abs(got - want) / max(1.0, abs(want))
            worst = max(worst, err)
    _report("criterion 2 max deviation", worst, 1e-12)
    assert worst < 1e-12


# 3 -------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_c03_polynomial_biorthogonality():
    start = time.perf_counter()
    worst = 0.0
    for s in S_SET:
        for n in range(13):
            for m in range(13):
                got = biortho_integral(n, m, s)
                err = abs(got - biortho_expected(n, m, s)) / (2.0**n * math.factorial(n))
                worst = max(worst, err)
    elapsed = time.perf_counter() - start
    _report("criterion 3 max scaled deviation", worst, 1e-10)
    _report("criterion 3 runtime [s]", elapsed, 5.0)
    assert worst < 1e-10
    assert elapsed < 5.0


# 4-6 ----------------------------------------------------------------------


def _fock_biorthonormality(s, family="standard"):
    basis = basis_for(s, 20, family)
    gram = basis.psi.conj().T @ basis.phi
    return float(np.max(np.abs(gram - np.eye(21))))


def _metric_residuals(s, family="standard"):
    basis = basis_for(s, 20, family)
    met = metric_for(s, 20, family)
    pa = pseudo_adjoint_residuals(basis.pair, met, basis)
    return metric_action_residual(basis, met), max(pa["btilde"], pa["bprime"])


def _algebra(s, family="standard"):
    return max(algebra_residuals(pair_for(s, 64, family)).values())


@pytest.mark.criterion(4)
@pytest.mark.parametrize("s", S_SET)
def test_c04_fock_biorthonormality(s):
    res = _fock_biorthonormality(s)
    _report(f"criterion 4 s={s} (dim {basis_for(s, 20).dim})", res, 1e-10)
    assert res < 1e-10


@pytest.mark.criterion(5)
@pytest.mark.parametrize("s", S_SET)
def test_c05_metric_relations(s):
    action, pseudo = _metric_residuals(s)
    _report(f"criterion 5 s={s} eta psi - phi", action, 1e-9)
    _report(f"criterion 5 s={s} pseudo-adjoint", pseudo, 1e-8)
    assert action < 1e-9
    assert pseudo < 1e-8


@pytest.mark.criterion(6)
@pytest.mark.parametrize("s", S_SET)
def test_c06_algebra(s):
    res = _algebra(s)
    _report(f"criterion 6 s={s}", res, 1e-12)
    assert res < 1e-12


# 7 -------------------------------------------------------------------------

ALPHAS = (1.0, 1j, 1 + 1j, 2.0)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("s", S_MODERATE)
@pytest.mark.parametrize("alpha", ALPHAS)
def test_c07_coherent_eigen_and_displacement(s, alpha):
    basis = basis_for(s, required_n_max(alpha))
    cp = coherent_vector(alpha, basis)
    ket_res, dual_res = eigen_residual(basis.pair, cp)
    disp = displaced_vacuum(alpha, basis.pair, basis.psis[0])
    dist = float(np.linalg.norm(disp.coeffs - cp.ket.coeffs))
    _report(f"criterion 7 s={s} alpha={alpha} eigen", max(ket_res, dual_res), 1e-8)
    _report(f"criterion 7 s={s} alpha={alpha} D(alpha)|0>", dist, 1e-7)
    assert ket_res < 1e-8
    assert dual_res < 1e-8
    assert dist < 1e-7


# 8 -------------------------------------------------------------------------


@pytest.mark.criterion(8)
@pytest.mark.parametrize("s", S_SET)
def test_c08_biovercompleteness(s):
    start = time.perf_counter()
    basis = basis_for(s, 12)
    res = biovercompleteness_residual(basis, 16, 32)
    elapsed = time.perf_counter() - start
    _report(f"criterion 8 s={s} orderings", max(res["prime_ket"], res["ket_prime"]), 1e-10)
    _report(f"criterion 8 s={s} runtime [s]", elapsed, 10.0)
    assert res["prime_ket"] < 1e-10
    assert res["ket_prime"] < 1e-10
    assert elapsed < 10.0


# 9 -------------------------------------------------------------------------

OMEGA_T = (math.pi / 4, math.pi / 2, math.pi, 2 * math.pi)


@pytest.mark.criterion(9)
@pytest.mark.parametrize("s", S_MODERATE)
@pytest.mark.parametrize("alpha", (1.0, 1j, 1 + 1j))
def test_c09_temporal_stability(s, alpha):
    omega = 1.3
    basis = basis_for(s, required_n_max(alpha))
    ham = hamiltonian(basis.pair, omega)
    for wt in OMEGA_T:
        res = temporal_stability_residual(ham, basis, alpha, wt / omega)
        _report(f"criterion 9 s={s} alpha={alpha} wt={wt:.4f}", max(res["psi"], res["phi"]), 1e-7)
        assert res["psi"] < 1e-7
        assert res["phi"] < 1e-7


# 10 ------------------------------------------------------------------------


@pytest.mark.criterion(10)
@pytest.mark.parametrize("s", S_SET)
def test_c10_pt_symmetry(s):
    ham = hamiltonian(basis_for(s, 20).pair)
    pt = pt_residuals(ham)
    x = np.linspace(0.05, 5.0, 40)
    parity = 0.0
    for n in range(21):
        for which in ("psi", "phi"):
            plus = fock_wavefunction(n, s, which, x)
            minus = fock_wavefunction(n, s, which, -x)
            parity = max(parity, float(np.max(np.abs(minus - (-1) ** n * plus))))
    _report(f"criterion 10 s={s} PHP - H", pt["parity"], 1e-12)
    _report(f"criterion 10 s={s} Im H", pt["imag"], 1e-12)
    _report(f"criterion 10 s={s} parity of psi_n", parity, 1e-12)
    assert pt["parity"] < 1e-12
    assert pt["imag"] < 1e-12
    assert parity < 1e-12


# 11 ------------------------------------------------------------------------


@pytest.mark.criterion(11)
@pytest.mark.parametrize("s", (0.5, -0.5))
def test_c11_cross_picture(s):
    basis = basis_for(s, 10)
    x = np.linspace(-4.0, 4.0, 50)
    worst = 0.0
    for n in range(11):
        closed = fock_wavefunction(n, s, "psi", x)
        expanded = expand_state(basis.psi[:, n], x)
        worst = max(worst, float(np.max(np.abs(closed - expanded))))
    _report(f"criterion 11 s={s}", worst, 1e-8)
    assert worst < 1e-8


# 12 ------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _alternate_residuals(s):
    # double precision unless that construction reports degradation, in which
    # case the same identities are evaluated at 40 digits
    try:
        return family_residuals(alternate_family(s), 20, precision="auto")
    except ConstructionError as exc:
        return exc


def _alternate(s):
    res = _alternate_residuals(s)
    if isinstance(res, Exception):
        pytest.fail(f"alternate family at s={s}: {type(res).__name__}: {res}")
    return res


@pytest.mark.criterion(12)
@pytest.mark.parametrize("s", S_SET)
def test_c12_alternate_fock_biorthonormality(s):
    res = _alternate(s)
    _report(f"criterion 12 (4) s={s} [{res['precision']}]", res["biorthonormality"], 1e-10)
    assert res["biorthonormality"] < 1e-10


@pytest.mark.criterion(12)
@pytest.mark.parametrize("s", S_SET)
def test_c12_alternate_metric_relations(s):
    res = _alternate(s)
    pseudo = max(res["btilde"], res["bprime"])
    _report(f"criterion 12 (5) s={s} [{res['precision']}] eta psi - phi", res["metric_action"], 1e-9)
    _report(f"criterion 12 (5) s={s} [{res['precision']}] pseudo-adjoint", pseudo, 1e-8)
    assert res["metric_action"] < 1e-9
    assert pseudo < 1e-8


@pytest.mark.criterion(12)
@pytest.mark.parametrize("s", S_SET)
def test_c12_alternate_algebra(s):
    try:
        res = _algebra(s, "alternate")
    except ConstructionError as exc:
        pytest.fail(f"alternate family at s={s}: {type(exc).__name__}: {exc}")
    _report(f"criterion 12 (6) s={s}", res, 1e-12)
    assert res < 1e-12


@pytest.mark.parametrize("s", (0.5, -0.5))
def test_alternate_double_precision_degradation_is_reported(s):
    # not a criterion: records that the double-precision pipeline refuses these
    # families instead of returning residuals around 1e-7
    with pytest.raises(NumericalDegradationError):
        family_residuals(alternate_family(s), 20, precision="double")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-rN"]))
