"""Coherent pairs under the pseudo-Hermitian oscillator.

H = omega (b~ b + 1/2) is not Hermitian, yet its spectrum is real and
exp(-iHt) carries |alpha> into exp(-i omega t/2) |alpha exp(-i omega t)>.
"""

import math

from pseudoboson import build_bi_basis, build_ladder_pair, hamiltonian, standard_family
from pseudoboson.coherent import required_n_max
from pseudoboson.dynamics import pt_residuals, temporal_stability_residual, trusted_spectrum

s, omega, alpha = -0.5, 1.3, 1j
basis = build_bi_basis(build_ladder_pair(standard_family(s), 128), required_n_max(alpha))
ham = hamiltonian(basis.pair, omega)
levels, imag = trusted_spectrum(ham, 5)
print("lowest levels:", levels.round(10), " largest |Im|:", f"{imag:.1e}")
print("PT checks:", pt_residuals(ham))
print("\n omega t     ||psi residual||   ||phi residual||   |binorm - 1|")
for wt in (0.0, math.pi / 4, math.pi / 2, math.pi, 2 * math.pi):
    r = temporal_stability_residual(ham, basis, alpha, wt / omega)
    print(f"{wt:7.4f}    {r['psi']:.3e}          {r['phi']:.3e}          {r['binorm']:.1e}")
