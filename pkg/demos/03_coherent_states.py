"""Bi-normalized coherent states in two pictures.

|alpha> is an eigenvector of b and |alpha>' of b' = b~†.  The pair is
bi-normalized although neither vector has unit norm once s != 0.  The same
states have closed Gaussian forms in position space.
"""

import numpy as np

from pseudoboson import build_bi_basis, build_ladder_pair, standard_family
from pseudoboson.coherent import biovercompleteness_residual, coherent_vector, eigen_residual, required_n_max
from pseudoboson.position import coherent_state, coherent_wavefunction, expand_state, position_overlap

s, alpha = 0.5, 1 + 0.5j
basis = build_bi_basis(build_ladder_pair(standard_family(s), 128), required_n_max(alpha))
cp = coherent_vector(alpha, basis)
print(f"s = {s}, alpha = {alpha}, series length {basis.n_max + 1}")
print("eigen residuals (ket, dual):", ["%.1e" % r for r in eigen_residual(None, cp)])
print("<alpha|alpha>'     =", np.round(cp.binormalization, 14))
print("||alpha>|^2        =", round(cp.ket.norm() ** 2, 6))

x = np.linspace(-3, 3, 7)
print("\nposition picture versus Fock expansion:")
for xi, a, b in zip(x, coherent_wavefunction(alpha, s, "psi", x), expand_state(cp.ket, x)):
    print(f"  x={xi:+.1f}  closed {a:.8f}  series {b:.8f}")
ov = position_overlap(coherent_state(alpha, s, "phi"), coherent_state(alpha, s, "psi"))
print("bi-normalization by quadrature:", np.round(ov, 12))

small = build_bi_basis(build_ladder_pair(standard_family(s), 64), 10)
res = biovercompleteness_residual(small)
print("\ncoherent-state resolutions of the identity:", {k: f"{v:.1e}" for k, v in res.items()})
