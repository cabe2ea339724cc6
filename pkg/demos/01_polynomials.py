"""Bi-orthogonal Hermite generalizations.

At s = 0 both families collapse onto the physicists' Hermite polynomials.
Away from it P_n and Q_n differ but stay bi-orthogonal under a Gaussian
weight whose width depends on s.
"""

import numpy as np

from pseudoboson.polynomials import biortho_gram, biortho_expected, hermite_poly, p_poly, q_poly

print("H_4 coefficients:", hermite_poly(4).coeffs)
print("P_4(x, 0):        ", p_poly(4, 0.0).coeffs)

s = 0.5
print(f"\nAt s = {s}:")
for n in range(4):
    print(f"  P_{n}: {np.round(p_poly(n, s).coeffs, 6)}   Q_{n}: {np.round(q_poly(n, s).coeffs, 6)}")

gram = biortho_gram(5, s)
norms = np.array([biortho_expected(n, n, s) for n in range(6)])
print("\nNormalized bi-orthogonality Gram matrix (should be the identity):")
print(np.round(gram / norms[:, None], 12))
