"""Bi-orthonormal pseudo-boson Fock states and the metric operator.

psi_n and phi_n are built by repeated raising from two different Gaussian
vacua.  Neither family is orthonormal on its own, but <psi_n|phi_m> = δ_nm
and the metric eta = sum |phi_n><phi_n| maps one family onto the other.
"""

import numpy as np

from pseudoboson import build_bi_basis, build_ladder_pair, metric, standard_family
from pseudoboson.fock import metric_action_residual, pseudo_adjoint_residuals, resolution_of_identity

s = 0.5
basis = build_bi_basis(build_ladder_pair(standard_family(s), 64), 12)
print(f"s = {s}, truncated dimension used: {basis.dim}")

self_overlap = basis.psi.conj().T @ basis.psi
print("<psi_n|psi_m> for n, m < 4 (not the identity):")
print(np.round(self_overlap[:4, :4].real, 4))
print("max |<psi_n|phi_m> - δ_nm|:", f"{basis.biorthonormality_residual:.2e}")

met = metric(basis)
print("max ||eta psi_n - phi_n||:", f"{metric_action_residual(basis, met):.2e}")
print("smallest metric eigenvalue on span(phi):", f"{met.min_trusted_eigenvalue:.3e}")
pa = pseudo_adjoint_residuals(basis.pair, met, basis)
print("eta^-1 B† eta = Btilde on the bi-basis:", f"{pa['btilde']:.2e}")
res = resolution_of_identity(basis)
print("resolution of the identity (bi-basis elements):", f"{res['psi_phi']:.2e}")
print("same sum against the raw identity matrix:", f"{res['canonical']:.2e}")
