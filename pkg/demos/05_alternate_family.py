"""A second ladder family and the limits of double precision.

b_2 = a + s a†, b~_2 = -s a + (1 - s^2) a† satisfies the same commutator,
but its b'-vacuum only exists for |s| below the golden-ratio conjugate.
Inside that range the bi-basis is obtained through heavy cancellation: at
s = 0.3 double precision already loses the pseudo-adjoint identities, at
s = 0.5 it cannot even keep <psi_n|phi_m> = δ_nm to 1e-8, while a 40-digit
reconstruction meets every identity comfortably.
"""

from pseudoboson import alternate_family
from pseudoboson.exceptions import ConstructionError, NumericalDegradationError
from pseudoboson.extended import family_residuals

for s in (0.3, 0.5, 0.9):
    try:
        coeffs = alternate_family(s)
    except ConstructionError as exc:
        print(f"s = {s}: {exc}")
        continue
    try:
        res = family_residuals(coeffs, 20, precision="double")
        print(f"s = {s}: double precision runs, bi-orthonormality {res['biorthonormality']:.1e}, "
              f"pseudo-adjoint {max(res['btilde'], res['bprime']):.1e}")
    except NumericalDegradationError as exc:
        print(f"s = {s}: double precision degrades ({exc})")
    res = family_residuals(coeffs, 20)
    print(f"        [{res['precision']}, dim {res['dim']}]",
          {k: f"{res[k]:.1e}" for k in ("biorthonormality", "metric_action", "btilde", "bprime")})
