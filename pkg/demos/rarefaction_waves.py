"""Integrate the acoustic integral curves through a state and watch the velocity blow up.

Run with ``python demos/rarefaction_waves.py``.
"""
import numpy as np

from sahagas import HYDROGEN as H
from sahagas.hugoniot import reference_state
from sahagas.rarefaction import alpha_infinity, integrate_rarefaction, sample_isentrope
from sahagas.thermo import entropy_alphaT

ref = reference_state(H, 1e-3, 1e4)
eta0 = entropy_alphaT(H, ref.alpha0, ref.T0)
a_inf = alpha_infinity(eta0)
print(f"entropy level eta0={eta0:.6f}; the isentrope exists only for alpha < {a_inf:.6f}")

plus = integrate_rarefaction(H, ref, "plus", 0.999 * a_inf, n=12)
print("\nplus-family branch (alpha grows, u falls without bound near alpha_inf)")
for a, T, u in zip(plus.alpha, plus.T, plus.u_plus):
    print(f"alpha={a:.6f}  T={T:12.1f} K  u={u:12.1f} m/s")

minus = integrate_rarefaction(H, ref, "minus", 1e-60, n=8)
print("\nminus-family branch (alpha to 0, u stays bounded)")
for a, T, u in zip(minus.alpha, minus.T, minus.u_minus):
    print(f"alpha={a:.3e}  T={T:9.1f} K  u={u:10.1f} m/s")
print(f"largest entropy drift along both branches: "
      f"{max(np.max(np.abs(plus.eta_drift)), np.max(np.abs(minus.eta_drift))):.1e}")

print("\nblow-up degree for a few entropy levels")
for e in (0.0, 3.75, 5.0, 10.0):
    iso = sample_isentrope(H, e, n=50)
    print(f"eta0={e:5.2f}  alpha_inf={iso.alpha_inf:.6f}  T range {iso.T[0]:.0f}..{iso.T[-1]:.3g} K")
