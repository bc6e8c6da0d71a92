"""Walk the Hugoniot locus of a weakly ionized hydrogen state and solve shocks on it.

Run with ``python demos/hugoniot_and_shocks.py``.
"""
import math

import numpy as np

from sahagas import HYDROGEN as H
from sahagas.hugoniot import (
    entropy_jump,
    reference_state,
    rh_residuals,
    shock_from_pressure,
    solve_shock_state,
    trace_thermo_locus,
)

ref = reference_state(H, 1e-3, 1e4)
print(f"reference: alpha0={ref.alpha0:g}  T0={ref.T0:g} K  p0={ref.p0:.6g} Pa  v0={ref.v0:.6g} m^3/kg")

crv = trace_thermo_locus(H, ref, logit_range=(ref.s0 - 30.0, 14.0), n=25)
print("\nthermodynamic part of the locus")
print(f"{'alpha':>12} {'T [K]':>12} {'p/p0':>12} {'v/v0':>10}")
for a, T, p, v in zip(crv.alpha, crv.T, crv.p, crv.v):
    print(f"{a:12.4e} {T:12.1f} {p / ref.p0:12.4e} {v / ref.v0:10.4f}")

# v/v0 is not monotone: compression peaks while hydrogen is partially ionized
up = crv.alpha >= ref.alpha0
i = int(np.argmin(crv.v[up]))
print(f"\nsmallest v/v0 on the sampled compressive branch: {crv.v[up][i] / ref.v0:.3f} at alpha={crv.alpha[up][i]:.2f}")

print("\nbackward-facing shocks driven by a piston velocity u")
scale = H.a * math.sqrt(ref.T0)
for k in (0.1, 0.5, 1, 2, 5):
    sol = solve_shock_state(H, ref, -k * scale)
    res = max(rh_residuals(H, sol))
    print(f"u={-k * scale:10.1f} m/s  alpha={sol.front.alpha:.4e}  T={sol.front.T:9.1f} K"
          f"  shock speed={sol.s:10.1f} m/s  dS={sol.dS:9.3e} J/(kg K)  RH residual={res:.1e}")

print("\nweak shocks: entropy jump against the cubic estimate")
for x in (1e-3, 1e-2, 1e-1):
    sol = shock_from_pressure(H, ref, (1 + x) * ref.p0)
    dS, bethe, prod = entropy_jump(H, sol)
    print(f"dp/p0={x:g}  dS={dS:.4e}  cubic={bethe:.4e}  ratio={dS / bethe:.4f}  production={prod:.3e}")
