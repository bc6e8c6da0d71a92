"""Where do the acoustic fields lose genuine nonlinearity? Compare with the high-temperature limit.

Run with ``python demos/nonlinearity_map.py``.
"""
import numpy as np

from sahagas import HYDROGEN as H
from sahagas.characteristics import gn_threshold_root, inflection_f, trace_inflection_locus
from sahagas.htl import htl_gnl_log_derivative, htl_state_from_alphaT

root = gn_threshold_root()
print(f"threshold Ti/T = {root:.8f}: every state above {H.Ti / root:.1f} K is genuinely nonlinear")

left, right = trace_inflection_locus(H, (200.0, 2800.0), n=10)
print("\ninflection locus (f = 0) between its two branches f < 0")
for T, al, ar in zip(left.T, left.alpha, right.alpha):
    mid = np.sqrt(al * ar)
    print(f"T={T:7.1f} K  alpha in ({al:.3e}, {ar:.3e})  f(midpoint)={inflection_f(H, mid, T):+.3e}")

print("\nhigh-temperature limit: R . grad log lambda * (5p/4) is exactly 1")
for a, T in [(0.01, 300.0), (0.5, 1e4), (0.99, 1e6)]:
    s = htl_state_from_alphaT(H, a, T)
    print(f"alpha={a:5.2f}  T={T:9.0f} K  value={htl_gnl_log_derivative(H, s) * 1.25 * s.p:.16f}")
