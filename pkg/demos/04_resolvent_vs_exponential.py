"""The same vertex pair compared under the resolvent and the exponential."""
from __future__ import annotations

import numpy as np

from walkcent import centrality as cen
from walkcent.graph import parse_edge_list
from walkcent.interlacing import find_interlacings
from walkcent.spectral import spectral_data

g = parse_edge_list("""10
1 7
7 2
2 8
8 1
1 9
9 2
2 10
10 1
9 4
4 8
8 3
3 7
7 10
10 5
5 9
9 6
6 10
""")
sd = spectral_data(g)
print(f"rho = {sd.rho:.6f}, so alpha ranges over (0, {1 / sd.rho:.6f})")

rc = find_interlacings(g, 2, 3, "rc", sd=sd)
print("RC(3) = RC(4) at alpha =", np.round(rc.values, 9))
print("bounds:", rc.bounds)

sc = find_interlacings(g, 2, 3, "sc", (0.0, 30.0), sd=sd)
print("SC(3) = SC(4) at beta  =", np.round(sc.values, 6))

print()
print("sign of RC(3) - RC(4) on a coarse grid:")
for a in np.linspace(0.02, 0.26, 9):
    d = cen.rc(g, a, 2) - cen.rc(g, a, 3)
    print(f"  alpha = {a:.3f}: {'+' if d > 0 else '-'}")
