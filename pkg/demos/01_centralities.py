"""Walk-based centralities on a small graph, printed side by side."""
from __future__ import annotations

import math

import numpy as np

from walkcent import centrality as cen
from walkcent.graph import degrees, parse_edge_list
from walkcent.spectral import spectral_data

spacer = "_" * 60

g = parse_edge_list("""9
1 2
1 3
1 4
2 4
3 4
1 5
5 6
6 7
5 7
7 8
1 8
8 9
""")
print("nine vertices, edges:", len(g.edges()))
print("degrees:", degrees(g).astype(int))

print(spacer)
sd = spectral_data(g)
print("distinct eigenvalues d =", sd.d)
print("mu =", np.round(sd.mu, 6))
print("multiplicities =", sd.mult)
print("spectral radius =", round(sd.rho, 6))
print("each column of C sums to one:", np.allclose(sd.C.sum(axis=0), 1))

print(spacer)
alpha = cen.default_alpha(g, sd)
print(f"beta = 1, alpha = 1/(2 rho) = {alpha:.6f}")
table = np.column_stack([
    degrees(g),
    cen.ec(g, sd),
    cen.sc(g, 1.0, sd=sd),
    cen.rc(g, alpha),
    cen.katz(g, alpha),
    cen.tc(g, 1.0),
])
print("      deg       EC       SC       RC     Katz       TC")
for i, row in enumerate(table, 1):
    print(i, " ".join(f"{v:8.4f}" for v in row))

print(spacer)
# small beta follows degree, large beta follows the Perron vector
for beta in (0.01, 1.0, 10.0, 100.0):
    s = cen.sc_profile(g, beta, sd).scores
    print(f"beta = {beta:6g}: SC ranking", (np.argsort(-s) + 1).tolist())
print("EC ranking          ", (np.argsort(-cen.ec(g, sd)) + 1).tolist())

print(spacer)
h = cen.walk_entropy(g, 1.0, sd)
print(f"walk entropy at beta = 1: {h:.6f}  (maximum ln 9 = {math.log(9):.6f})")
