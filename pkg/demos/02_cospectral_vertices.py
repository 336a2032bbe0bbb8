"""Cospectral vertices: equal closed-walk counts, yet different row-sum centralities."""
from __future__ import annotations

from walkcent import centrality as cen
from walkcent.graph import parse_edge_list
from walkcent.spectral import spectral_data
from walkcent.walks import cospectral_classes, walk_table

spacer = "_" * 60

g = parse_edge_list("8\n4 7\n7 8\n8 1\n1 6\n6 2\n2 8\n3 7\n1 5\n5 2\n")
table = walk_table(g)

print("closed walks [A^r]_ii, r = 0..7 (exact integers)")
for i in range(g.n):
    print(f"vertex {i + 1}:", table.column(i))

print(spacer)
classes = cospectral_classes(g, table)
print("cospectral classes:", [[v + 1 for v in c] for c in classes])

print(spacer)
sd = spectral_data(g)
alpha = 0.5 / sd.rho
print("vertices 1 and 8 share every diagonal function of A...")
print("  SC(beta=2):", cen.sc(g, 2.0, 0, sd=sd), cen.sc(g, 2.0, 7, sd=sd))
print("  RC        :", cen.rc(g, alpha, 0), cen.rc(g, alpha, 7))
print("  EC        :", cen.ec(g, sd)[[0, 7]])
print("...but not the row sums")
print("  Katz      :", cen.katz(g, alpha)[[0, 7]])
print("  TC        :", cen.tc(g, 1.0)[[0, 7]])
