"""Locate the parameters where two vertices swap subgraph-centrality rank.

Writes interlacing_curve.csv and interlacing_curve.svg to the current directory.
"""
from __future__ import annotations

from pathlib import Path

from walkcent.graph import parse_edge_list
from walkcent.interlacing import find_interlacings, interlacing_bounds, mesh_values
from walkcent.plot import curve_csv, curve_svg

g = parse_edge_list("9\n1 2\n1 3\n1 4\n2 4\n3 4\n1 5\n5 6\n6 7\n5 7\n7 8\n1 8\n8 9\n")
i, j = 1, 7  # vertices 2 and 8

rep = find_interlacings(g, i, j, "sc", (0.0, 10.0), resolution=10_000, refine_tol=1e-9)
print(f"SC(2, beta) - SC(8, beta) changes sign {rep.count} times on (0, 10]:")
for z in rep.zeros:
    print(f"  beta = {z.value:.9f}   bracket {z.bracket[0]:.4f}..{z.bracket[1]:.4f}")

b = interlacing_bounds(g, i, j)
print(f"bounds: sign changes of C[:, 2] - C[:, 8] = {b.sign_change}, d - 1 = {b.d_minus_1}")

x, raw, resc = mesh_values(g, i, j, "sc", (0.0, 10.0), 1000)
Path("interlacing_curve.csv").write_text(curve_csv(x, raw, resc))
Path("interlacing_curve.svg").write_text(
    curve_svg(x, resc, rep.values, title="rescaled SC(2) - SC(8)", xlabel="beta"))
print("wrote interlacing_curve.csv and interlacing_curve.svg")
