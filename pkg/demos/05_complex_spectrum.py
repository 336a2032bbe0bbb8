"""With non-real eigenvalues the diagonal difference can vanish infinitely often."""
from __future__ import annotations

import math

import numpy as np

from walkcent.graph import Graph
from walkcent.interlacing import find_interlacings, sc_difference

A = np.array([[0.0, 1.0, 0.0],
              [-1.0, 0.0, 0.0],
              [0.0, 0.0, 0.0]])
g = Graph.from_adjacency(A, kind="general-matrix")
print("eigenvalues:", np.round(np.linalg.eigvals(A), 12))

for beta in (1.0, math.pi, 2 * math.pi):
    print(f"beta = {beta:.6f}: [e^(bA)]_11 - [e^(bA)]_33 = {sc_difference(g, 0, 2, beta):+.3e}"
          f"   cos(beta) - 1 = {math.cos(beta) - 1:+.3e}")

rep = find_interlacings(g, 0, 2, "sc", (0.0, 8 * math.pi), 10_000)
print("sign changes:", rep.count)
print("touching zeros / (2 pi):", [round(t.value / (2 * math.pi), 9) for t in rep.tangencies])
