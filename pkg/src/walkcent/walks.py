"""Exact closed-walk counts and the cospectrality decisions built on them.

Everything here is integer arithmetic. Powers of the adjacency matrix are
formed in int64 when the walk counts provably fit, and in Python integers
(numpy object arrays) otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

_INT64_LIMIT = 2**62


@dataclass(frozen=True)
class WalkTable:
    """``diag[r][i] == [A^r]_ii`` for ``r = 0..n-1``, as Python ints."""

    n: int
    diag: tuple[tuple[int, ...], ...]

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.diag)

    def as_array(self) -> np.ndarray:
        """Object array of shape ``(n, n)`` (rows are powers)."""
        return np.array(self.diag, dtype=object).reshape(self.n, self.n)


def _fits_int64(A: np.ndarray, power: int) -> bool:
    # entries of A^r are bounded by (max row sum)^r
    rowmax = int(np.abs(A).sum(axis=1).max()) if A.size else 0
    return max(rowmax, 1) ** max(power, 1) < _INT64_LIMIT


def matrix_powers(g: Graph, rmax: int):
    """Yield exact ``A^r`` for ``r = 0..rmax`` (int64 or object dtype).

    General integer matrices are accepted; their "walk counts" are signed.
    """
    A = g.integer_adjacency()
    if not _fits_int64(A, rmax):
        A = A.astype(object)
    P = np.eye(g.n, dtype=np.int64).astype(A.dtype)
    yield P
    for _ in range(rmax):
        P = P @ A
        yield P


def walk_table(g: Graph) -> WalkTable:
    """Diagonals of ``A^0 .. A^{n-1}``; by Cayley-Hamilton higher powers add nothing."""
    if g.n == 0:
        return WalkTable(0, ())
    rows = tuple(tuple(int(x) for x in np.diagonal(P)) for P in matrix_powers(g, g.n - 1))
    return WalkTable(g.n, rows)


def _check_vertex(g: Graph, i: int):
    if not 0 <= i < g.n:
        raise IndexError(f"vertex {i} out of range for n={g.n}")


def are_cospectral(g: Graph, i: int, j: int, table: WalkTable | None = None) -> bool:
    _check_vertex(g, i)
    _check_vertex(g, j)
    if i == j:
        return True
    table = table or walk_table(g)
    return table.column(i) == table.column(j)


def cospectral_classes(g: Graph, table: WalkTable | None = None) -> list[list[int]]:
    """Partition of vertices by identical walk-count columns, sorted by smallest member."""
    table = table or walk_table(g)
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in range(g.n):
        groups.setdefault(table.column(i), []).append(i)
    return sorted(groups.values(), key=lambda c: c[0])


def is_walk_regular(g: Graph, table: WalkTable | None = None) -> bool:
    return len(cospectral_classes(g, table)) <= 1
