"""Canonical labeling and isomorphism-free enumeration of small simple graphs.

Graphs are handled as tuples of neighbor bitmasks. The canonical form is the
relabeling with the lexicographically largest upper-triangle code among the
leaves of an individualization-refinement search tree; children in the same
orbit of the automorphisms found so far are pruned. Adequate for n <= 10.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .graph import SIMPLE, Graph, GraphError

Masks = tuple[int, ...]

#: Internal enumeration refuses sizes above this.
DEFAULT_CEILING = 10


def graph_to_masks(g: Graph) -> Masks:
    if g.kind != SIMPLE:
        raise GraphError("canonical forms are implemented for simple graphs only")
    A = g.adjacency
    return tuple(int(sum(1 << int(v) for v in np.flatnonzero(A[u]))) for u in range(g.n))


def masks_to_graph(masks: Sequence[int]) -> Graph:
    n = len(masks)
    A = np.zeros((n, n))
    for u, m in enumerate(masks):
        for v in range(n):
            if m >> v & 1:
                A[u, v] = 1
    return Graph(A)


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; subcells ordered by neighbor-count signature."""
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple((adj[v] & m).bit_count() for m in masks)
                sig.setdefault(key, []).append(v)
            if len(sig) > 1:
                changed = True
                new.extend(sig[k] for k in sorted(sig))
            else:
                new.append(cell)
        cells = new
        if not changed:
            return cells


def _code(adj: Sequence[int], lab: Sequence[int]) -> int:
    """Upper-triangle bits of the relabeled graph in graph6 order, as one integer."""
    code = 0
    for j in range(1, len(lab)):
        mj = adj[lab[j]]
        for i in range(j):
            code = (code << 1) | (mj >> lab[i] & 1)
    return code


def _orbit_of(v: int, auts: list[list[int]], fixed: Sequence[int], n: int) -> set[int]:
    gens = [p for p in auts if all(p[u] == u for u in fixed)]
    orbit = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for p in gens:
            w = p[u]
            if w not in orbit:
                orbit.add(w)
                stack.append(w)
    return orbit


def canonical_labeling(adj: Sequence[int]) -> tuple[list[int], int]:
    """Return ``(lab, code)``: ``lab[k]`` is the original vertex placed at position ``k``."""
    n = len(adj)
    if n <= 1:
        return list(range(n)), 0
    best_code = -1
    best_lab: list[int] = []
    auts: list[list[int]] = []

    def search(cells, prefix):
        nonlocal best_code, best_lab
        if len(cells) == n:
            lab = [c[0] for c in cells]
            code = _code(adj, lab)
            if code > best_code:
                best_code, best_lab = code, lab
            elif code == best_code:
                perm = [0] * n
                for a, b in zip(best_lab, lab):
                    perm[a] = b
                auts.append(perm)
            return
        # first smallest non-singleton cell is an invariant choice
        k = min((len(c), idx) for idx, c in enumerate(cells) if len(c) > 1)[1]
        target = cells[k]
        done: set[int] = set()
        for v in target:
            if v in done:
                continue
            rest = [u for u in target if u != v]
            child = cells[:k] + [[v], rest] + cells[k + 1:]
            search(_refine(adj, child), prefix + [v])
            done |= _orbit_of(v, auts, prefix, n)

    search(_refine(adj, [list(range(n))]), [])
    return best_lab, best_code


def canonical_masks(adj: Sequence[int]) -> Masks:
    lab, _ = canonical_labeling(adj)
    pos = {v: k for k, v in enumerate(lab)}
    out = []
    for v in lab:
        m = adj[v]
        out.append(sum(1 << pos[u] for u in range(len(adj)) if m >> u & 1))
    return tuple(out)


def canonical_form(g: Graph) -> Graph:
    return masks_to_graph(canonical_masks(graph_to_masks(g)))


def canonical_graph6(g: Graph) -> str:
    from .graph import to_graph6

    return to_graph6(canonical_form(g))


def _connected_masks(adj: Sequence[int]) -> bool:
    n = len(adj)
    if n == 0:
        return False
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


@lru_cache(maxsize=None)
def _level(n: int, connected: bool) -> tuple[Masks, ...]:
    """Canonical representatives on ``n`` vertices, sorted for reproducibility."""
    if n == 1:
        return ((0,),)
    if n == 0:
        return () if connected else ((),)
    seen: set[Masks] = set()
    top = 1 << (n - 1)
    for parent in _level(n - 1, connected):
        for s in range(1 if connected else 0, top):
            adj = [m | (top if s >> v & 1 else 0) for v, m in enumerate(parent)]
            adj.append(s)
            seen.add(canonical_masks(adj))
    return tuple(sorted(seen))


def enumerate_graphs(n: int, connected_only: bool = False, canonical: bool = True,
                     ceiling: int = DEFAULT_CEILING) -> Iterator[Graph]:
    """Yield simple graphs on ``n`` vertices.

    With ``canonical`` each isomorphism class appears once (as its canonical
    form); otherwise every labeled graph is produced, which is only practical
    for ``n <= 7``.
    """
    if n < 1 or n > ceiling:
        raise ValueError(f"n must be in 1..{ceiling}, got {n}")
    if canonical:
        for masks in _level(n, connected_only):
            yield masks_to_graph(masks)
        return
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for bits in range(1 << len(pairs)):
        adj = [0] * n
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        if connected_only and not _connected_masks(adj):
            continue
        yield masks_to_graph(adj)


def count_graphs(n: int, connected_only: bool = False, ceiling: int = DEFAULT_CEILING) -> int:
    if n < 1 or n > ceiling:
        raise ValueError(f"n must be in 1..{ceiling}, got {n}")
    return len(_level(n, connected_only))
