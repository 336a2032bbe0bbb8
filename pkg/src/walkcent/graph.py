"""Graph container, validation, and text formats (graph6 and 1-based edge lists)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

SIMPLE = "simple-unweighted"
WEIGHTED = "weighted-undirected"
GENERAL = "general-matrix"
KINDS = (SIMPLE, WEIGHTED, GENERAL)


class GraphError(ValueError):
    """Invalid graph construction or an operation applied to the wrong kind of graph."""


class GraphFormatError(GraphError):
    """Malformed text input. ``offset`` is a 0-based byte offset (graph6) or 1-based line (edge list)."""

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        where = []
        if offset is not None:
            where.append(f"byte {offset}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


@dataclass(frozen=True, eq=False)
class Graph:
    """Dense adjacency matrix plus a kind flag.

    Instances are immutable: the adjacency array is copied and marked read-only.
    Vertices are 0-based here; all text I/O uses 1-based labels.
    """

    adjacency: np.ndarray
    kind: str = SIMPLE
    n: int = field(init=False)

    def __post_init__(self):
        A = np.array(self.adjacency, dtype=float, copy=True)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {A.shape}")
        if self.kind not in KINDS:
            raise GraphError(f"unknown graph kind {self.kind!r}")
        if not np.all(np.isfinite(A)):
            raise GraphError("adjacency has non-finite entries")
        if self.kind != GENERAL:
            if not np.array_equal(A, A.T):
                raise GraphError("undirected graph needs a symmetric adjacency matrix")
            if np.any(np.diag(A) != 0):
                raise GraphError("self-loops are not allowed")
            if np.any(A < 0):
                raise GraphError("negative weights need kind='general-matrix'")
            if self.kind == SIMPLE and not np.all((A == 0) | (A == 1)):
                raise GraphError("simple graph adjacency must be 0/1")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)
        object.__setattr__(self, "n", A.shape[0])

    # construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], one_based: bool = False) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; any weight makes the graph weighted."""
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        A = np.zeros((n, n))
        weighted = False
        shift = 1 if one_based else 0
        for e in edges:
            u, v = int(e[0]) - shift, int(e[1]) - shift
            w = float(e[2]) if len(e) > 2 else 1.0
            if len(e) > 2:
                weighted = True
            _check_edge(n, u, v, w, A, shift)
            A[u, v] = A[v, u] = w
        if weighted and np.all((A == 0) | (A == 1)):
            weighted = False
        return cls(A, WEIGHTED if weighted else SIMPLE)

    @classmethod
    def from_adjacency(cls, A, kind: str | None = None) -> "Graph":
        """Wrap a matrix, inferring the most specific kind when ``kind`` is None."""
        A = np.asarray(A, dtype=float)
        if kind is None:
            sym = A.ndim == 2 and A.shape[0] == A.shape[1] and np.array_equal(A, A.T)
            if sym and np.all(np.diag(A) == 0) and np.all(A >= 0):
                kind = SIMPLE if np.all((A == 0) | (A == 1)) else WEIGHTED
            else:
                kind = GENERAL
        return cls(A, kind)

    @classmethod
    def from_networkx(cls, G) -> "Graph":
        import networkx as nx

        return cls.from_adjacency(nx.to_numpy_array(G, nodelist=sorted(G.nodes())))

    def to_networkx(self):
        import networkx as nx

        if self.kind == GENERAL:
            raise GraphError("general-matrix graphs have no undirected networkx form")
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        for u, v in zip(*np.nonzero(np.triu(self.adjacency))):
            if self.kind == SIMPLE:
                G.add_edge(int(u), int(v))
            else:
                G.add_edge(int(u), int(v), weight=float(self.adjacency[u, v]))
        return G

    # queries -----------------------------------------------------------

    @property
    def is_undirected(self) -> bool:
        return self.kind != GENERAL

    def edges(self) -> list[tuple[int, int]]:
        """0-based ``(u, v)`` pairs with ``u < v``."""
        if not self.is_undirected:
            raise GraphError("edges() needs an undirected graph")
        us, vs = np.nonzero(np.triu(self.adjacency))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def integer_adjacency(self) -> np.ndarray:
        """Adjacency as an int64 array; raises if any entry is not an integer."""
        A = self.adjacency
        if not np.all(A == np.round(A)):
            raise GraphError("exact walk counting needs integer adjacency entries")
        return A.astype(np.int64)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.kind, self.adjacency.tobytes()))

    def __repr__(self):
        if self.kind == GENERAL:
            return f"Graph(n={self.n}, kind={self.kind!r})"
        return f"Graph(n={self.n}, m={len(self.edges())}, kind={self.kind!r})"


def _check_edge(n, u, v, w, A, shift, line=None):
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex label out of range 1..{n}: {u + shift} {v + shift}", line=line)
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u + shift}", line=line)
    if not (w > 0 and np.isfinite(w)):
        raise GraphFormatError(f"edge weight must be positive, got {w}", line=line)
    if A[u, v] != 0:
        raise GraphFormatError(f"duplicate edge {u + shift} {v + shift}", line=line)


def degree(g: Graph, i: int) -> float:
    """Row sum of adjacency row ``i`` (the edge count for unweighted graphs)."""
    if not 0 <= i < g.n:
        raise IndexError(f"vertex {i} out of range for n={g.n}")
    return float(g.adjacency[i].sum())


def degrees(g: Graph) -> np.ndarray:
    return g.adjacency.sum(axis=1)


def is_connected(g: Graph) -> bool:
    """Breadth-first search on the nonzero pattern. The empty graph counts as disconnected."""
    if not g.is_undirected:
        raise GraphError("connectivity is only defined here for undirected graphs")
    if g.n == 0:
        return False
    nbrs = [np.flatnonzero(row) for row in g.adjacency]
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


# graph6 ----------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header length)."""
    if not data:
        raise GraphFormatError("empty graph6 string", offset=0)
    for k, b in enumerate(data[:8]):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid graph6 byte {b!r}", offset=k)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size header", offset=len(data))
        width, start = 6, 2
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size header", offset=len(data))
        width, start = 3, 1
    n = 0
    for b in data[start:start + width]:
        n = (n << 6) | (b - 63)
    return n, start + width


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (the optional ``>>graph6<<`` header is accepted)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(b">>graph6<<"):
        base = len(b">>graph6<<")
        data = data[base:]
    try:
        n, pos = _decode_n(data)
    except GraphFormatError as exc:
        raise GraphFormatError(str(exc).rsplit(" (", 1)[0], offset=exc.offset + base) from None
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = data[pos:]
    for k, b in enumerate(payload[:nbytes]):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid graph6 byte {b!r}", offset=base + pos + k)
    if len(payload) < nbytes:
        raise GraphFormatError(
            f"truncated graph6 payload: need {nbytes} bytes, got {len(payload)}",
            offset=base + len(data))
    if len(payload) > nbytes:
        raise GraphFormatError("trailing data after graph6 payload", offset=base + pos + nbytes)
    A = np.zeros((n, n))
    if nbits:
        vals = np.frombuffer(payload, dtype=np.uint8) - 63
        bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].ravel()
        if np.any(bits[nbits:]):
            raise GraphFormatError("nonzero padding bits", offset=base + pos + nbytes - 1)
        # bit order: (0,1), (0,2), (1,2), (0,3), ...  i.e. column-major upper triangle
        jj, ii = np.triu_indices(n, k=1)[::-1]
        order = np.lexsort((ii, jj))
        rows, cols = ii[order], jj[order]
        sel = bits[:nbits].astype(bool)
        A[rows[sel], cols[sel]] = 1
        A[cols[sel], rows[sel]] = 1
    return Graph(A, SIMPLE)


def to_graph6(g: Graph) -> str:
    """Encode a simple graph as a graph6 line without header or newline."""
    if g.kind != SIMPLE:
        raise GraphError(f"graph6 only encodes simple unweighted graphs, got {g.kind}")
    n = g.n
    head = _encode_n(n)
    if n < 2:
        return head
    cols, rows = np.triu_indices(n, k=1)[::-1]
    order = np.lexsort((rows, cols))
    bits = g.adjacency[rows[order], cols[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ (1 << np.arange(5, -1, -1))
    return head + bytes((vals + 63).astype(np.uint8)).decode("ascii")


# edge list -------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by lines ``u v [w]`` with 1-based labels.

    Blank lines and ``#`` comments are skipped.
    """
    lines = [(k + 1, ln.split("#", 1)[0].split()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, toks) for k, toks in lines if toks]
    if not lines:
        raise GraphFormatError("empty edge list: expected vertex count", line=1)
    k0, head = lines[0]
    if len(head) != 1:
        raise GraphFormatError("first line must hold only the vertex count", line=k0)
    try:
        n = int(head[0])
    except ValueError:
        raise GraphFormatError(f"bad vertex count {head[0]!r}", line=k0) from None
    if n < 0:
        raise GraphFormatError("vertex count must be nonnegative", line=k0)
    A = np.zeros((n, n))
    weighted = False
    for k, toks in lines[1:]:
        if len(toks) not in (2, 3):
            raise GraphFormatError(f"expected 'u v [w]', got {' '.join(toks)!r}", line=k)
        try:
            u, v = int(toks[0]) - 1, int(toks[1]) - 1
            w = float(toks[2]) if len(toks) == 3 else 1.0
        except ValueError:
            raise GraphFormatError(f"unparseable edge {' '.join(toks)!r}", line=k) from None
        _check_edge(n, u, v, w, A, 1, line=k)
        A[u, v] = A[v, u] = w
        weighted |= len(toks) == 3 and w != 1.0
    return Graph(A, WEIGHTED if weighted else SIMPLE)


def to_edge_list(g: Graph) -> str:
    if not g.is_undirected:
        raise GraphError("edge lists describe undirected graphs only")
    out = [str(g.n)]
    for u, v in g.edges():
        if g.kind == SIMPLE:
            out.append(f"{u + 1} {v + 1}")
        else:
            out.append(f"{u + 1} {v + 1} {float(g.adjacency[u, v])!r}")
    return "\n".join(out) + "\n"


def read_graph(text: str) -> Graph:
    """Dispatch on content: single-token non-numeric text is graph6, otherwise an edge list."""
    stripped = text.strip()
    if stripped and "\n" not in stripped and not stripped.split()[0].lstrip("-").isdigit():
        return parse_graph6(stripped)
    return parse_edge_list(text)
