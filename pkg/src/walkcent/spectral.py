"""Symmetric eigendecomposition grouped by distinct eigenvalue.

For a symmetric adjacency matrix ``A = Q diag(lam) Q^T`` the diagonal of any
matrix function is ``f(A)_ii = sum_h f(mu_h) C[h, i]`` where ``mu`` are the
distinct eigenvalues and ``C[h, i]`` is the ``i``-th diagonal entry of the
orthogonal projector onto the ``mu_h`` eigenspace. Row sums work the same way
with ``K[h, i] = (E_h 1)_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError
from .walks import matrix_powers

#: Acceptance threshold for the reconstruction residual against exact walk counts.
RESIDUAL_THRESHOLD = 1e-8


class SpectralError(RuntimeError):
    """Eigendecomposition failed its residual checks or the grouping was rejected."""


@dataclass(frozen=True)
class GroupingReport:
    gaps: np.ndarray
    tol: float
    residual: float | None
    exact: bool
    threshold: float = RESIDUAL_THRESHOLD

    @property
    def verified(self) -> bool:
        return self.exact and self.residual is not None and self.residual <= self.threshold


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Distinct eigenvalues ``mu`` (ascending), multiplicities, projector diagonals ``C``.

    ``lam`` and ``Q`` keep the raw decomposition; ``groups[h]`` lists the
    eigenvector columns belonging to ``mu[h]``.
    """

    mu: np.ndarray
    mult: np.ndarray
    C: np.ndarray
    lam: np.ndarray
    Q: np.ndarray
    groups: tuple[np.ndarray, ...]
    report: GroupingReport
    K: np.ndarray = field(init=False)

    def __post_init__(self):
        ones = np.ones(self.Q.shape[0])
        K = np.array([self.Q[:, g] @ (self.Q[:, g].T @ ones) for g in self.groups]).reshape(len(self.groups), -1)
        object.__setattr__(self, "K", K)
        for arr in (self.mu, self.mult, self.C, self.lam, self.Q, self.K):
            arr.setflags(write=False)

    @property
    def d(self) -> int:
        return len(self.mu)

    @property
    def n(self) -> int:
        return self.C.shape[1]

    @property
    def rho(self) -> float:
        return float(np.max(np.abs(self.mu))) if self.d else 0.0

    @property
    def mu_max(self) -> float:
        return float(self.mu[-1]) if self.d else 0.0

    def diag_function(self, values: np.ndarray) -> np.ndarray:
        """Diagonal of ``f(A)`` given ``values[..., h] = f(mu_h)``."""
        return np.asarray(values) @ self.C

    def reconstruct_walks(self, rmax: int) -> np.ndarray:
        """Float ``sum_h mu_h^r C[h, i]`` for ``r = 0..rmax``, shape ``(rmax+1, n)``."""
        powers = self.mu[None, :] ** np.arange(rmax + 1)[:, None]
        return powers @ self.C


def eig_sym(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthogonal eigenvectors of a symmetric adjacency matrix."""
    if not g.is_undirected:
        raise GraphError("eigendecomposition here requires a symmetric (undirected) adjacency")
    A = g.adjacency
    try:
        lam, Q = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    if g.n:
        scale = max(1.0, float(np.max(np.abs(lam))))
        resid = np.max(np.abs(A @ Q - Q * lam))
        if resid > 1e-10 * scale:
            raise SpectralError(f"eigen residual {resid:.3e} exceeds {1e-10 * scale:.3e}")
        orth = np.max(np.abs(Q.T @ Q - np.eye(g.n)))
        if orth > 1e-10:
            raise SpectralError(f"eigenvectors not orthogonal to 1e-10 (error {orth:.3e})")
    return lam, Q


def default_tol(lam: np.ndarray) -> float:
    rho = float(np.max(np.abs(lam))) if len(lam) else 0.0
    return max(1e-9, 64 * float(np.spacing(max(rho, 1.0))) * len(lam))


def group_eigenvalues(lam, Q, tol: float | None = None, graph: Graph | None = None,
                      threshold: float = RESIDUAL_THRESHOLD) -> SpectralData:
    """Cluster eigenvalues whose consecutive gap is at most ``tol`` and build ``C``.

    When ``graph`` has integer weights the grouping is checked against exact
    walk counts ``[A^r]_ii`` for ``r < n``; a residual above ``threshold``
    raises :class:`SpectralError`. The residual for each entry is scaled by
    ``max(1, [A^r]_ii, sum_h |mu_h|^r C[h, i], n eps rho^r)``: the magnitude
    of the terms being summed, so bipartite cancellations do not trip the
    check, floored by the roundoff that leaks between components of a
    disconnected graph.
    """
    lam = np.asarray(lam, dtype=float)
    Q = np.asarray(Q, dtype=float)
    n = len(lam)
    if tol is None:
        tol = default_tol(lam)
    gaps = np.diff(lam)
    cuts = np.flatnonzero(gaps > tol) + 1
    groups = tuple(np.split(np.arange(n), cuts)) if n else ()
    mu = np.array([lam[g].mean() for g in groups])
    mult = np.array([len(g) for g in groups], dtype=int)
    C = np.array([np.sum(Q[:, g] ** 2, axis=1) for g in groups]).reshape(len(groups), n)

    if n:
        if np.max(np.abs(C.sum(axis=0) - 1)) > 1e-10:
            raise SpectralError("projector diagonals do not sum to one")
        traces = C.sum(axis=1)
        if np.max(np.abs(traces - mult)) > 1e-6:
            raise SpectralError("projector traces disagree with cluster multiplicities")

    residual = None
    exact = False
    if graph is not None and graph.is_undirected and np.all(graph.adjacency == np.round(graph.adjacency)):
        exact = True
        residual = 0.0
        if n:
            absmu = np.abs(mu)
            rho = float(absmu.max())
            leak = n * np.finfo(float).eps
            for r, P in enumerate(matrix_powers(graph, n - 1)):
                w = np.array([float(x) for x in np.diagonal(P)])
                approx = (mu ** r) @ C
                scale = np.maximum.reduce([np.ones(n), np.abs(w), (absmu ** r) @ C,
                                           np.full(n, leak * rho ** r)])
                residual = max(residual, float(np.max(np.abs(approx - w) / scale)))
        if residual > threshold:
            raise SpectralError(
                f"grouping rejected: walk reconstruction residual {residual:.3e} > {threshold:.1e} (tol={tol:.3e})")
    report = GroupingReport(gaps=gaps, tol=float(tol), residual=residual, exact=exact, threshold=threshold)
    return SpectralData(mu=mu, mult=mult, C=C, lam=lam, Q=Q, groups=groups, report=report)


def spectral_data(g: Graph, tol: float | None = None, verify: bool = True) -> SpectralData:
    lam, Q = eig_sym(g)
    return group_eigenvalues(lam, Q, tol=tol, graph=g if verify else None)


def spectral_radius(g: Graph) -> float:
    lam, _ = eig_sym(g)
    return float(np.max(np.abs(lam))) if len(lam) else 0.0
