"""Walk-based centralities.

Subgraph and resolvent centrality each have two independent evaluation
paths: the grouped spectral formula ``sum_h f(mu_h) C[h, i]`` and a direct
matrix computation (scaling-and-squaring exponential, or a linear solve).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .expm import expm
from .graph import Graph, GraphError, degrees, is_connected
from .spectral import SpectralData, spectral_data

#: Above this value of beta * rho, exponential scores are returned multiplied by exp(-beta * rho).
RESCALE_THRESHOLD = 700.0
MEASURES = ("SC", "RC", "EC", "Katz", "TC", "degree")


@dataclass(frozen=True)
class CentralityProfile:
    """Scores for every vertex.

    When ``log_scale`` is nonzero the true scores are ``scores * exp(log_scale)``;
    comparisons at a fixed parameter are unaffected.
    """

    measure: str
    parameter: float | None
    scores: np.ndarray
    log_scale: float = 0.0

    @property
    def rescaled(self) -> bool:
        return self.log_scale != 0.0


def _spectral(g: Graph, sd: SpectralData | None) -> SpectralData:
    if sd is not None:
        return sd
    if not g.is_undirected:
        raise GraphError("spectral formulas need an undirected graph; use the series/solve path")
    return spectral_data(g)


def _radius(g: Graph, sd: SpectralData | None = None) -> float:
    if sd is not None:
        return sd.rho
    if g.is_undirected:
        return _spectral(g, None).rho
    lam = np.linalg.eigvals(g.adjacency)
    return float(np.max(np.abs(lam))) if len(lam) else 0.0


def _pick(vec: np.ndarray, i: int | None):
    if i is None:
        return vec
    return float(vec[i])


def _check_beta(beta: float):
    if not beta > 0 or not math.isfinite(beta):
        raise ValueError(f"beta must be a positive finite number, got {beta}")


def check_alpha(alpha: float, rho: float):
    if not alpha > 0 or (rho > 0 and alpha * rho >= 1):
        raise ValueError(f"alpha must lie in (0, 1/rho) = (0, {1 / rho if rho else math.inf:.6g}), got {alpha}")


def default_alpha(g: Graph, sd: SpectralData | None = None) -> float:
    rho = _radius(g, sd)
    return 0.5 / rho if rho > 0 else 0.5


# subgraph centrality -----------------------------------------------------


def sc(g: Graph, beta: float, i: int | None = None, *, method: str = "spectral",
       sd: SpectralData | None = None):
    """Subgraph centrality ``[exp(beta A)]_ii`` (all vertices when ``i`` is None).

    ``method="spectral"`` uses the grouped eigen-expansion and needs an
    undirected graph; ``method="series"`` exponentiates the matrix directly
    and also accepts general matrices.
    """
    _check_beta(beta)
    if method == "spectral":
        sd = _spectral(g, sd)
        with np.errstate(over="ignore"):
            vals = sd.diag_function(np.exp(beta * sd.mu))
    elif method == "series":
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.diagonal(expm(beta * g.adjacency)).copy()
    else:
        raise ValueError(f"unknown method {method!r}")
    if not np.all(np.isfinite(vals)):
        raise OverflowError(
            f"subgraph centrality overflows double range at beta*rho = {beta * _radius(g, sd):.6g}; "
            "use sc_profile for rescaled scores")
    return _pick(vals, i)


def sc_rescaled(sd: SpectralData, beta: float) -> np.ndarray:
    """``exp(-beta * mu_max) * SC(., beta)``, finite for any beta."""
    return sd.diag_function(np.exp(beta * (sd.mu - sd.mu_max)))


def sc_profile(g: Graph, beta: float = 1.0, sd: SpectralData | None = None) -> CentralityProfile:
    _check_beta(beta)
    sd = _spectral(g, sd)
    shift = beta * sd.mu_max
    if shift > RESCALE_THRESHOLD:
        return CentralityProfile("SC", beta, sc_rescaled(sd, beta), log_scale=shift)
    return CentralityProfile("SC", beta, sc(g, beta, sd=sd))


def trace_exp(sd: SpectralData, beta: float) -> float:
    return float(np.sum(sd.mult * np.exp(beta * sd.mu)))


# resolvent centrality ----------------------------------------------------


def rc(g: Graph, alpha: float, i: int | None = None, *, method: str = "solve",
       sd: SpectralData | None = None):
    """Resolvent centrality ``[(I - alpha A)^{-1}]_ii`` for ``0 < alpha < 1/rho``."""
    check_alpha(alpha, _radius(g, sd))
    n = g.n
    if method == "solve":
        M = np.eye(n) - alpha * g.adjacency
        if i is None:
            return np.diagonal(np.linalg.solve(M, np.eye(n))).copy()
        e = np.zeros(n)
        e[i] = 1.0
        return float(np.linalg.solve(M, e)[i])
    if method == "spectral":
        sd = _spectral(g, sd)
        return _pick(sd.diag_function(1.0 / (1.0 - alpha * sd.mu)), i)
    raise ValueError(f"unknown method {method!r}")


# eigenvector, Katz, total communicability -------------------------------


def ec(g: Graph, sd: SpectralData | None = None) -> np.ndarray:
    """Positive unit-length Perron vector of a connected undirected graph."""
    if not g.is_undirected:
        raise GraphError("eigenvector centrality needs an undirected graph")
    if not is_connected(g):
        raise GraphError("eigenvector centrality is not unique on a disconnected graph")
    sd = _spectral(g, sd)
    top = sd.groups[-1]
    if len(top) != 1:
        raise GraphError("largest eigenvalue is not simple")
    v = sd.Q[:, top[0]].copy()
    v *= np.sign(v.sum())
    v /= np.linalg.norm(v)
    if g.n > 1 and not np.all(v > 0):
        raise GraphError("Perron vector has nonpositive entries")
    return v


def katz(g: Graph, alpha: float | None = None, *, method: str = "solve",
         sd: SpectralData | None = None) -> np.ndarray:
    """Row sums of the resolvent, ``(I - alpha A)^{-1} 1``; unnormalized."""
    if alpha is None:
        alpha = default_alpha(g, sd)
    check_alpha(alpha, _radius(g, sd))
    if method == "solve":
        return np.linalg.solve(np.eye(g.n) - alpha * g.adjacency, np.ones(g.n))
    if method == "spectral":
        sd = _spectral(g, sd)
        return (1.0 / (1.0 - alpha * sd.mu)) @ sd.K
    raise ValueError(f"unknown method {method!r}")


def tc(g: Graph, beta: float = 1.0, *, method: str = "series",
       sd: SpectralData | None = None) -> np.ndarray:
    """Total communicability, the row sums of ``exp(beta A)``."""
    _check_beta(beta)
    if method == "series":
        vals = expm(beta * g.adjacency) @ np.ones(g.n)
    elif method == "spectral":
        sd = _spectral(g, sd)
        vals = np.exp(beta * sd.mu) @ sd.K
    else:
        raise ValueError(f"unknown method {method!r}")
    if not np.all(np.isfinite(vals)):
        raise OverflowError(f"total communicability overflows at beta = {beta}")
    return vals


def walk_entropy(g: Graph, beta: float = 1.0, sd: SpectralData | None = None) -> float:
    """Shannon entropy (natural log) of SC scores normalized by ``Tr exp(beta A)``."""
    _check_beta(beta)
    if g.n == 0:
        raise GraphError("walk entropy of the empty graph is undefined")
    sd = _spectral(g, sd)
    p = sc_rescaled(sd, beta)
    p = p / p.sum()
    return float(-np.sum(p * np.log(p)))


def functional_centrality(g: Graph, f: Callable, t: float, i: int | None = None, *,
                          radius: float = math.inf, sd: SpectralData | None = None):
    """``[f(t A)]_ii`` for an admissible ``f`` with Maclaurin radius ``radius``.

    ``f`` must accept a numpy array of the values ``t * mu_h``.
    """
    sd = _spectral(g, sd)
    limit = radius / sd.rho if sd.rho > 0 else math.inf
    if not (t > 0 and t < limit):
        raise ValueError(f"t must lie in (0, {limit:.6g}), got {t}")
    with np.errstate(all="ignore"):
        vals = np.asarray(f(t * sd.mu), dtype=float)
    if vals.shape != sd.mu.shape or not np.all(np.isfinite(vals)):
        raise ValueError("f is not finite at every t * mu_h")
    return _pick(sd.diag_function(vals), i)


def profile(g: Graph, measure: str, parameter: float | None = None,
            sd: SpectralData | None = None) -> CentralityProfile:
    """Evaluate any supported measure into a :class:`CentralityProfile`."""
    if measure == "degree":
        return CentralityProfile("degree", None, degrees(g).astype(float))
    sd = _spectral(g, sd)
    if measure == "EC":
        return CentralityProfile("EC", None, ec(g, sd))
    if measure == "SC":
        return sc_profile(g, 1.0 if parameter is None else parameter, sd)
    if measure == "TC":
        beta = 1.0 if parameter is None else parameter
        return CentralityProfile("TC", beta, tc(g, beta, method="spectral", sd=sd))
    alpha = default_alpha(g, sd) if parameter is None else parameter
    if measure == "RC":
        return CentralityProfile("RC", alpha, rc(g, alpha, sd=sd))
    if measure == "Katz":
        return CentralityProfile("Katz", alpha, katz(g, alpha, sd=sd))
    raise ValueError(f"unknown measure {measure!r}; choose from {MEASURES}")
