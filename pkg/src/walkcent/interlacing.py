"""Locate, count, and bound interlacing values for a pair of vertices.

An interlacing value is a parameter at which two non-cospectral vertices get
the same score. For subgraph centrality the difference is the exponential sum
``g(beta) = sum_h exp(beta mu_h) w_h`` with ``w_h = C[h, i] - C[h, j]``; for
resolvent centrality the kernel is ``1 / (1 - alpha mu_h)``. Zeros are found
by a sign-change scan over a uniform mesh followed by bisection.

Bounds checked on every report:

* at most ``d - 1`` zeros (``d`` distinct eigenvalues);
* at most as many zeros as sign changes in ``w``; both kernels are totally
  positive (exponential kernel, Cauchy kernel), so this holds for SC and RC;
* for RC additionally at most ``n - 1`` zeros.

Katz and total communicability use the same machinery on row-sum weights
``K`` but no bound is asserted for them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .expm import expm
from .graph import Graph, GraphError
from .spectral import SpectralData, spectral_data
from .walks import WalkTable, are_cospectral

MEASURES = ("sc", "rc", "katz", "tc")
EXP_KERNEL = {"sc", "tc"}
BOUNDED = {"sc", "rc"}

DEFAULT_SC_INTERVAL = (0.0, 50.0)
DEFAULT_RESOLUTION = 10_000
DEFAULT_REFINE_TOL = 1e-9
RC_EPS = 1e-6
#: a refined local minimum of |rescaled g| below this, without a sign change, is a tangency
TANGENCY_TOL = 1e-7
#: mesh values below NOISE * (magnitude of the two scores) are treated as zero
NOISE = 1e-12
#: coefficient vectors with max |w_h| below this are numerically zero
W_ZERO = 1e-10


class InterlacingError(RuntimeError):
    """A located zero count exceeded a proven bound: a numerical bug, never a result."""


class CospectralPairError(ValueError):
    """Bounds were requested for a cospectral pair, for which they are vacuous."""


def sign_changes(v, zero_tol: float = 0.0) -> int:
    """Count strict sign alternations after dropping entries with ``|v| <= zero_tol``."""
    v = np.asarray(v, dtype=float)
    s = np.sign(v[np.abs(v) > zero_tol])
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass(frozen=True)
class Bounds:
    d_minus_1: int
    sign_change: int
    n_minus_1: int | None = None

    @property
    def best(self) -> int:
        vals = [self.d_minus_1, self.sign_change]
        if self.n_minus_1 is not None:
            vals.append(self.n_minus_1)
        return min(vals)


@dataclass(frozen=True)
class Zero:
    value: float
    bracket: tuple[float, float]
    residual: float  # |rescaled g| at value


@dataclass(frozen=True)
class Tangency:
    value: float
    abs_value: float  # refined min of |rescaled g|


@dataclass
class InterlacingReport:
    pair: tuple[int, int]
    measure: str
    interval: tuple[float, float]
    resolution: int
    zeros: list[Zero] = field(default_factory=list)
    bounds: Bounds | None = None
    tangencies: list[Tangency] = field(default_factory=list)
    cospectral: bool = False
    ill_conditioned: bool = False
    exact_verdict: bool = True

    @property
    def count(self) -> int:
        return len(self.zeros)

    @property
    def values(self) -> list[float]:
        return [z.value for z in self.zeros]


# difference functions -----------------------------------------------------


class DifferenceFunction:
    """``score(i, x) - score(j, x)`` via the grouped spectrum, with a bounded rescaling.

    SC/TC are rescaled by ``exp(-x mu_max)``, RC/Katz by ``1 - x mu_max``; both
    factors are positive so zeros and signs are unchanged.
    """

    def __init__(self, sd: SpectralData, i: int, j: int, measure: str = "sc"):
        if measure not in MEASURES:
            raise ValueError(f"unknown measure {measure!r}; choose from {MEASURES}")
        self.sd = sd
        self.pair = (i, j)
        self.measure = measure
        weights = sd.C if measure in BOUNDED else sd.K
        self.a_i = weights[:, i]
        self.a_j = weights[:, j]
        self.w = self.a_i - self.a_j
        self.mag = np.abs(self.a_i) + np.abs(self.a_j)

    def _kernel(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)[..., None]
        mu = self.sd.mu
        if self.measure in EXP_KERNEL:
            return np.exp(x * (mu - self.sd.mu_max))
        return (1.0 - x * self.sd.mu_max) / (1.0 - x * mu)

    def _log_factor(self, x):
        x = np.asarray(x, dtype=float)
        if self.measure in EXP_KERNEL:
            return x * self.sd.mu_max
        return -np.log(1.0 - x * self.sd.mu_max)

    def rescaled(self, x):
        return self._kernel(x) @ self.w

    def scale(self, x):
        """Magnitude of the two scores being subtracted (same rescaling)."""
        return self._kernel(x) @ self.mag

    def __call__(self, x):
        with np.errstate(over="ignore"):
            return self.rescaled(x) * np.exp(self._log_factor(x))

    def in_domain(self, x: float) -> bool:
        if self.measure in EXP_KERNEL:
            return x >= 0
        return x >= 0 and x * self.sd.rho < 1


class SeriesDifference:
    """``[exp(x A)]_ii - [exp(x A)]_jj`` by direct exponentiation; accepts general matrices.

    Rescaled by ``exp(-x a)`` with ``a`` the spectral abscissa (largest real part).
    """

    measure = "sc"

    def __init__(self, g: Graph, i: int, j: int):
        self.A = g.adjacency
        self.pair = (i, j)
        lam = np.linalg.eigvals(self.A) if g.n else np.zeros(0)
        self.abscissa = float(np.max(lam.real)) if len(lam) else 0.0

    def _diag(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        E = expm(x[:, None, None] * (self.A - self.abscissa * np.eye(len(self.A))))
        i, j = self.pair
        return E[:, i, i], E[:, j, j]

    def rescaled(self, x):
        a, b = self._diag(x)
        out = a - b
        return out if np.ndim(x) else float(out[0])

    def scale(self, x):
        a, b = self._diag(x)
        out = np.abs(a) + np.abs(b)
        return out if np.ndim(x) else float(out[0])

    def __call__(self, x):
        with np.errstate(over="ignore"):
            return self.rescaled(x) * np.exp(np.asarray(x) * self.abscissa)

    def in_domain(self, x: float) -> bool:
        return x >= 0


def sc_difference(g: Graph, i: int, j: int, beta, *, rescaled: bool = False,
                  sd: SpectralData | None = None):
    """``SC(i, beta) - SC(j, beta)``; with ``rescaled`` multiplied by ``exp(-beta mu_max)``.

    General-matrix graphs are evaluated through the series path.
    """
    if np.any(np.asarray(beta) <= 0):
        raise ValueError("beta must be positive")
    if i == j:
        return np.zeros_like(np.asarray(beta, dtype=float)) if np.ndim(beta) else 0.0
    if g.is_undirected:
        f = DifferenceFunction(sd or spectral_data(g), i, j, "sc")
    else:
        f = SeriesDifference(g, i, j)
    out = f.rescaled(beta) if rescaled else f(beta)
    return out if np.ndim(beta) else float(out)


# bounds -------------------------------------------------------------------


def coefficient_zero_tol(w) -> float:
    return 1e-10 * float(np.max(np.abs(w))) if len(w) else 0.0


def interlacing_bounds(g: Graph, i: int, j: int, measure: str = "sc",
                       sd: SpectralData | None = None, table: WalkTable | None = None) -> Bounds:
    if measure not in BOUNDED:
        raise ValueError(f"no interlacing bound is known for {measure!r}")
    if _is_cospectral(g, i, j, table, sd)[0]:
        raise CospectralPairError(f"vertices {i + 1} and {j + 1} are cospectral; bounds are vacuous")
    sd = sd or spectral_data(g)
    return _bounds(DifferenceFunction(sd, i, j, measure))


def _bounds(f: DifferenceFunction) -> Bounds:
    sd = f.sd
    s = sign_changes(f.w, coefficient_zero_tol(f.w))
    b = Bounds(d_minus_1=sd.d - 1, sign_change=s, n_minus_1=sd.n - 1 if f.measure == "rc" else None)
    if b.sign_change > b.d_minus_1:
        raise InterlacingError(f"sign-change count {s} exceeds d-1 = {sd.d - 1}")
    return b


def _is_cospectral(g: Graph, i, j, table, sd) -> tuple[bool, bool]:
    """(cospectral, decided_exactly)."""
    try:
        return are_cospectral(g, i, j, table), True
    except GraphError:
        sd = sd or spectral_data(g, verify=False)
        w = sd.C[:, i] - sd.C[:, j]
        return bool(np.max(np.abs(w)) <= W_ZERO), False


# scanning -----------------------------------------------------------------


def default_interval(measure: str, rho: float) -> tuple[float, float]:
    if measure in EXP_KERNEL:
        return DEFAULT_SC_INTERVAL
    if rho <= 0:
        return (RC_EPS, 1.0)
    return (RC_EPS, (1.0 - RC_EPS) / rho)


def make_mesh(interval: tuple[float, float], resolution: int) -> np.ndarray:
    """Uniform mesh of ``resolution`` points; an interval starting at 0 is open there."""
    lo, hi = interval
    if not hi > lo:
        raise ValueError(f"empty interval {interval}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if lo <= 0:
        return lo + (hi - lo) * np.arange(1, resolution + 1) / resolution
    return np.linspace(lo, hi, resolution)


def bisect_root(f, a: float, b: float, tol: float, fa: float | None = None) -> float:
    """Bisection on a bracketing interval ``f(a) * f(b) < 0`` down to width ``tol``."""
    fa = f(a) if fa is None else fa
    while b - a > tol:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _scan(f, x: np.ndarray, refine_tol: float):
    """Return (zeros, tangencies) of a difference function on mesh ``x``."""
    G = np.asarray(f.rescaled(x), dtype=float)
    noise = NOISE * np.asarray(f.scale(x), dtype=float)
    live = np.flatnonzero(np.abs(G) > noise)
    zeros: list[Zero] = []
    brackets = []
    sgn = np.sign(G[live])
    for k in np.flatnonzero(sgn[1:] != sgn[:-1]):
        ka, kb = live[k], live[k + 1]
        a, b = float(x[ka]), float(x[kb])
        root = bisect_root(lambda t: float(f.rescaled(t)), a, b, refine_tol, fa=float(G[ka]))
        zeros.append(Zero(root, (a, b), abs(float(f.rescaled(root)))))
        brackets.append((a, b))

    tangencies = _tangencies(f, x, G, noise, brackets, refine_tol)
    return zeros, tangencies


def _tangencies(f, x, G, noise, brackets, refine_tol) -> list[Tangency]:
    """Refined local minima of |g| without a sign change, flanked by values above noise."""
    h = float(x[1] - x[0])
    lo_out, hi_out = float(x[0]) - h, float(x[-1]) + h

    def peek(t):
        # one step outside the interval so endpoint minima are judged fairly
        if not (t > 0 and f.in_domain(t)):
            return -1.0, 0.0
        return abs(float(f.rescaled(t))), NOISE * float(f.scale(t))

    (left, nl), (right, nr) = peek(lo_out), peek(hi_out)
    ext = np.concatenate([[left], np.abs(G), [right]])
    ext_noise = np.concatenate([[nl], noise, [nr]])
    xs = np.concatenate([[lo_out], x, [hi_out]])
    out: list[Tangency] = []
    y0, y1, y2 = ext[:-2], ext[1:-1], ext[2:]
    cand = (y0 > ext_noise[:-2]) & (y2 > ext_noise[2:]) & (y1 <= y0) & (y1 < y2)
    # parabola through the three |g| samples: skip dips whose vertex stays far from zero
    curv = y2 - 2 * y1 + y0
    with np.errstate(divide="ignore", invalid="ignore"):
        vertex = np.where(curv > 0, y1 - (y2 - y0) ** 2 / (8 * curv), y1)
    cand &= vertex < 10 * TANGENCY_TOL
    for k in np.flatnonzero(cand) + 1:
        xk = float(xs[k])
        if any(a <= xk <= b for a, b in brackets):
            continue
        a, b = float(xs[k - 1]), float(xs[k + 1])
        res = minimize_scalar(lambda t: abs(float(f.rescaled(t))), bounds=(a, b), method="bounded",
                              options={"xatol": refine_tol})
        t, val = float(res.x), float(res.fun)
        if ext[k] < val:
            t, val = xk, float(ext[k])
        if val >= TANGENCY_TOL:
            continue
        # the minimizer may sit a hair outside the closed interval
        t = min(max(t, float(x[0]) - refine_tol), float(x[-1]) + refine_tol)
        if t < x[0] - refine_tol or t > x[-1] + refine_tol:
            continue
        if out and abs(out[-1].value - t) <= 2 * h:
            if val < out[-1].abs_value:
                out[-1] = Tangency(t, val)
            continue
        out.append(Tangency(t, val))
    return out


def find_interlacings(g: Graph, i: int, j: int, measure: str = "sc",
                      interval: tuple[float, float] | None = None,
                      resolution: int = DEFAULT_RESOLUTION, refine_tol: float = DEFAULT_REFINE_TOL,
                      *, sd: SpectralData | None = None, table: WalkTable | None = None) -> InterlacingReport:
    """Scan ``interval`` for parameters where vertices ``i`` and ``j`` tie.

    Cospectral pairs (decided in exact arithmetic when the adjacency is
    integral) come back with ``cospectral=True`` and no zeros. A pair that is
    not cospectral but whose coefficient vector is numerically zero is flagged
    ``ill_conditioned`` instead. For SC and RC the located count is checked
    against every bound and :class:`InterlacingError` is raised on violation.
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}; choose from {MEASURES}")
    if i == j:
        raise ValueError("interlacing needs two distinct vertices")
    for v in (i, j):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")

    if not g.is_undirected:
        if measure != "sc":
            raise GraphError("general-matrix graphs support only the series SC scan")
        return _find_general(g, i, j, interval or DEFAULT_SC_INTERVAL, resolution, refine_tol, table)

    sd = sd or spectral_data(g)
    f = DifferenceFunction(sd, i, j, measure)
    if interval is None:
        interval = default_interval(measure, sd.rho)
    _check_interval(measure, interval, sd.rho)
    report = InterlacingReport((i, j), measure, tuple(map(float, interval)), resolution)

    numerically_zero = float(np.max(np.abs(f.w))) <= W_ZERO if len(f.w) else True
    if measure in BOUNDED:
        cospectral, exact = _is_cospectral(g, i, j, table, sd)
        report.exact_verdict = exact
        if cospectral:
            report.cospectral = True
            return report
        if numerically_zero:
            report.ill_conditioned = True
            report.bounds = Bounds(sd.d - 1, 0, sd.n - 1 if measure == "rc" else None)
            return report
        report.bounds = _bounds(f)
    elif numerically_zero:
        return report

    report.zeros, report.tangencies = _scan(f, make_mesh(interval, resolution), refine_tol)
    if report.bounds is not None and report.count > report.bounds.best:
        raise InterlacingError(
            f"pair ({i + 1}, {j + 1}) {measure}: {report.count} zeros located but bounds are {report.bounds}")
    return report


def _check_interval(measure, interval, rho):
    lo, hi = interval
    if lo < 0 or not hi > lo:
        raise ValueError(f"invalid interval {interval}")
    if measure not in EXP_KERNEL and rho > 0 and hi * rho >= 1:
        raise ValueError(f"{measure} scan must stay below 1/rho = {1 / rho:.6g}")


def _find_general(g, i, j, interval, resolution, refine_tol, table):
    f = SeriesDifference(g, i, j)
    report = InterlacingReport((i, j), "sc", tuple(map(float, interval)), resolution)
    try:
        cospectral, exact = are_cospectral(g, i, j, table), True
    except GraphError:
        cospectral, exact = False, False
    report.exact_verdict = exact
    if cospectral:
        report.cospectral = True
        return report
    report.zeros, report.tangencies = _scan(f, make_mesh(interval, resolution), refine_tol)
    return report


def mesh_values(g: Graph, i: int, j: int, measure: str = "sc",
                interval: tuple[float, float] | None = None, resolution: int = DEFAULT_RESOLUTION,
                sd: SpectralData | None = None):
    """Mesh, raw difference, and rescaled difference (for plotting)."""
    if g.is_undirected:
        sd = sd or spectral_data(g)
        f = DifferenceFunction(sd, i, j, measure)
        interval = interval or default_interval(measure, sd.rho)
    else:
        f = SeriesDifference(g, i, j)
        interval = interval or DEFAULT_SC_INTERVAL
    x = make_mesh(interval, resolution)
    return x, np.asarray(f(x), dtype=float), np.asarray(f.rescaled(x), dtype=float)


def rescaled_residual_ok(g: Graph, i: int, j: int, beta: float, sd: SpectralData | None = None,
                         tol: float = 1e-8) -> bool:
    """``|g(beta)| <= tol * exp(beta * rho)``, computed without overflow."""
    sd = sd or spectral_data(g)
    f = DifferenceFunction(sd, i, j, "sc")
    return abs(float(f.rescaled(beta))) * math.exp(beta * (sd.mu_max - sd.rho)) <= tol
