"""Matrix exponential by Taylor scaling and squaring.

Works on a single square matrix or a stack ``(..., n, n)``; each matrix in the
stack gets its own scaling exponent.
"""
from __future__ import annotations

import numpy as np

# With ||X||_1 <= 1 the degree-18 Taylor remainder is below e / 19! ~ 2e-17.
TAYLOR_ORDER = 18
THETA = 1.0


def expm(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ValueError(f"expected square matrix or stack, got shape {A.shape}")
    n = A.shape[-1]
    if n == 0:
        return A.copy()
    norms = np.abs(A).sum(axis=-2).max(axis=-1)
    with np.errstate(divide="ignore"):
        s = np.where(norms > THETA, np.ceil(np.log2(np.maximum(norms, 1e-300) / THETA)), 0).astype(int)
    X = A / np.ldexp(1.0, s)[..., None, None]

    eye = np.broadcast_to(np.eye(n), A.shape)
    E = eye + X / TAYLOR_ORDER
    for k in range(TAYLOR_ORDER - 1, 0, -1):
        E = eye + (X @ E) / k

    smax = int(s.max()) if s.size else 0
    for step in range(smax):
        sq = E @ E
        if s.ndim == 0:
            E = sq
        else:
            E = np.where((s > step)[..., None, None], sq, E)
    return E


def expm_diag(A, beta: float) -> np.ndarray:
    return np.diagonal(expm(beta * np.asarray(A, dtype=float))).copy()


def taylor_expm(A, terms: int = 200) -> np.ndarray:
    """Plain truncated Taylor series; slow and only accurate for small norms. Test oracle."""
    A = np.asarray(A, dtype=float)
    term = np.eye(A.shape[0])
    total = term.copy()
    for k in range(1, terms):
        term = term @ A / k
        total = total + term
        if not np.any(term):
            break
    return total

