"""Brute-force reference matrices.

Nothing here touches the spectral transform: translates are formed by index
permutation in the time domain and every operator is an explicit array.
The Hermitian eigensolver is a cyclic Jacobi method (round-robin ordering so
that each round applies disjoint rotations in one vectorised step).
"""

from __future__ import annotations

import functools
from typing import Sequence

import numpy as np

from .errors import NonHermitianError
from .walsh import Signal, translate_indices

JACOBI_TOL = 1e-14
HERMITIAN_TOL = 1e-12


def _generators(phi) -> list[Signal]:
    if isinstance(phi, Signal):
        return [phi]
    gens = list(phi)
    if not gens:
        raise ValueError("empty generator family")
    cfg = gens[0].cfg
    if any(not g.cfg.same_window(cfg) for g in gens):
        raise ValueError("generators live on different windows")
    return gens


def translates_matrix(phi: Signal | Sequence[Signal]) -> np.ndarray:
    """Columns ``T_h phi_l``; generator-major, then lambda(h) ascending."""
    gens = _generators(phi)
    idx = translate_indices(gens[0].cfg)
    return np.concatenate([g.values[idx].T for g in gens], axis=1)


def synthesis_matrix(phi) -> np.ndarray:
    return translates_matrix(phi)


def analysis_matrix(phi) -> np.ndarray:
    """Maps ``f`` to ``(<f, T_h phi>)_h`` under the weighted inner product."""
    gens = _generators(phi)
    return gens[0].cfg.time_weight * translates_matrix(gens).conj().T


def gram_matrix(phi: Signal | Sequence[Signal]) -> np.ndarray:
    """``G[h, h'] = <T_h' phi, T_h phi>`` by direct time-domain sums."""
    gens = _generators(phi)
    T = translates_matrix(gens)
    return gens[0].cfg.time_weight * (T.conj().T @ T)


def frame_operator_matrix(phi) -> np.ndarray:
    """``S = synthesis @ analysis`` as a ``p**(m+n)`` square array."""
    return synthesis_matrix(phi) @ analysis_matrix(phi)


@functools.lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple:
    """Disjoint index pairs per round; every pair appears once per sweep."""
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(a, b) for a, b in pairs if a < n and b < n]
        if pairs:
            P = np.array([min(a, b) for a, b in pairs])
            Q = np.array([max(a, b) for a, b in pairs])
            rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def check_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonHermitianError(f"expected a square matrix, got shape {M.shape}")
    scale = float(np.max(np.abs(M), initial=0.0))
    defect = float(np.max(np.abs(M - M.conj().T), initial=0.0))
    if defect > tol * scale:
        raise NonHermitianError(f"matrix is not Hermitian (defect {defect:.3e})")


def off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def hermitian_eigen(M: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns ``(eigenvalues ascending, eigenvectors as columns)``.  Sweeps
    stop once the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F`` or stops decreasing at round-off level.
    """
    check_hermitian(M)
    a = np.array(M, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v

    rounds = _round_robin(n)
    # rotations below this size cannot move the result at double precision
    negligible = 1e-20 * scale
    previous = np.inf
    for _ in range(max_sweeps):
        off = off_norm(a)
        if off <= tol * scale:
            break
        if off >= previous and off <= 1e3 * np.finfo(float).eps * scale:
            break
        previous = off
        for P, Q in rounds:
            apq = a[P, Q]
            mag = np.abs(apq)
            active = mag > negligible
            if not active.any():
                continue
            P, Q, apq, mag = P[active], Q[active], apq[active], mag[active]
            app = a[P, P].real
            aqq = a[Q, Q].real
            theta = (aqq - app) / (2.0 * mag)
            sgn = np.where(theta >= 0.0, 1.0, -1.0)
            t = sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            e = apq / mag
            # rotation block [[c, s], [-s*conj(e), c*conj(e)]] on columns (P, Q)
            cp, cq = a[:, P], a[:, Q]
            a[:, P] = cp * c - cq * (s * e.conj())
            a[:, Q] = cp * s + cq * (c * e.conj())
            rp, rq = a[P, :], a[Q, :]
            a[P, :] = rp * c[:, None] - rq * (s * e)[:, None]
            a[Q, :] = rp * s[:, None] + rq * (c * e)[:, None]
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            a[P, P] = a[P, P].real
            a[Q, Q] = a[Q, Q].real
            vp, vq = v[:, P], v[:, Q]
            v[:, P] = vp * c - vq * (s * e.conj())
            v[:, Q] = vp * s + vq * (c * e.conj())

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def pinv(M: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Moore-Penrose inverse of a Hermitian matrix.

    Eigenvalues with ``|lambda| <= tol * max|lambda|`` are treated as zero,
    matching the relative threshold used for spectral support masks.
    """
    w, V = hermitian_eigen(M)
    cutoff = tol * float(np.max(np.abs(w), initial=0.0))
    inv = np.zeros_like(w)
    keep = np.abs(w) > cutoff
    inv[keep] = 1.0 / w[keep]
    return (V * inv) @ V.conj().T


def pinv_apply(M: np.ndarray, f, tol: float = 1e-10):
    """``M^+ f``; a :class:`Signal` argument yields a :class:`Signal`."""
    if isinstance(f, Signal):
        return Signal(f.cfg, pinv(M, tol) @ f.values)
    return pinv(M, tol) @ np.asarray(f)


def projector_onto_span(phi: Signal | Sequence[Signal], tol: float = 1e-10) -> np.ndarray:
    """Orthogonal projector onto the span of all translates of ``phi``.

    Built as ``p**-n * T @ G^+ @ T^H`` from the translate matrix ``T`` and
    the Gram matrix ``G``.
    """
    gens = _generators(phi)
    T = translates_matrix(gens)
    G = gram_matrix(gens)
    return gens[0].cfg.time_weight * (T @ pinv(G, tol) @ T.conj().T)
