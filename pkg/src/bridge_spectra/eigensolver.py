"""Dense symmetric eigensolver and second-eigenvalue extraction.

The default method is cyclic Jacobi with round-robin ordering: every round
rotates ``N/2`` disjoint index pairs at once, which keeps the inner loop in
numpy.  ``method="lapack"`` delegates to :func:`numpy.linalg.eigh` and is
held to the same residual contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph_core import Graph, GraphError, LaplacianMatrix, TestVector, build_laplacian

SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-8
CONNECTED_TOL = 1e-9
MAX_SWEEPS = 50
# off-diagonal level at which a stalled iteration is accepted as converged
STALL_TOL = 1e-11


class ConvergenceError(RuntimeError):
    """Raised when Jacobi sweeps fail to annihilate the off-diagonal mass."""

    def __init__(self, msg: str, sweeps: int, off_norm: float):
        super().__init__(f"{msg} (sweeps={sweeps}, off-diagonal norm={off_norm:.3e})")
        self.sweeps = sweeps
        self.off_norm = off_norm


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending eigenvalues with matching unit eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    residual: float
    iterations: int

    def __len__(self) -> int:
        return self.eigenvalues.shape[0]


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one cyclic sweep; every unordered pair appears exactly once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off(A: np.ndarray) -> float:
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def _jacobi(A: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray, int]:
    n = A.shape[0]
    A = A.copy()
    V = np.eye(n)
    scale = float(np.linalg.norm(A))
    if n == 1 or scale == 0.0:
        return np.diag(A).copy(), V, 0
    rounds = _round_robin(n)
    prev = np.inf
    for sweep in range(1, max_sweeps + 1):
        off = _off(A)
        if off <= tol * scale or (off > 0.5 * prev and off <= STALL_TOL * scale):
            return np.diag(A).copy(), V, sweep - 1
        prev = off
        for p, q in rounds:
            apq = A[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            tau = (A[q, q] - A[p, p]) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            J = np.eye(n)
            J[p, p] = c
            J[q, q] = c
            J[p, q] = s
            J[q, p] = -s
            A = J.T @ A @ J
            A[p, q] = 0.0
            A[q, p] = 0.0
            V = V @ J
        A = 0.5 * (A + A.T)
    off = _off(A)
    if off <= tol * scale:
        return np.diag(A).copy(), V, max_sweeps
    raise ConvergenceError("Jacobi iteration did not converge", max_sweeps, off)


def eig_symmetric(A, tol: float = 1e-14, method: str = "jacobi",
                  max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Full eigendecomposition of a dense symmetric matrix.

    ``tol`` bounds the final off-diagonal Frobenius norm relative to ``||A||_F``.
    The returned residual is ``max_i ||A v_i - lambda_i v_i|| / ||A||_F``.
    """
    if isinstance(A, LaplacianMatrix):
        A = A.entries
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    asym = float(np.abs(A - A.T).max(initial=0.0))
    if asym > SYMMETRY_TOL:
        raise ValueError(f"matrix is not symmetric (max |A - A^T| = {asym:.3e})")
    if method == "jacobi":
        w, V, sweeps = _jacobi(A, tol, max_sweeps)
    elif method == "lapack":
        w, V = np.linalg.eigh(A)
        sweeps = 0
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(w, kind="stable")
    w, V = w[order], V[:, order]
    norm = float(np.linalg.norm(A)) or 1.0
    residual = float(np.linalg.norm(A @ V - V * w, axis=0).max(initial=0.0)) / norm
    if residual > RESIDUAL_TOL:
        raise ConvergenceError(f"residual {residual:.3e} exceeds {RESIDUAL_TOL}", sweeps, residual)
    w.setflags(write=False)
    V.setflags(write=False)
    return Spectrum(w, V, residual, sweeps)


def laplacian_spectrum(g: Graph, **kw) -> Spectrum:
    return eig_symmetric(build_laplacian(g), **kw)


def lambda2(g: Graph, **kw) -> float:
    """Second-smallest Laplacian eigenvalue (0 for a single vertex)."""
    if g.num_vertices == 1:
        return 0.0
    return float(laplacian_spectrum(g, **kw).eigenvalues[1])


def fiedler_vector(g: Graph, **kw) -> TestVector:
    """Unit eigenvector for the second eigenvalue, orthogonal to the all-ones vector."""
    if g.num_vertices < 2:
        raise GraphError("Fiedler vector needs at least two vertices")
    spec = laplacian_spectrum(g, **kw)
    if spec.eigenvalues[1] <= CONNECTED_TOL:
        raise GraphError("graph is disconnected; the Fiedler vector is not determined")
    v = np.array(spec.eigenvectors[:, 1])
    v -= v.mean()
    v /= np.linalg.norm(v)
    # fix the sign so the first nonzero entry is positive
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return TestVector(v, label="fiedler")
