"""Loewner-order certificates between graph Laplacians.

``A >= B`` is certified by the smallest eigenvalue of ``A - B``; no
factorisation is attempted, so a failed check reports how badly it failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolver import eig_symmetric, lambda2
from .families import complete, path, tree_height
from .graph_core import Graph, GraphError, build_laplacian

PSD_TOL = 1e-9


class CertificationError(ValueError):
    """The Loewner relation needed for a bound does not hold."""

    def __init__(self, msg: str, min_eig: float):
        super().__init__(f"{msg} (min eigenvalue of difference = {min_eig:.6e})")
        self.min_eig = min_eig


@dataclass(frozen=True)
class OrderCertificate:
    lhs_desc: str
    rhs_desc: str
    scale_c: float
    min_eig_of_difference: float
    diff_norm: float
    holds: bool

    def summary(self) -> str:
        word = "holds" if self.holds else "fails"
        return f"{word} c={self.scale_c:.15g} min_eig={self.min_eig_of_difference:.15g}"


def _desc(g: Graph) -> str:
    return f"graph(N={g.num_vertices}, E={g.num_edges})"


def psd_min_eig(A: np.ndarray) -> float:
    return float(eig_symmetric(A).eigenvalues[0])


def loewner_geq(g1: Graph, g2: Graph, c: float = 1.0, lhs_desc: str | None = None,
                rhs_desc: str | None = None, tol: float = PSD_TOL) -> OrderCertificate:
    """Certify (or refute) ``c * L(g1) >= L(g2)``."""
    if g1.num_vertices != g2.num_vertices:
        raise GraphError(f"vertex sets differ: {g1.num_vertices} vs {g2.num_vertices}; "
                         "pad the smaller graph first")
    diff = c * build_laplacian(g1).entries - build_laplacian(g2).entries
    norm = float(np.linalg.norm(diff))
    mu = psd_min_eig(diff)
    return OrderCertificate(
        lhs_desc or _desc(g1),
        rhs_desc or _desc(g2),
        float(c),
        mu,
        norm,
        mu >= -tol * max(1.0, norm),
    )


def path_inequality_check(length: int, tol: float = PSD_TOL) -> OrderCertificate:
    """``length * P >= G_ab`` for a path ``P`` on ``length + 1`` vertices from ``a = 1`` to ``b``."""
    if length < 1:
        raise GraphError(f"path length must be >= 1, got {length}")
    p = path(length + 1)
    edge = Graph(length + 1, ((1, length + 1),))
    return loewner_geq(p, edge, length, f"path(len={length})", f"edge(1,{length + 1})", tol)


def domination_lower_bound(g: Graph, c: float, tol: float = PSD_TOL) -> float:
    """Lower bound ``N / c`` on ``lambda_2(g)``, emitted only once ``K_N <= c g`` is certified."""
    N = g.num_vertices
    cert = loewner_geq(g, complete(N), c, rhs_desc=f"K_{N}", tol=tol)
    if not cert.holds:
        raise CertificationError(f"K_{N} <= {c:.6g} G not certified", cert.min_eig_of_difference)
    return N / c


def family_scale(family: str, n: int, m: int | None = None, l: int | None = None) -> float:
    """Constant ``c`` with ``K_N <= c G`` as assembled from the path-length bounds.

    ``binom(N, 2)`` single edges, each dominated by a path of bounded length.
    """
    if family == "dumbbell":
        N, length = 2 * n + m - 2, m + 1
    elif family == "star_bridge":
        N, length = 2 * n + m - 2, m + 3
    elif family == "tree_bridge":
        tree_height(n)
        N, length = 2 * n + m - 2, 2 * math.log2(n + 1) + m - 3
    elif family == "tree_chain":
        tree_height(n)
        N, length = n * l, l * math.log2(n - 1) - 1
    else:
        raise GraphError(f"no domination constant for family {family!r}")
    if length <= 0:
        raise GraphError(f"path-length bound {length} is not positive for {family} n={n}")
    return math.comb(N, 2) * length


def subgraph_order(sub: Graph, sup: Graph) -> OrderCertificate:
    """``L(sup) - L(sub)`` for ``sub`` a subgraph of ``sup`` on the same vertices."""
    return loewner_geq(sup, sub, 1.0, "supergraph", "subgraph")


def check_lower_bound(g: Graph, c: float, tol: float = PSD_TOL) -> tuple[OrderCertificate, float]:
    """Certificate plus ``lambda_2`` so callers can audit ``lambda_2 >= N/c``."""
    cert = loewner_geq(g, complete(g.num_vertices), c, rhs_desc=f"K_{g.num_vertices}", tol=tol)
    return cert, lambda2(g)
