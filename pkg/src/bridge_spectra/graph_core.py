"""Weighted undirected graphs, their Laplacians, and quadratic forms.

Vertices are labelled ``1..N`` at every public boundary; arrays are indexed
from 0 internally.  The Laplacian is ``D - M`` (degree minus adjacency), which
is the positive semidefinite convention under which
``x^T L x = sum_{(a,b) in E} w_ab (x(a) - x(b))^2``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ZERO_TOL = 1e-12


class GraphError(ValueError):
    """Invalid graph construction or malformed graph input."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Finite simple weighted graph on vertices ``1..num_vertices``.

    Edges are stored canonically as ``(u, v, w)`` with ``u < v``, sorted.
    """

    num_vertices: int
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        n = self.num_vertices
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise GraphError(f"num_vertices must be a positive integer, got {n!r}")
        seen = set()
        canon = []
        for e in self.edges:
            if len(e) == 2:
                u, v = e
                w = 1.0
            elif len(e) == 3:
                u, v, w = e
            else:
                raise GraphError(f"edge must be (u, v) or (u, v, w), got {e!r}")
            u, v, w = int(u), int(v), float(w)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 1..{n}")
            if u == v:
                raise GraphError(f"self loop at vertex {u}")
            if not (w > 0 and np.isfinite(w)):
                raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            canon.append((key[0], key[1], w))
        object.__setattr__(self, "num_vertices", int(n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        a, b = min(u, v), max(u, v)
        return any(e[0] == a and e[1] == b for e in self.edges)

    def add_edge(self, u: int, v: int, w: float = 1.0) -> "Graph":
        return Graph(self.num_vertices, self.edges + ((u, v, w),))

    def remove_edge(self, u: int, v: int) -> "Graph":
        a, b = min(u, v), max(u, v)
        kept = tuple(e for e in self.edges if (e[0], e[1]) != (a, b))
        if len(kept) == len(self.edges):
            raise GraphError(f"edge ({u}, {v}) not present")
        return Graph(self.num_vertices, kept)

    def neighbors(self) -> list[list[int]]:
        """Adjacency lists, 1-based; index 0 unused."""
        adj: list[list[int]] = [[] for _ in range(self.num_vertices + 1)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree_sequence(self) -> list[float]:
        deg = [0.0] * self.num_vertices
        for u, v, w in self.edges:
            deg[u - 1] += w
            deg[v - 1] += w
        return deg

    def is_connected(self) -> bool:
        """Breadth-first traversal from vertex 1."""
        adj = self.neighbors()
        seen = {1}
        queue = deque([1])
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return len(seen) == self.num_vertices

    def relabel(self, offset: int, num_vertices: int) -> "Graph":
        """Shift every label by ``offset`` inside a graph on ``num_vertices``."""
        return Graph(num_vertices, tuple((u + offset, v + offset, w) for u, v, w in self.edges))

    def padded(self, num_vertices: int) -> "Graph":
        """Same edges on a larger vertex set (extra vertices isolated)."""
        if num_vertices < self.num_vertices:
            raise GraphError("cannot pad to fewer vertices")
        return Graph(num_vertices, self.edges)


def union(num_vertices: int, *parts: Iterable[tuple]) -> Graph:
    """Graph on ``num_vertices`` whose edge set is the union of ``parts``."""
    edges: list[tuple] = []
    for p in parts:
        edges.extend(p.edges if isinstance(p, Graph) else p)
    return Graph(num_vertices, tuple(edges))


@dataclass(frozen=True, eq=False)
class LaplacianMatrix:
    """Dense symmetric Laplacian with zero row sums."""

    entries: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))


@dataclass(frozen=True, eq=False)
class TestVector:
    """Real vector over the vertices of a graph, tagged with a case label.

    ``shift`` is the mean removed by :func:`orthogonalize` (0 if never applied).
    """

    __test__ = False  # not a pytest class

    values: np.ndarray
    label: str = ""
    shift: float = 0.0

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        object.__setattr__(self, "values", _readonly(v))

    @property
    def sum(self) -> float:
        return float(self.values.sum())

    def __len__(self) -> int:
        return self.values.shape[0]

    def is_orthogonal(self) -> bool:
        scale = max(float(np.abs(self.values).max(initial=0.0)), 1.0)
        return abs(self.sum) <= ZERO_TOL * len(self) * scale


def _as_array(x) -> np.ndarray:
    if isinstance(x, TestVector):
        return x.values
    return np.asarray(x, dtype=float).reshape(-1)


def build_adjacency(g: Graph) -> np.ndarray:
    M = np.zeros((g.num_vertices, g.num_vertices))
    for u, v, w in g.edges:
        M[u - 1, v - 1] = w
        M[v - 1, u - 1] = w
    return M


def build_degree(g: Graph) -> np.ndarray:
    return np.diag(g.degree_sequence())


def build_laplacian(g: Graph) -> LaplacianMatrix:
    L = build_degree(g) - build_adjacency(g)
    return LaplacianMatrix(_readonly(L))


def quadratic_form(L: LaplacianMatrix | np.ndarray, x) -> float:
    A = L.entries if isinstance(L, LaplacianMatrix) else np.asarray(L, dtype=float)
    v = _as_array(x)
    if A.shape[0] != v.shape[0]:
        raise GraphError(f"dimension mismatch: matrix {A.shape[0]} vs vector {v.shape[0]}")
    return float(v @ A @ v)


def edge_quadratic_form(g: Graph, x) -> float:
    """``sum w_ab (x(a) - x(b))^2`` evaluated edge by edge."""
    v = _as_array(x)
    if v.shape[0] != g.num_vertices:
        raise GraphError(f"dimension mismatch: graph {g.num_vertices} vs vector {v.shape[0]}")
    return float(sum(w * (v[a - 1] - v[b - 1]) ** 2 for a, b, w in g.edges))


def rayleigh_quotient(L: LaplacianMatrix | np.ndarray, x) -> float:
    v = _as_array(x)
    denom = float(v @ v)
    if denom == 0.0:
        raise GraphError("Rayleigh quotient of the zero vector is undefined")
    return quadratic_form(L, v) / denom


def orthogonalize(x, label: str | None = None) -> TestVector:
    """Remove the mean so the result is orthogonal to the all-ones vector."""
    v = _as_array(x)
    scale = float(np.abs(v).max(initial=0.0))
    mean = float(v.mean()) if v.size else 0.0
    if scale == 0.0 or float(np.abs(v - mean).max()) <= ZERO_TOL * scale:
        raise GraphError("vector collapses to zero after removing its mean")
    if abs(v.sum()) <= ZERO_TOL * v.size * scale:
        mean = 0.0
    if label is None:
        label = x.label if isinstance(x, TestVector) else ""
    prior = x.shift if isinstance(x, TestVector) else 0.0
    return TestVector(v - mean, label=label, shift=prior + mean)


# -- edge-list text format ---------------------------------------------------


def _fmt(w: float) -> str:
    # repr is the shortest string that round-trips exactly
    return f"{w:g}" if float(w).is_integer() else repr(float(w))


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.num_vertices} {g.num_edges}"]
    lines += [f"{u} {v} {_fmt(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise GraphError("empty edge list")
    try:
        header = [int(t) for t in rows[0]]
    except ValueError as exc:
        raise GraphError(f"bad header line: {' '.join(rows[0])!r}") from exc
    if len(header) != 2:
        raise GraphError("header must be 'N E'")
    n, e = header
    body = rows[1:]
    if len(body) != e:
        raise GraphError(f"header declares {e} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) not in (2, 3):
            raise GraphError(f"bad edge line: {' '.join(r)!r}")
        try:
            u, v = int(r[0]), int(r[1])
            w = float(r[2]) if len(r) == 3 else 1.0
        except ValueError as exc:
            raise GraphError(f"bad edge line: {' '.join(r)!r}") from exc
        edges.append((u, v, w))
    return Graph(n, tuple(edges))


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f"  {i};" for i in range(1, g.num_vertices + 1)]
    for u, v, w in g.edges:
        attr = "" if w == 1.0 else f" [weight={w:.15g}]"
        out.append(f"  {u} -- {v}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def edge_list(g: Graph) -> list[list[float]]:
    return [[u, v, w] for u, v, w in g.edges]


def graph_from_pairs(num_vertices: int, pairs: Sequence[tuple[int, int]]) -> Graph:
    return Graph(num_vertices, tuple((u, v, 1.0) for u, v in pairs))
