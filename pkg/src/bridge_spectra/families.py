"""Constructors for the bridge-graph families and their building blocks.

Labelling follows the conventions used when the test vectors are written
down, so that a vector defined on labels can be applied to the graph as is:

* two-block path families (``dumbbell``, ``star_bridge``, ``tree_bridge``)
  put block 1 on ``1..n``, the interior of the connecting path on
  ``n+1..n+m-2`` and block 2 on ``n+m-1..2n+m-2``;
* two-block multi-edge families put block 2 on ``n+1..2n``;
* chain families put copy ``j`` on ``(j-1)n+1..jn``.

Binary trees use heap (BFS) labelling: the children of local vertex ``i`` are
``2i`` and ``2i+1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph_core import Graph, GraphError, edge_list, union

FAMILIES = (
    "dumbbell",
    "dumbbell_multi",
    "star_bridge",
    "tree_bridge",
    "tree_multi",
    "tree_chain",
    "bridge_chain",
    "general_bridge2k",
    "complete",
    "path",
    "star",
    "full_binary_tree",
)


class FamilyError(ValueError):
    """Parameters outside a family's domain."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def tree_height(n: int) -> int:
    """``h`` with ``n == 2**h - 1``; raises if no such integer exists."""
    _require(isinstance(n, (int, np.integer)) and n >= 1 and ((n + 1) & n) == 0,
             f"binary tree size must be 2^h - 1, got {n}")
    return int(n + 1).bit_length() - 1


# -- basic graphs ------------------------------------------------------------


def _clique_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]]


def _tree_edges(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + c) for i in range(1, n + 1) for c in (2 * i, 2 * i + 1) if c <= n]


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple(_clique_edges(range(1, n + 1))))


def path(m: int) -> Graph:
    _require(m >= 1, f"path needs m >= 1, got {m}")
    return Graph(m, tuple((i, i + 1) for i in range(1, m)))


def star(n: int) -> Graph:
    """``K_{1,n-1}`` with centre 1."""
    _require(n >= 1, f"star needs n >= 1, got {n}")
    return Graph(n, tuple((1, i) for i in range(2, n + 1)))


def full_binary_tree(h: int) -> Graph:
    _require(h >= 1, f"tree height must be >= 1, got {h}")
    n = 2**h - 1
    return Graph(n, tuple(_tree_edges(n)))


def is_descendant(i: int, j: int) -> bool:
    """True if heap label ``i`` lies strictly below ``j``."""
    while i > j:
        i //= 2
        if i == j:
            return True
    return False


def subtree(root: int, n: int) -> list[int]:
    """Heap labels of ``root`` and all its descendants in a tree of size ``n``."""
    out, frontier = [], [root]
    while frontier:
        out.extend(frontier)
        frontier = [c for v in frontier for c in (2 * v, 2 * v + 1) if c <= n]
    return sorted(out)


# -- two blocks joined by a path ---------------------------------------------


def _bridge_path(n: int, m: int, a1: int, a2: int) -> list[tuple[int, int]]:
    seq = [a1, *range(n + 1, n + m - 1), a2]
    return list(zip(seq[:-1], seq[1:]))


def dumbbell(n: int, m: int) -> Graph:
    """Two copies of ``K_n`` joined by a path on ``m`` vertices."""
    if m == 1:
        raise FamilyError("dumbbell with m=1 has no consistent vertex count; "
                          "use dumbbell_multi(n, 1) for a single bridging edge")
    _require(n >= 2 and m >= 2, f"dumbbell needs n >= 2, m >= 2, got n={n}, m={m}")
    N = 2 * n + m - 2
    k1 = _clique_edges(range(1, n + 1))
    k2 = _clique_edges(range(n + m - 1, N + 1))
    p = [(i, i + 1) for i in range(n, n + m - 1)]
    return Graph(N, tuple(k1 + p + k2))


def star_bridge(n: int, m: int, attach1: int = 1, attach2: int | None = None) -> Graph:
    """Two stars (centres ``1`` and ``n+m-1``) joined by a path on ``m`` vertices."""
    _require(n >= 2 and m >= 2, f"star_bridge needs n >= 2, m >= 2, got n={n}, m={m}")
    N = 2 * n + m - 2
    c2 = n + m - 1
    if attach2 is None:
        attach2 = c2
    _require(1 <= attach1 <= n, f"attach1={attach1} outside first star 1..{n}")
    _require(c2 <= attach2 <= N, f"attach2={attach2} outside second star {c2}..{N}")
    s1 = [(1, i) for i in range(2, n + 1)]
    s2 = [(c2, i) for i in range(c2 + 1, N + 1)]
    return Graph(N, tuple(s1 + s2 + _bridge_path(n, m, attach1, attach2)))


def tree_bridge(n: int, m: int, attach1: int = 1, attach2: int | None = None) -> Graph:
    """Two full binary trees (roots ``1`` and ``n+m-1``) joined by a path on ``m`` vertices."""
    tree_height(n)
    _require(m >= 2, f"tree_bridge needs m >= 2, got {m}")
    N = 2 * n + m - 2
    r2 = n + m - 1
    if attach2 is None:
        attach2 = r2
    _require(1 <= attach1 <= n, f"attach1={attach1} outside first tree 1..{n}")
    _require(r2 <= attach2 <= N, f"attach2={attach2} outside second tree {r2}..{N}")
    t1 = _tree_edges(n)
    t2 = _tree_edges(n, offset=r2 - 1)
    return Graph(N, tuple(t1 + t2 + _bridge_path(n, m, attach1, attach2)))


# -- two blocks joined by k edges ---------------------------------------------


def mirror_pairing(n: int, k: int) -> list[tuple[int, int]]:
    """``(n-i+1, n+i)`` for ``i = 1..k``; the first pair is ``(n, n+1)``."""
    return [(n - i + 1, n + i) for i in range(1, k + 1)]


def identity_pairing(n: int, k: int) -> list[tuple[int, int]]:
    """``(i, n+i)`` for ``i = 1..k``; joins the tree roots first."""
    return [(i, n + i) for i in range(1, k + 1)]


def _check_pairing(n: int, k: int, pairing) -> list[tuple[int, int]]:
    pairs = [(int(u), int(v)) for u, v in pairing]
    _require(len(pairs) == k, f"pairing has {len(pairs)} pairs, expected k={k}")
    for u, v in pairs:
        _require(1 <= u <= n and n + 1 <= v <= 2 * n,
                 f"cross pair ({u}, {v}) must join 1..{n} to {n + 1}..{2 * n}")
    _require(len({u for u, _ in pairs}) == k, "repeated endpoint in first block")
    _require(len({v for _, v in pairs}) == k, "repeated endpoint in second block")
    return pairs


def _two_block(base: Graph, k: int, pairing) -> Graph:
    n = base.num_vertices
    _require(1 <= k <= n, f"need 1 <= k <= n, got k={k}, n={n}")
    pairs = _check_pairing(n, k, pairing)
    return union(2 * n, base, base.relabel(n, 2 * n).edges, [(u, v, 1.0) for u, v in pairs])


def dumbbell_multi(n: int, k: int, pairing=None) -> Graph:
    """Two copies of ``K_n`` joined by ``k`` vertex-disjoint edges."""
    _require(n >= 1, f"dumbbell_multi needs n >= 1, got {n}")
    _require(1 <= k <= n, f"dumbbell_multi needs 1 <= k <= n, got k={k}, n={n}")
    return _two_block(complete(n), k, pairing or mirror_pairing(n, k))


def tree_multi(n: int, k: int, pairing=None) -> Graph:
    """Two full binary trees on ``1..n`` and ``n+1..2n`` joined by ``k`` edges."""
    h = tree_height(n)
    _require(1 <= k <= n, f"tree_multi needs 1 <= k <= n, got k={k}, n={n}")
    return _two_block(full_binary_tree(h), k, pairing or identity_pairing(n, k))


def general_bridge2k(base: Graph, k: int, pairing=None) -> Graph:
    """Two copies of a connected ``base`` joined by ``k`` edges."""
    _require(base.is_connected(), "base graph must be connected")
    return _two_block(base, k, pairing or mirror_pairing(base.num_vertices, k))


# -- chains -------------------------------------------------------------------


def tree_chain(n: int, l: int) -> Graph:
    """``l`` full binary trees whose roots ``(j-1)n+1`` form a path."""
    tree_height(n)
    _require(l >= 2, f"tree_chain needs l >= 2, got {l}")
    edges = [e for j in range(l) for e in _tree_edges(n, offset=j * n)]
    edges += [(j * n + 1, (j + 1) * n + 1) for j in range(l - 1)]
    return Graph(n * l, tuple(edges))


def chain_bridges(n: int, l: int, out_v: int, in_v: int) -> list[tuple[int, int]]:
    """Edges joining copy ``j``'s ``out_v`` to copy ``j+1``'s ``in_v``."""
    return [(j * n + out_v, (j + 1) * n + in_v) for j in range(l - 1)]


def bridge_chain(base: Graph, l: int, out_v: int | None = None, in_v: int = 1) -> Graph:
    """``l`` copies of a connected ``base`` joined in a chain by single edges.

    Defaults ``out_v = n``, ``in_v = 1`` make the first bridge ``(n, n+1)``.
    """
    n = base.num_vertices
    _require(base.is_connected(), "base graph must be connected")
    _require(l >= 2, f"bridge_chain needs l >= 2, got {l}")
    if out_v is None:
        out_v = n
    _require(1 <= out_v <= n and 1 <= in_v <= n, f"out_v/in_v must lie in 1..{n}")
    parts = [base.relabel(j * n, n * l).edges for j in range(l)]
    bridges = [(u, v, 1.0) for u, v in chain_bridges(n, l, out_v, in_v)]
    return union(n * l, *parts, bridges)


def random_connected(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Erdos-Renyi ``G(n, p)`` resampled until connected."""
    _require(n >= 1, f"random base needs n >= 1, got {n}")
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    while True:
        keep = rng.random(len(pairs)) < p
        g = Graph(n, tuple(e for e, k in zip(pairs, keep) if k))
        if g.is_connected():
            return g


# -- specs --------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus the parameters needed to build one instance."""

    family: str
    n: int | None = None
    m: int | None = None
    k: int | None = None
    l: int | None = None
    attachments: tuple[int, int] | None = None
    pairing: tuple[tuple[int, int], ...] | None = None
    base: Graph | None = field(default=None, compare=False)
    out_v: int | None = None
    in_v: int | None = None

    def __post_init__(self):
        _require(self.family in FAMILIES, f"unknown family {self.family!r}")

    def params(self) -> dict:
        d = {key: getattr(self, key) for key in ("n", "m", "k", "l") if getattr(self, key) is not None}
        if self.attachments is not None:
            d["attach1"], d["attach2"] = self.attachments
        if self.pairing is not None:
            d["pairing"] = [list(p) for p in self.pairing]
        if self.out_v is not None:
            d["out_v"] = self.out_v
        if self.in_v is not None:
            d["in_v"] = self.in_v
        return d

    def block_size(self) -> int:
        if self.family in ("bridge_chain", "general_bridge2k"):
            _require(self.base is not None, f"{self.family} needs a base graph")
            return self.base.num_vertices
        _require(self.n is not None, f"{self.family} needs n")
        return self.n

    def build(self) -> Graph:
        f = self.family
        a1, a2 = self.attachments if self.attachments else (1, None)
        if f == "complete":
            return complete(self.n)
        if f == "path":
            return path(self.m)
        if f == "star":
            return star(self.n)
        if f == "full_binary_tree":
            return full_binary_tree(tree_height(self.n))
        if f == "dumbbell":
            return dumbbell(self.n, self.m)
        if f == "dumbbell_multi":
            return dumbbell_multi(self.n, self.k, self.pairing)
        if f == "star_bridge":
            return star_bridge(self.n, self.m, a1, a2)
        if f == "tree_bridge":
            return tree_bridge(self.n, self.m, a1, a2)
        if f == "tree_multi":
            return tree_multi(self.n, self.k, self.pairing)
        if f == "tree_chain":
            return tree_chain(self.n, self.l)
        if f == "bridge_chain":
            _require(self.base is not None, "bridge_chain needs a base graph")
            return bridge_chain(self.base, self.l, self.out_v, self.in_v or 1)
        _require(self.base is not None, "general_bridge2k needs a base graph")
        return general_bridge2k(self.base, self.k, self.pairing)


def to_json(g: Graph, spec: FamilySpec | None = None) -> str:
    obj = {
        "n": g.num_vertices,
        "edges": edge_list(g),
        "family": spec.family if spec else None,
        "params": spec.params() if spec else {},
    }
    if spec is not None and spec.base is not None:
        obj["params"]["base"] = {"n": spec.base.num_vertices, "edges": edge_list(spec.base)}
    return json.dumps(obj, sort_keys=True) + "\n"


def from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
        return Graph(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph JSON: {exc}") from exc
