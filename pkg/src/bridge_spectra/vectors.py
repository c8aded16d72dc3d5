"""Explicit test vectors for the bridge families and the upper bounds they certify.

Each constructor reproduces a vector exactly as it is written down for its
family, including any slips in the index ranges.  Vertices that no branch
covers get 0, and branches are applied top-down (the first matching branch
wins).  :func:`certified_upper_bound` mean-centres the vector before taking
its Rayleigh quotient, so the result bounds ``lambda_2`` from above whether or
not the printed vector sums to zero; the removed mean is kept as ``shift``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .families import FamilyError, FamilySpec, is_descendant, subtree, tree_height
from .graph_core import Graph, TestVector, build_laplacian, orthogonalize, rayleigh_quotient

STAR_CASES = (1, 2, 3, 4, 5, 6)
TREE_CASES = (1, 2, 3)


@dataclass(frozen=True)
class CertifiedUpperBound:
    value: float
    vector_label: str
    shift_applied: float
    paper_closed_form: float | None = None


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def dumbbell_vector(n: int, m: int) -> TestVector:
    """Linear ramp along the path, constant ``±(m-1)`` on the cliques."""
    _check(n >= 2 and m >= 2, f"need n >= 2, m >= 2, got n={n}, m={m}")
    N = 2 * n + m - 2
    x = np.empty(N)
    for i in range(1, N + 1):
        if i < n:
            x[i - 1] = m - 1
        elif i < n + m - 1:
            x[i - 1] = 2 * n + m - 1 - 2 * i
        else:
            x[i - 1] = 1 - m
    return TestVector(x, label="dumbbell")


def dumbbell_multi_vector(n: int) -> TestVector:
    """``+1`` on the first block ``1..n``, ``-1`` on the second."""
    _check(n >= 1, f"need n >= 1, got {n}")
    return TestVector(np.r_[np.ones(n), -np.ones(n)], label="two_block")


def star_case(n: int, m: int, attach1: int, attach2: int) -> int:
    """Case number (1-6) for a star bridge, from the parity of ``n`` and which ends are centres."""
    centres = (attach1 == 1) + (attach2 == n + m - 1)
    base = 1 if n % 2 else 4
    return base + (2 - centres)


def star_vector(n: int, m: int, case_id: int, attach1: int | None = None,
                attach2: int | None = None) -> TestVector:
    """Printed vector for a star-bridge case.

    Cases 1-3 (``n`` odd) share one vector and cases 4-6 (``n`` even) share
    another; half-integer range ends are compared exactly.
    """
    _check(case_id in STAR_CASES, f"star case must be 1..6, got {case_id}")
    _check(n >= 2 and m >= 2, f"need n >= 2, m >= 2, got n={n}, m={m}")
    odd = case_id <= 3
    _check(bool(n % 2) == odd, f"case {case_id} needs n {'odd' if odd else 'even'}, got n={n}")
    if attach1 is not None and attach2 is not None:
        got = star_case(n, m, attach1, attach2)
        _check(got == case_id, f"attachments ({attach1}, {attach2}) give case {got}, not {case_id}")
    N = 2 * n + m - 2
    c2 = n + m - 1
    x = np.zeros(N)
    for i in range(1, N + 1):
        if odd:
            if i in (1, c2):
                v = 1
            elif i == n or i == 2 * n or n + 1 <= i <= n + m - 2:
                v = 0
            elif 2 <= i and 2 * i <= n - 1:
                v = 1
            elif n + 1 <= 2 * i and i <= n - 1:
                v = -1
            elif n + m <= i and 2 * i <= 3 * n + 2 * m - 3:
                v = 1
            elif 3 * n + 2 * m - 1 <= 2 * i and i <= 2 * n - 1:
                v = -1
            else:
                v = 0
        else:
            if i in (1, c2):
                v = 1
            elif n + 1 <= i <= n + m - 2:
                v = 0
            elif 2 <= i and 2 * i <= n - 1:
                v = 1
            elif n + 1 <= 2 * i and i <= n:
                v = -1
            elif c2 <= i and 2 * i <= 3 * n + 2 * m - 3:
                v = 1
            elif 3 * n + 2 * m - 1 <= 2 * i and i <= 2 * n:
                v = -1
            else:
                v = 0
        x[i - 1] = v
    return TestVector(x, label=f"star_case{case_id}")


def tree_case(n: int, m: int, attach1: int, attach2: int) -> int:
    roots = (attach1 == 1) + (attach2 == n + m - 1)
    return 3 - roots


def tree_vector(n: int, m: int, case_id: int, attach1: int | None = None,
                attach2: int | None = None) -> TestVector:
    """Printed vector for a tree-bridge case.

    Cases 1 and 2 put ``+1`` on the subtree under local vertex 2 of each tree.
    Case 3 puts ``+1`` on the attachment vertex, its descendants and its
    non-root ancestors; attachments default to local vertex 2 of each tree.
    """
    _check(case_id in TREE_CASES, f"tree case must be 1..3, got {case_id}")
    tree_height(n)
    _check(m >= 2, f"need m >= 2, got {m}")
    r2 = n + m - 1
    N = 2 * n + m - 2
    if case_id == 3:
        attach1 = 2 if attach1 is None else attach1
        attach2 = r2 + 1 if attach2 is None else attach2
    if attach1 is not None and attach2 is not None:
        got = tree_case(n, m, attach1, attach2)
        _check(got == case_id, f"attachments ({attach1}, {attach2}) give case {got}, not {case_id}")
        _check(1 <= attach1 <= n and r2 <= attach2 <= N, "attachment outside its tree")
    x = -np.ones(N)
    x[n:r2 - 1] = 0.0
    if case_id in (1, 2):
        for off in (0, r2 - 1):
            x[[off + i - 1 for i in subtree(2, n)]] = 1.0
    else:
        for off, a in ((0, attach1), (r2 - 1, attach2 - (r2 - 1))):
            for i in range(1, n + 1):
                if i == a or (i > 2 and (is_descendant(i, a) or is_descendant(a, i))):
                    x[off + i - 1] = 1.0
    x[0] = 0.0
    x[r2 - 1] = 0.0
    return TestVector(x, label=f"tree_case{case_id}")


def tree_multi_vector(n: int) -> TestVector:
    """Zero at both roots, ``+1`` under local vertex 2, ``-1`` under local vertex 3."""
    tree_height(n)
    half = -np.ones(n)
    half[0] = 0.0
    if n > 1:
        half[[i - 1 for i in subtree(2, n)]] = 1.0
    return TestVector(np.r_[half, half], label="tree_multi")


def tree_chain_vector(n: int, l: int) -> TestVector:
    tree_height(n)
    _check(l >= 2, f"need l >= 2, got {l}")
    block = tree_multi_vector(n).values[:n]
    return TestVector(np.tile(block, l), label="tree_chain")


def chain_split_vector(n: int, l: int) -> TestVector:
    """``+1`` on the first ``floor(l/2)`` copies, ``-1`` on the last, 0 on a middle copy."""
    _check(n >= 1 and l >= 2, f"need n >= 1, l >= 2, got n={n}, l={l}")
    half = l // 2
    x = np.zeros(n * l)
    x[: half * n] = 1.0
    x[(l - half) * n:] = -1.0
    return TestVector(x, label="chain_split")


def certified_upper_bound(g: Graph, x, paper_closed_form: float | None = None) -> CertifiedUpperBound:
    """Rayleigh quotient of the mean-centred vector: an upper bound on ``lambda_2(g)``."""
    xo = orthogonalize(x)
    value = rayleigh_quotient(build_laplacian(g), xo)
    return CertifiedUpperBound(value, xo.label, xo.shift, paper_closed_form)


def family_vector(spec: FamilySpec) -> tuple[TestVector, float | None]:
    """Test vector for a family instance plus the closed form its derivation reports."""
    f, n, m, k, l = spec.family, spec.n, spec.m, spec.k, spec.l
    a1, a2 = spec.attachments if spec.attachments else (None, None)
    if f == "dumbbell":
        return dumbbell_vector(n, m), 12 / (6 * (m - 1) * (n - 1) + m * (m - 1))
    if f == "dumbbell_multi":
        return dumbbell_multi_vector(n), 2 * k / n
    if f == "general_bridge2k":
        return dumbbell_multi_vector(spec.block_size()), 2 * k / spec.block_size()
    if f == "star_bridge":
        a1 = 1 if a1 is None else a1
        a2 = n + m - 1 if a2 is None else a2
        case = star_case(n, m, a1, a2)
        closed = (4 * n + 2) / (2 * n + m - 4) if case == 4 else (4 * n - 6) / (2 * n + m - 4)
        return star_vector(n, m, case, a1, a2), closed
    if f == "tree_bridge":
        a1 = 1 if a1 is None else a1
        a2 = n + m - 1 if a2 is None else a2
        case = tree_case(n, m, a1, a2)
        closed = 5 / (2 * (n - 1)) if case == 2 else 2 / (n - 1)
        return tree_vector(n, m, case, a1, a2), closed
    if f == "tree_multi":
        return tree_multi_vector(n), None
    if f == "tree_chain":
        return tree_chain_vector(n, l), 2 / (n - 1)
    if f == "bridge_chain":
        return chain_split_vector(spec.block_size(), l), None
    raise FamilyError(f"no test vector is defined for family {f!r}")
