"""Perfect matchings, edge colorings, 2-factors, and oddness of cubic graphs.

All searches are exact backtracking with deterministic branch order (lowest
edge index first), so witnesses are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .graphs import CubicGraph, EdgeSet

DEFAULT_PM_CAP = 1_000_000


class PMCapExceededError(RuntimeError):
    """More perfect matchings than the configured cap; never truncated."""


class NoTwoFactorError(ValueError):
    """Graph has no 2-factor (equivalently, no perfect matching)."""


@dataclass(frozen=True)
class PerfectMatching:
    """A 1-factor: n/2 edges covering every vertex exactly once."""

    edges: EdgeSet

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TwoFactor:
    """Complement of a perfect matching; circuit lengths sum to n."""

    edges: EdgeSet
    circuits: Tuple[int, ...]


def is_perfect_matching(G: CubicGraph, edges: EdgeSet) -> bool:
    if edges.m != G.m:
        return False
    covered = 0
    for i in edges.indices():
        u, v = G.edges[i]
        mask = (1 << u) | (1 << v)
        if covered & mask:
            return False
        covered |= mask
    return covered == (1 << G.n) - 1


def enumerate_perfect_matchings(
    G: CubicGraph, cap: int = DEFAULT_PM_CAP
) -> List[PerfectMatching]:
    """All perfect matchings, in lexicographic edge-index order.

    Branches on the lowest-indexed uncovered vertex and tries its incident
    edges in index order.  Raises PMCapExceededError rather than returning a
    silently truncated list.
    """
    n, edges, incidence = G.n, G.edges, G.incidence
    full = (1 << n) - 1
    out: List[PerfectMatching] = []
    chosen: List[int] = []

    def rec(covered: int) -> None:
        if covered == full:
            if len(out) >= cap:
                raise PMCapExceededError(
                    f"more than {cap} perfect matchings"
                )
            out.append(PerfectMatching(G.edge_set(chosen)))
            return
        free = (~covered) & full
        v = (free & -free).bit_length() - 1
        for f in incidence[v]:
            a, b = edges[f]
            w = b if v == a else a
            if covered & (1 << w):
                continue
            chosen.append(f)
            rec(covered | (1 << v) | (1 << w))
            chosen.pop()

    rec(0)
    return out


def complement_two_factor(G: CubicGraph, pm: PerfectMatching) -> TwoFactor:
    rest = G.all_edges() - pm.edges
    circuits = tuple(len(c) for c in trace_circuits(G, rest))
    return TwoFactor(rest, circuits)


def trace_circuits(G: CubicGraph, cycle: EdgeSet) -> List[List[int]]:
    """Split a cycle (edge set with all degrees 0 or 2) into circuits.

    Each circuit is a list of edge indices in traversal order, starting from
    the lowest unvisited index; ties at a vertex break lowest-index-first.
    """
    member = [False] * G.m
    for i in cycle.indices():
        member[i] = True
    seen = [False] * G.m
    circuits: List[List[int]] = []
    for start in cycle.indices():
        if seen[start]:
            continue
        circuit = [start]
        seen[start] = True
        u0, v = G.edges[start]
        prev = start
        while v != u0:
            for f in G.incidence[v]:
                if member[f] and f != prev and not seen[f]:
                    circuit.append(f)
                    seen[f] = True
                    v = G.other_end(f, v)
                    prev = f
                    break
            else:  # pragma: no cover - guarded by cycle validity
                raise ValueError("edge set is not a cycle")
        circuits.append(circuit)
    return circuits


def _edge_order_bfs(G: CubicGraph) -> List[int]:
    """Edge ordering where each edge touches an earlier one when possible."""
    order: List[int] = []
    placed = [False] * G.m
    seen_vertex = [False] * G.n
    for root in range(G.n):
        if seen_vertex[root]:
            continue
        seen_vertex[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for f in G.incidence[v]:
                if placed[f]:
                    continue
                placed[f] = True
                order.append(f)
                w = G.other_end(f, v)
                if not seen_vertex[w]:
                    seen_vertex[w] = True
                    queue.append(w)
    return order


def is_three_edge_colorable(
    G: CubicGraph,
) -> Tuple[bool, Optional[Tuple[PerfectMatching, PerfectMatching, PerfectMatching]]]:
    """Exact proper 3-edge-coloring search.

    Returns (True, (M_a, M_b, M_c)) with the three color classes as disjoint
    perfect matchings partitioning E(G), or (False, None).
    """
    order = _edge_order_bfs(G)
    m = G.m
    color = [-1] * m
    used_at = [0] * G.n  # bitmask of colors present at each vertex

    def rec(pos: int, max_used: int) -> bool:
        if pos == m:
            return True
        f = order[pos]
        u, v = G.edges[f]
        forbidden = used_at[u] | used_at[v]
        # interchangeable colors: allow a fresh color only in canonical order
        limit = min(max_used + 1, 2)
        for c in range(limit + 1):
            bit = 1 << c
            if forbidden & bit:
                continue
            color[f] = c
            used_at[u] |= bit
            used_at[v] |= bit
            if rec(pos + 1, max(max_used, c)):
                return True
            used_at[u] &= ~bit
            used_at[v] &= ~bit
            color[f] = -1
        return False

    if not rec(0, -1):
        return False, None
    classes = tuple(
        PerfectMatching(G.edge_set(i for i in range(m) if color[i] == c))
        for c in range(3)
    )
    return True, classes


def oddness(
    G: CubicGraph,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> int:
    """Minimum number of odd circuits over all 2-factors (exact, full scan)."""
    if pms is None:
        pms = enumerate_perfect_matchings(G, cap=cap)
    if not pms:
        raise NoTwoFactorError("graph has no 2-factor")
    best = None
    for pm in pms:
        odd = sum(1 for c in complement_two_factor(G, pm).circuits if c % 2)
        if best is None or odd < best:
            best = odd
            if best == 0:
                break
    return best


def exists_4ec_with_class_of_size(G: CubicGraph, s: int) -> bool:
    """Is there a proper 4-edge-coloring with a color class of exactly s edges?

    Color 3 is pinned as the counted class; colors 0..2 are canonicalized
    (a fresh one is introduced only in increasing order), which loses no
    colorings up to class relabeling.
    """
    order = _edge_order_bfs(G)
    m = G.m
    used_at = [0] * G.n

    def rec(pos: int, max_used: int, count3: int) -> bool:
        if count3 > s or count3 + (m - pos) < s:
            return False
        if pos == m:
            return count3 == s
        f = order[pos]
        u, v = G.edges[f]
        forbidden = used_at[u] | used_at[v]
        limit = min(max_used + 1, 2)
        for c in list(range(limit + 1)) + [3]:
            bit = 1 << c
            if forbidden & bit:
                continue
            used_at[u] |= bit
            used_at[v] |= bit
            ok = rec(pos + 1, max(max_used, c) if c < 3 else max_used,
                     count3 + (1 if c == 3 else 0))
            used_at[u] &= ~bit
            used_at[v] &= ~bit
            if ok:
                return True
        return False

    return rec(0, -1, 0)
