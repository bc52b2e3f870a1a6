"""Cycle covers of cubic graphs: verification, the constructions built from
3-edge-colorings, cores, and 4-tuples of 1-factors, and an exact
shortest-cycle-cover oracle for small cycle spaces.

A cycle is an edge set inducing degree 0 or 2 at every vertex (a disjoint
union of circuits); it is even when all its circuits have even length.  The
length of a cover is the sum of its members' sizes, and ced is the maximum
number of members through a single edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import CubicGraph, EdgeSet
from .matching import PerfectMatching, trace_circuits
from .cores import Core, CoreClassification, classify_core


class CoverConstructionError(ValueError):
    """Preconditions of a cover construction are violated."""


class DimensionCapExceededError(RuntimeError):
    """Cycle-space dimension too large for the exact oracle."""


@dataclass(frozen=True)
class CycleCover:
    """A family of cycles with its statistics and validity verdict."""

    cycles: Tuple[EdgeSet, ...]
    length: int
    ced: int
    even: bool
    count: int
    valid: bool
    problems: Tuple[str, ...] = ()

    def is_double_cover(self) -> bool:
        if not self.cycles:
            return False
        m = self.cycles[0].m
        counts = [0] * m
        for c in self.cycles:
            for i in c.indices():
                counts[i] += 1
        return all(x == 2 for x in counts)


def _is_cycle(G: CubicGraph, edges: EdgeSet) -> bool:
    deg = [0] * G.n
    for i in edges.indices():
        u, v = G.edges[i]
        deg[u] += 1
        deg[v] += 1
    return all(d in (0, 2) for d in deg)


def _is_even_cycle(G: CubicGraph, edges: EdgeSet) -> bool:
    return all(len(c) % 2 == 0 for c in trace_circuits(G, edges))


def verify_cover(
    G: CubicGraph,
    cycles: Sequence[EdgeSet],
    target: Optional[EdgeSet] = None,
) -> CycleCover:
    """Compute all cover statistics; the verdict lists failures precisely.

    target defaults to E(G); pass a core's edge set to verify core covers.
    """
    if target is None:
        target = G.all_edges()
    problems: List[str] = []
    counts = [0] * G.m
    even = True
    for pos, c in enumerate(cycles):
        if not _is_cycle(G, c):
            problems.append(f"member {pos} is not a cycle")
            continue
        if not _is_even_cycle(G, c):
            even = False
        for i in c.indices():
            counts[i] += 1
    covered = EdgeSet.from_indices(G.m, (i for i, x in enumerate(counts) if x))
    missing = target - covered
    if missing:
        problems.append(f"{len(missing)} edges uncovered: {missing.indices()}")
    stray = covered - target
    if stray:
        problems.append(f"cycles leave the target edge set: {stray.indices()}")
    return CycleCover(
        cycles=tuple(cycles),
        length=sum(len(c) for c in cycles),
        ced=max(counts) if counts else 0,
        even=even,
        count=len(cycles),
        valid=not problems,
        problems=tuple(problems),
    )


def canonical_cover(
    G: CubicGraph,
    coloring: Tuple[PerfectMatching, PerfectMatching, PerfectMatching],
) -> CycleCover:
    """The 2-cycle cover {a|b, a|c} of a 3-edge-colored cubic graph.

    The first class is doubled; length is |E| + |a| = 4/3 |E|.
    """
    a, b, c = (pm.edges for pm in coloring)
    if (a & b) or (a & c) or (b & c) or (a | b | c) != G.all_edges():
        raise CoverConstructionError(
            "coloring is not a partition of E(G) into three 1-factors"
        )
    cover = verify_cover(G, [a | b, a | c])
    assert cover.valid and cover.length == G.m + len(a)
    return cover


def cover_from_core(
    G: CubicGraph, core: Core, core_cover: Sequence[EdgeSet]
) -> CycleCover:
    """Extend a cover of the core to a cover of G with two symmetric
    differences of 1-factors.

    Factors are relabeled so the hub factor meets the other two in at least
    2/3 of the doubly-covered non-T edges, which caps the added length at
    4/3 (|E| - k).  The two added cycles are always even.
    """
    checked = verify_cover(G, core_cover, target=core.edge_indices)
    if not checked.valid:
        raise CoverConstructionError(
            f"core_cover invalid: {'; '.join(checked.problems)}"
        )
    f1, f2, f3 = (pm.edges for pm in core.factors)
    t = core.T
    pair_sizes = {
        0: len((f2 & f3) - t),
        1: len((f1 & f3) - t),
        2: len((f1 & f2) - t),
    }
    # hub factor: the one whose two pairs carry the most M2 edges, i.e. the
    # one whose OPPOSITE pair is smallest; first index wins ties
    hub = min(range(3), key=lambda i: (pair_sizes[i], i))
    factors = [f1, f2, f3]
    m_hub = factors[hub]
    others = [factors[i] for i in range(3) if i != hub]
    added = [m_hub ^ others[0], m_hub ^ others[1]]
    cover = verify_cover(G, list(core_cover) + added)
    t_len = checked.length
    bound = 4 * (G.m - core.k) / 3 + t_len
    if not cover.valid or cover.length > bound:
        raise CoverConstructionError(
            f"construction failed: valid={cover.valid} length={cover.length} "
            f"bound={bound}"
        )
    return cover


def _h_circuits(
    h_edges: Sequence[Tuple[int, int]], selected: Sequence[int]
) -> List[List[int]]:
    """Circuits of a 2-regular sub-multigraph of H, as H edge index lists."""
    inc: Dict[int, List[int]] = {}
    for i in selected:
        a, b = h_edges[i]
        inc.setdefault(a, []).append(i)
        inc.setdefault(b, []).append(i)
    if any(len(x) != 2 for x in inc.values()):
        raise CoverConstructionError("H - E* is not 2-regular")
    seen = set()
    circuits: List[List[int]] = []
    for start in selected:
        if start in seen:
            continue
        seen.add(start)
        circuit = [start]
        a0, v = h_edges[start]
        while v != a0:
            nxt = [i for i in inc[v] if i not in seen]
            if not nxt:
                break
            f = min(nxt)
            seen.add(f)
            circuit.append(f)
            a, b = h_edges[f]
            v = b if v == a else a
        circuits.append(circuit)
    return circuits


def bipartite_core_cover(
    core: Core, classification: Optional[CoreClassification] = None
) -> List[EdgeSet]:
    """Even cover of a bipartite core by at most two cycles, of length 2k.

    Circuit components cover themselves.  Subdivision components get the
    lifted 2-cover of the suppressed cubic multigraph H in which the
    triple-intersection class E* is doubled and the remaining even cycle
    H - E* is properly 2-edge-colored (lowest-index H edge of each circuit
    gets color 1).
    """
    cls = classification or classify_core(core)
    if not cls.is_bipartite:
        raise CoverConstructionError("core is not bipartite")
    m = core.graph.m
    side1_bits = 0
    side2_bits = 0
    have_two = False
    for comp in cls.components:
        if comp.kind == "even_circuit":
            side1_bits |= comp.edges.bits
            continue
        have_two = True
        h_edges = comp.h_edges
        h_paths = comp.h_edge_paths
        estar = set(comp.estar_h)
        assert h_edges is not None and h_paths is not None
        rest = [i for i in range(len(h_edges)) if i not in estar]
        # H - E* is 2-regular; trace its circuits and 2-color each by
        # alternation.  Bipartite cores force even circuits here.
        color: Dict[int, int] = {}
        for circuit in _h_circuits(h_edges, rest):
            if len(circuit) % 2 != 0:
                raise CoverConstructionError(
                    "H - E* has an odd circuit; core is not bipartite"
                )
            # color 1 starts at the H edge carrying the lowest core edge index
            anchor = min(
                range(len(circuit)), key=lambda pos: min(h_paths[circuit[pos]])
            )
            for pos in range(len(circuit)):
                idx = circuit[(anchor + pos) % len(circuit)]
                color[idx] = 1 if pos % 2 == 0 else 2
        for i, path in enumerate(h_paths):
            bits = 0
            for e in path:
                bits |= 1 << e
            if i in estar:
                side1_bits |= bits
                side2_bits |= bits
            elif color[i] == 1:
                side1_bits |= bits
            else:
                side2_bits |= bits
    out = []
    if side1_bits or not have_two:
        out.append(EdgeSet(m, side1_bits))
    if have_two:
        out.append(EdgeSet(m, side2_bits))
    if core.is_empty:
        return []
    return out


def four_cover_cycles(
    G: CubicGraph,
    M1: PerfectMatching,
    M2: PerfectMatching,
    M3: PerfectMatching,
    M4: PerfectMatching,
) -> CycleCover:
    """The 4-cycle cover built from four 1-factors with empty intersection.

    Cycle i is (edges of M_i in exactly one factor) | (edges outside M_i in
    exactly two) | (edges of M_i in exactly three) | (edges in none); its
    length accounting gives exactly 4/3 |E| + 4k, where k counts uncovered
    edges.  With k = 0 the cover is even and ced <= 2.
    """
    fs = [M1.edges.bits, M2.edges.bits, M3.edges.bits, M4.edges.bits]
    if fs[0] & fs[1] & fs[2] & fs[3]:
        raise CoverConstructionError("the four factors have a common edge")
    m = G.m
    full = (1 << m) - 1
    level: List[int] = [0] * 4  # level[t-1] = edges in exactly t factors
    for t in (1, 2, 3):
        bits = 0
        for i in range(m):
            cnt = sum((f >> i) & 1 for f in fs)
            if cnt == t:
                bits |= 1 << i
        level[t - 1] = bits
    uncovered = full & ~(fs[0] | fs[1] | fs[2] | fs[3])
    k = uncovered.bit_count()
    cycles = []
    for f in fs:
        bits = (f & level[0]) | (~f & level[1] & full) | (f & level[2]) | uncovered
        cycles.append(EdgeSet(m, bits))
    cover = verify_cover(G, cycles)
    expect = 4 * m // 3 + 4 * k
    if not cover.valid or cover.length != expect:
        raise CoverConstructionError(
            f"four-cover construction failed: valid={cover.valid} "
            f"length={cover.length} expected={expect}"
        )
    return cover


def five_cdc(
    G: CubicGraph,
    M1: PerfectMatching,
    M2: PerfectMatching,
    M3: PerfectMatching,
    M4: PerfectMatching,
) -> CycleCover:
    """5-cycle double cover from four 1-factors covering E(G) (k = 0).

    Adds the 2-factor of singly-covered edges to the k = 0 four-cover; every
    edge then lies in exactly two members.
    """
    fs = [M1.edges.bits, M2.edges.bits, M3.edges.bits, M4.edges.bits]
    union = fs[0] | fs[1] | fs[2] | fs[3]
    if union != (1 << G.m) - 1:
        raise CoverConstructionError("union of the four factors is not E(G)")
    base = four_cover_cycles(G, M1, M2, M3, M4)
    singly = 0
    for i in range(G.m):
        if sum((f >> i) & 1 for f in fs) == 1:
            singly |= 1 << i
    cycles = list(base.cycles) + [EdgeSet(G.m, singly)]
    cover = verify_cover(G, cycles)
    if not cover.valid or not cover.is_double_cover():
        raise CoverConstructionError("5-CDC construction failed")
    return cover


# ---------------------------------------------------------------------------
# Exact shortest-cycle-cover oracle.
# ---------------------------------------------------------------------------


def cycle_space_basis(n: int, edges: Sequence[Tuple[int, int]]) -> List[int]:
    """Fundamental cycles (as edge bitmasks) w.r.t. a BFS spanning forest."""
    from collections import deque

    inc: Dict[int, List[int]] = {}
    for i, (u, v) in enumerate(edges):
        inc.setdefault(u, []).append(i)
        inc.setdefault(v, []).append(i)
    parent_edge: Dict[int, int] = {}
    visited = set()
    tree = set()
    for root in range(n):
        if root in visited or root not in inc:
            continue
        visited.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for f in inc[x]:
                u, v = edges[f]
                y = v if x == u else u
                if y not in visited:
                    visited.add(y)
                    parent_edge[y] = f
                    tree.add(f)
                    queue.append(y)

    def path_to_root(v: int) -> int:
        bits = 0
        while v in parent_edge:
            f = parent_edge[v]
            bits ^= 1 << f
            u, w = edges[f]
            v = w if v == u else u
        return bits

    basis = []
    for i, (u, v) in enumerate(edges):
        if i in tree:
            continue
        basis.append((1 << i) ^ path_to_root(u) ^ path_to_root(v))
    return basis


def scc_exact(
    G: CubicGraph, max_cycles: int = 4, dim_cap: int = 16
) -> CycleCover:
    """Minimum-length cover of E(G) by at most max_cycles cycles, by
    exhaustive search over the cycle space with branch-and-bound.

    Exact, deterministic; raises DimensionCapExceededError when the cycle
    space dimension m - n + (#components) exceeds dim_cap.
    """
    result = scc_exact_edges(G.n, G.edges, max_cycles, dim_cap)
    if result is None:
        raise CoverConstructionError("graph has no cycle cover")
    length, chosen = result
    cycles = [EdgeSet(G.m, bits) for bits in chosen]
    cover = verify_cover(G, cycles)
    assert cover.valid and cover.length == length
    return cover


def scc_exact_edges(
    n: int,
    edges: Sequence[Tuple[int, int]],
    max_cycles: int = 4,
    dim_cap: int = 16,
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Core of scc_exact on a raw edge list; returns (length, cycle bitmasks).

    Works for any loop-free graph whose every edge lies on a circuit (all
    bridgeless graphs); returns None otherwise.
    """
    m = len(edges)
    basis = cycle_space_basis(n, edges)
    dim = len(basis)
    if dim > dim_cap:
        raise DimensionCapExceededError(
            f"cycle space dimension {dim} exceeds cap {dim_cap}"
        )
    full = (1 << m) - 1
    # all nonzero cycle-space members
    vectors = [0] * (1 << dim)
    for s in range(1, 1 << dim):
        low = s & -s
        vectors[s] = vectors[s ^ low] ^ basis[low.bit_length() - 1]
    members = sorted(set(vectors[1:]))
    if not members:
        return (0, ()) if m == 0 else None
    cover_all = 0
    for v in members:
        cover_all |= v
    if cover_all != full:
        return None  # some edge on no cycle (a bridge)
    lengths = {v: v.bit_count() for v in members}
    by_edge: List[List[int]] = [[] for _ in range(m)]
    for v in members:
        for i in range(m):
            if (v >> i) & 1:
                by_edge[i].append(v)
    # deterministic candidate order: greedy-friendly (short overshoot first)
    best_len: Optional[int] = None
    best_choice: Optional[Tuple[int, ...]] = None
    choice: List[int] = []

    def rec(covered: int, length: int, slots: int) -> None:
        nonlocal best_len, best_choice
        if covered == full:
            if best_len is None or length < best_len:
                best_len = length
                best_choice = tuple(choice)
            return
        if slots == 0:
            return
        uncovered = full & ~covered
        if best_len is not None and length + uncovered.bit_count() >= best_len:
            return
        # branching on the lowest uncovered edge makes every cover set
        # reachable in exactly one order, so no dedup is needed
        pivot = (uncovered & -uncovered).bit_length() - 1
        # try low-overshoot members first, to find good incumbents early
        ordered = sorted(
            by_edge[pivot],
            key=lambda v: (lengths[v] - (v & uncovered).bit_count(), v),
        )
        for v in ordered:
            choice.append(v)
            rec(covered | v, length + lengths[v], slots - 1)
            choice.pop()

    rec(0, 0, max_cycles)
    if best_len is None:
        return None
    return best_len, best_choice
