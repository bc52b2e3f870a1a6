"""Exact k-cover computations: mu_k, Fan-Raspaud triples, Berge covers,
and Fulkerson colorings.

mu_k(G) is |E(G)| minus the maximum number of edges covered by a multiset of
k 1-factors.  All searches run over the complete enumerated perfect-matching
list and are therefore exact; the first witness in lexicographic
factor-index order wins every tie.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .graphs import CubicGraph, EdgeSet
from .matching import (
    DEFAULT_PM_CAP,
    PerfectMatching,
    enumerate_perfect_matchings,
)


class NoPerfectMatchingError(ValueError):
    """Graph has no perfect matching; mu_k is undefined."""


@dataclass(frozen=True)
class CoverWitness:
    """A multiset of k 1-factors together with its union accounting."""

    k: int
    factor_indices: Tuple[int, ...]
    factors: Tuple[PerfectMatching, ...]
    union: EdgeSet
    uncovered: EdgeSet
    mu: int
    optimal: bool


@dataclass(frozen=True)
class FulkersonWitness:
    """Six 1-factors with every edge in exactly two of them."""

    factor_indices: Tuple[int, ...]
    factors: Tuple[PerfectMatching, ...]


def _pm_list(
    G: CubicGraph, pms: Optional[Sequence[PerfectMatching]], cap: int
) -> List[PerfectMatching]:
    if pms is None:
        pms = enumerate_perfect_matchings(G, cap=cap)
    return list(pms)


def mu_k(
    G: CubicGraph,
    k: int,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Tuple[int, CoverWitness]:
    """Exact mu_k via branch and bound over nondecreasing factor-index tuples.

    Repetition is allowed (it never improves the union), so the search is
    total whenever G has at least one perfect matching and 1 <= k <= 6.
    """
    if not 1 <= k <= 6:
        raise ValueError("k must be between 1 and 6")
    pms = _pm_list(G, pms, cap)
    if not pms:
        raise NoPerfectMatchingError("graph has no perfect matching")
    m = G.m
    half = G.n // 2
    masks = [pm.edges.bits for pm in pms]
    p = len(masks)
    suffix_or = [0] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix_or[i] = suffix_or[i + 1] | masks[i]

    best_pop = -1
    best_tuple: Optional[Tuple[int, ...]] = None
    chosen: List[int] = []

    def rec(start: int, union: int) -> None:
        nonlocal best_pop, best_tuple
        depth = len(chosen)
        if depth == k:
            pop = union.bit_count()
            if pop > best_pop:
                best_pop = pop
                best_tuple = tuple(chosen)
            return
        remaining = k - depth
        bound = min(
            union.bit_count() + remaining * half,
            (union | suffix_or[start]).bit_count(),
        )
        if bound <= best_pop:
            return
        for i in range(start, p):
            if best_pop == m:
                return
            chosen.append(i)
            rec(i, union | masks[i])
            chosen.pop()
            if (union | suffix_or[i + 1]).bit_count() <= best_pop:
                break

    rec(0, 0)
    assert best_tuple is not None
    union_bits = 0
    for i in best_tuple:
        union_bits |= masks[i]
    union = EdgeSet(m, union_bits)
    uncovered = G.all_edges() - union
    witness = CoverWitness(
        k=k,
        factor_indices=best_tuple,
        factors=tuple(pms[i] for i in best_tuple),
        union=union,
        uncovered=uncovered,
        mu=len(uncovered),
        optimal=True,
    )
    return witness.mu, witness


def fan_raspaud_witness(
    G: CubicGraph,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Optional[Tuple[PerfectMatching, PerfectMatching, PerfectMatching]]:
    """First PM triple (lexicographic indices) with empty triple intersection."""
    found = fan_raspaud_indices(G, pms=pms, cap=cap)
    if found is None:
        return None
    pms = _pm_list(G, pms, cap)
    i, j, l = found
    return pms[i], pms[j], pms[l]


def fan_raspaud_indices(
    G: CubicGraph,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Optional[Tuple[int, int, int]]:
    pms = _pm_list(G, pms, cap)
    masks = [pm.edges.bits for pm in pms]
    p = len(masks)
    for i in range(p):
        for j in range(i + 1, p):
            ij = masks[i] & masks[j]
            if not ij:
                for l in range(j + 1, p):
                    return i, j, l
                continue
            for l in range(j + 1, p):
                if ij & masks[l] == 0:
                    return i, j, l
    return None


def berge_check(
    G: CubicGraph,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> bool:
    """True iff five 1-factors cover E(G) (mu_5 = 0)."""
    mu, _ = mu_k(G, 5, pms=pms, cap=cap)
    return mu == 0


def fulkerson_witness(
    G: CubicGraph,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Optional[FulkersonWitness]:
    """Exact search for six 1-factors covering every edge exactly twice.

    Depth-first over nondecreasing index tuples (killing the 6! symmetric
    duplicates) with per-edge count <= 2 pruning; exhausts the space before
    returning None.
    """
    pms = _pm_list(G, pms, cap)
    masks = [pm.edges.bits for pm in pms]
    p = len(masks)
    full = (1 << G.m) - 1
    suffix_or = [0] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix_or[i] = suffix_or[i + 1] | masks[i]
    chosen: List[int] = []

    def rec(start: int, once: int, twice: int) -> Optional[Tuple[int, ...]]:
        depth = len(chosen)
        if depth == 6:
            return tuple(chosen) if twice == full else None
        avail = suffix_or[start]
        # every not-yet-saturated edge still needs a factor from the suffix
        if (full & ~twice) & ~avail:
            return None
        for i in range(start, p):
            pm = masks[i]
            if pm & twice:
                continue
            chosen.append(i)
            got = rec(i, once ^ pm, twice | (once & pm))
            chosen.pop()
            if got is not None:
                return got
        return None

    found = rec(0, 0, 0)
    if found is None:
        return None
    return FulkersonWitness(
        factor_indices=found, factors=tuple(pms[i] for i in found)
    )


def verify_fulkerson(G: CubicGraph, witness: FulkersonWitness) -> bool:
    counts = [0] * G.m
    for pm in witness.factors:
        for i in pm.edges.indices():
            counts[i] += 1
    return len(witness.factors) == 6 and all(c == 2 for c in counts)


def matchings_from_circuit_avoiding(
    G: CubicGraph, v: int
) -> Optional[List[PerfectMatching]]:
    """The three 1-factors induced by a hamiltonian circuit C of G - v.

    For each edge vw of G, C - w is a path of even order with a unique
    perfect matching; together with vw it is a 1-factor of G.  Returns None
    when G - v is not hamiltonian.
    """
    from .graphs import hamiltonian_circuit_avoiding

    circuit = hamiltonian_circuit_avoiding(G, v)
    if circuit is None:
        return None
    # circuit as a cyclic vertex sequence plus the G edge index of each step
    idx_of: dict = {}
    for i, (a, b) in enumerate(G.edges):
        idx_of.setdefault((min(a, b), max(a, b)), []).append(i)
    a0, b0 = circuit[0]
    verts = [a0 if a0 not in circuit[1] else b0]
    step_idx: List[int] = []
    used: dict = {}
    for a, b in circuit:
        key = (min(a, b), max(a, b))
        slot = used.get(key, 0)
        step_idx.append(idx_of[key][slot])
        used[key] = slot + 1
        verts.append(b if verts[-1] == a else a)
    verts = verts[:-1]  # closed walk: drop the repeated start vertex
    L = len(verts)  # n - 1, odd
    out: List[PerfectMatching] = []
    for e_v in G.incidence[v]:
        w = G.other_end(e_v, v)
        p = verts.index(w)
        # unique matching of the path C - w: steps p+1, p+3, ..., p+L-2
        chosen = [e_v] + [step_idx[(p + t) % L] for t in range(1, L - 1, 2)]
        out.append(PerfectMatching(G.edge_set(chosen)))
    return out


def pair_sharing_one_edge(
    G: CubicGraph,
    v: int,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Optional[Tuple[PerfectMatching, PerfectMatching]]:
    """Two 1-factors with |M1 & M2| = 1, when G - v is hamiltonian.

    Tries the three circuit-induced 1-factors first; if none of their pairs
    shares exactly one edge, falls back to an exhaustive scan of the full
    perfect-matching list.
    """
    from_circuit = matchings_from_circuit_avoiding(G, v)
    candidates: List[PerfectMatching] = list(from_circuit or [])
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if len(candidates[i].edges & candidates[j].edges) == 1:
                return candidates[i], candidates[j]
    pms = _pm_list(G, pms, cap)
    for i in range(len(pms)):
        for j in range(i + 1, len(pms)):
            if len(pms[i].edges & pms[j].edges) == 1:
                return pms[i], pms[j]
    return None
