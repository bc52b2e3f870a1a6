import itertools
import random

import pytest

from factorcover.graphs import CubicGraph
from factorcover.matching import (
    PMCapExceededError,
    complement_two_factor,
    enumerate_perfect_matchings,
    exists_4ec_with_class_of_size,
    is_perfect_matching,
    is_three_edge_colorable,
    oddness,
    trace_circuits,
)


def pm_oracle(G: CubicGraph):
    """All perfect matchings by brute force over edge-index subsets."""
    out = []
    for combo in itertools.combinations(range(G.m), G.n // 2):
        seen = set()
        for i in combo:
            seen.update(G.edges[i])
        if len(seen) == G.n:
            out.append(frozenset(combo))
    return out


def test_enumeration_matches_brute_force(corpus):
    rng = random.Random(3)
    small = [(n, G) for n, G in corpus if G.n <= 10]
    for name, G in rng.sample(small, 10):
        pms = enumerate_perfect_matchings(G)
        assert {frozenset(p.edges.indices()) for p in pms} == set(
            pm_oracle(G)), name
        assert all(is_perfect_matching(G, p.edges) for p in pms)


def order_oracle(G: CubicGraph):
    """The documented order: branch on the lowest uncovered vertex, try its
    incident edges in index order."""
    out = []

    def rec(covered, chosen):
        if len(covered) == G.n:
            out.append(tuple(sorted(chosen)))
            return
        v = min(u for u in range(G.n) if u not in covered)
        for i in G.incidence[v]:
            u, w = G.edges[i]
            if u in covered or w in covered:
                continue
            rec(covered | {u, w}, chosen + [i])

    rec(frozenset(), [])
    return out


def test_enumeration_order_is_the_documented_one(petersen, k33):
    for G in (petersen, k33):
        pms = enumerate_perfect_matchings(G)
        keys = [tuple(p.edges.indices()) for p in pms]
        assert keys == order_oracle(G)
        assert keys == [tuple(p.edges.indices())
                        for p in enumerate_perfect_matchings(G)]
    assert len(enumerate_perfect_matchings(petersen)) == 6


def test_known_matching_counts(k4, k33, theta):
    assert len(enumerate_perfect_matchings(k4)) == 3
    assert len(enumerate_perfect_matchings(theta)) == 3
    assert len(enumerate_perfect_matchings(k33)) == 6  # 3x3 permanent


def test_cap_is_enforced(petersen):
    with pytest.raises(PMCapExceededError):
        enumerate_perfect_matchings(petersen, cap=5)


def test_complement_two_factor(petersen):
    for pm in enumerate_perfect_matchings(petersen):
        tf = complement_two_factor(petersen, pm)
        assert sum(tf.circuits) == petersen.n
        assert tf.edges == petersen.all_edges() - pm.edges


def test_trace_circuits(theta):
    circuits = trace_circuits(theta, theta.edge_set([0, 1]))
    assert circuits == [[0, 1]]  # one 2-circuit through the parallel pair


def coloring_oracle(G: CubicGraph) -> bool:
    """3-edge-colorable iff some perfect matching has an even complement."""
    return any(
        all(c % 2 == 0 for c in complement_two_factor(G, pm).circuits)
        for pm in enumerate_perfect_matchings(G)
    )


def test_three_edge_colorable_against_oracle(corpus):
    rng = random.Random(5)
    for name, G in rng.sample(corpus, 80):
        verdict, classes = is_three_edge_colorable(G)
        assert verdict == coloring_oracle(G), name
        if verdict:
            a, b, c = (cls.edges for cls in classes)
            assert a.isdisjoint(b) and a.isdisjoint(c) and b.isdisjoint(c)
            assert (a | b | c) == G.all_edges()


def test_known_colorability(petersen, k4, j5):
    assert is_three_edge_colorable(k4)[0]
    assert not is_three_edge_colorable(petersen)[0]
    assert not is_three_edge_colorable(j5)[0]


def test_oddness(petersen, k4, j5, corpus):
    assert oddness(k4) == 0
    assert oddness(petersen) == 2
    assert oddness(j5) == 2
    # oddness is 0 exactly on 3-edge-colorable graphs
    rng = random.Random(9)
    for name, G in rng.sample(corpus, 40):
        assert (oddness(G) == 0) == is_three_edge_colorable(G)[0], name


def brute_4ec_class_sizes(G: CubicGraph):
    """All sizes of the last color class over proper 4-edge-colorings."""
    sizes = set()
    for assignment in itertools.product(range(4), repeat=G.m):
        at = [set() for _ in range(G.n)]
        ok = True
        for i, c in enumerate(assignment):
            u, v = G.edges[i]
            if c in at[u] or c in at[v]:
                ok = False
                break
            at[u].add(c)
            at[v].add(c)
        if ok:
            sizes.add(sum(1 for c in assignment if c == 3))
    return sizes


def test_4ec_class_size_against_brute_force(k4, theta):
    for G in (k4, theta):
        sizes = brute_4ec_class_sizes(G)
        for s in range(G.m + 1):
            assert exists_4ec_with_class_of_size(G, s) == (s in sizes)


def test_4ec_class_size_known(petersen):
    assert not exists_4ec_with_class_of_size(petersen, 0)  # chi' = 4
    assert exists_4ec_with_class_of_size(petersen, 2)
