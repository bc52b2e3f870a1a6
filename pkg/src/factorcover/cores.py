"""Cores of cubic graphs: construction, decomposition, classification,
and instance checks of their structure theorems.

For three pairwise-distinct 1-factors, M is the set of edges lying in at
least two of them, U the set of edges lying in none, and the core is the
subgraph induced by M | U.  k = |U|.  The counting identities
(|M| = k - |T|, |V| = 2k - 2|T|, |E| = 2k - |T| with T the triple
intersection) are theorems, so violations raise CoreInvariantError.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import (
    CubicGraph,
    EdgeSet,
    bridges_of_edges,
    components_of_edges,
    girth_of_edges,
    two_coloring_of_edges,
)
from .matching import (
    DEFAULT_PM_CAP,
    PerfectMatching,
    enumerate_perfect_matchings,
    is_perfect_matching,
    is_three_edge_colorable,
)


class CoreInvariantError(AssertionError):
    """A proved structural property failed; indicates an internal bug."""


class FactorError(ValueError):
    """Bad factor triple: not perfect matchings, or not pairwise distinct."""


@dataclass(frozen=True)
class CoreComponent:
    """One connected component of a core.

    kind is "even_circuit" or "cubic_subdivision".  For subdivisions,
    h_vertices/h_edges describe the cubic multigraph H obtained by
    suppressing bivalent vertices (loops and parallel edges allowed);
    h_edge_paths[i] lists the core edge indices forming the path that H
    edge i replaces, and estar_h are the H edge indices of the component's
    triple-intersection edges.
    """

    kind: str
    vertices: Tuple[int, ...]
    edges: EdgeSet
    h_vertices: Optional[Tuple[int, ...]] = None
    h_edges: Optional[Tuple[Tuple[int, int], ...]] = None
    h_edge_paths: Optional[Tuple[Tuple[int, ...], ...]] = None
    estar_h: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class Core:
    """The core of G with respect to three pairwise-distinct 1-factors."""

    graph: CubicGraph
    factors: Tuple[PerfectMatching, PerfectMatching, PerfectMatching]
    M: EdgeSet  # edges in >= 2 factors
    U: EdgeSet  # edges in no factor
    T: EdgeSet  # edges in all three factors
    M2: EdgeSet  # M - T
    k: int  # |U|
    vertices: Tuple[int, ...]
    edge_indices: EdgeSet  # M | U

    @property
    def is_empty(self) -> bool:
        return len(self.edge_indices) == 0


@dataclass(frozen=True)
class CoreClassification:
    components: Tuple[CoreComponent, ...]
    is_cyclic: bool
    is_bipartite: bool
    is_bridgeless: bool
    is_empty: bool


def build_core(
    G: CubicGraph,
    M1: PerfectMatching,
    M2: PerfectMatching,
    M3: PerfectMatching,
) -> Core:
    for i, f in enumerate((M1, M2, M3)):
        if not is_perfect_matching(G, f.edges):
            raise FactorError(f"factor {i + 1} is not a perfect matching of G")
    if M1.edges == M2.edges or M1.edges == M3.edges or M2.edges == M3.edges:
        raise FactorError("factors must be pairwise distinct")
    a, b, c = M1.edges.bits, M2.edges.bits, M3.edges.bits
    m = G.m
    Mbits = (a & b) | (a & c) | (b & c)
    Tbits = a & b & c
    Ubits = ((1 << m) - 1) & ~(a | b | c)
    M = EdgeSet(m, Mbits)
    T = EdgeSet(m, Tbits)
    U = EdgeSet(m, Ubits)
    sub = M | U
    verts = sorted({v for i in sub.indices() for v in G.edges[i]})
    core = Core(
        graph=G,
        factors=(M1, M2, M3),
        M=M,
        U=U,
        T=T,
        M2=M - T,
        k=len(U),
        vertices=tuple(verts),
        edge_indices=sub,
    )
    _assert_core_invariants(core)
    return core


def _assert_core_invariants(core: Core) -> None:
    k, t = core.k, len(core.T)
    if core.M & core.U:
        raise CoreInvariantError("M and U intersect")
    if len(core.M) != k - t:
        raise CoreInvariantError(f"|M| = {len(core.M)} != k - |T| = {k - t}")
    if len(core.vertices) != 2 * k - 2 * t:
        raise CoreInvariantError(
            f"|V(G_c)| = {len(core.vertices)} != 2k - 2|T| = {2 * k - 2 * t}"
        )
    if len(core.edge_indices) != 2 * k - t:
        raise CoreInvariantError(
            f"|E(G_c)| = {len(core.edge_indices)} != 2k - |T| = {2 * k - t}"
        )
    # M must be a perfect matching of the core subgraph
    covered = set()
    for i in core.M.indices():
        u, v = core.graph.edges[i]
        if u in covered or v in covered:
            raise CoreInvariantError("M is not a matching")
        covered.add(u)
        covered.add(v)
    if covered != set(core.vertices):
        raise CoreInvariantError("M does not cover V(G_c)")
    # degrees are 2 or 3; 3 exactly at endpoints of T-edges
    deg: Dict[int, int] = {v: 0 for v in core.vertices}
    for i in core.edge_indices.indices():
        u, v = core.graph.edges[i]
        deg[u] += 1
        deg[v] += 1
    t_ends = {v for i in core.T.indices() for v in core.graph.edges[i]}
    for v in core.vertices:
        want = 3 if v in t_ends else 2
        if deg[v] != want:
            raise CoreInvariantError(f"vertex {v} has core degree {deg[v]}")


def _core_edge_list(core: Core) -> List[Tuple[int, Tuple[int, int]]]:
    G = core.graph
    return [(i, G.edges[i]) for i in core.edge_indices.indices()]


def classify_core(core: Core) -> CoreClassification:
    """Decompose the core into components and classify each one.

    Every component is an even circuit or a subdivision of a cubic
    multigraph whose suppressed triple-intersection edges form a 1-factor
    (violations raise CoreInvariantError).  The empty core is classified
    cyclic vacuously, with is_empty set.
    """
    G = core.graph
    pairs = _core_edge_list(core)
    n = G.n
    sub_edges = [e for _, e in pairs]
    sub_idx = [i for i, _ in pairs]
    comps = components_of_edges(n, sub_edges, core.vertices)
    components: List[CoreComponent] = []
    for comp_vertices in comps:
        vset = set(comp_vertices)
        local = [
            (gi, e) for gi, e in zip(sub_idx, sub_edges) if e[0] in vset
        ]
        comp_edge_set = EdgeSet.from_indices(G.m, (gi for gi, _ in local))
        deg: Dict[int, int] = {v: 0 for v in comp_vertices}
        for _, (u, v) in local:
            deg[u] += 1
            deg[v] += 1
        if all(d == 2 for d in deg.values()):
            components.append(
                _classify_circuit(core, comp_vertices, comp_edge_set)
            )
        else:
            components.append(
                _classify_subdivision(core, comp_vertices, comp_edge_set)
            )
    is_cyclic = all(c.kind == "even_circuit" for c in components)
    bip = two_coloring_of_edges(n, sub_edges, core.vertices) is not None
    bridgeless = not _subgraph_bridges(core)
    return CoreClassification(
        components=tuple(components),
        is_cyclic=is_cyclic,
        is_bipartite=bip,
        is_bridgeless=bridgeless,
        is_empty=core.is_empty,
    )


def _subgraph_bridges(core: Core) -> List[int]:
    pairs = _core_edge_list(core)
    local_edges = [e for _, e in pairs]
    local_bridges = bridges_of_edges(core.graph.n, local_edges)
    return [pairs[i][0] for i in local_bridges]


def _classify_circuit(
    core: Core, comp_vertices: Sequence[int], edges: EdgeSet
) -> CoreComponent:
    from .matching import trace_circuits

    circuits = trace_circuits(core.graph, edges)
    if len(circuits) != 1:
        raise CoreInvariantError("2-regular component is not a single circuit")
    circ = circuits[0]
    if len(circ) % 2 != 0:
        raise CoreInvariantError("circuit component has odd length")
    # edges must alternate between M and U along the circuit
    in_m = [i in core.M for i in circ]
    for a, b in zip(in_m, in_m[1:] + in_m[:1]):
        if a == b:
            raise CoreInvariantError("circuit does not alternate M/U")
    return CoreComponent(
        kind="even_circuit", vertices=tuple(comp_vertices), edges=edges
    )


def _classify_subdivision(
    core: Core, comp_vertices: Sequence[int], edges: EdgeSet
) -> CoreComponent:
    """Suppress bivalent vertices along maximal paths to obtain H."""
    G = core.graph
    idxs = edges.indices()
    inc: Dict[int, List[int]] = {v: [] for v in comp_vertices}
    for i in idxs:
        u, v = G.edges[i]
        inc[u].append(i)
        inc[v].append(i)
    trivalent = sorted(v for v in comp_vertices if len(inc[v]) == 3)
    if not trivalent:
        raise CoreInvariantError("subdivision component without trivalent vertex")
    h_index = {v: i for i, v in enumerate(trivalent)}
    h_edges: List[Tuple[int, int]] = []
    h_paths: List[Tuple[int, ...]] = []
    seen_edges = set()
    for v in trivalent:
        for start in inc[v]:
            if start in seen_edges:
                continue
            # walk from v along start until the next trivalent vertex
            path = [start]
            seen_edges.add(start)
            cur = G.other_end(start, v)
            prev = start
            while len(inc[cur]) == 2:
                nxt = inc[cur][0] if inc[cur][0] != prev else inc[cur][1]
                path.append(nxt)
                seen_edges.add(nxt)
                cur = G.other_end(nxt, cur)
                prev = nxt
            h_edges.append((h_index[v], h_index[cur]))
            h_paths.append(tuple(path))
    # H must be cubic (loops count twice)
    h_deg = [0] * len(trivalent)
    for a, b in h_edges:
        h_deg[a] += 1
        h_deg[b] += 1
    if any(d != 3 for d in h_deg):
        raise CoreInvariantError("suppressed multigraph H is not cubic")
    # the component's T-edges are single-edge paths; they must form a
    # 1-factor of H
    estar_h = tuple(
        i
        for i, path in enumerate(h_paths)
        if len(path) == 1 and path[0] in core.T
    )
    covered = set()
    for i in estar_h:
        a, b = h_edges[i]
        if a == b or a in covered or b in covered:
            raise CoreInvariantError("E* is not a matching of H")
        covered.add(a)
        covered.add(b)
    if covered != set(range(len(trivalent))):
        raise CoreInvariantError("E* is not a 1-factor of H")
    return CoreComponent(
        kind="cubic_subdivision",
        vertices=tuple(comp_vertices),
        edges=edges,
        h_vertices=tuple(trivalent),
        h_edges=tuple(h_edges),
        h_edge_paths=tuple(h_paths),
        estar_h=estar_h,
    )


def find_core(
    G: CubicGraph,
    predicate: str = "any",
    k_budget: Optional[int] = None,
    pms: Optional[Sequence[PerfectMatching]] = None,
    cap: int = DEFAULT_PM_CAP,
) -> Optional[Core]:
    """First core (PM triples scanned in lexicographic index order) whose
    |U| is within k_budget and whose classification satisfies predicate.

    predicate: "cyclic", "bipartite", "bridgeless", or "any".
    """
    if predicate not in ("cyclic", "bipartite", "bridgeless", "any"):
        raise ValueError(f"unknown predicate {predicate!r}")
    if pms is None:
        pms = enumerate_perfect_matchings(G, cap=cap)
    if k_budget is None:
        k_budget = G.m
    p = len(pms)
    for i in range(p):
        for j in range(i + 1, p):
            for l in range(j + 1, p):
                core = build_core(G, pms[i], pms[j], pms[l])
                if core.k > k_budget:
                    continue
                if predicate == "any":
                    return core
                cls = classify_core(core)
                if (
                    (predicate == "cyclic" and cls.is_cyclic)
                    or (predicate == "bipartite" and cls.is_bipartite)
                    or (predicate == "bridgeless" and cls.is_bridgeless)
                ):
                    return core
    return None


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: Dict[str, object]


def verify_core_theorems(core: Core, G: CubicGraph) -> List[CheckResult]:
    """Instance checks of the core structure theorems, for reports and the
    property suite.  Empty cores pass the girth/component checks vacuously.
    """
    results: List[CheckResult] = []
    k, t = core.k, len(core.T)
    results.append(
        CheckResult(
            "counting_identities",
            len(core.M) == k - t
            and len(core.vertices) == 2 * k - 2 * t
            and len(core.edge_indices) == 2 * k - t,
            {"k": k, "t": t, "edges": len(core.edge_indices)},
        )
    )
    pairs = _core_edge_list(core)
    sub_edges = [e for _, e in pairs]
    g_c = girth_of_edges(G.n, sub_edges) if pairs else None
    results.append(
        CheckResult(
            "girth_le_2k",
            g_c is None or g_c <= 2 * k,
            {"core_girth": g_c, "k": k},
        )
    )
    comp_count = len(components_of_edges(G.n, sub_edges, core.vertices))
    results.append(
        CheckResult(
            "components_le_2k_over_girth",
            g_c is None or comp_count <= (2 * k) / g_c,
            {"components": comp_count, "core_girth": g_c, "k": k},
        )
    )
    if k < 3:
        colorable, _ = is_three_edge_colorable(G)
        results.append(
            CheckResult(
                "k_lt_3_implies_3_edge_colorable", colorable, {"k": k}
            )
        )
    cls = classify_core(core)
    if cls.is_bipartite:
        results.append(
            CheckResult(
                "bipartite_implies_bridgeless",
                cls.is_bridgeless,
                {"bridges": _subgraph_bridges(core)},
            )
        )
    return results


def circuits_alternate_and_use_u(core: Core) -> bool:
    """Every circuit of the core carries >= girth(G_c)/2 edges of U."""
    from .matching import trace_circuits

    pairs = _core_edge_list(core)
    if not pairs:
        return True
    sub_edges = [e for _, e in pairs]
    g_c = girth_of_edges(core.graph.n, sub_edges)
    # check over the circuits of the 2-regular part (the whole core when it
    # is cyclic); cores with trivalent vertices are checked on M | U minus T
    rest = core.edge_indices - core.T
    for circ in trace_circuits(core.graph, rest):
        u_count = sum(1 for i in circ if i in core.U)
        if g_c is not None and u_count < g_c / 2:
            return False
    return True
