"""Cubic multigraphs: representation, ingestion formats, structural queries.

Graphs are loop-free but may contain parallel edges.  Edges are indexed by
their position in the input, and all subgraph-valued results are reported as
sets of edge indices (EdgeSet), so witnesses are reproducible across runs.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

#: Hard capacity for edge sets (graphs up to 128 vertices).
MAX_EDGES = 192


class GraphFormatError(ValueError):
    """Malformed input text (MGF or graph6)."""


class NotCubicError(ValueError):
    """Structurally valid graph that is not 3-regular (or has a loop)."""


class GraphTooLargeError(ValueError):
    """More than MAX_EDGES edges; exhaustive search is infeasible anyway."""


class EdgeSet:
    """Immutable set of edge indices backed by a fixed-width bit vector.

    All set algebra (| & - ^) requires both operands to share the same
    capacity m.  Only indices < m may be set.
    """

    __slots__ = ("m", "bits")

    def __init__(self, m: int, bits: int = 0):
        if m > MAX_EDGES:
            raise GraphTooLargeError(f"edge capacity {m} exceeds {MAX_EDGES}")
        if bits < 0 or bits >> m:
            raise ValueError("bits outside capacity")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("EdgeSet is immutable")

    @classmethod
    def from_indices(cls, m: int, indices: Iterable[int]) -> "EdgeSet":
        bits = 0
        for i in indices:
            if not 0 <= i < m:
                raise ValueError(f"edge index {i} out of range 0..{m - 1}")
            bits |= 1 << i
        return cls(m, bits)

    @classmethod
    def full(cls, m: int) -> "EdgeSet":
        return cls(m, (1 << m) - 1)

    def _check(self, other: "EdgeSet") -> None:
        if self.m != other.m:
            raise ValueError("EdgeSet capacity mismatch")

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.m, self.bits | other.bits)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.m, self.bits & other.bits)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.m, self.bits & ~other.bits)

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.m, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.m and (self.bits >> index) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def indices(self) -> List[int]:
        bits, out = self.bits, []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def isdisjoint(self, other: "EdgeSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EdgeSet)
            and self.m == other.m
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.m, self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"EdgeSet({self.m}, {self.indices()})"


class CubicGraph:
    """Loop-free 3-regular multigraph with stable edge indices.

    edges[i] is the unordered pair (u, v) of the i-th input edge; incidence[v]
    lists the indices of the (exactly three) edges at v, in index order.
    Instances are immutable after construction.
    """

    __slots__ = ("n", "edges", "incidence")

    def __init__(self, n: int, edges: Sequence[Tuple[int, int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if len(edges) > MAX_EDGES:
            raise GraphTooLargeError(
                f"{len(edges)} edges exceeds capacity {MAX_EDGES}"
            )
        incidence: List[List[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {i}: vertex id out of range")
            if u == v:
                raise NotCubicError(f"edge {i}: loop at vertex {u}")
            incidence[u].append(i)
            incidence[v].append(i)
        for v, inc in enumerate(incidence):
            if len(inc) != 3:
                raise NotCubicError(f"vertex {v} has degree {len(inc)}, not 3")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "incidence", tuple(tuple(i) for i in incidence))

    def __setattr__(self, name, value):
        raise AttributeError("CubicGraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self, indices: Iterable[int]) -> EdgeSet:
        return EdgeSet.from_indices(self.m, indices)

    def all_edges(self) -> EdgeSet:
        return EdgeSet.full(self.m)

    def other_end(self, edge: int, v: int) -> int:
        u, w = self.edges[edge]
        return w if v == u else u

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CubicGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# MGF (multigraph format): "n m" header, then m lines "u v"; '#' comments.
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> CubicGraph:
    """Parse MGF text into a validated CubicGraph.

    Parse failures raise GraphFormatError; a well-formed graph that fails
    3-regularity (or has a loop) raises NotCubicError.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphFormatError("empty MGF input")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"bad header {lines[0]!r}: expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"bad header {lines[0]!r}: expected integers")
    if n < 0 or m < 0:
        raise GraphFormatError("negative n or m")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad edge line {ln!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge line {ln!r}: vertex id out of range")
        edges.append((u, v))
    return CubicGraph(n, edges)


def to_mgf(G: CubicGraph) -> str:
    """Serialize edge-for-edge; parse_edge_list(to_mgf(G)) == G."""
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph6 (simple graphs only; standard short and multi-byte n encodings).
# ---------------------------------------------------------------------------


def _graph6_read_n(data: bytes) -> Tuple[int, int]:
    """Return (n, offset of first adjacency byte)."""
    if not data:
        raise GraphFormatError("empty graph6 line")
    c = data[0]
    if c == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise GraphFormatError("truncated graph6 size field")
            vals = [b - 63 for b in data[2:8]]
            if any(v < 0 or v > 63 for v in vals):
                raise GraphFormatError("bad character in graph6 size field")
            n = 0
            for v in vals:
                n = (n << 6) | v
            return n, 8
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field")
        vals = [b - 63 for b in data[1:4]]
        if any(v < 0 or v > 63 for v in vals):
            raise GraphFormatError("bad character in graph6 size field")
        return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
    if not 63 <= c <= 125:
        raise GraphFormatError(f"bad leading graph6 character {c!r}")
    return c - 63, 1


def parse_graph6(line: str) -> CubicGraph:
    """Parse one graph6-encoded simple graph into a validated CubicGraph.

    Edges are ordered by the graph6 upper-triangle bit order: pair (i, j)
    with i < j appears before (i', j') iff j < j' or (j == j' and i < i').
    """
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError:
        raise GraphFormatError("non-ASCII character in graph6 line")
    n, off = _graph6_read_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[off:]
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 length mismatch: expected {need} adjacency bytes, got {len(body)}"
        )
    bits = 0
    for b in body:
        if not 63 <= b <= 126:
            raise GraphFormatError(f"bad character {b!r} in graph6 body")
        bits = (bits << 6) | (b - 63)
    bits >>= 6 * need - nbits  # drop padding
    edges = []
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (bits >> pos) & 1:
                edges.append((i, j))
            pos -= 1
    return CubicGraph(n, edges)


# ---------------------------------------------------------------------------
# Structural queries.  The generic helpers work on any (n, edges) pair so
# they can also serve induced subgraphs such as cores.
# ---------------------------------------------------------------------------


def _build_incidence(n: int, edges: Sequence[Tuple[int, int]]) -> List[List[int]]:
    inc: List[List[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)
    return inc


def girth_of_edges(n: int, edges: Sequence[Tuple[int, int]]) -> Optional[int]:
    """Shortest circuit length of an arbitrary loop-free multigraph.

    A parallel pair counts as a 2-circuit (its two edges are different).
    Returns None for forests.
    """
    inc = _build_incidence(n, edges)
    best: Optional[int] = None
    for e, (u, v) in enumerate(edges):
        # shortest u-v path avoiding edge e, then close it with e
        dist = {u: 0}
        queue = deque([u])
        limit = (best - 1) if best is not None else None
        while queue:
            x = queue.popleft()
            if x == v:
                break
            if limit is not None and dist[x] >= limit:
                continue
            for f in inc[x]:
                if f == e:
                    continue
                a, b = edges[f]
                y = b if x == a else a
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if v in dist and (best is None or dist[v] + 1 < best):
            best = dist[v] + 1
    return best


def girth(G: CubicGraph) -> int:
    g = girth_of_edges(G.n, G.edges)
    assert g is not None  # cubic graphs always contain a circuit
    return g


def bridges_of_edges(n: int, edges: Sequence[Tuple[int, int]]) -> List[int]:
    """Cut edges of an arbitrary multigraph (iterative Tarjan, edge-indexed)."""
    inc = _build_incidence(n, edges)
    visited = [False] * n
    disc = [0] * n
    low = [0] * n
    out: List[int] = []
    timer = 0
    for root in range(n):
        if visited[root]:
            continue
        stack: List[Tuple[int, int, int]] = [(root, -1, 0)]  # vertex, in-edge, ptr
        visited[root] = True
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, in_edge, ptr = stack.pop()
            if ptr < len(inc[v]):
                stack.append((v, in_edge, ptr + 1))
                f = inc[v][ptr]
                if f == in_edge:
                    continue
                a, b = edges[f]
                w = b if v == a else a
                if visited[w]:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    visited[w] = True
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, f, 0))
            else:
                if in_edge != -1:
                    a, b = edges[in_edge]
                    parent = a if v == b else b
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > disc[parent]:
                        out.append(in_edge)
    out.sort()
    return out


def bridges(G: CubicGraph) -> EdgeSet:
    return G.edge_set(bridges_of_edges(G.n, G.edges))


def is_bridgeless(G: CubicGraph) -> bool:
    return not bridges(G)


def two_coloring_of_edges(
    n: int, edges: Sequence[Tuple[int, int]], vertices: Optional[Iterable[int]] = None
) -> Optional[List[int]]:
    """BFS 2-coloring of the given vertex set; None if an odd circuit exists."""
    verts = list(range(n)) if vertices is None else list(vertices)
    inc = _build_incidence(n, edges)
    color = [-1] * n
    for root in verts:
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for f in inc[v]:
                a, b = edges[f]
                w = b if v == a else a
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(G: CubicGraph) -> Tuple[bool, Optional[List[int]]]:
    coloring = two_coloring_of_edges(G.n, G.edges)
    return (coloring is not None), coloring


def is_connected(G: CubicGraph) -> bool:
    return len(components_of_edges(G.n, G.edges, range(G.n))) <= 1


def components_of_edges(
    n: int, edges: Sequence[Tuple[int, int]], vertices: Iterable[int]
) -> List[List[int]]:
    """Connected components (as sorted vertex lists) of the given vertex set."""
    verts = set(vertices)
    inc = _build_incidence(n, edges)
    seen = set()
    comps = []
    for root in sorted(verts):
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for f in inc[v]:
                a, b = edges[f]
                w = b if v == a else a
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def has_nontrivial_3_edge_cut(
    G: CubicGraph,
) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """Exhaustive scan for a 3-edge cut with >= 2 vertices on both sides.

    The three edges at a single vertex form a trivial cut; everything else
    counts.  Disconnected input is an error.
    """
    if not is_connected(G):
        raise ValueError("has_nontrivial_3_edge_cut: graph is disconnected")
    n, m, edges = G.n, G.m, G.edges
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(b + 1, m):
                comps = _components_without(n, edges, (a, b, c))
                if len(comps) < 2:
                    continue
                # nontrivial iff some side has >= 2 vertices and so does
                # its complement
                for comp in comps:
                    if 2 <= len(comp) <= n - 2:
                        return True, (a, b, c)
    return False, None


def _components_without(
    n: int, edges: Sequence[Tuple[int, int]], removed: Tuple[int, ...]
) -> List[List[int]]:
    kept = [e for i, e in enumerate(edges) if i not in removed]
    return components_of_edges(n, kept, range(n))


def _hamiltonian_circuit(
    n: int, edges: Sequence[Tuple[int, int]]
) -> Optional[List[int]]:
    """Backtracking search for a hamiltonian circuit; returns the edge list.

    Multigraph-correct: a 2-circuit through two parallel edges is a valid
    hamiltonian circuit of a 2-vertex graph.
    """
    if n == 0:
        return None
    inc = _build_incidence(n, edges)
    if any(len(i) < 2 for i in inc):
        return None
    start = 0
    used = [False] * n
    used[start] = True
    path_edges: List[int] = []

    def extend(v: int, count: int) -> bool:
        for f in inc[v]:
            if path_edges and f == path_edges[-1]:
                continue
            a, b = edges[f]
            w = b if v == a else a
            if count == n:
                # closing edge; it differs from the opener because the
                # immediate-backtrack guard above already excluded it
                if w == start:
                    path_edges.append(f)
                    return True
                continue
            if used[w]:
                continue
            used[w] = True
            path_edges.append(f)
            if extend(w, count + 1):
                return True
            path_edges.pop()
            used[w] = False
        return False

    if extend(start, 1):
        return path_edges
    return None


def is_hamiltonian(G: CubicGraph) -> bool:
    return _hamiltonian_circuit(G.n, G.edges) is not None


def hamiltonian_circuit_avoiding(
    G: CubicGraph, v: int
) -> Optional[List[Tuple[int, int]]]:
    """Hamiltonian circuit of G - v, as a list of vertex pairs of G."""
    keep = [u for u in range(G.n) if u != v]
    relabel = {u: i for i, u in enumerate(keep)}
    sub = [
        (relabel[a], relabel[b]) for a, b in G.edges if a != v and b != v
    ]
    found = _hamiltonian_circuit(len(keep), sub)
    if found is None:
        return None
    return [(keep[sub[f][0]], keep[sub[f][1]]) for f in found]


def is_hypohamiltonian(G: CubicGraph) -> bool:
    if is_hamiltonian(G):
        return False
    return all(
        hamiltonian_circuit_avoiding(G, v) is not None for v in range(G.n)
    )


# ---------------------------------------------------------------------------
# Test families.
# ---------------------------------------------------------------------------


def theta_graph() -> CubicGraph:
    """K_2^3: two vertices joined by three parallel edges."""
    return CubicGraph(2, [(0, 1), (0, 1), (0, 1)])


def flower_snark(t: int) -> CubicGraph:
    """The flower snark J_t (odd t >= 5): 4t vertices, 6t edges.

    Vertex layout: hub h_i = 4i, star tips b_i = 4i+1 (outer t-circuit),
    c_i = 4i+2 and d_i = 4i+3 (the 2t-circuit with a half twist).
    """
    if t < 5 or t % 2 == 0:
        raise ValueError("flower snark requires odd t >= 5")
    edges = []
    for i in range(t):
        h, b, c, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges.append((h, b))
        edges.append((h, c))
        edges.append((h, d))
    for i in range(t):
        edges.append((4 * i + 1, 4 * ((i + 1) % t) + 1))
    for i in range(t - 1):
        edges.append((4 * i + 2, 4 * (i + 1) + 2))
        edges.append((4 * i + 3, 4 * (i + 1) + 3))
    edges.append((4 * (t - 1) + 2, 3))  # c_{t-1} - d_0: the twist
    edges.append((4 * (t - 1) + 3, 2))  # d_{t-1} - c_0
    return CubicGraph(4 * t, edges)
