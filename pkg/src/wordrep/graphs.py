"""Undirected and directed graphs on vertices ``0..n-1`` with bitset adjacency.

Besides the two container types this module holds the named graph families,
a few structural operations (3-subdivision, induced neighbourhoods, vertex
gluing), an exact isomorphism test for small graphs, a census of small graphs
up to isomorphism, and the text formats (edge list and graph6).

Text formats are 1-indexed; everything in memory is 0-indexed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdgeError,
    EndpointOutOfRangeError,
    GraphFormatError,
    MalformedHeaderError,
    NotAcyclicError,
    SelfLoopError,
)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """Immutable simple undirected graph.

    ``adj[v]`` is a bitmask of the neighbours of ``v``.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(adj)
        g._hash = None
        for v, mask in enumerate(g.adj):
            if mask >> v & 1 or mask >> g.n:
                raise ValueError("adjacency masks must be loop-free and in range")
            for u in bits(mask):
                if not g.adj[u] >> v & 1:
                    raise ValueError("adjacency must be symmetric")
        return g

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (sorted) and the map back to ``self``."""
        index = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(index)}
        edges = [(pos[u], pos[v]) for u in index for v in bits(self.adj[u]) if v in pos and u < v]
        return Graph(len(index), edges), index

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph.from_adjacency([full & ~a & ~(1 << v) for v, a in enumerate(self.adj)])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full_mask

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in bits(self.adj[v]):
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    def girth(self) -> float:
        """Length of a shortest cycle (``inf`` for forests), by BFS from every vertex."""
        best = float("inf")
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = [s]
            for v in queue:
                for u in bits(self.adj[v]):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        queue.append(u)
                    elif parent[v] != u:
                        best = min(best, dist[u] + dist[v] + 1)
        return best

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


class Digraph:
    """Immutable loop-free directed graph; ``out[v]`` / ``inn[v]`` are bitmasks."""

    __slots__ = ("n", "out", "inn")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.n = n
        self.out = tuple(out)
        self.inn = tuple(inn)

    @classmethod
    def from_out(cls, out: Sequence[int]) -> "Digraph":
        return cls(len(out), [(u, v) for u, mask in enumerate(out) for v in bits(mask)])

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.out[u] | self.inn[u]) >> v & 1)

    def underlying(self) -> Graph:
        return Graph(self.n, self.arcs())

    def reverse(self) -> "Digraph":
        return Digraph(self.n, [(v, u) for u, v in self.arcs()])

    def reachability(self) -> list[int]:
        """``reach[v]``: bitmask of vertices reachable from ``v`` by a non-empty path."""
        reach = [0] * self.n
        for v in reversed(self.topological_order()):
            r = self.out[v]
            for u in bits(self.out[v]):
                r |= reach[u]
            reach[v] = r
        return reach

    def topological_order(self) -> list[int]:
        """Kahn's algorithm, smallest available vertex first; raises on a cycle."""
        indeg = [popcount(m) for m in self.inn]
        order = []
        ready = [v for v in range(self.n) if indeg[v] == 0]
        while ready:
            ready.sort(reverse=True)
            v = ready.pop()
            order.append(v)
            for u in bits(self.out[v]):
                indeg[u] -= 1
                if indeg[u] == 0:
                    ready.append(u)
        if len(order) != self.n:
            raise NotAcyclicError("digraph contains a directed cycle")
        return order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arcs()})"


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

# Edge list of the co-(T2) figure, 1-indexed as drawn.
CO_T2_EDGES = (
    (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (2, 7), (3, 4),
    (3, 5), (3, 6), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
)

# Petersen graph with the vertex numbering of the drawing the two published
# 3-uniform words refer to (1-indexed).
PETERSEN_EDGES = (
    (1, 2), (1, 5), (1, 6), (2, 3), (2, 7), (3, 4), (3, 8), (4, 5),
    (4, 9), (5, 10), (6, 8), (6, 9), (7, 9), (7, 10), (8, 10),
)


@dataclass(frozen=True)
class GraphFamilySpec:
    """A named family plus its integer parameters, e.g. ``("wheel", (5,))``."""

    family: str
    params: tuple[int, ...] = ()
    base: "GraphFamilySpec | None" = None  # only for subdivision3-of


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def complete(n: int) -> Graph:
    _require(n >= 0, "complete graph needs n >= 0")
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    _require(p >= 0 and q >= 0, "complete bipartite graph needs p, q >= 0")
    return Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def path(n: int) -> Graph:
    _require(n >= 1, "path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _require(n >= 3, "cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(m: int) -> Graph:
    """W_m: rim ``0..m-1`` forming a cycle, hub ``m``."""
    _require(m >= 3, "wheel rim length must be >= 3")
    return Graph(m + 1, [(i, (i + 1) % m) for i in range(m)] + [(i, m) for i in range(m)])


def prism(m: int) -> Graph:
    """C_m x K_2: outer cycle ``0..m-1``, inner cycle ``m..2m-1``, spokes ``i -- m+i``."""
    _require(m >= 3, "prism needs m >= 3")
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(m + i, m + (i + 1) % m) for i in range(m)]
    edges += [(i, m + i) for i in range(m)]
    return Graph(2 * m, edges)


def cocktail(k: int) -> Graph:
    """H_{k,k}: a_i = ``i``, b_i = ``k+i``; a_i ~ b_j exactly when i != j."""
    _require(k >= 1, "cocktail party graph needs k >= 1")
    return Graph(2 * k, [(i, k + j) for i in range(k) for j in range(k) if i != j])


def cocktail_apex(k: int) -> Graph:
    """G_k: H_{k,k} plus an apex ``2k`` adjacent to everything."""
    _require(k >= 1, "cocktail-apex graph needs k >= 1")
    h = cocktail(k)
    return Graph(2 * k + 1, h.edges() + [(v, 2 * k) for v in range(2 * k)])


def petersen() -> Graph:
    return Graph(10, [(u - 1, v - 1) for u, v in PETERSEN_EDGES])


def kneser(n: int, k: int) -> Graph:
    """Kneser graph K(n, k): k-subsets adjacent when disjoint (lexicographic order)."""
    subsets = list(itertools.combinations(range(n), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return Graph(len(subsets), edges)


def co_t2() -> Graph:
    return Graph(7, [(u - 1, v - 1) for u, v in CO_T2_EDGES])


def subdivide3(g: Graph) -> Graph:
    """Replace every edge by a path through three new vertices.

    New vertices for the i-th edge (in ``g.edges()`` order) are
    ``n+3i, n+3i+1, n+3i+2``.
    """
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        a, b, c = g.n + 3 * i, g.n + 3 * i + 1, g.n + 3 * i + 2
        edges += [(u, a), (a, b), (b, c), (c, v)]
    return Graph(g.n + 3 * g.m, edges)


FAMILIES = {
    "complete": (complete, 1),
    "complete-bipartite": (complete_bipartite, 2),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "wheel": (wheel, 1),
    "prism": (prism, 1),
    "cocktail": (cocktail, 1),
    "cocktail-apex": (cocktail_apex, 1),
    "petersen": (petersen, 0),
    "co-t2": (co_t2, 0),
}


def generate(spec: GraphFamilySpec | str, *params: int) -> Graph:
    """Build a named graph, e.g. ``generate("wheel", 5)`` or from a spec object."""
    if isinstance(spec, str):
        spec = GraphFamilySpec(spec, tuple(params))
    if spec.family == "subdivision3-of":
        if spec.base is None:
            raise ValueError("subdivision3-of needs a base family")
        return subdivide3(generate(spec.base))
    try:
        builder, arity = FAMILIES[spec.family]
    except KeyError:
        raise ValueError(f"unknown graph family {spec.family!r}") from None
    if len(spec.params) != arity:
        raise ValueError(f"family {spec.family!r} takes {arity} parameter(s), got {len(spec.params)}")
    return builder(*spec.params)


def neighborhood(g: Graph, v: int) -> tuple[Graph, list[int]]:
    """Subgraph induced by N(v) and the list mapping its vertices back to ``g``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return g.induced(bits(g.adj[v]))


def glue(g1: Graph, x: int, g2: Graph, y: int) -> Graph:
    """Identify ``x`` of ``g1`` with ``y`` of ``g2``.

    ``g1`` keeps its labels; the other vertices of ``g2`` follow in order.
    """
    pos = {}
    nxt = g1.n
    for w in range(g2.n):
        if w == y:
            pos[w] = x
        else:
            pos[w] = nxt
            nxt += 1
    return Graph(nxt, g1.edges() + [(pos[u], pos[v]) for u, v in g2.edges()])


# ---------------------------------------------------------------------------
# Isomorphism and census
# ---------------------------------------------------------------------------


def _vertex_invariant(g: Graph, v: int) -> tuple:
    degs = g.degrees()
    nbr = g.adj[v]
    tri = sum(popcount(g.adj[u] & nbr) for u in bits(nbr)) // 2
    return (degs[v], tri, tuple(sorted(degs[u] for u in bits(nbr))))


def graph_invariant(g: Graph) -> tuple:
    """Isomorphism-invariant fingerprint (equal for isomorphic graphs)."""
    return (g.n, g.m, tuple(sorted(_vertex_invariant(g, v) for v in range(g.n))))


def find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Bijection ``f`` with ``uv in E(g1) <=> f(u)f(v) in E(g2)``, or ``None``.

    Backtracking over vertices of ``g1`` in BFS order, candidates restricted
    to vertices of ``g2`` with the same local invariant.  Intended for
    n <= 12; slow beyond that on highly regular graphs.
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    n = g1.n
    inv1 = [_vertex_invariant(g1, v) for v in range(n)]
    inv2 = [_vertex_invariant(g2, v) for v in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None

    # Connected-first order keeps adjacency checks biting early.
    order: list[int] = []
    placed = 0
    while len(order) < n:
        rest = [v for v in range(n) if not placed >> v & 1]
        start = max(rest, key=lambda v: (inv1[v], -v))
        queue = [start]
        placed |= 1 << start
        for v in queue:
            order.append(v)
            for u in sorted(bits(g1.adj[v] & ~placed), key=lambda u: inv1[u], reverse=True):
                placed |= 1 << u
                queue.append(u)

    mapping = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used >> w & 1 or inv2[w] != inv1[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if g1.has_edge(u, v) != g2.has_edge(mapping[u], w):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            used &= ~(1 << w)
            mapping[v] = -1
        return False

    return mapping if extend(0) else None


def isomorphic(g1: Graph, g2: Graph) -> bool:
    return find_isomorphism(g1, g2) is not None


def census(n: int, connected: bool = False) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism (optionally connected only).

    Built by vertex augmentation from the census on ``n-1`` vertices with
    invariant bucketing plus exact isomorphism checks.  Practical to n = 7.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    layer = [Graph(0)]
    for size in range(1, n + 1):
        buckets: dict[tuple, list[Graph]] = {}
        out: list[Graph] = []
        for g in layer:
            for mask in range(1 << g.n):
                h = Graph(size, g.edges() + [(u, size - 1) for u in bits(mask)])
                key = graph_invariant(h)
                bucket = buckets.setdefault(key, [])
                if any(isomorphic(h, other) for other in bucket):
                    continue
                bucket.append(h)
                out.append(h)
        layer = out
    if connected:
        layer = [g for g in layer if g.is_connected()]
    return layer


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def _graph6_n(n: int) -> str:
    if not 0 <= n <= 62:
        raise ValueError("graph6 support is limited to n <= 62")
    return chr(n + 63)


def to_graph6(g: Graph) -> str:
    bitlist = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bitlist += [0] * (-len(bitlist) % 6)
    chunks = [bitlist[i:i + 6] for i in range(0, len(bitlist), 6)]
    body = "".join(chr(63 + int("".join(map(str, c)), 2)) for c in chunks)
    return _graph6_n(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s or any(not 63 <= ord(c) <= 126 for c in s):
        raise MalformedHeaderError("not a graph6 string")
    n = ord(s[0]) - 63
    if n > 62:
        raise MalformedHeaderError("graph6 strings with n > 62 are not supported")
    needed = (n * (n - 1) // 2 + 5) // 6
    if len(s) - 1 != needed:
        raise MalformedHeaderError(f"graph6 body has {len(s) - 1} bytes, expected {needed}")
    bitstream = []
    for c in s[1:]:
        val = ord(c) - 63
        bitstream.extend((val >> (5 - b)) & 1 for b in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _parse_pairs(text: str, what: str) -> tuple[int, list[tuple[int, int]]]:
    lines = _content_lines(text)
    if not lines:
        raise MalformedHeaderError("empty input")
    header = lines[0].split()
    try:
        if len(header) != 2:
            raise ValueError
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedHeaderError(f"expected header 'n m', got {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise MalformedHeaderError("negative counts in header")
    body = lines[1:]
    if len(body) != m:
        raise MalformedHeaderError(f"header announces {m} {what}s, found {len(body)}")
    pairs = []
    seen = set()
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise EndpointOutOfRangeError(f"line {lineno}: endpoint outside 1..{n} in {line!r}")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at {u}")
        key = (u, v) if what == "arc" else (min(u, v), max(u, v))
        if key in seen or (what == "arc" and (v, u) in seen):
            raise DuplicateEdgeError(f"line {lineno}: duplicate {what} {u} {v}")
        seen.add(key)
        pairs.append((u - 1, v - 1))
    return n, pairs


def read_graph(text: str) -> Graph:
    """Parse the edge-list format (``n m`` then ``u v`` lines, 1-indexed) or graph6."""
    lines = _content_lines(text)
    if len(lines) == 1 and len(lines[0].split()) == 1:
        return from_graph6(lines[0])
    n, pairs = _parse_pairs(text, "edge")
    return Graph(n, pairs)


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_digraph(text: str) -> Digraph:
    """Orientation format: ``n m`` then ``u v`` lines meaning arc u -> v."""
    n, pairs = _parse_pairs(text, "arc")
    return Digraph(n, pairs)


def write_digraph(d: Digraph) -> str:
    arcs = d.arcs()
    lines = [f"{d.n} {len(arcs)}"] + [f"{u + 1} {v + 1}" for u, v in arcs]
    return "\n".join(lines) + "\n"
