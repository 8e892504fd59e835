"""Shortcuts, semi-transitive orientations and transitive orientations.

An acyclic digraph is semi-transitive when, for every arc ``u -> v`` and
every directed path from ``u`` to ``v``, the vertices on the path are
pairwise adjacent.  A path violating that (with the closing arc) is a
*shortcut*.  A graph is word-representable exactly when some orientation of
it is semi-transitive, which is what :func:`find_semi_transitive_orientation`
searches for.

Shortcut search runs a depth-first walk per arc that only extends the path
through vertices adjacent to everything already on it, so it stops at the
first vertex breaking that and otherwise enumerates cliques, not all paths.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BudgetExhausted, NotAcyclicError
from .graphs import Digraph, Graph, bits, neighborhood
from .words import Word, represented_graph

DEFAULT_BUDGET = 50_000_000


def is_acyclic(d: Digraph) -> bool:
    try:
        d.topological_order()
    except NotAcyclicError:
        return False
    return True


@dataclass(frozen=True)
class ShortcutWitness:
    """Directed path ``path[0] .. path[-1]`` closed by the arc ``path[0] -> path[-1]``,
    with ``missing_pair`` two path vertices that are not adjacent."""

    path: tuple[int, ...]
    missing_pair: tuple[int, int]


def _ancestors(reach: Sequence[int]) -> list[int]:
    anc = [0] * len(reach)
    for u, mask in enumerate(reach):
        for v in bits(mask):
            anc[v] |= 1 << u
    return anc


def _arc_shortcut(u: int, v: int, out: Sequence[int], anc: Sequence[int], adj: Sequence[int]):
    """Find a path from ``u`` to ``v`` meeting a non-adjacent pair, or ``None``.

    Returns ``(prefix, w)``: ``prefix`` is a pairwise adjacent directed path
    starting at ``u`` and ``w`` an out-neighbour of its last vertex that is
    non-adjacent to some prefix vertex and is, or reaches, ``v``.
    """
    target = anc[v] | (1 << v)
    stack = [(u, 1 << u, (u,))]
    while stack:
        last, clique, prefix = stack.pop()
        for w in sorted(bits(out[last] & target), reverse=True):
            if adj[w] & clique != clique:
                return prefix, w
        for w in sorted(bits(out[last] & target & ~(1 << v)), reverse=True):
            stack.append((w, clique | (1 << w), prefix + (w,)))
    return None


def _shortest_path(out: Sequence[int], s: int, t: int) -> list[int]:
    parent = {s: s}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for y in bits(out[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if t not in parent:
        raise ValueError(f"{t} is not reachable from {s}")
    walk = [t]
    while walk[-1] != s:
        walk.append(parent[walk[-1]])
    return walk[::-1]


def find_shortcut(d: Digraph) -> ShortcutWitness | None:
    """A shortcut of the acyclic digraph ``d``, or ``None`` if there is none.

    Arcs are scanned in lexicographic order.
    """
    if not is_acyclic(d):
        raise NotAcyclicError("find_shortcut needs an acyclic digraph")
    anc = _ancestors(d.reachability())
    adj = [d.out[v] | d.inn[v] for v in range(d.n)]
    for u, v in d.arcs():
        hit = _arc_shortcut(u, v, d.out, anc, adj)
        if hit is None:
            continue
        prefix, w = hit
        tail = _shortest_path(d.out, w, v)
        walk = tuple(prefix) + tuple(tail)
        first = next(p for p in prefix if not adj[w] >> p & 1)
        return ShortcutWitness(walk, (first, w))
    return None


def is_semi_transitive(d: Digraph) -> bool:
    return is_acyclic(d) and find_shortcut(d) is None


# ---------------------------------------------------------------------------
# Exhaustive orientation search
# ---------------------------------------------------------------------------

FOUND = "semi-transitive-found"
NONE_EXISTS = "none-exists"


@dataclass(frozen=True)
class OrientationResult:
    status: str
    witness: Digraph | None
    nodes_explored: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


def search_order(g: Graph) -> list[tuple[int, int]]:
    """Edges by decreasing ``deg(u) + deg(v)``, ties lexicographic."""
    deg = g.degrees()
    return sorted(g.edges(), key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


class _OrientationSearch:
    def __init__(self, g: Graph, order: list[tuple[int, int]], budget: int):
        self.g = g
        self.order = order
        self.budget = budget
        self.nodes = 0
        n = g.n
        self.out = [0] * n
        self.reach = [0] * n
        self.anc = [0] * n

    def _try_arc(self, x: int, y: int) -> bool:
        """Add ``x -> y``; False (state untouched) if it closes a cycle or a shortcut."""
        if self.reach[y] >> x & 1:
            return False
        saved = (self.out[x], list(self.reach), list(self.anc))
        below = (1 << y) | self.reach[y]
        above = (1 << x) | self.anc[x]
        for a in bits(above):
            self.reach[a] |= below
        for b in bits(below):
            self.anc[b] |= above
        self.out[x] |= 1 << y
        adj = self.g.adj
        # Any new shortcut uses the new arc, so its closing arc runs from
        # an ancestor of x to a descendant of y.
        for u in bits(above):
            for v in bits(self.out[u] & below):
                if _arc_shortcut(u, v, self.out, self.anc, adj) is not None:
                    self.out[x], self.reach, self.anc = saved[0], saved[1], saved[2]
                    return False
        self._saved = saved
        return True

    def run(self, first_choices: Sequence[bool] | None = None) -> bool:
        start = 0
        if first_choices is not None:
            for i, forward in enumerate(first_choices):
                u, v = self.order[i]
                x, y = (u, v) if forward else (v, u)
                self.nodes += 1
                if not self._try_arc(x, y):
                    return False
            start = len(first_choices)
        return self._extend(start)

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        u, v = self.order[i]
        for x, y in ((u, v), (v, u)):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted(nodes=self.nodes)
            if not self._try_arc(x, y):
                continue
            saved = self._saved
            if self._extend(i + 1):
                return True
            self.out[x], self.reach, self.anc = saved[0], saved[1], saved[2]
        return False

    def witness(self) -> Digraph:
        return Digraph.from_out(self.out)


def _run_prefix(g: Graph, order: list[tuple[int, int]], prefix: tuple[bool, ...], budget: int):
    search = _OrientationSearch(g, order, budget)
    try:
        ok = search.run(first_choices=prefix)
    except BudgetExhausted as exc:
        return "budget", None, exc.nodes
    return ("found" if ok else "none"), (search.out if ok else None), search.nodes


def find_semi_transitive_orientation(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    fix_first_edge: bool = False,
) -> OrientationResult:
    """Exhaustive backtracking for a semi-transitive orientation of ``g``.

    Edges are oriented one at a time in :func:`search_order`, the branch
    ``u -> v`` with ``u < v`` first.  Every partial orientation is kept
    acyclic and free of shortcuts (a shortcut among oriented arcs survives
    any completion), so a leaf is a valid witness.

    ``budget`` counts search nodes (arc placements); running out raises
    :class:`BudgetExhausted` rather than reporting non-existence.
    ``fix_first_edge`` only explores one orientation of the first edge,
    sound because reversing every arc preserves semi-transitivity.
    With ``jobs > 1`` the top levels are split across processes; the
    returned witness is the one serial search would find.
    """
    order = search_order(g)
    if jobs <= 1 or len(order) < 2:
        search = _OrientationSearch(g, order, budget)
        prefix = (True,) if fix_first_edge and order else None
        ok = search.run(first_choices=prefix)
        if ok:
            witness = search.witness()
            return OrientationResult(FOUND, witness, search.nodes)
        return OrientationResult(NONE_EXISTS, None, search.nodes)

    depth = min(len(order), max(1, math.ceil(math.log2(jobs))) + 1)
    prefixes = []
    for code in range(1 << depth):
        prefix = tuple(not (code >> (depth - 1 - i)) & 1 for i in range(depth))
        if fix_first_edge and not prefix[0]:
            continue
        prefixes.append(prefix)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_prefix, g, order, p, budget) for p in prefixes]
        total = 0
        for fut in futures:
            status, out, nodes = fut.result()
            total += nodes
            if status == "found":
                for rest in futures:
                    rest.cancel()
                return OrientationResult(FOUND, Digraph.from_out(out), total)
            if status == "budget":
                for rest in futures:
                    rest.cancel()
                raise BudgetExhausted(nodes=total)
    return OrientationResult(NONE_EXISTS, None, total)


# ---------------------------------------------------------------------------
# Orientations from words and colorings
# ---------------------------------------------------------------------------


def orientation_from_word(w: Word) -> Digraph:
    """Orient each alternating pair from the letter whose first occurrence comes first."""
    g = represented_graph(w)
    first = {x: p[0] for x, p in w.occ.items()}
    return Digraph(g.n, [(u, v) if first[u] < first[v] else (v, u) for u, v in g.edges()])


def orient_by_coloring(g: Graph, coloring: Sequence[int] | Mapping[int, int]) -> Digraph:
    """Direct every edge from its lower colour to its higher colour.

    Semi-transitive when at most three colours are used, or when the girth
    of ``g`` exceeds the number of colours.
    """
    colors = [coloring[v] for v in range(g.n)]
    arcs = []
    for u, v in g.edges():
        if colors[u] == colors[v]:
            raise ValueError(f"improper coloring: {u} and {v} share colour {colors[u]}")
        arcs.append((u, v) if colors[u] < colors[v] else (v, u))
    return Digraph(g.n, arcs)


# ---------------------------------------------------------------------------
# Transitive orientations
# ---------------------------------------------------------------------------


def transitive_orientation(g: Graph, budget: int = DEFAULT_BUDGET) -> Digraph | None:
    """A transitive orientation of ``g``, or ``None`` if ``g`` is not a comparability graph.

    Edges forced to agree (two edges at a common vertex whose other ends
    are non-adjacent must both leave or both enter it) are merged with a
    parity union-find.  A parity clash already proves ``g`` is not a
    comparability graph; otherwise classes are oriented by backtracking,
    completing transitively forced arcs as it goes.
    """
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))
    parity = [0] * len(edges)  # value(e) = value(root) ^ parity[e]

    def find(e: int) -> tuple[int, int]:
        p = 0
        root = e
        while parent[root] != root:
            p ^= parity[root]
            root = parent[root]
        # path compression
        q = p
        while parent[e] != root:
            nxt, pe = parent[e], parity[e]
            parent[e], parity[e] = root, q
            q ^= pe
            e = nxt
        return root, p

    def eid(a: int, b: int) -> tuple[int, int]:
        # x_e = 1 means low -> high; returns (edge, 1 if a -> b is x_e = 1)
        return (index[(a, b)], 1) if a < b else (index[(b, a)], 0)

    for c in range(g.n):
        nbrs = g.neighbors(c)
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if g.has_edge(a, b):
                    continue
                ea, pa = eid(c, a)
                eb, pb = eid(c, b)
                # c -> a iff c -> b
                ra, qa = find(ea)
                rb, qb = find(eb)
                want = pa ^ pb
                if ra == rb:
                    if qa ^ qb != want:
                        return None
                else:
                    parent[rb] = ra
                    parity[rb] = qa ^ qb ^ want

    roots = sorted({find(e)[0] for e in range(len(edges))})
    members: dict[int, list[tuple[int, int]]] = {r: [] for r in roots}
    for e in range(len(edges)):
        r, p = find(e)
        members[r].append((e, p))

    n = g.n
    nodes = 0

    def arcs_of(r: int, val: int):
        for e, p in members[r]:
            a, b = edges[e]
            yield (a, b) if val ^ p else (b, a)

    def forced(a: int, c: int) -> tuple[int, int]:
        e, p = eid(a, c)
        rc, q = find(e)
        return rc, p ^ q

    def propagate(out: list[int], value: dict[int, int], pending: list[tuple[int, int]]) -> bool:
        while pending:
            r, val = pending.pop()
            if r in value:
                if value[r] != val:
                    return False
                continue
            value[r] = val
            new_arcs = list(arcs_of(r, val))
            for a, b in new_arcs:
                out[a] |= 1 << b
            for a, b in new_arcs:
                # a -> b -> c and x -> a -> b must close transitively
                for c in bits(out[b]):
                    if out[c] >> a & 1 or not g.has_edge(a, c):
                        return False
                    pending.append(forced(a, c))
                for x in range(n):
                    if out[x] >> a & 1:
                        if not g.has_edge(x, b):
                            return False
                        pending.append(forced(x, b))
        return True

    def solve(k: int, out: list[int], value: dict[int, int]) -> list[int] | None:
        nonlocal nodes
        while k < len(roots) and roots[k] in value:
            k += 1
        if k == len(roots):
            return out
        for val in (1, 0):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted("transitive orientation budget exhausted", nodes)
            trial_out, trial_value = list(out), dict(value)
            if propagate(trial_out, trial_value, [(roots[k], val)]):
                done = solve(k + 1, trial_out, trial_value)
                if done is not None:
                    return done
        return None

    result = solve(0, [0] * n, {})
    if result is None:
        return None
    return Digraph.from_out(result)


def is_comparability(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return transitive_orientation(g, budget) is not None


@dataclass(frozen=True)
class NeighborhoodCheck:
    ok: bool
    vertex: int | None = None  # first vertex whose neighbourhood is not a comparability graph

    def __bool__(self) -> bool:
        return self.ok


def neighborhoods_are_comparability(g: Graph, budget: int = DEFAULT_BUDGET) -> NeighborhoodCheck:
    """Necessary condition for representability: every N(v) is a comparability graph."""
    for v in range(g.n):
        h, _ = neighborhood(g, v)
        if transitive_orientation(h, budget) is None:
            return NeighborhoodCheck(False, v)
    return NeighborhoodCheck(True)
