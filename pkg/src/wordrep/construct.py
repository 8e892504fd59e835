"""Building representing words.

Two routes are implemented:

* from a semi-transitive orientation: concatenate topological orders of
  the 2-copy digraph (each covers the non-arcs at a chosen vertex set),
  optionally followed by one plain topological order;
* from a transitive orientation: a realizer of the induced poset, whose
  linear orders concatenated give a permutational representation.

A topological order of the ``t``-copy digraph always keeps every edge
alternating.  What needs care is breaking alternation on non-edges.  In a
2-copy order every vertex ``x`` spans an interval between its two
occurrences; a pair alternates exactly when the two intervals cross.  The
scheduler below searches for an order in which no vertex of the target set
crosses any of its non-neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BudgetExhausted,
    InternalVerificationError,
    NotAcyclicError,
    NotComparabilityError,
    NotSemiTransitiveError,
    UncoverablePathError,
)
from .graphs import Digraph, Graph, bits
from .semitrans import is_acyclic, is_semi_transitive, transitive_orientation
from .words import Word, covers_nonarcs, is_k_uniform, represented_graph, verify

LinearOrder = tuple[int, ...]

SCHEDULE_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# t-string digraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TStringDigraph:
    """``t`` chained copies of ``base``; copy ``i`` of ``v`` is node ``v + n*(i-1)``.

    ``(v,i) -> (u,j)`` iff ``i == j`` and ``v -> u``, or ``i < j`` and ``u -> v``.
    """

    base: Digraph
    t: int
    digraph: Digraph = field(repr=False)

    def node(self, v: int, copy: int) -> int:
        return v + self.base.n * (copy - 1)

    def label(self, node: int) -> tuple[int, int]:
        return node % self.base.n, node // self.base.n + 1

    def erase(self, order: Iterable[int]) -> Word:
        """Drop copy indices from a sequence of nodes."""
        return Word(x % self.base.n for x in order)


def t_string(d: Digraph, t: int) -> TStringDigraph:
    if t < 1:
        raise ValueError("t must be at least 1")
    n = d.n
    arcs = []
    for v, u in d.arcs():
        for i in range(t):
            arcs.append((v + n * i, u + n * i))
        for i in range(t):
            for j in range(i + 1, t):
                arcs.append((u + n * i, v + n * j))
    return TStringDigraph(d, t, Digraph(n * t, arcs))


# ---------------------------------------------------------------------------
# Path covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathCover:
    paths: tuple[tuple[int, ...], ...]
    leftover: frozenset[int]


def _shortest_dipath(out: Sequence[int], s: int, t: int) -> tuple[int, ...]:
    parent = {s: s}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for y in bits(out[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    walk = [t]
    while walk[-1] != s:
        walk.append(parent[walk[-1]])
    return tuple(reversed(walk))


def _reachable_pairs(d: Digraph, uncovered: int) -> Iterable[tuple[int, int]]:
    reach = d.reachability()
    for u in bits(uncovered):
        for v in bits(reach[u] & uncovered):
            yield u, v


def greedy_path_cover(d: Digraph) -> PathCover:
    """Repeatedly take a shortest path joining the lexicographically first
    reachable pair of uncovered vertices; what is left is pairwise
    incomparable (and so pairwise non-adjacent)."""
    if not is_acyclic(d):
        raise NotAcyclicError("greedy_path_cover needs an acyclic digraph")
    uncovered = (1 << d.n) - 1
    paths = []
    while True:
        pair = next(iter(_reachable_pairs(d, uncovered)), None)
        if pair is None:
            break
        p = _shortest_dipath(d.out, *pair)
        paths.append(p)
        for v in p:
            uncovered &= ~(1 << v)
    return PathCover(tuple(paths), frozenset(bits(uncovered)))


# ---------------------------------------------------------------------------
# Two-copy scheduling
# ---------------------------------------------------------------------------


def _two_copy_order(d: Digraph, targets: Iterable[int], budget: int = SCHEDULE_BUDGET) -> list[int] | None:
    """Topological order of the 2-copy digraph in which no target vertex
    alternates with a non-neighbour, or ``None`` if none exists.

    Forced precedences (a target's second copy before the first copy of a
    non-adjacent descendant, a non-adjacent ancestor's second copy before the
    target's first copy) are added up front; a cycle there settles
    infeasibility at once.  The rest is a depth-first search that memoises
    failed states.  Second copies are tried first: target ones,
    then the rest, then other first copies, then target first copies.
    """
    n = d.n
    big = 2 * n
    full = (1 << n) - 1
    targets = sorted(set(targets))
    tmask = sum(1 << p for p in targets)
    reach = d.reachability()
    nonadj = [full & ~(d.out[v] | d.inn[v]) & ~(1 << v) for v in range(n)]

    pred = [0] * big
    for v, u in d.arcs():
        pred[u] |= 1 << v
        pred[u + n] |= 1 << (v + n)
        pred[v + n] |= 1 << u
    need = [0] * n
    for p in targets:
        need[p] |= nonadj[p]
        for v in bits(nonadj[p]):
            need[v] |= 1 << p
            if reach[p] >> v & 1:
                pred[v] |= 1 << (p + n)
            elif reach[v] >> p & 1:
                pred[p] |= 1 << (v + n)

    # cycle check on the constraint digraph
    order_check = Digraph(big, [(a, b) for b in range(big) for a in bits(pred[b])])
    if not is_acyclic(order_check):
        return None

    def priority(x: int) -> tuple[int, int]:
        v, copy = x % n, x // n
        if tmask >> v & 1:
            return (0 if copy else 3, v)
        return (1 if copy else 2, v)

    def state(emitted: int, opened: tuple[int, ...]) -> tuple:
        # all that matters of the opening order: which open pairs that must
        # not cross were opened in which order
        later = []
        for i, v in enumerate(opened):
            mask = 0
            for y in opened[i + 1:]:
                if need[v] >> y & 1:
                    mask |= 1 << y
            later.append((v, mask))
        return emitted, tuple(sorted(later))

    isolated = [v for v in range(n) if not (d.out[v] | d.inn[v])]
    ranked = sorted((x for x in range(big) if x % n not in isolated), key=priority)
    failed: set[tuple] = set()
    nodes = 0
    # an isolated vertex written twice in a row crosses nothing
    order: list[int] = [x for v in isolated for x in (v, v + n)]
    start = sum(1 << x for x in order)

    def rec(emitted: int, opened: tuple[int, ...]) -> bool:
        nonlocal nodes
        if len(order) == big:
            return True
        key = state(emitted, opened)
        if key in failed:
            return False
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted("two-copy scheduling budget exhausted", nodes)
        for x in ranked:
            if emitted >> x & 1 or pred[x] & ~emitted:
                continue
            v = x % n
            if v in opened:
                i = opened.index(v)
                # closing v crosses every interval opened after it and still open
                if any(need[v] >> y & 1 for y in opened[i + 1:]):
                    continue
                nxt = opened[:i] + opened[i + 1:]
            else:
                nxt = opened + (v,)
            order.append(x)
            if rec(emitted | (1 << x), nxt):
                return True
            order.pop()
        failed.add(key)
        return False

    if rec(start, ()):
        return order
    return None


def _cover_block(d: Digraph, targets: Sequence[int], budget: int = SCHEDULE_BUDGET) -> Word | None:
    order = _two_copy_order(d, targets, budget)
    if order is None:
        return None
    return Word(x % d.n for x in order)


def word_from_path(d: Digraph, p: Sequence[int]) -> Word:
    """2-uniform word, a topological order of the 2-copy digraph, in which
    no vertex of ``p`` alternates with a non-neighbour.

    Raises :class:`UncoverablePathError` when no such order exists, which
    does happen for some paths of length >= 1 (two triangles sharing a
    vertex, oriented as two transitive triangles, is the smallest case).
    A single vertex can always be covered.
    """
    if not is_semi_transitive(d):
        raise NotSemiTransitiveError("word_from_path needs a semi-transitive digraph")
    for a, b in zip(p, p[1:]):
        if not d.has_arc(a, b):
            raise ValueError(f"{list(p)} is not a directed path: missing arc {a} -> {b}")
    w = _cover_block(d, p)
    if w is None:
        raise UncoverablePathError(f"the non-arcs at path {list(p)} admit no 2-uniform cover")
    _check_block(d, w, p)
    return w


def _check_block(d: Digraph, w: Word, targets: Iterable[int]) -> None:
    g = represented_graph(w) if w.letters else Graph(0)
    if any(not g.has_edge(u, v) for u, v in d.arcs()):
        raise InternalVerificationError("block lost an edge of the digraph")
    if not covers_nonarcs(w, d, targets):
        raise InternalVerificationError("block fails to cover the non-arcs at its targets")


@dataclass(frozen=True)
class WordConstruction:
    """Outcome of :func:`build_word`: the word and how it was assembled."""

    word: Word
    blocks: tuple[tuple[int, ...], ...]  # target sets of the 2-copy blocks, in order
    leftover: frozenset[int]  # vertices covered only by the closing single copy
    closing_copy: bool

    @property
    def multiplicity(self) -> int:
        return 2 * len(self.blocks) + (1 if self.closing_copy else 0)


def _path_candidates(d: Digraph, uncovered: int) -> Iterable[tuple[int, ...]]:
    seen = set()
    for u, v in _reachable_pairs(d, uncovered):
        p = _shortest_dipath(d.out, u, v)
        if p not in seen:
            seen.add(p)
            yield p


def build_word(d: Digraph, budget: int = SCHEDULE_BUDGET) -> WordConstruction:
    """Uniform word representing the underlying graph of the semi-transitive ``d``.

    Greedy stage: take shortest paths between reachable uncovered pairs, in
    lexicographic order of the pairs, and add a 2-copy block covering the
    non-arcs at each path.  A path whose block does not exist is skipped.
    Once no path qualifies and the uncovered vertices are pairwise
    incomparable, they are finished with one plain topological order that
    lists them consecutively, reversed with respect to their first
    occurrences in the first block.  If comparable uncovered pairs remain
    (their paths were all skipped), blocks for two uncovered vertices at
    least one of which lies in such a pair, or failing that for one vertex,
    are added first; a single vertex always has a block.

    Edgeless graphs get one order followed by its reverse.  The result is
    verified against the underlying graph before returning.
    """
    if not is_semi_transitive(d):
        raise NotSemiTransitiveError("build_word needs a semi-transitive digraph")
    n = d.n
    g = d.underlying()
    if n == 0:
        return WordConstruction(Word(()), (), frozenset(), False)
    if n == 1:
        return WordConstruction(Word((0,)), (), frozenset({0}), True)

    uncovered = (1 << n) - 1
    blocks: list[tuple[int, ...]] = []
    words: list[Word] = []

    def take(targets: tuple[int, ...], w: Word) -> None:
        nonlocal uncovered
        blocks.append(targets)
        words.append(w)
        for v in targets:
            uncovered &= ~(1 << v)

    def first_block(candidates: Iterable[tuple[int, ...]]) -> bool:
        for cand in candidates:
            w = _cover_block(d, cand, budget)
            if w is not None:
                take(cand, w)
                return True
        return False

    while True:
        if first_block(_path_candidates(d, uncovered)):
            continue
        comparable = list(_reachable_pairs(d, uncovered))
        if not comparable:
            break
        involved = {x for pair in comparable for x in pair}
        ids = list(bits(uncovered))
        others = [(u, v) for i, u in enumerate(ids) for v in ids[i + 1:] if (u in involved or v in involved)]
        if first_block(comparable + [p for p in others if p not in comparable]):
            continue
        u = comparable[0][0]
        if not first_block([(u,)]):
            raise InternalVerificationError(f"single vertex {u} could not be covered")

    leftover = frozenset(bits(uncovered))
    closing = False
    parts = list(words)
    if not words:
        # Edgeless: one order, then its reverse.
        order = sorted(leftover)
        parts = [Word(order), Word(order[::-1])]
        blocks = [tuple(order)]
        leftover = frozenset()
    elif len(leftover) >= 2:
        first_seen = {x: i for i, x in reversed(list(enumerate(words[0].letters)))}
        row = sorted(leftover, key=lambda x: -first_seen[x])
        parts.append(Word(_topsort_with_row(d, row)))
        closing = True

    word = Word(x for part in parts for x in part.letters)
    result = WordConstruction(word, tuple(blocks), leftover, closing)
    k = is_k_uniform(word)
    if k is None or k != result.multiplicity:
        raise InternalVerificationError("constructed word is not uniform")
    verdict = verify(word, g)
    if not verdict:
        raise InternalVerificationError(f"constructed word does not represent the graph: {verdict}")
    return result


def _topsort_with_row(d: Digraph, row: Sequence[int]) -> list[int]:
    """Topological order of ``d`` listing the pairwise incomparable ``row`` consecutively, in order."""
    reach = d.reachability()
    rowmask = sum(1 << v for v in row)
    before = 0
    for v in range(d.n):
        if reach[v] & rowmask and not rowmask >> v & 1:
            before |= 1 << v
    topo = d.topological_order()
    return [v for v in topo if before >> v & 1] + list(row) + [
        v for v in topo if not before >> v & 1 and not rowmask >> v & 1
    ]


def word_from_orientation(d: Digraph) -> Word:
    return build_word(d).word


# ---------------------------------------------------------------------------
# Posets, dimension and permutational representations
# ---------------------------------------------------------------------------


class Poset:
    """Strict partial order on ``0..n-1``; ``up[a]`` is the bitmask of ``b`` with ``a < b``."""

    __slots__ = ("n", "up")

    def __init__(self, n: int, relations: Iterable[tuple[int, int]] = ()):
        out = [0] * n
        for a, b in relations:
            out[a] |= 1 << b
        d = Digraph.from_out(out)
        if not is_acyclic(d):
            raise ValueError("order relations contain a cycle")
        self.n = n
        self.up = tuple(d.reachability())

    @classmethod
    def from_digraph(cls, d: Digraph) -> "Poset":
        return cls(d.n, d.arcs())

    def less(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def comparable(self, a: int, b: int) -> bool:
        return self.less(a, b) or self.less(b, a)

    def relations(self) -> set[tuple[int, int]]:
        return {(a, b) for a in range(self.n) for b in bits(self.up[a])}

    def comparability_graph(self) -> Graph:
        return Graph(self.n, [(a, b) for a, b in self.relations()])

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        pos = {x: i for i, x in enumerate(order)}
        return sorted(order) == list(range(self.n)) and all(pos[a] < pos[b] for a, b in self.relations())

    def critical_pairs(self) -> list[tuple[int, int]]:
        """Incomparable ``(a, b)`` with ``down(a) <= down(b)`` and ``up(b) <= up(a)``."""
        down = [0] * self.n
        for a in range(self.n):
            for b in bits(self.up[a]):
                down[b] |= 1 << a
        pairs = []
        for a in range(self.n):
            for b in range(self.n):
                if a == b or self.comparable(a, b):
                    continue
                if down[a] & ~down[b] == 0 and self.up[b] & ~self.up[a] == 0:
                    pairs.append((a, b))
        return pairs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, relations={sorted(self.relations())})"


def intersect_orders(orders: Sequence[Sequence[int]]) -> Poset:
    """Poset where ``a < b`` iff ``a`` precedes ``b`` in every order."""
    if not orders:
        raise ValueError("need at least one order")
    n = len(orders[0])
    positions = [{x: i for i, x in enumerate(o)} for o in orders]
    rel = [(a, b) for a in range(n) for b in range(n) if a != b and all(p[a] < p[b] for p in positions)]
    return Poset(n, rel)


def _realizer(p: Poset, k: int, budget: int, counter: list[int]) -> list[LinearOrder] | None:
    """``k`` linear extensions reversing every critical pair, or ``None``.

    Each critical pair ``(a, b)`` is assigned to an extension that will put
    ``b`` below ``a``; an assignment works iff each extension's added
    relations stay acyclic together with ``p``.  Extensions are opened in
    order, which removes their permutation symmetry.
    """
    pairs = p.critical_pairs()
    n = p.n
    if not pairs:
        return [tuple(Digraph.from_out(p.up).topological_order())]
    if k == 0:
        return None
    pairs.sort()
    closures = [list(p.up) for _ in range(k)]

    def add(closure: list[int], lo: int, hi: int) -> list[int] | None:
        if lo == hi or closure[hi] >> lo & 1:
            return None
        new = list(closure)
        below = (1 << hi) | closure[hi]
        for x in range(n):
            if x == lo or closure[x] >> lo & 1:
                new[x] |= below
        return new

    def rec(i: int, used: int) -> bool:
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExhausted("realizer search budget exhausted", counter[0])
        if i == len(pairs):
            return True
        a, b = pairs[i]
        for c in range(min(used + 1, k)):
            if closures[c][b] >> a & 1:
                if rec(i + 1, used):
                    return True
                continue
            new = add(closures[c], b, a)
            if new is None:
                continue
            old = closures[c]
            closures[c] = new
            if rec(i + 1, max(used, c + 1)):
                return True
            closures[c] = old
        return False

    if not rec(0, 0):
        return None
    return [tuple(Digraph.from_out(c).topological_order()) for c in closures]


def poset_dimension(p: Poset, kmax: int, budget: int = 10_000_000) -> tuple[int, list[LinearOrder]] | None:
    """Least ``k <= kmax`` with a realizer of size ``k``, and that realizer."""
    counter = [0]
    for k in range(1, kmax + 1):
        realizer = _realizer(p, k, budget, counter)
        if realizer is not None:
            if intersect_orders(realizer) != p:
                raise InternalVerificationError("realizer does not intersect to the poset")
            return len(realizer), realizer
    return None


def cocktail_poset(k: int) -> Poset:
    """``a_i < b_j`` for ``i != j``; a_i is ``i``, b_i is ``k + i``."""
    return Poset(2 * k, [(i, k + j) for i in range(k) for j in range(k) if i != j])


def cocktail_realizer(k: int) -> list[LinearOrder]:
    """The ``k`` explicit linear orders realising :func:`cocktail_poset`.

    Base order ``a_1 .. a_{k-1} b_k a_k b_{k-1} .. b_1``, and for each
    ``m < k`` the base order with ``a_k, b_k`` swapped with ``a_m, b_m``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    a = list(range(k))
    b = [k + i for i in range(k)]
    base = a[: k - 1] + [b[k - 1], a[k - 1]] + b[k - 2::-1]
    orders = [tuple(base)]
    for m in range(k - 1):
        swap = {a[k - 1]: a[m], a[m]: a[k - 1], b[k - 1]: b[m], b[m]: b[k - 1]}
        orders.append(tuple(swap.get(x, x) for x in base))
    if intersect_orders(orders) != cocktail_poset(k):
        raise InternalVerificationError("cocktail realizer does not intersect to the poset")
    return orders


def permutational_representation(g: Graph, kmax: int | None = None, budget: int = 10_000_000) -> list[LinearOrder] | None:
    """Fewest permutations whose concatenation represents ``g``.

    ``None`` when ``g`` is not a comparability graph or needs more than
    ``kmax`` permutations.  Dimension does not depend on which transitive
    orientation is used, so any one will do.
    """
    if g.n == 0:
        return []
    if kmax is None:
        kmax = max(2, g.n // 2)
    d = transitive_orientation(g, budget)
    if d is None:
        return None
    found = poset_dimension(Poset.from_digraph(d), kmax, budget)
    if found is None:
        return None
    _, orders = found
    word = Word(x for o in orders for x in o)
    if not verify(word, g):
        raise InternalVerificationError("permutational representation does not verify")
    return orders


def format_blocks(orders: Sequence[Sequence[int]]) -> str:
    """``"1 2 3 | 3 2 1"`` style, 1-indexed."""
    return " | ".join(" ".join(str(x + 1) for x in o) for o in orders)


def parse_blocks(text: str) -> list[LinearOrder]:
    from .words import parse_word

    return [tuple(parse_word(chunk).letters) for chunk in text.split("|")]


# ---------------------------------------------------------------------------
# Apex vertices and module substitution
# ---------------------------------------------------------------------------


def apex_transfer(blocks: Sequence[Sequence[int]], apex: int) -> Word:
    """Put ``apex`` in front of each permutation block."""
    if not blocks:
        raise ValueError("need at least one block")
    letters = set(blocks[0])
    if apex in letters:
        raise ValueError("apex letter already used by the blocks")
    for blk in blocks:
        if len(blk) != len(letters) or set(blk) != letters:
            raise ValueError("blocks must be permutations of the same letters")
    return Word(x for blk in blocks for x in (apex, *blk))


def apex_transfer_inverse(w: Word, apex: int) -> list[LinearOrder]:
    """Strip ``apex`` from a uniform word, returning the permutation blocks between its occurrences.

    The word is first rotated to start with ``apex``.  Raises ``ValueError``
    if some gap is not a permutation of the remaining letters.
    """
    if apex not in w.occ:
        raise ValueError(f"apex letter {apex} does not occur")
    if is_k_uniform(w) is None:
        raise ValueError("word must be uniform")
    start = w.occ[apex][0]
    letters = w.letters[start:] + w.letters[:start]
    others = set(w.occ) - {apex}
    blocks: list[LinearOrder] = []
    current: list[int] = []
    for x in letters[1:] + (apex,):
        if x == apex:
            if len(current) != len(others) or set(current) != others:
                raise ValueError("apex gaps are not permutations: the word does not represent an apex graph")
            blocks.append(tuple(current))
            current = []
        else:
            current.append(x)
    return blocks


def substitute_module(g: Graph, v: int, h: Graph) -> Graph:
    """Replace ``v`` by a copy of the comparability graph ``h``.

    ``h``'s vertex 0 takes the label ``v``; its other vertices become
    ``g.n, g.n + 1, ...``.  Every new vertex inherits ``N_g(v)``.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if h.n == 0:
        raise ValueError("module must be non-empty")
    if transitive_orientation(h) is None:
        raise NotComparabilityError("module is not a comparability graph")
    label = [v] + [g.n + i for i in range(h.n - 1)]
    edges = [(a, b) for a, b in g.edges()]
    nbrs = [u for u in bits(g.adj[v])]
    for x in label[1:]:
        edges += [(x, u) for u in nbrs]
    edges += [(label[a], label[b]) for a, b in h.edges()]
    return Graph(g.n + h.n - 1, edges)
