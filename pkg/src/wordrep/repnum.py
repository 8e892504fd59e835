"""Representation numbers: exact uniform-word search, circle graphs, bounds.

Searches here build words over the graph's own vertex labels.  Rotating a
uniform word keeps the graph it represents, so every search may assume the
word starts with a fixed vertex.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .construct import (
    Poset,
    apex_transfer,
    build_word,
    poset_dimension,
)
from .errors import BudgetExhausted, InternalVerificationError
from .graphs import Digraph, Graph, bits, popcount
from .semitrans import (
    DEFAULT_BUDGET,
    find_semi_transitive_orientation,
    neighborhoods_are_comparability,
    transitive_orientation,
)
from .words import Word, format_word, is_k_uniform, verify

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

SEARCH_BUDGET = 20_000_000


# ---------------------------------------------------------------------------
# Chord diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChordDiagram:
    """Chord labels read around the circle; every label occurs exactly twice."""

    endpoints: tuple[int, ...]

    def __post_init__(self):
        seen: dict[int, int] = {}
        for x in self.endpoints:
            seen[x] = seen.get(x, 0) + 1
        bad = [x for x, c in seen.items() if c != 2]
        if bad:
            raise ValueError(f"chord labels must occur exactly twice; offending {sorted(bad)}")

    @property
    def chords(self) -> dict[int, tuple[int, int]]:
        ends: dict[int, list[int]] = {}
        for i, x in enumerate(self.endpoints):
            ends.setdefault(x, []).append(i)
        return {x: (p[0], p[1]) for x, p in ends.items()}

    def crossing(self, x: int, y: int) -> bool:
        a, b = self.chords[x]
        c, d = self.chords[y]
        return (a < c < b) != (a < d < b)

    def interlacement_graph(self) -> Graph:
        labels = sorted(self.chords)
        if labels != list(range(len(labels))):
            raise ValueError("chord labels must be 0..n-1")
        n = len(labels)
        return Graph(n, [(x, y) for x in range(n) for y in range(x + 1, n) if self.crossing(x, y)])

    def rotated(self, shift: int) -> "ChordDiagram":
        s = shift % len(self.endpoints) if self.endpoints else 0
        return ChordDiagram(self.endpoints[s:] + self.endpoints[:s])


def word_to_chords(w: Word) -> ChordDiagram:
    if is_k_uniform(w) != 2:
        raise ValueError("chord diagrams correspond to 2-uniform words")
    return ChordDiagram(w.letters)


def chords_to_word(c: ChordDiagram, start: int = 0) -> Word:
    """Read the endpoints clockwise from position ``start``."""
    return Word(c.rotated(start).endpoints)


# ---------------------------------------------------------------------------
# Exact k-uniform word search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    status: str  # yes | no | unknown
    word: Word | None
    nodes: int

    @property
    def yes(self) -> bool:
        return self.status == YES

    @property
    def no(self) -> bool:
        return self.status == NO


class _UniformSearch:
    """Letters placed left to right; a pair is broken once one letter
    repeats with no occurrence of the other in between.  Adjacent pairs may
    never break, and when a letter has all its copies every non-adjacent
    partner must already be broken (alternation could no longer fail)."""

    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.count = [0] * g.n
        self.since = [0] * g.n
        self.broken = [0] * g.n
        self.placed = 0
        self.word: list[int] = []
        self.stack: list[tuple] = []

    def options(self) -> list[int]:
        return [x for x in range(self.n) if self.count[x] < self.k]

    def done(self) -> bool:
        return len(self.word) == self.n * self.k

    def step(self, x: int) -> bool:
        bx = 1 << x
        adj = self.g.adj[x]
        newly = 0
        if self.count[x]:
            newly = self.full & ~self.since[x] & ~bx & ~self.broken[x]
            if newly & adj:
                return False
        if self.count[x] + 1 == self.k:
            if self.full & ~(self.broken[x] | newly) & ~adj & ~bx:
                return False
        self.stack.append((x, list(self.since), newly, self.placed))
        self.broken[x] |= newly
        for y in bits(newly):
            self.broken[y] |= bx
        self.since[x] = 0
        for y in bits(self.placed & ~bx):
            self.since[y] |= bx
        self.placed |= bx
        self.count[x] += 1
        self.word.append(x)
        return True

    def undo(self) -> None:
        x, since, newly, placed = self.stack.pop()
        bx = 1 << x
        self.word.pop()
        self.count[x] -= 1
        self.placed = placed
        self.since = since
        self.broken[x] &= ~newly
        for y in bits(newly):
            self.broken[y] &= ~bx


class _ChordSearch:
    """2-uniform search as chord placement.

    Open chords must close in an order fixed by adjacency: of two open
    chords the earlier one closes first iff they cross.  Opening a chord is
    allowed only where that keeps the order consistent, and a chord can
    close only once all its neighbours have been opened.
    """

    def __init__(self, g: Graph, k: int = 2):
        self.g = g
        self.n = g.n
        self.queue: list[int] = []  # open chords in closing order
        self.opened = 0
        self.closed = 0
        self.word: list[int] = []
        self.stack: list[tuple] = []

    def options(self) -> list[int]:
        opts = []
        if self.queue:
            opts.append(self.queue[0])
        opts.extend(x for x in range(self.n) if not self.opened >> x & 1)
        return opts

    def done(self) -> bool:
        return len(self.word) == 2 * self.n

    def step(self, x: int) -> bool:
        adj = self.g.adj[x]
        if self.opened >> x & 1:
            if not self.queue or self.queue[0] != x or adj & ~self.opened:
                return False
            self.stack.append(("close", x))
            self.queue.pop(0)
            self.closed |= 1 << x
        else:
            if adj & self.closed:
                return False
            slot = 0
            seen_nonadjacent = False
            for i, y in enumerate(self.queue):
                if adj >> y & 1:
                    if seen_nonadjacent:
                        return False
                    slot = i + 1
                else:
                    seen_nonadjacent = True
            self.stack.append(("open", x))
            self.queue.insert(slot, x)
            self.opened |= 1 << x
        self.word.append(x)
        return True

    def undo(self) -> None:
        kind, x = self.stack.pop()
        self.word.pop()
        if kind == "close":
            self.closed &= ~(1 << x)
            self.queue.insert(0, x)
        else:
            self.queue.remove(x)
            self.opened &= ~(1 << x)


def _new_search(g: Graph, k: int):
    return _ChordSearch(g) if k == 2 else _UniformSearch(g, k)


def _dfs(search, budget: int, counter: list[int], stop_at: int | None = None, collect: list | None = None) -> bool:
    """Depth-first completion; with ``stop_at`` the partial words of that length are collected instead."""
    if stop_at is not None and len(search.word) == stop_at:
        collect.append(tuple(search.word))
        return False
    if search.done():
        return True
    for x in search.options():
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExhausted("word search budget exhausted", counter[0])
        if search.step(x):
            if _dfs(search, budget, counter, stop_at, collect):
                return True
            search.undo()
    return False


def _run_prefix(g: Graph, k: int, prefix: tuple[int, ...], budget: int):
    search = _new_search(g, k)
    for x in prefix:
        search.step(x)
    counter = [0]
    try:
        ok = _dfs(search, budget, counter)
    except BudgetExhausted:
        return UNKNOWN, None, counter[0]
    return (YES if ok else NO), (tuple(search.word) if ok else None), counter[0]


def is_k_representable(g: Graph, k: int, budget: int = SEARCH_BUDGET, jobs: int = 1) -> SearchResult:
    """Exhaustive search for a ``k``-uniform word representing ``g``.

    Complete within ``budget`` search nodes, otherwise ``unknown``.  With
    ``jobs > 1`` the search is split over its first few placements; the
    witness returned is the one the serial search would find.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n == 0:
        return SearchResult(YES, Word(()), 0)
    search = _new_search(g, k)
    search.step(0)
    counter = [0]
    if jobs <= 1:
        try:
            ok = _dfs(search, budget, counter)
        except BudgetExhausted:
            return SearchResult(UNKNOWN, None, counter[0])
        if not ok:
            return SearchResult(NO, None, counter[0])
        word = Word(search.word)
        _certify(word, g, k)
        return SearchResult(YES, word, counter[0])

    prefixes: list[tuple[int, ...]] = []
    depth = min(g.n * k, 4)
    try:
        if _dfs(search, budget, counter, stop_at=None if depth <= 1 else depth, collect=prefixes):
            word = Word(search.word)
            _certify(word, g, k)
            return SearchResult(YES, word, counter[0])
    except BudgetExhausted:
        return SearchResult(UNKNOWN, None, counter[0])
    total = counter[0]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_prefix, g, k, p, budget) for p in prefixes]
        unknown = False
        for fut in futures:
            status, word, nodes = fut.result()
            total += nodes
            if status == YES:
                for rest in futures:
                    rest.cancel()
                w = Word(word)
                _certify(w, g, k)
                return SearchResult(YES, w, total)
            unknown = unknown or status == UNKNOWN
    return SearchResult(UNKNOWN if unknown else NO, None, total)


def _certify(word: Word, g: Graph, k: int) -> None:
    if is_k_uniform(word) != k or not verify(word, g):
        raise InternalVerificationError("word search returned a witness that does not verify")


@dataclass(frozen=True)
class CircleResult:
    status: str
    diagram: ChordDiagram | None
    nodes: int


def is_circle_graph(g: Graph, budget: int = SEARCH_BUDGET, jobs: int = 1) -> CircleResult:
    """Circle graphs are exactly the 2-representable graphs."""
    res = is_k_representable(g, 2, budget, jobs)
    diagram = word_to_chords(res.word) if res.yes and g.n else (ChordDiagram(()) if res.yes else None)
    return CircleResult(res.status, diagram, res.nodes)


# ---------------------------------------------------------------------------
# Representation number
# ---------------------------------------------------------------------------


@dataclass
class RepReport:
    representable: str = UNKNOWN
    orientation: Digraph | None = None
    word: Word | None = None
    repnum_low: int | None = None
    repnum_high: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.repnum_low is not None and self.repnum_low == self.repnum_high

    def machine_lines(self) -> list[str]:
        lines = [f"representable={self.representable}"]
        if self.exact:
            lines.append(f"repnum={self.repnum_low}")
        if self.repnum_low is not None:
            lines.append(f"repnum_low={self.repnum_low}")
        if self.repnum_high is not None:
            lines.append(f"repnum_high={self.repnum_high}")
        if self.word is not None:
            lines.append(f"word={format_word(self.word)}")
        if self.orientation is not None:
            lines.append("orientation=" + " ".join(f"{u + 1}>{v + 1}" for u, v in self.orientation.arcs()))
        for note in self.notes:
            lines.append(f"note={note}")
        return lines

    def render_machine(self) -> str:
        return "\n".join(self.machine_lines()) + "\n"

    def render_text(self) -> str:
        out = [f"representable: {self.representable}"]
        if self.exact:
            out.append(f"repnum={self.repnum_low}")
        elif self.repnum_low is not None or self.repnum_high is not None:
            lo = "?" if self.repnum_low is None else self.repnum_low
            hi = "?" if self.repnum_high is None else self.repnum_high
            out.append(f"repnum between {lo} and {hi}")
        if self.word is not None:
            out.append(f"word: {format_word(self.word)}")
        out.extend(f"  {note}" for note in self.notes)
        return "\n".join(out) + "\n"


def find_apex(g: Graph) -> int | None:
    for v in range(g.n):
        if g.degree(v) == g.n - 1:
            return v
    return None


def _apex_route(g: Graph, report: RepReport, budget: int) -> bool:
    """Exact value for an apex over a comparability graph: the poset dimension."""
    apex = find_apex(g)
    if apex is None:
        return False
    rest = [v for v in range(g.n) if v != apex]
    h, index = g.induced(rest)
    d = transitive_orientation(h, budget)
    if d is None:
        return False
    found = poset_dimension(Poset.from_digraph(d), max(2, h.n // 2), budget)
    if found is None:
        return False
    dim, orders = found
    blocks = [tuple(index[x] for x in o) for o in orders]
    word = apex_transfer(blocks, apex)
    if not verify(word, g):
        raise InternalVerificationError("apex transfer word does not verify")
    report.word = word
    report.repnum_low = report.repnum_high = dim
    report.notes.append(f"apex {apex + 1} over a comparability graph of poset dimension {dim}")
    return True


def representation_number(g: Graph, budget: int = SEARCH_BUDGET, jobs: int = 1) -> RepReport:
    """Representability verdict and bounds on the representation number.

    Pipeline: neighbourhood filter, orientation search, constructed word
    (upper bound), apex/dimension route (exact when it applies), then word
    search for ``k = 2, 3, ...`` below the upper bound.
    """
    report = RepReport()
    n = g.n
    if n == 0 or g.m == n * (n - 1) // 2:
        report.representable = YES
        report.word = Word(range(n))
        report.repnum_low = report.repnum_high = 1
        report.notes.append("complete graph")
        return report

    check = neighborhoods_are_comparability(g, budget)
    if not check:
        report.representable = NO
        report.notes.append(f"neighbourhood of {check.vertex + 1} is not a comparability graph")
        return report
    try:
        res = find_semi_transitive_orientation(g, budget, jobs=jobs, fix_first_edge=True)
    except BudgetExhausted:
        report.notes.append("orientation search budget exhausted")
        return report
    if not res.found:
        report.representable = NO
        report.notes.append(f"no semi-transitive orientation ({res.nodes_explored} search nodes)")
        return report

    report.representable = YES
    report.orientation = res.witness
    built = build_word(res.witness)
    report.word = built.word
    report.repnum_high = built.multiplicity
    report.repnum_low = 2
    report.notes.append(f"orientation word of multiplicity {built.multiplicity}")

    if _apex_route(g, report, budget):
        return report

    k = 2
    while k < report.repnum_high:
        res_k = is_k_representable(g, k, budget, jobs)
        if res_k.yes:
            report.word = res_k.word
            report.repnum_high = k
            report.notes.append(f"{k}-uniform word found by search")
            break
        if res_k.status == UNKNOWN:
            report.notes.append(f"{k}-uniform search budget exhausted")
            break
        report.repnum_low = k + 1
        report.notes.append(f"no {k}-uniform word (exhaustive, {res_k.nodes} nodes)")
        k += 1
    return report


# ---------------------------------------------------------------------------
# Maximum clique
# ---------------------------------------------------------------------------


def _longest_chain(d: Digraph) -> list[int]:
    order = d.topological_order()
    best = {v: [v] for v in order}
    for v in order:
        for u in bits(d.out[v]):
            if len(best[v]) + 1 > len(best[u]):
                best[u] = best[v] + [u]
    return max(best.values(), key=len, default=[])


def brute_force_clique(g: Graph) -> tuple[int, ...]:
    """Bron-Kerbosch with pivoting on bitmasks."""
    best = 0

    def expand(r: int, p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            if popcount(r) > popcount(best):
                best = r
            return
        if popcount(r) + popcount(p) <= popcount(best):
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & g.adj[u]))
        for v in bits(p & ~g.adj[pivot]):
            expand(r | (1 << v), p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, g.full_mask, 0)
    return tuple(bits(best))


@dataclass(frozen=True)
class CliqueResult:
    vertices: tuple[int, ...]
    method: str  # chains | brute-force


def max_clique(g: Graph, budget: int = DEFAULT_BUDGET) -> CliqueResult:
    """Largest clique: a vertex plus a longest chain in a transitive
    orientation of its neighbourhood, best over all vertices.

    Falls back to exhaustive search when some neighbourhood is not a
    comparability graph.
    """
    if g.n == 0:
        return CliqueResult((), "chains")
    best: list[int] = []
    for v in range(g.n):
        h, index = g.induced(list(bits(g.adj[v])))
        d = transitive_orientation(h, budget)
        if d is None:
            return CliqueResult(brute_force_clique(g), "brute-force")
        chain = [index[x] for x in _longest_chain(d)] + [v]
        if len(chain) > len(best):
            best = chain
    return CliqueResult(tuple(sorted(best)), "chains")

