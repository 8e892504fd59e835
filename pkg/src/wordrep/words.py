"""Words over vertex letters and the graphs they represent.

Two letters *alternate* when the subsequence made of just those two letters
never repeats a letter twice in a row.  A word represents the graph whose
edges are exactly its alternating pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphFormatError
from .graphs import Digraph, Graph, bits


class Word:
    """Immutable word over non-negative integer letters.

    ``occ[x]`` lists the positions of ``x`` in increasing order.
    """

    __slots__ = ("letters", "occ")

    def __init__(self, letters: Iterable[int]):
        self.letters = tuple(int(x) for x in letters)
        occ: dict[int, list[int]] = {}
        for i, x in enumerate(self.letters):
            if x < 0:
                raise ValueError("letters must be non-negative integers")
            occ.setdefault(x, []).append(i)
        self.occ = {x: tuple(p) for x, p in occ.items()}

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(self.occ)

    def count(self, x: int) -> int:
        return len(self.occ.get(x, ()))

    def restrict(self, keep: Iterable[int]) -> "Word":
        keep = set(keep)
        return Word(x for x in self.letters if x in keep)

    def without(self, drop: Iterable[int]) -> "Word":
        drop = set(drop)
        return Word(x for x in self.letters if x not in drop)

    def relabel(self, mapping: Sequence[int] | dict[int, int]) -> "Word":
        return Word(mapping[x] for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def parse_word(text: str) -> Word:
    """Whitespace (or comma) separated 1-indexed tokens, e.g. ``"1 3 8 7 2"``."""
    tokens = text.replace(",", " ").split()
    letters = []
    for tok in tokens:
        try:
            x = int(tok)
        except ValueError:
            raise GraphFormatError(f"word token {tok!r} is not an integer") from None
        if x < 1:
            raise GraphFormatError(f"word letters are 1-indexed, got {x}")
        letters.append(x - 1)
    return Word(letters)


def format_word(w: Word) -> str:
    return " ".join(str(x + 1) for x in w.letters)


def alternate(w: Word, x: int, y: int) -> bool:
    """True iff ``x`` and ``y`` alternate in ``w``."""
    if x == y:
        raise ValueError("alternation is defined for distinct letters")
    if x not in w.occ or y not in w.occ:
        missing = x if x not in w.occ else y
        raise ValueError(f"letter {missing} does not occur in the word")
    return _alternate(w.occ[x], w.occ[y])


def _alternate(px: Sequence[int], py: Sequence[int]) -> bool:
    merged = sorted([(p, 0) for p in px] + [(p, 1) for p in py])
    return all(a[1] != b[1] for a, b in zip(merged, merged[1:]))


def alternation_masks(w: Word, n: int | None = None) -> list[int]:
    """``masks[x]``: bitmask of letters alternating with ``x``.

    Single left-to-right sweep: a pair breaks as soon as one letter repeats
    with no occurrence of the other in between.
    """
    if n is None:
        n = max(w.occ, default=-1) + 1
    present = 0
    for x in w.occ:
        present |= 1 << x
    broken = [0] * n
    since = [0] * n  # letters seen since the last occurrence of x
    seen = 0
    for x in w.letters:
        if seen >> x & 1:
            stale = present & ~since[x] & ~(1 << x)
            broken[x] |= stale
            for y in bits(stale):
                broken[y] |= 1 << x
        since[x] = 0
        bx = 1 << x
        for y in bits(seen & ~bx):
            since[y] |= bx
        seen |= bx
    return [(present & ~broken[x] & ~(1 << x)) if present >> x & 1 else 0 for x in range(n)]


def represented_graph(w: Word) -> Graph:
    """Graph on letters ``0..max`` whose edges are the alternating pairs.

    The alphabet must be exactly ``{0, ..., max}``; every vertex of a
    represented graph is a letter of the word.
    """
    if not w.letters:
        raise ValueError("the empty word represents no graph")
    n = max(w.occ) + 1
    if len(w.occ) != n:
        raise ValueError(f"alphabet must be 0..{n - 1}; missing {sorted(set(range(n)) - set(w.occ))}")
    return Graph.from_adjacency(alternation_masks(w, n))


def is_k_uniform(w: Word) -> int | None:
    counts = {len(p) for p in w.occ.values()}
    if len(counts) == 1:
        return counts.pop()
    return None


def rotate(w: Word, cut: int) -> Word:
    """``BA`` for ``w = AB`` split before position ``cut``.

    Defined for uniform words only; a rotation of a k-uniform word
    represents the same graph.
    """
    if is_k_uniform(w) is None:
        raise ValueError("rotation is only representation-preserving for uniform words")
    if not 0 <= cut <= len(w):
        raise ValueError(f"cut {cut} outside 0..{len(w)}")
    return Word(w.letters[cut:] + w.letters[:cut])


@dataclass(frozen=True)
class RepVerdict:
    represents: bool
    x: int | None = None
    y: int | None = None
    reason: str | None = None  # alternate-but-nonedge | edge-but-nonalternate | letter-missing

    def __bool__(self) -> bool:
        return self.represents


def verify(w: Word, g: Graph) -> RepVerdict:
    """Check that ``w`` represents ``g`` with the identity letter/vertex map."""
    for v in range(g.n):
        if v not in w.occ:
            return RepVerdict(False, v, None, "letter-missing")
    for x in sorted(w.occ):
        if x >= g.n:
            return RepVerdict(False, x, None, "letter-missing")
    alt = alternation_masks(w, g.n)
    for x in range(g.n):
        diff = alt[x] ^ g.adj[x]
        if diff:
            y = next(bits(diff))
            a, b = min(x, y), max(x, y)
            reason = "alternate-but-nonedge" if alt[x] >> y & 1 else "edge-but-nonalternate"
            return RepVerdict(False, a, b, reason)
    return RepVerdict(True)


def covers_nonarcs(w: Word, d: Digraph, vertex_set: Iterable[int]) -> bool:
    """True iff no non-adjacent pair ``{u, v}`` of ``d`` with ``u`` in the set alternates."""
    alt = alternation_masks(w, d.n)
    for u in vertex_set:
        if u not in w.occ:
            raise ValueError(f"vertex {u} does not occur in the word")
        nonadj = ((1 << d.n) - 1) & ~(d.out[u] | d.inn[u]) & ~(1 << u)
        if alt[u] & nonadj:
            return False
    return True
