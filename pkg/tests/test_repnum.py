import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import graphs, uniform_words
from wordrep.graphs import (
    Graph,
    census,
    co_t2,
    cocktail,
    cocktail_apex,
    complete,
    complete_bipartite,
    cycle,
    kneser,
    path,
    petersen,
    prism,
    wheel,
)
from wordrep.repnum import (
    NO,
    UNKNOWN,
    YES,
    ChordDiagram,
    RepReport,
    brute_force_clique,
    chords_to_word,
    find_apex,
    is_circle_graph,
    is_k_representable,
    max_clique,
    representation_number,
    word_to_chords,
)
from wordrep.semitrans import find_semi_transitive_orientation, neighborhoods_are_comparability
from wordrep.construct import build_word
from wordrep.words import Word, is_k_uniform, parse_word, represented_graph, verify


def circle_edge_sets(n: int) -> set[frozenset]:
    """Labelled interlacement graphs of every chord diagram on n chords."""
    out = set()
    for m in oracles.perfect_matchings(list(range(2 * n))):
        out.add(frozenset(oracles.alternation_edges(oracles.chord_word(m))))
    return out


def is_circle_by_enumeration(g: Graph, diagrams: set[frozenset]) -> bool:
    for perm in itertools.permutations(range(g.n)):
        if frozenset(frozenset((perm[u], perm[v])) for u, v in g.edges()) in diagrams:
            return True
    return False


def random_outerplanar(n: int, rng) -> Graph:
    """Hamiltonian cycle plus non-crossing chords of a random polygon triangulation, then random deletions."""
    edges = {(i, (i + 1) % n) for i in range(n)}

    def triangulate(poly):
        if len(poly) < 4:
            return
        i = rng.randrange(1, len(poly) - 1)
        a, b, c = poly[0], poly[i], poly[-1]
        for x, y in ((a, b), (b, c)):
            edges.add((x, y))
        triangulate(poly[: i + 1])
        triangulate(poly[i:])

    triangulate(list(range(n)))
    kept = [tuple(sorted(e)) for e in edges if e[0] != e[1] and rng.random() < 0.8]
    return Graph(n, set(kept))


# chord diagrams


def test_chord_examples():
    crossing = word_to_chords(parse_word("1 2 1 2"))
    assert crossing.interlacement_graph() == complete(2)
    nested = word_to_chords(parse_word("1 1 2 2"))
    assert nested.interlacement_graph() == Graph(2)
    assert chords_to_word(crossing, 1) == Word([1, 0, 1, 0])
    with pytest.raises(ValueError):
        word_to_chords(parse_word("1 2 1"))
    with pytest.raises(ValueError):
        ChordDiagram((0, 0, 1))


@given(uniform_words(max_letters=7, max_k=2).filter(lambda w: len(w) == 2 * len(set(w))), st.integers(0, 13))
def test_chord_round_trip(letters, start):
    w = Word(letters)
    c = word_to_chords(w)
    assert c.interlacement_graph() == represented_graph(w)
    assert chords_to_word(c) == w
    again = word_to_chords(chords_to_word(c, start))
    assert again.interlacement_graph() == represented_graph(w)


# k-uniform search


def test_is_k_representable_examples():
    for n in range(1, 6):
        res = is_k_representable(complete(n), 1)
        assert res.yes and verify(res.word, complete(n))
    assert not is_k_representable(cycle(4), 1).yes
    assert is_k_representable(prism(3), 2).no
    res = is_k_representable(prism(3), 3)
    assert res.yes and is_k_uniform(res.word) == 3 and verify(res.word, prism(3))
    assert is_k_representable(wheel(5), 3).no
    assert is_k_representable(Graph(0), 2).yes
    with pytest.raises(ValueError):
        is_k_representable(cycle(4), 0)


def test_budget_gives_unknown():
    res = is_k_representable(petersen(), 2, budget=100)
    assert res.status == UNKNOWN and res.word is None


def test_parallel_search_agrees():
    for g, k in ((prism(3), 2), (prism(3), 3), (cycle(5), 2), (wheel(5), 2)):
        assert is_k_representable(g, k).status == is_k_representable(g, k, jobs=2).status


def test_search_matches_word_enumeration():
    cases = [(g, k) for n in range(1, 5) for g in census(n) for k in (1, 2)]
    cases += [(g, 3) for g in census(3)] + [(g, 3) for g in census(4)[:4]]
    for g, k in cases:
        res = is_k_representable(g, k)
        assert res.yes == oracles.k_representable(g.n, g.edges(), k)


def _first_occurrence_order(w: Word) -> list[int]:
    seen = []
    for x in w.letters:
        if x not in seen:
            seen.append(x)
    return seen


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=6), st.integers(1, 3))
def test_representability_grows_with_k(g, k):
    res = is_k_representable(g, k)
    if res.yes:
        longer = Word(_first_occurrence_order(res.word) + list(res.word.letters))
        assert is_k_uniform(longer) == k + 1 and verify(longer, g)
        assert is_k_representable(g, k + 1).yes


# circle graphs


def test_circle_examples():
    assert is_circle_graph(wheel(5)).status == NO
    assert is_circle_graph(prism(3)).status == NO
    res = is_circle_graph(cycle(6))
    assert res.status == YES and res.diagram.interlacement_graph() == cycle(6)


def test_circle_census_matches_enumeration():
    for n in range(1, 6):
        diagrams = circle_edge_sets(n)
        for g in census(n):
            res = is_circle_graph(g)
            assert (res.status == YES) == is_circle_by_enumeration(g, diagrams)
            if res.status == YES:
                assert res.diagram.interlacement_graph() == g


@settings(max_examples=25)
@given(st.integers(3, 8), st.integers(0, 10**6))
def test_outerplanar_graphs_are_circle(n, seed):
    g = random_outerplanar(n, random.Random(seed))
    res = is_circle_graph(g)
    assert res.status == YES and res.diagram.interlacement_graph() == g


# representation number


def test_representation_number_examples():
    r = representation_number(cocktail_apex(3))
    assert (r.representable, r.repnum_low, r.repnum_high) == (YES, 3, 3)
    assert verify(r.word, cocktail_apex(3)) and is_k_uniform(r.word) == 3
    r = representation_number(wheel(5))
    assert r.representable == NO and r.word is None
    r = representation_number(co_t2())
    assert r.representable == NO
    r = representation_number(cycle(5))
    assert r.exact and r.repnum_low == 2 and verify(r.word, cycle(5))
    r = representation_number(prism(3))
    assert r.exact and r.repnum_low == 3
    r = representation_number(complete(4))
    assert r.exact and r.repnum_low == 1
    r = representation_number(Graph(3))
    assert r.exact and r.repnum_low == 2


def test_representation_number_bounds():
    for g in (path(5), complete_bipartite(2, 3), cocktail(3), prism(4)):
        r = representation_number(g)
        assert r.representable == YES and r.repnum_low <= r.repnum_high
        assert verify(r.word, g) and is_k_uniform(r.word) == r.repnum_high


def test_report_rendering():
    r = representation_number(cocktail_apex(3))
    machine = r.render_machine().splitlines()
    assert machine[0] == "representable=yes" and "repnum=3" in machine
    assert any(line.startswith("word=") for line in machine)
    assert "repnum=3" in r.render_text()
    bounds = RepReport(YES, None, None, 2, 4)
    assert "repnum between 2 and 4" in bounds.render_text()
    assert "repnum=" not in "".join(line for line in bounds.machine_lines() if not line.startswith("repnum_"))
    no = representation_number(wheel(5)).render_machine()
    assert no.startswith("representable=no\n") and "note=neighbourhood of 6" in no


def test_find_apex():
    assert find_apex(cocktail_apex(3)) == 6
    assert find_apex(wheel(5)) == 5
    assert find_apex(cycle(5)) is None


def test_orientation_and_word_search_agree_on_census():
    # two independent routes: orientation then construction, and direct word search
    for n in range(1, 6):
        for g in census(n):
            res = find_semi_transitive_orientation(g)
            if res.found:
                built = build_word(res.witness)
                assert verify(built.word, g) and built.multiplicity <= n
            small_k = any(is_k_representable(g, k).yes for k in (1, 2, 3))
            assert small_k == res.found
            if not neighborhoods_are_comparability(g):
                assert not res.found


# maximum clique


ZOO = [
    complete(1), complete(5), cycle(5), cycle(7), wheel(5), wheel(6), prism(3), prism(5), petersen(),
    kneser(5, 2), co_t2(), cocktail(3), cocktail(5), cocktail_apex(3), cocktail_apex(4),
    complete_bipartite(3, 4), path(6), Graph(4),
]


@pytest.mark.parametrize("g", ZOO, ids=lambda g: f"n{g.n}m{g.m}")
def test_max_clique_matches_oracle(g):
    res = max_clique(g)
    assert len(res.vertices) == oracles.max_clique_size(g.n, g.edges())
    assert all(g.has_edge(u, v) for u, v in itertools.combinations(res.vertices, 2))


def test_max_clique_examples():
    assert len(max_clique(complete(5)).vertices) == 5
    assert len(max_clique(petersen()).vertices) == 2
    assert len(max_clique(prism(3)).vertices) == 3
    assert max_clique(wheel(5)).method == "brute-force"
    assert max_clique(Graph(0)).vertices == ()


@given(graphs(max_n=9))
def test_max_clique_random(g):
    res = max_clique(g)
    size = oracles.max_clique_size(g.n, g.edges())
    assert len(res.vertices) == size == len(brute_force_clique(g))
