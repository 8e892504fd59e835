"""Command-line front end: ``wordrep VERB [args]``.

Graphs, words and orientations travel as text (1-indexed), so verbs chain
through pipes, e.g. ``wordrep gen petersen | wordrep represent``.

Exit codes: 0 yes / success, 1 no, 2 bad input, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .construct import build_word
from .errors import BudgetExhausted, GraphFormatError, WordRepError
from .graphs import Graph, generate, read_graph, subdivide3, to_graph6, write_digraph, write_graph
from .repnum import (
    NO,
    SEARCH_BUDGET,
    UNKNOWN,
    YES,
    is_circle_graph,
    max_clique,
    representation_number,
)
from .semitrans import find_semi_transitive_orientation, neighborhoods_are_comparability, orient_by_coloring
from .words import format_word, parse_word, verify

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_STATUS_EXIT = {YES: EXIT_OK, NO: EXIT_NO, UNKNOWN: EXIT_BUDGET}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(source: str | None) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    try:
        with open(source) as fh:
            return fh.read()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {source}: {exc.strerror}") from None


def _graph(args) -> Graph:
    return read_graph(_read_text(args.graph))


def _emit(args, pairs: list[tuple[str, str]], text: str) -> None:
    if args.format == "machine":
        sys.stdout.write("".join(f"{k}={v}\n" for k, v in pairs))
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    g = read_graph(_read_text(args.graph))
    if args.word is None:
        word_text = sys.stdin.read()
    else:
        word_text = _read_text(args.word)
    w = parse_word(word_text)
    verdict = verify(w, g)
    if verdict:
        _emit(args, [("represents", "yes")], "represents\n")
        return EXIT_OK
    pair = " ".join(str(v + 1) for v in (verdict.x, verdict.y) if v is not None)
    _emit(
        args,
        [("represents", "no"), ("reason", verdict.reason), ("pair", pair)],
        f"does not represent: {verdict.reason} {pair}\n",
    )
    return EXIT_NO


def cmd_recognize(args) -> int:
    g = _graph(args)
    try:
        return _recognize(args, g)
    except BudgetExhausted as exc:
        _emit(args, [("representable", UNKNOWN), ("nodes", str(exc.nodes))], "unknown (search budget exhausted)\n")
        return EXIT_BUDGET


def _recognize(args, g: Graph) -> int:
    check = neighborhoods_are_comparability(g, args.budget)
    if not check:
        _emit(
            args,
            [("representable", NO), ("reason", f"neighbourhood-not-comparability {check.vertex + 1}")],
            f"non-representable (neighbourhood of {check.vertex + 1} is not a comparability graph)\n",
        )
        return EXIT_NO
    res = find_semi_transitive_orientation(g, args.budget, jobs=args.jobs, fix_first_edge=True)
    if res.found:
        _emit(args, [("representable", YES), ("nodes", str(res.nodes_explored))], "representable\n")
        return EXIT_OK
    _emit(
        args,
        [("representable", NO), ("reason", "no-semi-transitive-orientation"), ("nodes", str(res.nodes_explored))],
        "non-representable\n",
    )
    return EXIT_NO


def cmd_represent(args) -> int:
    g = _graph(args)
    res = find_semi_transitive_orientation(g, args.budget, jobs=args.jobs, fix_first_edge=True)
    if not res.found:
        print("non-representable", file=sys.stderr)
        return EXIT_NO
    built = build_word(res.witness)
    _emit(
        args,
        [("word", format_word(built.word)), ("multiplicity", str(built.multiplicity))],
        format_word(built.word) + "\n",
    )
    return EXIT_OK


def _read_coloring(text: str, n: int) -> list[int]:
    tokens = text.split()
    if len(tokens) != n:
        raise GraphFormatError(f"coloring lists {len(tokens)} colors for {n} vertices")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError("coloring tokens must be integers") from None


def cmd_orient(args) -> int:
    g = _graph(args)
    if args.coloring is not None:
        d = orient_by_coloring(g, _read_coloring(_read_text(args.coloring), g.n))
    else:
        res = find_semi_transitive_orientation(g, args.budget, jobs=args.jobs, fix_first_edge=True)
        if not res.found:
            print("no semi-transitive orientation", file=sys.stderr)
            return EXIT_NO
        d = res.witness
    sys.stdout.write(write_digraph(d))
    return EXIT_OK


def cmd_repnum(args) -> int:
    report = representation_number(_graph(args), args.budget, args.jobs)
    sys.stdout.write(report.render_machine() if args.format == "machine" else report.render_text())
    return _STATUS_EXIT[report.representable]


def cmd_gen(args) -> int:
    params = list(args.params)
    if args.family == "subdivision3-of":
        if not params:
            raise GraphFormatError("subdivision3-of needs a base family")
        g = subdivide3(generate(params[0], *_ints(params[1:])))
    else:
        g = generate(args.family, *_ints(params))
    sys.stdout.write(to_graph6(g) + "\n" if args.graph6 else write_graph(g))
    return EXIT_OK


def _ints(tokens: Sequence[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"family parameters must be integers, got {list(tokens)}") from None


def cmd_circle(args) -> int:
    res = is_circle_graph(_graph(args), args.budget, args.jobs)
    if res.status == YES:
        ends = " ".join(str(x + 1) for x in res.diagram.endpoints)
        _emit(args, [("circle", YES), ("chords", ends)], f"circle graph\nchords: {ends}\n")
    elif res.status == NO:
        _emit(args, [("circle", NO)], "not a circle graph\n")
    else:
        _emit(args, [("circle", UNKNOWN)], "unknown (search budget exhausted)\n")
    return _STATUS_EXIT[res.status]


def cmd_clique(args) -> int:
    res = max_clique(_graph(args), args.budget)
    verts = " ".join(str(v + 1) for v in res.vertices)
    _emit(
        args,
        [("size", str(len(res.vertices))), ("clique", verts), ("method", res.method)],
        f"{verts}\n",
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--budget", type=int, default=SEARCH_BUDGET, help="search node budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    parser = _Parser(prog="wordrep", description="Word-representable graph toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text, graph=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("graph", nargs="?", help="graph file (default stdin)")
        p.set_defaults(func=func)
        return p

    p = sub.add_parser("check", parents=[common], help="verify that a word represents a graph")
    p.add_argument("graph", help="graph file")
    p.add_argument("word", nargs="?", help="word file (default stdin)")
    p.set_defaults(func=cmd_check)

    verb("recognize", cmd_recognize, "decide representability")
    verb("represent", cmd_represent, "print a representing word")
    p = verb("orient", cmd_orient, "print a semi-transitive orientation")
    p.add_argument("--coloring", help="file of vertex colors; edges run from lower to higher color")
    verb("repnum", cmd_repnum, "representation number report")
    p = verb("gen", cmd_gen, "generate a named graph", graph=False)
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--graph6", action="store_true", help="write graph6 instead of an edge list")
    verb("circle", cmd_circle, "circle graph (2-representability) test")
    verb("clique", cmd_clique, "maximum clique")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"wordrep: {exc} after {exc.nodes} nodes", file=sys.stderr)
        return EXIT_BUDGET
    except (WordRepError, ValueError) as exc:
        print(f"wordrep: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
