"""Word-representable graphs: recognition, word synthesis and representation numbers."""

from .construct import (
    Poset,
    PathCover,
    TStringDigraph,
    WordConstruction,
    apex_transfer,
    apex_transfer_inverse,
    build_word,
    cocktail_poset,
    cocktail_realizer,
    greedy_path_cover,
    permutational_representation,
    poset_dimension,
    substitute_module,
    t_string,
    word_from_orientation,
    word_from_path,
)
from .errors import (
    BudgetExhausted,
    GraphFormatError,
    InternalVerificationError,
    NotAcyclicError,
    NotComparabilityError,
    NotSemiTransitiveError,
    UncoverablePathError,
    WordRepError,
)
from .graphs import Digraph, Graph, generate, read_digraph, read_graph, write_digraph, write_graph
from .repnum import (
    ChordDiagram,
    RepReport,
    chords_to_word,
    is_circle_graph,
    is_k_representable,
    max_clique,
    representation_number,
    word_to_chords,
)
from .semitrans import (
    find_semi_transitive_orientation,
    find_shortcut,
    is_semi_transitive,
    neighborhoods_are_comparability,
    orient_by_coloring,
    orientation_from_word,
    transitive_orientation,
)
from .words import Word, alternate, format_word, is_k_uniform, parse_word, represented_graph, rotate, verify

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
