"""Chord diagrams on a disc and their GF(2) contact calculus."""

from .diagram import ChordDiagram, ZERO, enumerate_diagrams, euler_class, from_pairing, merge, parse, regions, rotate_points, serialize, unique_split
from .sfh import SfhElement, basis_diagram, decompose, from_pair, is_basis, phi, rotation
from .words import Word, all_words, catalan, comparable_pairs, interval, lex_compare, narayana, partial_leq, word

__all__ = [
    "ChordDiagram", "ZERO", "SfhElement", "Word",
    "enumerate_diagrams", "euler_class", "from_pairing", "merge", "parse",
    "regions", "rotate_points", "serialize", "unique_split",
    "basis_diagram", "decompose", "from_pair", "is_basis", "phi", "rotation",
    "all_words", "catalan", "comparable_pairs", "interval", "lex_compare",
    "narayana", "partial_leq", "word",
]
