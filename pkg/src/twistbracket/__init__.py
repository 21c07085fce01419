"""Twist-brackets of link diagrams with open twist sites, and their Mahler measures."""

__version__ = "0.1.0"

from .bracket import (
    TwistBracket,
    jones,
    kauffman_bracket,
    specialize_twists,
    twist_bracket,
)
from .diagram import WiringDiagram, insert_twists, parse_diagram, serialize_diagram
from .families import FamilySpec, family_diagram, family_twist_bracket
from .mahler import is_cyclotomic, mahler_jensen, mahler_lawton, mahler_quadrature, nu
from .poly import DELTA, Laurent1, MultiPoly, parse_laurent, parse_multi

__all__ = [
    "DELTA",
    "FamilySpec",
    "Laurent1",
    "MultiPoly",
    "TwistBracket",
    "WiringDiagram",
    "family_diagram",
    "family_twist_bracket",
    "insert_twists",
    "is_cyclotomic",
    "jones",
    "kauffman_bracket",
    "mahler_jensen",
    "mahler_lawton",
    "mahler_quadrature",
    "nu",
    "parse_diagram",
    "parse_laurent",
    "parse_multi",
    "serialize_diagram",
    "specialize_twists",
    "twist_bracket",
]
