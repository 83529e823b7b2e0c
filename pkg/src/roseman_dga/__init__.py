"""Differential graded algebras of surface-knot diagrams.

Builds the four DGAs attached to a combinatorial surface-knot diagram
(one per sign variant), verifies d^2 = 0, replays destabilization scripts
for Roseman moves, and computes finite-field map-count invariants of the
characteristic algebra.
"""

from .laurent import Laurent
from .algebra import Generator, Element, gen_elem
from .diagram import Diagram, parse_diagram, serialize_diagram, validate_diagram
from .differential import Dga, VARIANTS, build_dga, boundary, check_d_squared
from .fixtures import load_fixture, fixture_names

__all__ = [
    "Laurent",
    "Generator",
    "Element",
    "gen_elem",
    "Diagram",
    "parse_diagram",
    "serialize_diagram",
    "validate_diagram",
    "Dga",
    "VARIANTS",
    "build_dga",
    "boundary",
    "check_d_squared",
    "load_fixture",
    "fixture_names",
]
