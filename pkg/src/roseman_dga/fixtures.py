"""Shipped diagram fixtures and their move scripts.

The move fixtures come in before/after pairs <name>_a / <name>_b; the _b
side is the one carrying the singularities created by the move.  Each pair
ships with one destabilization script per side (possibly empty); running
both and comparing the results generator-by-generator replays the move's
invariance proof.  Scripts end with a relabel step where the surviving
labels differ, so the final comparison always uses the identity map.
"""

from __future__ import annotations

from importlib import resources

from .diagram import Diagram, parse_diagram

_FIXTURES = (
    "unknot_sphere",
    "spun_trefoil",
    "twist2_spun_trefoil",
    "roseman_I_a", "roseman_I_b",
    "roseman_III_a", "roseman_III_b",
    "roseman_IV_a", "roseman_IV_b",
    "roseman_V_a", "roseman_V_b",
    "roseman_VI_a", "roseman_VI_b",
    "roseman_VIn_a", "roseman_VIn_b",
    "roseman_VII_a", "roseman_VII_b",
)

# move pair -> (fixture_a, fixture_b); each side may have a script file
# fixtures/<fixture>.mvs with the destabilizations from the invariance proof
MOVE_PAIRS = {
    "I": ("roseman_I_a", "roseman_I_b"),
    "III": ("roseman_III_a", "roseman_III_b"),
    "IV": ("roseman_IV_a", "roseman_IV_b"),
    "V": ("roseman_V_a", "roseman_V_b"),
    "VI+": ("roseman_VI_a", "roseman_VI_b"),
    "VI-": ("roseman_VIn_a", "roseman_VIn_b"),
    "VII": ("roseman_VII_a", "roseman_VII_b"),
}


def fixture_names():
    return _FIXTURES


def _read(name: str) -> str:
    ref = resources.files(__package__) / "fixtures" / name
    if not ref.is_file():
        raise KeyError("no shipped fixture file %s" % name)
    return ref.read_text()


def load_fixture(name: str) -> Diagram:
    if name not in _FIXTURES:
        raise KeyError("unknown fixture %r; known: %s" % (name, ", ".join(_FIXTURES)))
    return parse_diagram(_read(name + ".skd"))


def load_script_text(fixture_name: str) -> str:
    """The destabilization script for one side of a move pair ('' if none)."""
    try:
        return _read(fixture_name + ".mvs")
    except KeyError:
        return ""
