"""Named rules shipped with the package."""

from __future__ import annotations

import math

from .core import LocalRule, SymbolTable, make_rule
from .rulefile import format_rule

_H = 1 / math.sqrt(2)


def qflip() -> LocalRule:
    """Unitary, but a single ``p`` has infinitely many antecedents."""
    t = SymbolTable(("p",), "q")
    return make_rule(t, (0, 1), [
        (("q", "q"), "q", 1),
        (("q", "p"), "q", _H), (("q", "p"), "p", _H),
        (("p", "q"), "p", 1),
        (("p", "p"), "q", _H), (("p", "p"), "p", -_H),
    ])


def xor() -> LocalRule:
    """``c'_i = c_i xor c_{i+1}`` with 0 quiescent: injective, not surjective."""
    t = SymbolTable(("1",), "0")
    return make_rule(t, (0, 1), [
        (("0", "0"), "0", 1),
        (("0", "1"), "1", 1),
        (("1", "0"), "1", 1),
        (("1", "1"), "0", 1),
    ])


def xor_prime() -> LocalRule:
    """Xor on ``{0, 1}`` with a separate quiescent ``q`` that erases its left neighbor."""
    t = SymbolTable(("0", "1"), "q")
    return make_rule(t, (0, 1), [
        (("q", "q"), "q", 1),
        (("0", "0"), "0", 1),
        (("0", "1"), "1", 1),
        (("1", "0"), "1", 1),
        (("1", "1"), "0", 1),
        (("q", "0"), "q", 1),
        (("q", "1"), "q", 1),
        (("0", "q"), "0", 1),
        (("1", "q"), "1", 1),
    ])


def sample_rule() -> LocalRule:
    """Three-cell rule whose output is the xor of the two rightmost cells."""
    t = SymbolTable(("1",), "0")
    table = {
        "000": "0", "001": "1", "010": "1", "011": "0",
        "100": "0", "101": "1", "110": "1", "111": "0",
    }
    return make_rule(t, (-1, 0, 1), [(tuple(w), out, 1) for w, out in table.items()])


CATALOG = {
    "qflip": (qflip, "Qflip: unitary, with unboundedly many antecedents per row"),
    "xor": (xor, "Xor: orthonormal columns, rows not unit (not surjective)"),
    "xorprime": (xor_prime, "Xor': fully stable, unitary on finite configurations"),
    "sample": (sample_rule, "three-cell sample rule (output = xor of the two rightmost cells)"),
}


def get(name: str) -> LocalRule:
    key = name.lower().replace("'", "prime").replace("_", "")
    if key not in CATALOG:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[key][0]()


def rule_text(name: str) -> str:
    key = name.lower().replace("'", "prime").replace("_", "")
    factory, comment = CATALOG[key]
    return format_rule(factory(), comment=comment)
