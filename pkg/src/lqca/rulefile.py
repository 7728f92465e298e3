"""Line-oriented text format for local rules.

::

    # Qflip
    alphabet = p
    quiescent = q
    neighborhood = 0 1
    rule q q = 1.0 q
    rule q p = 0.7071067811865475 q + 0.7071067811865475 p

Complex literals are ``a``, ``bi``, ``a+bi`` or ``a-bi`` with no inner
spaces. Words that have no ``rule`` line map to the null vector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import LocalRule, RuleError, SymbolTable, Word, make_rule

_REAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_UREAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^(?:(?P<re>{_REAL})(?P<im>[+-]{_UREAL})i|(?P<re_only>{_REAL})|(?P<im_only>{_REAL})i)$"
)


class RuleFileError(RuleError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_complex(text: str) -> complex:
    m = _COMPLEX.match(text)
    if not m:
        raise ValueError(f"not a complex literal: {text!r}")
    if m["re_only"] is not None:
        return complex(float(m["re_only"]), 0.0)
    if m["im_only"] is not None:
        return complex(0.0, float(m["im_only"]))
    return complex(float(m["re"]), float(m["im"]))


def format_complex(z: complex) -> str:
    re_, im = float(z.real), float(z.imag)
    if im == 0:
        return repr(re_ + 0.0)
    if re_ == 0:
        return f"{im!r}i"
    return f"{re_!r}{'+' if im > 0 else ''}{im!r}i"


@dataclass
class RuleFile:
    table: SymbolTable
    neighborhood: tuple[int, ...]
    entries: list[tuple[Word, str, complex]]
    # (line, column) of every entry, for diagnostics
    positions: list[tuple[int, int]] = field(default_factory=list)

    def to_rule(self) -> LocalRule:
        return make_rule(self.table, self.neighborhood, self.entries)


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def read_rule_file(text: str) -> RuleFile:
    headers: dict[str, tuple[list[tuple[str, int]], int]] = {}
    rule_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if head == "rule":
            rule_lines.append((lineno, toks))
            continue
        if head not in ("alphabet", "quiescent", "neighborhood"):
            raise RuleFileError(f"unexpected {head!r}", lineno, col)
        if len(toks) < 2 or toks[1][0] != "=":
            where = toks[1][1] if len(toks) > 1 else col + len(head)
            raise RuleFileError(f"expected '=' after {head!r}", lineno, where)
        if head in headers:
            raise RuleFileError(f"duplicate {head!r} line", lineno, col)
        headers[head] = (toks[2:], lineno)

    for key in ("alphabet", "quiescent", "neighborhood"):
        if key not in headers:
            raise RuleFileError(f"missing {key!r} line", 1, 1)

    q_toks, q_line = headers["quiescent"]
    if len(q_toks) != 1:
        raise RuleFileError("expected exactly one quiescent symbol", q_line, q_toks[0][1] if q_toks else 1)
    a_toks, a_line = headers["alphabet"]
    try:
        table = SymbolTable(tuple(t for t, _ in a_toks), q_toks[0][0])
    except RuleError as exc:
        raise RuleFileError(str(exc), a_line, 1) from None

    n_toks, n_line = headers["neighborhood"]
    nb = []
    for tok, col in n_toks:
        try:
            nb.append(int(tok))
        except ValueError:
            raise RuleFileError(f"bad neighborhood offset {tok!r}", n_line, col) from None
    if not nb or any(b - a != 1 for a, b in zip(nb, nb[1:])):
        raise RuleFileError(f"neighborhood {nb} is not a run of successive integers", n_line, 1)
    n = len(nb)

    def symbol(tok, lineno, col):
        if tok not in table.all_symbols:
            raise RuleFileError(f"unknown symbol {tok!r}", lineno, col)
        return tok

    entries, positions, seen_words = [], [], {}
    for lineno, toks in rule_lines:
        body = toks[1:]
        eq = next((i for i, (t, _) in enumerate(body) if t == "="), None)
        if eq is None:
            raise RuleFileError("expected '=' in rule line", lineno, toks[-1][1])
        word = tuple(symbol(t, lineno, c) for t, c in body[:eq])
        if len(word) != n:
            raise RuleFileError(f"word has {len(word)} symbols, expected {n}", lineno, toks[0][1])
        if word in seen_words:
            raise RuleFileError(f"duplicate rule for word {' '.join(word)} (first on line {seen_words[word]})",
                                lineno, toks[0][1])
        seen_words[word] = lineno
        rhs = body[eq + 1:]
        if not rhs:
            raise RuleFileError("empty right-hand side", lineno, body[eq][1] + 1)
        outputs = set()
        i, sign = 0, 1.0
        while True:
            if i + 1 >= len(rhs):
                col = rhs[i][1] if i < len(rhs) else rhs[-1][1]
                raise RuleFileError("expected '<complex> <symbol>'", lineno, col)
            (lit, lcol), (sym, scol) = rhs[i], rhs[i + 1]
            try:
                amp = sign * parse_complex(lit)
            except ValueError:
                raise RuleFileError(f"bad complex literal {lit!r}", lineno, lcol) from None
            symbol(sym, lineno, scol)
            if sym in outputs:
                raise RuleFileError(f"duplicate output symbol {sym!r}", lineno, scol)
            outputs.add(sym)
            entries.append((word, sym, amp))
            positions.append((lineno, lcol))
            i += 2
            if i == len(rhs):
                break
            sep, scol = rhs[i]
            if sep not in ("+", "-"):
                raise RuleFileError(f"expected '+' or '-', got {sep!r}", lineno, scol)
            sign = 1.0 if sep == "+" else -1.0
            i += 1
    return RuleFile(table, tuple(nb), entries, positions)


def parse_rule_file(text: str) -> LocalRule:
    return read_rule_file(text).to_rule()


def format_rule(rule: LocalRule, comment: str | None = None) -> str:
    """Canonical text for ``rule``; ``parse_rule_file`` inverts it exactly."""
    tab = rule.table
    lines = []
    if comment:
        lines += [f"# {c}" if c else "#" for c in comment.splitlines()]
    lines.append("alphabet = " + " ".join(tab.symbols) if tab.symbols else "alphabet =")
    lines.append(f"quiescent = {tab.quiescent}")
    lines.append("neighborhood = " + " ".join(str(i) for i in rule.neighborhood))
    for w, word in enumerate(rule.words()):
        image = rule.amplitudes[w]
        terms = [f"{format_complex(a)} {s}" for s, a in zip(tab.all_symbols, image) if a != 0]
        if terms:
            lines.append(f"rule {' '.join(word)} = " + " + ".join(terms))
    return "\n".join(lines) + "\n"
