"""Domain types: symbol tables, local rules, finite configurations, superpositions."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Word = tuple[str, ...]
Interval = tuple[int, int]

_FORBIDDEN_CHARS = set("=+#,")


class RuleError(ValueError):
    """A local rule could not be built from the given data."""


class NullImageError(RuleError):
    """Some word is mapped to the null vector."""


@dataclass(frozen=True)
class Tolerances:
    eps_zero: float = 1e-9
    eps_norm: float = 1e-9
    eps_fix: float = 1e-12
    eps_sum: float = 1e-6
    max_iter: int = 10000

    def __post_init__(self):
        for name in ("eps_zero", "eps_norm", "eps_fix", "eps_sum"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides) -> "Tolerances":
        """Defaults, then ``QCA_TOL_*`` / ``QCA_MAX_ITER`` variables, then explicit overrides."""
        environ = os.environ if environ is None else environ
        values: dict = {}
        for var, name, conv in _ENV_VARS:
            if var in environ:
                values[name] = conv(environ[var])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> dict:
        return {
            "eps_zero": self.eps_zero,
            "eps_norm": self.eps_norm,
            "eps_fix": self.eps_fix,
            "eps_sum": self.eps_sum,
            "max_iter": self.max_iter,
        }


_ENV_VARS = (
    ("QCA_TOL_ZERO", "eps_zero", float),
    ("QCA_TOL_NORM", "eps_norm", float),
    ("QCA_TOL_FIX", "eps_fix", float),
    ("QCA_TOL_SUM", "eps_sum", float),
    ("QCA_MAX_ITER", "max_iter", int),
)

DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class SymbolTable:
    """The alphabet and its quiescent symbol.

    ``all_symbols`` is ``(quiescent, *symbols)``; positions in that tuple are
    the indices used by every matrix in the package, so the quiescent symbol
    is always index 0.
    """

    symbols: tuple[str, ...]
    quiescent: str

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for tok in (self.quiescent, *self.symbols):
            if not isinstance(tok, str) or not tok:
                raise RuleError(f"symbols must be non-empty strings, got {tok!r}")
            if any(ch.isspace() for ch in tok) or _FORBIDDEN_CHARS & set(tok):
                raise RuleError(f"symbol {tok!r} contains whitespace or one of '=+#,'")
        if self.quiescent in self.symbols:
            raise RuleError(f"quiescent symbol {self.quiescent!r} is also in the alphabet")
        if len(set(self.symbols)) != len(self.symbols):
            raise RuleError(f"duplicate symbols in alphabet {self.symbols}")

    @property
    def all_symbols(self) -> tuple[str, ...]:
        return (self.quiescent, *self.symbols)

    @property
    def size(self) -> int:
        """|qΣ|, the alphabet size including the quiescent symbol."""
        return len(self.symbols) + 1

    def index(self, symbol: str) -> int:
        try:
            return self.all_symbols.index(symbol)
        except ValueError:
            raise RuleError(f"unknown symbol {symbol!r}") from None

    def words(self, length: int) -> Iterator[Word]:
        """All words of the given length, in index order (quiescent first)."""
        return itertools.product(self.all_symbols, repeat=length)


def _check_neighborhood(neighborhood: Sequence[int]) -> tuple[int, ...]:
    nb = tuple(int(i) for i in neighborhood)
    if not nb:
        raise RuleError("neighborhood must be non-empty")
    if any(b - a != 1 for a, b in zip(nb, nb[1:])):
        raise RuleError(f"neighborhood {nb} is not a run of successive integers")
    return nb


@dataclass(frozen=True, eq=False)
class LocalRule:
    """A local transition function over a symbol table and neighborhood.

    ``amplitudes[w, s]`` is the coefficient of output symbol ``s`` in the
    image of the word with index ``w`` (base ``|qΣ|``, leftmost symbol most
    significant).
    """

    table: SymbolTable
    neighborhood: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "neighborhood", _check_neighborhood(self.neighborhood))
        amps = np.array(self.amplitudes, dtype=complex)
        k, n = self.table.size, len(self.neighborhood)
        if amps.shape != (k**n, k):
            raise RuleError(f"amplitude table has shape {amps.shape}, expected {(k**n, k)}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return len(self.neighborhood)

    @property
    def k(self) -> int:
        return self.table.size

    @property
    def quiescent(self) -> str:
        return self.table.quiescent

    def word_index(self, word: Sequence[str]) -> int:
        if len(word) != self.n:
            raise RuleError(f"word {tuple(word)} has length {len(word)}, expected {self.n}")
        idx = 0
        for sym in word:
            idx = idx * self.k + self.table.index(sym)
        return idx

    def image(self, word: Sequence[str]) -> np.ndarray:
        return self.amplitudes[self.word_index(word)]

    def amplitude(self, word: Sequence[str], symbol: str) -> complex:
        return complex(self.amplitudes[self.word_index(word), self.table.index(symbol)])

    def words(self) -> Iterator[Word]:
        return self.table.words(self.n)

    def with_amplitudes(self, amplitudes: np.ndarray) -> "LocalRule":
        return LocalRule(self.table, self.neighborhood, amplitudes)

    def __eq__(self, other):
        if not isinstance(other, LocalRule):
            return NotImplemented
        return (
            self.table == other.table
            and self.neighborhood == other.neighborhood
            and np.array_equal(self.amplitudes, other.amplitudes)
        )

    __hash__ = None


def make_rule(
    table: SymbolTable,
    neighborhood: Sequence[int],
    entries: Iterable[tuple[Sequence[str], str, complex]],
) -> LocalRule:
    """Build a rule from ``(word, output symbol, amplitude)`` triples.

    Missing coefficients are zero. No working-definition checks are made here;
    see :func:`validate_rule`.
    """
    nb = _check_neighborhood(neighborhood)
    k, n = table.size, len(nb)
    amps = np.zeros((k**n, k), dtype=complex)
    seen = set()
    for word, sym, value in entries:
        word = tuple(word)
        if len(word) != n:
            raise RuleError(f"word {word} has length {len(word)}, expected {n}")
        w = 0
        for s in word:
            w = w * k + table.index(s)
        s_idx = table.index(sym)
        if (w, s_idx) in seen:
            raise RuleError(f"duplicate entry for word {word} and output {sym!r}")
        seen.add((w, s_idx))
        amps[w, s_idx] = complex(value)
    return LocalRule(table, nb, amps)


@dataclass(frozen=True)
class ValidationReport:
    quiescent_stable: bool
    normalized: bool
    unnormalized_words: tuple[Word, ...]
    # None when the rule is not of neighborhood size two
    fully_stable: bool | None
    full_stability_violations: tuple[Word, ...]

    @property
    def ok(self) -> bool:
        return self.quiescent_stable and self.normalized

    def to_dict(self) -> dict:
        return {
            "quiescent_stable": self.quiescent_stable,
            "normalized": self.normalized,
            "unnormalized_words": [list(w) for w in self.unnormalized_words],
            "fully_stable": self.fully_stable,
            "full_stability_violations": [list(w) for w in self.full_stability_violations],
        }


def validate_rule(rule: LocalRule, tol: Tolerances = DEFAULT_TOLERANCES) -> ValidationReport:
    amps = rule.amplitudes
    quiet = amps[0]
    quiescent_stable = bool(
        abs(quiet[0] - 1) < tol.eps_zero and np.all(np.abs(quiet[1:]) < tol.eps_zero)
    )
    norms2 = np.sum(np.abs(amps) ** 2, axis=1)
    words = list(rule.words())
    bad = tuple(words[i] for i in np.flatnonzero(np.abs(norms2 - 1) > tol.eps_norm))

    fully_stable = None
    violations: tuple[Word, ...] = ()
    if rule.n == 2:
        q = rule.quiescent
        violations = tuple(
            w for i, w in enumerate(words)
            if q not in w and abs(amps[i, 0]) >= tol.eps_zero
        )
        fully_stable = not violations
    return ValidationReport(quiescent_stable, not bad, bad, fully_stable, violations)


def normalize_images(rule: LocalRule, tol: Tolerances = DEFAULT_TOLERANCES) -> LocalRule:
    """Rescale every image to unit norm; the global evolution of a rule with
    unit columns is unchanged by this."""
    norms = np.linalg.norm(rule.amplitudes, axis=1)
    null = np.flatnonzero(norms <= tol.eps_zero)
    if null.size:
        words = list(rule.words())
        raise NullImageError(f"null image for word(s) {[words[i] for i in null]}")
    return rule.with_amplitudes(rule.amplitudes / norms[:, None])


class Configuration:
    """A finite configuration: a sparse map from position to non-quiescent symbol.

    Positions absent from the map hold the quiescent symbol. Instances are
    immutable and hashable.
    """

    __slots__ = ("_cells", "_hash")

    def __init__(self, cells: Mapping[int, str] | Iterable[tuple[int, str]] = (), quiescent: str | None = None):
        items = cells.items() if isinstance(cells, Mapping) else cells
        store = {}
        for pos, sym in items:
            if sym != quiescent:
                store[int(pos)] = sym
        self._cells = dict(sorted(store.items()))
        self._hash = hash(frozenset(self._cells.items()))

    @property
    def cells(self) -> Mapping[int, str]:
        return dict(self._cells)

    def items(self):
        return self._cells.items()

    def get(self, pos: int, quiescent: str) -> str:
        return self._cells.get(pos, quiescent)

    def set(self, pos: int, symbol: str, quiescent: str) -> "Configuration":
        cells = dict(self._cells)
        if symbol == quiescent:
            cells.pop(pos, None)
        else:
            cells[pos] = symbol
        return Configuration(cells)

    def shift(self, offset: int) -> "Configuration":
        return Configuration({p + offset: s for p, s in self._cells.items()})

    def is_quiescent(self) -> bool:
        return not self._cells

    def __len__(self):
        return len(self._cells)

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self._cells == other._cells

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return tuple(self._cells.items()) < tuple(other._cells.items())

    def __repr__(self):
        inner = ",".join(f"{p}:{s}" for p, s in self._cells.items())
        return f"Configuration({inner})"


def interval_domain(c: Configuration) -> Interval | None:
    """Smallest interval holding every non-quiescent cell; ``None`` if there are none."""
    if c.is_quiescent():
        return None
    positions = list(c._cells)
    return positions[0], positions[-1]


def extended_interval_domain(c: Configuration, rule: LocalRule) -> Interval | None:
    """``[k + min(N), l + max(N)]`` for ``idom(c) = [k, l]``.

    This is *not* where the image of ``c`` lives; see :func:`support_interval`.
    """
    dom = interval_domain(c)
    if dom is None:
        return None
    return dom[0] + rule.neighborhood[0], dom[1] + rule.neighborhood[-1]


def support_interval(c: Configuration, rule: LocalRule) -> Interval | None:
    """Output cells whose neighborhood word touches ``idom(c)``: ``[k - max(N), l - min(N)]``."""
    dom = interval_domain(c)
    if dom is None:
        return None
    return dom[0] - rule.neighborhood[-1], dom[1] - rule.neighborhood[0]


def word_at(c: Configuration, i: int, rule: LocalRule) -> Word:
    q = rule.quiescent
    return tuple(c.get(i + d, q) for d in rule.neighborhood)


class Superposition:
    """Finite complex combination of configurations, amplitudes below ``eps_zero`` dropped."""

    __slots__ = ("_terms", "_eps", "pruned_weight")

    def __init__(self, terms: Mapping[Configuration, complex] | Iterable[tuple[Configuration, complex]] = (),
                 eps_zero: float = DEFAULT_TOLERANCES.eps_zero):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Configuration, complex] = {}
        for conf, amp in items:
            acc[conf] = acc.get(conf, 0j) + complex(amp)
        self._terms = {}
        self._eps = eps_zero
        # squared norm discarded by pruning, kept so norm drift can be attributed
        self.pruned_weight = 0.0
        for conf, amp in acc.items():
            if abs(amp) < eps_zero:
                self.pruned_weight += abs(amp) ** 2
            else:
                self._terms[conf] = amp

    @classmethod
    def basis(cls, c: Configuration) -> "Superposition":
        return cls({c: 1.0})

    @property
    def terms(self) -> Mapping[Configuration, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def amplitude(self, c: Configuration) -> complex:
        return self._terms.get(c, 0j)

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self._terms.values()))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __add__(self, other: "Superposition") -> "Superposition":
        return Superposition(itertools.chain(self._terms.items(), other._terms.items()),
                             eps_zero=min(self._eps, other._eps))

    def __mul__(self, scalar: complex) -> "Superposition":
        return Superposition({c: a * scalar for c, a in self._terms.items()}, eps_zero=self._eps)

    __rmul__ = __mul__

    def __repr__(self):
        inner = " + ".join(f"({a:.6g})|{c!r}>" for c, a in self._terms.items())
        return f"Superposition({inner})"
