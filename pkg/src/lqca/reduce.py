"""A-tensor construction and reduction of any interval neighborhood to size two."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce as _fold

import numpy as np

from .core import Configuration, LocalRule, RuleError, SymbolTable, Word

BLOCK_JOINER = "."


@dataclass(frozen=True, eq=False)
class ATensor:
    """``vectors[x, y]`` is the image glued from the overlapping (n-1)-words x, y.

    ``overlap[x, y]`` records whether x and y follow each other; where they do
    not the vector is null.
    """

    table: SymbolTable
    width: int
    vectors: np.ndarray
    overlap: np.ndarray

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def words(self) -> list[Word]:
        return list(self.table.words(self.width))

    def entry(self, x: Word, y: Word) -> np.ndarray:
        idx = {w: i for i, w in enumerate(self.words())}
        return self.vectors[idx[tuple(x)], idx[tuple(y)]]

    def printed_layout(self) -> np.ndarray:
        """Matrix with row ``y`` and column ``x``, i.e. ``<y|A|x> = A_xy``."""
        return self.vectors.transpose(1, 0, 2)


def build_a_tensor(rule: LocalRule) -> ATensor:
    if rule.n < 2:
        raise RuleError("the A-tensor needs a neighborhood of size at least two")
    k, m = rule.k, rule.n - 1
    dim = k**m
    vectors = np.zeros((dim, dim, k), dtype=complex)
    overlap = np.zeros((dim, dim), dtype=bool)
    for w in range(k**rule.n):
        x = w // k            # first n-1 symbols
        y = w % (k**m)        # last n-1 symbols
        vectors[x, y] = rule.amplitudes[w]
        overlap[x, y] = True
    vectors.setflags(write=False)
    overlap.setflags(write=False)
    return ATensor(rule.table, m, vectors, overlap)


def translate_neighborhood(rule: LocalRule, start: int = 0) -> LocalRule:
    nb = tuple(range(start, start + rule.n))
    return LocalRule(rule.table, nb, rule.amplitudes)


@dataclass(frozen=True)
class BlockEncoding:
    """Groups source cells ``[w*j, w*j + w - 1]`` into the block symbol at position ``j``.

    ``shift`` is the leftmost offset of the source neighborhood. The reduced
    evolution equals the source evolution with its neighborhood translated to
    start at 0; the source evolution itself is that result moved by ``-shift``.
    """

    block_width: int
    source_table: SymbolTable
    target_table: SymbolTable
    shift: int

    def block_token(self, cells: Word) -> str:
        if self.block_width == 1:
            return cells[0]
        return BLOCK_JOINER.join(cells)

    def split_token(self, token: str) -> Word:
        parts = (token,) if self.block_width == 1 else tuple(token.split(BLOCK_JOINER))
        if len(parts) != self.block_width or any(p not in self.source_table.all_symbols for p in parts):
            raise RuleError(f"malformed block symbol {token!r}")
        return parts


def encode_configuration(enc: BlockEncoding, c: Configuration) -> Configuration:
    q = enc.source_table.quiescent
    w = enc.block_width
    blocks = {p // w for p, _ in c.items()}
    cells = {}
    for j in blocks:
        cells[j] = enc.block_token(tuple(c.get(w * j + t, q) for t in range(w)))
    return Configuration(cells, quiescent=enc.target_table.quiescent)


def decode_configuration(enc: BlockEncoding, c: Configuration) -> Configuration:
    w = enc.block_width
    cells = {}
    for j, token in c.items():
        for t, sym in enumerate(enc.split_token(token)):
            cells[w * j + t] = sym
    return Configuration(cells, quiescent=enc.source_table.quiescent)


def reduce_neighborhood(rule: LocalRule) -> tuple[LocalRule, BlockEncoding]:
    """Equivalent rule with neighborhood ``{0, 1}`` over blocks of ``n - 1`` cells.

    The image of the block pair ``(x, y)`` is the tensor product over
    ``i = 1..n-1`` of the images of ``x_i..x_{n-1} y_1..y_i``. Blocks range
    over all of ``(qΣ)^(n-1)``, mixed blocks included, so that every source
    configuration has an encoding.
    """
    shift = rule.neighborhood[0]
    if rule.n == 1:
        # pad with an ignored right neighbor
        rule = LocalRule(rule.table, (shift, shift + 1), np.repeat(rule.amplitudes, rule.k, axis=0))
    if rule.n == 2:
        enc = BlockEncoding(1, rule.table, rule.table, shift)
        return translate_neighborhood(rule), enc

    k, m = rule.k, rule.n - 1
    tab = rule.table
    if any(BLOCK_JOINER in s for s in tab.all_symbols):
        raise RuleError(f"symbols containing {BLOCK_JOINER!r} cannot be grouped into blocks")
    blocks = list(tab.words(m))
    tokens = [BLOCK_JOINER.join(b) for b in blocks]
    target = SymbolTable(tuple(tokens[1:]), tokens[0])

    idx = [[tab.index(s) for s in b] for b in blocks]
    amps = np.empty((k ** (2 * m), k**m), dtype=complex)
    for (xi, x), (yi, y) in itertools.product(enumerate(idx), repeat=2):
        factors = []
        for i in range(1, m + 1):
            word = x[i - 1:] + y[:i]
            w = 0
            for s in word:
                w = w * k + s
            factors.append(rule.amplitudes[w])
        amps[xi * k**m + yi] = _fold(np.kron, factors)
    reduced = LocalRule(target, (0, 1), amps)
    return reduced, BlockEncoding(m, tab, target, shift)
