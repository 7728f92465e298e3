"""Orthogonality of the columns of the global evolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, Configuration, LocalRule, RuleError, Tolerances, Word, support_interval
from .reduce import ATensor, build_a_tensor

MAX_ALPHABET = 32


class AlphabetTooLargeError(RuleError):
    pass


@dataclass(frozen=True, eq=False)
class MMatrix:
    """``values[(x, x'), (y, y')] = |<A_x'y'|A_xy>|^2``, pairs flattened as ``x * dim + x'``."""

    values: np.ndarray
    support: np.ndarray
    dim: int

    def pair_index(self, x: int, xp: int) -> int:
        return x * self.dim + xp


def build_m_matrix(a: ATensor, tol: Tolerances = DEFAULT_TOLERANCES) -> MMatrix:
    d = a.dim
    # gram[x, y, x', y'] = sum_s conj(A^s_x'y') A^s_xy
    gram = np.einsum("xys,pqs->xypq", a.vectors, a.vectors.conj())
    values = (np.abs(gram) ** 2).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    values.setflags(write=False)
    support = values > tol.eps_zero
    support.setflags(write=False)
    return MMatrix(values, support, d)


def _bool_matpow(b: np.ndarray, power: int) -> np.ndarray:
    result = np.eye(b.shape[0], dtype=bool)
    base = b.astype(np.int64)
    while power:
        if power & 1:
            result = (result.astype(np.int64) @ base) > 0
        power >>= 1
        if power:
            base = ((base @ base) > 0).astype(np.int64)
    return result


@dataclass(frozen=True)
class ColumnVerdict:
    orthogonal: bool
    steps: int
    witness: tuple[str, str] | None

    def to_dict(self) -> dict:
        return {
            "orthogonal": self.orthogonal,
            "s": self.steps,
            "witness": list(self.witness) if self.witness else None,
        }


def columns_orthogonal(rule: LocalRule, tol: Tolerances = DEFAULT_TOLERANCES) -> ColumnVerdict:
    """Decide whether distinct configurations have orthogonal images.

    For every pair of symbols ``(x, x')`` the test asks whether an ``s``-step
    path of nonzero M entries leads from ``(q, q)`` to ``(x, x')`` and another
    leads back, with ``s = |qΣ|^2 - 1``. Because M is nonnegative a sum of
    path weights vanishes only if every path does, so boolean matrix powers
    of the support give the exact answer.
    """
    if rule.n != 2:
        raise RuleError(f"column test needs neighborhood size 2, got {rule.n}; reduce first")
    if rule.k > MAX_ALPHABET:
        raise AlphabetTooLargeError(f"|qΣ| = {rule.k} exceeds the limit of {MAX_ALPHABET}")
    m = build_m_matrix(build_a_tensor(rule), tol)
    s = rule.k**2 - 1
    reach = _bool_matpow(m.support, s)
    qq = m.pair_index(0, 0)
    syms = rule.table.all_symbols
    for x in range(rule.k):
        for xp in range(rule.k):
            i = m.pair_index(x, xp)
            linked = bool(reach[i, qq] and reach[qq, i])
            if linked != (x == xp):
                return ColumnVerdict(False, s, (syms[x], syms[xp]))
    return ColumnVerdict(True, s, None)


def column_norm(rule: LocalRule, c: Configuration) -> float:
    """Norm of the image of ``c``: the product of the norms of the local images."""
    dom = support_interval(c, rule)
    if dom is None:
        return float(np.linalg.norm(rule.amplitudes[0]))
    norms = np.linalg.norm(rule.amplitudes, axis=1)
    q = rule.quiescent
    result = 1.0
    for i in range(dom[0], dom[1] + 1):
        word: Word = tuple(c.get(i + d, q) for d in rule.neighborhood)
        result *= norms[rule.word_index(word)]
    return float(result)
