"""Brute-force ground truth on finite intervals, and random test inputs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    Configuration,
    LocalRule,
    Superposition,
    SymbolTable,
    Tolerances,
    interval_domain,
)
from .simulate import apply_global

DEFAULT_CAP = 2**20


class OracleCapExceeded(RuntimeError):
    pass


def enumerate_configs(J: tuple[int, int] | None, table: SymbolTable, cap: int = DEFAULT_CAP) -> list[Configuration]:
    """Every configuration whose interval domain lies inside ``J`` (``None`` or ``a > b``: empty)."""
    if J is None or J[0] > J[1]:
        return [Configuration()]
    a, b = J
    count = table.size ** (b - a + 1)
    if count > cap:
        raise OracleCapExceeded(f"{count} configurations on {J} exceeds cap {cap}")
    positions = range(a, b + 1)
    return [
        Configuration(zip(positions, cells), quiescent=table.quiescent)
        for cells in itertools.product(table.all_symbols, repeat=len(positions))
    ]


@dataclass(frozen=True)
class FiniteEvolution:
    """The evolution restricted to configurations inside an interval, as a dense matrix."""

    input_basis: list[Configuration]
    output_basis: list[Configuration]
    matrix: np.ndarray


def finite_evolution(rule: LocalRule, J: tuple[int, int] | None,
                     tol: Tolerances = DEFAULT_TOLERANCES, cap: int = DEFAULT_CAP) -> FiniteEvolution:
    inputs = enumerate_configs(J, rule.table, cap)
    if J is None or J[0] > J[1]:
        out_J = None
    else:
        out_J = (J[0] - rule.neighborhood[-1], J[1] - rule.neighborhood[0])
    outputs = enumerate_configs(out_J, rule.table, cap)
    index = {c: i for i, c in enumerate(outputs)}
    mat = np.zeros((len(outputs), len(inputs)), dtype=complex)
    for j, c in enumerate(inputs):
        for d, amp in apply_global(rule, c, tol).items():
            # the image of c cannot leave the derived support interval
            assert d in index, f"image of {c} leaks outside {out_J}: {d}"
            mat[index[d], j] = amp
    return FiniteEvolution(inputs, outputs, mat)


@dataclass(frozen=True)
class OracleColumns:
    orthonormal: bool
    witness: tuple[Configuration, Configuration] | None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "orthonormal": self.orthonormal,
            "witness": [repr(c) for c in self.witness] if self.witness else None,
            "reason": self.reason,
        }


def oracle_columns_orthonormal(rule: LocalRule, J: tuple[int, int] | None,
                               tol: Tolerances = DEFAULT_TOLERANCES,
                               cap: int = DEFAULT_CAP) -> OracleColumns:
    """Pairwise inner products of the simulated images of every configuration inside ``J``."""
    configs = enumerate_configs(J, rule.table, cap)
    images = [apply_global(rule, c, tol) for c in configs]
    keys: dict[Configuration, int] = {}
    for img in images:
        for d in img:
            keys.setdefault(d, len(keys))
    vecs = np.zeros((len(keys), len(images)), dtype=complex)
    for j, img in enumerate(images):
        for d, amp in img.items():
            vecs[keys[d], j] = amp
    gram = vecs.conj().T @ vecs
    norms = np.sqrt(np.abs(np.diag(gram)))
    bad = np.flatnonzero(np.abs(norms - 1) >= tol.eps_norm)
    if bad.size:
        c = configs[bad[0]]
        return OracleColumns(False, (c, c), f"column norm {norms[bad[0]]}")
    off = np.abs(gram) >= tol.eps_zero
    np.fill_diagonal(off, False)
    rows, cols = np.nonzero(np.triu(off))
    if rows.size:
        i, j = rows[0], cols[0]
        return OracleColumns(False, (configs[i], configs[j]), f"|<Δc'|Δc>| = {abs(gram[i, j])}")
    return OracleColumns(True, None)


def _antecedents(rule: LocalRule, row: Configuration, window: tuple[int, int], cap: int):
    """Depth-first search for configurations inside ``window`` with nonzero amplitude onto ``row``.

    Yields ``(configuration cells, amplitude)``; partial products that are
    exactly zero are pruned.
    """
    a, b = window
    k = rule.k
    lo_nb, hi_nb = rule.neighborhood[0], rule.neighborhood[-1]
    target = {p: rule.table.index(s) for p, s in row.items()}
    amps = rule.amplitudes

    # every output outside [a - hi_nb, b - lo_nb] reads an all-quiescent word
    out_lo, out_hi = a - hi_nb, b - lo_nb
    if any(p < out_lo or p > out_hi for p in target):
        if abs(amps[0, 0]) == 0 or any(s != 0 for s in target.values()):
            return
    cells: dict[int, int] = {}
    visited = 0

    def factor(i: int) -> complex:
        w = 0
        for d in range(lo_nb, hi_nb + 1):
            w = w * k + cells.get(i + d, 0)
        return amps[w, target.get(i, 0)]

    def dfs(p: int, amp: complex):
        nonlocal visited
        visited += 1
        if visited > cap:
            raise OracleCapExceeded(f"antecedent search on {window} visited more than {cap} nodes")
        if p > b:
            for i in range(max(out_lo, b - hi_nb + 1), out_hi + 1):
                amp = amp * factor(i)
                if amp == 0:
                    return
            yield dict(cells), amp
            return
        for s in range(k):
            if s:
                cells[p] = s
            else:
                cells.pop(p, None)
            i = p - hi_nb
            nxt = amp * factor(i) if i >= out_lo else amp
            if nxt != 0:
                yield from dfs(p + 1, nxt)
        cells.pop(p, None)

    if a > b:
        amp = 1 + 0j
        for i in range(out_lo, out_hi + 1):
            amp *= factor(i)
        if amp != 0:
            yield {}, amp
        return
    yield from dfs(a, 1 + 0j)


def oracle_row_norm(rule: LocalRule, row: Configuration, depth: int, cap: int = DEFAULT_CAP) -> list[float]:
    """Truncated squared norms of the row ``<row|Δ``.

    Entry ``h`` sums ``|<row|Δ|c>|^2`` over antecedents ``c`` with interval
    domain inside ``[k - h + 1, l + h]``, where ``[k, l]`` is the interval
    domain of ``row`` (``[0, -1]`` for the all-quiescent row). With a size-two
    neighborhood this is exactly ``<q|N^h (prod N^(row_i)) N^h|q>``.
    """
    dom = interval_domain(row)
    k0, l0 = dom if dom is not None else (0, -1)
    window = (k0 - depth + 1, l0 + depth)
    buckets = np.zeros(depth + 1)
    for cells, amp in _antecedents(rule, row, window, cap):
        if cells:
            cmin, cmax = min(cells), max(cells)
            h = max(0, k0 + 1 - cmin, cmax - l0)
        else:
            h = 0
        buckets[h] += abs(amp) ** 2
    return np.cumsum(buckets).tolist()


# ----------------------------------------------------------------- random inputs

def _random_unit(k: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=k) + 1j * rng.normal(size=k)
    return v / np.linalg.norm(v)


def _haar_unitary(k: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))) / np.sqrt(2)
    qm, r = np.linalg.qr(z)
    d = np.diag(r)
    return qm * (d / np.abs(d))


def default_table(size: int) -> SymbolTable:
    """``q`` plus ``a, b, c, ...``."""
    return SymbolTable(tuple("abcdefghijklmnoprstuvwxyz"[: size - 1]), "q")


def random_rule(size: int, rng: np.random.Generator, n: int = 2, mode: str = "mixed",
                table: SymbolTable | None = None) -> LocalRule:
    """A normalized, quiescent-stable rule with random images.

    ``mode="haar"`` draws every image (other than that of ``q^n``) as an
    independent uniformly random unit vector; such rules almost never have
    orthogonal columns. ``mode="structured"`` draws each image either as a
    phased basis vector or as a column of one shared random unitary, which
    produces exact orthogonalities and exact zeros. ``mode="classical"`` maps
    every word to a phased basis vector. ``mode="mixed"`` picks haar or
    structured per rule.
    """
    table = table or default_table(size)
    k = table.size
    if mode == "mixed":
        mode = "haar" if rng.random() < 0.25 else "structured"
    amps = np.zeros((k**n, k), dtype=complex)
    amps[0, 0] = 1
    if mode == "haar":
        for w in range(1, k**n):
            amps[w] = _random_unit(k, rng)
    elif mode == "classical":
        for w in range(1, k**n):
            amps[w, rng.integers(k)] = np.exp(2j * np.pi * rng.random())
    elif mode == "structured":
        u = _haar_unitary(k, rng)
        for w in range(1, k**n):
            phase = np.exp(2j * np.pi * rng.random())
            if rng.random() < 0.5:
                amps[w, rng.integers(k)] = phase
            else:
                amps[w] = phase * u[:, rng.integers(k)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LocalRule(table, tuple(range(n)), amps)


def random_superposition(table: SymbolTable, J: tuple[int, int], rng: np.random.Generator,
                         terms: int = 8) -> Superposition:
    """A normalized superposition of random configurations inside ``J``."""
    a, b = J
    out: dict[Configuration, complex] = {}
    for _ in range(terms):
        cells = rng.integers(table.size, size=b - a + 1)
        conf = Configuration(
            ((a + i, table.all_symbols[s]) for i, s in enumerate(cells)), quiescent=table.quiescent
        )
        out[conf] = out.get(conf, 0j) + complex(rng.normal(), rng.normal())
    norm = np.sqrt(sum(abs(v) ** 2 for v in out.values()))
    return Superposition({c: v / norm for c, v in out.items()}, eps_zero=0.0)


def random_configuration(table: SymbolTable, J: tuple[int, int], rng: np.random.Generator) -> Configuration:
    a, b = J
    cells = rng.integers(table.size, size=b - a + 1)
    return Configuration(((a + i, table.all_symbols[s]) for i, s in enumerate(cells)),
                         quiescent=table.quiescent)


def sample_pairs(seq: Sequence, count: int, rng: np.random.Generator):
    for _ in range(count):
        i, j = rng.choice(len(seq), size=2, replace=False)
        yield seq[i], seq[j]
