"""Global evolution of superpositions of finite configurations."""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    Configuration,
    LocalRule,
    Superposition,
    Tolerances,
    interval_domain,
    support_interval,
)


def _word_indices(rule: LocalRule, c: Configuration, lo: int, hi: int) -> list[int]:
    """Index of the neighborhood word at every output cell in ``[lo, hi]``."""
    k = rule.k
    index = {s: i for i, s in enumerate(rule.table.all_symbols)}
    first, last = lo + rule.neighborhood[0], hi + rule.neighborhood[-1]
    cells = [index[c.get(p, rule.quiescent)] for p in range(first, last + 1)]
    out = []
    for j in range(hi - lo + 1):
        w = 0
        for s in cells[j:j + rule.n]:
            w = w * k + s
        out.append(w)
    return out


def evolve_configuration(rule: LocalRule, c: Configuration) -> dict[Configuration, complex]:
    """Expand the tensor product of local images for one basis configuration.

    Cells outside the support interval contribute ``|q>`` (quiescent stability
    is assumed). The expansion proceeds left to right, keeping a sparse map of
    output prefixes; only exact zeros are dropped here.
    """
    dom = support_interval(c, rule)
    if dom is None:
        return {Configuration(): complex(rule.amplitudes[0, 0])}
    lo, hi = dom
    symbols = rule.table.all_symbols
    prefixes: dict[tuple[int, ...], complex] = {(): 1 + 0j}
    for w in _word_indices(rule, c, lo, hi):
        image = rule.amplitudes[w]
        nz = np.flatnonzero(image)
        nxt: dict[tuple[int, ...], complex] = {}
        for prefix, amp in prefixes.items():
            for s in nz:
                nxt[prefix + (int(s),)] = amp * image[s]
        prefixes = nxt
        if not prefixes:
            break
    out: dict[Configuration, complex] = {}
    for prefix, amp in prefixes.items():
        conf = Configuration((lo + j, symbols[s]) for j, s in enumerate(prefix) if s != 0)
        out[conf] = out.get(conf, 0j) + amp
    return out


def apply_global(rule: LocalRule, s: Superposition | Configuration,
                 tol: Tolerances = DEFAULT_TOLERANCES) -> Superposition:
    """One step of the global evolution, extended linearly."""
    if isinstance(s, Configuration):
        s = Superposition.basis(s)
    acc: dict[Configuration, complex] = {}
    for conf, amp in s.items():
        for out, a in evolve_configuration(rule, conf).items():
            acc[out] = acc.get(out, 0j) + amp * a
    return Superposition(acc, eps_zero=tol.eps_zero)


def apply_steps(rule: LocalRule, s: Superposition | Configuration, steps: int,
                tol: Tolerances = DEFAULT_TOLERANCES) -> Superposition:
    if isinstance(s, Configuration):
        s = Superposition.basis(s)
    for _ in range(steps):
        s = apply_global(rule, s, tol)
    return s


def inner_product(a: Superposition, b: Superposition) -> complex:
    """<a|b>, antilinear in the first argument."""
    if len(a) > len(b):
        return np.conj(inner_product(b, a))
    return complex(sum(np.conj(amp) * b.amplitude(c) for c, amp in a.items()))


def overlap_after_step(rule: LocalRule, c: Configuration, d: Configuration) -> complex:
    """The single matrix element <d|Δ|c>, computed as a product of local amplitudes."""
    spans = [iv for iv in (support_interval(c, rule), interval_domain(d)) if iv is not None]
    if not spans:
        return complex(rule.amplitudes[0, 0])
    lo = min(iv[0] for iv in spans)
    hi = max(iv[1] for iv in spans)
    q = rule.quiescent
    amp = 1 + 0j
    for i, w in zip(range(lo, hi + 1), _word_indices(rule, c, lo, hi)):
        amp *= rule.amplitudes[w, rule.table.index(d.get(i, q))]
        if amp == 0:
            break
    return complex(amp)
