"""Transfer matrices, border vectors and the unit-rows test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, Configuration, LocalRule, RuleError, SymbolTable, Tolerances, interval_domain


@dataclass(frozen=True, eq=False)
class NMatrices:
    """``per_symbol[s][x, y] = |<s|δ|xy>|^2``; the quiescent one is ``N``."""

    table: SymbolTable
    per_symbol: np.ndarray

    @property
    def N(self) -> np.ndarray:
        return self.per_symbol[0]

    def of(self, symbol: str) -> np.ndarray:
        return self.per_symbol[self.table.index(symbol)]


def build_n_matrices(rule: LocalRule) -> NMatrices:
    if rule.n != 2:
        raise RuleError(f"transfer matrices need neighborhood size 2, got {rule.n}")
    k = rule.k
    sq = np.abs(rule.amplitudes) ** 2          # (k*k, k): [x*k + y, s]
    per = sq.T.reshape(k, k, k).copy()         # [s, x, y]
    per.setflags(write=False)
    return NMatrices(rule.table, per)


@dataclass(frozen=True, eq=False)
class BorderVectors:
    l: np.ndarray
    r: np.ndarray
    iterations: int
    residual: float
    converged: bool
    diverged: bool = False
    stalled_steps: int = 0

    def to_dict(self) -> dict:
        return {
            "l": self.l.tolist(),
            "r": self.r.tolist(),
            "iterations": self.iterations,
            "residual": self.residual,
            "converged": self.converged,
            "diverged": self.diverged,
            "stalled_steps": self.stalled_steps,
        }


def _minimal_fixed_point(mat: np.ndarray, tol: Tolerances):
    """Iterate ``v <- mat v`` from the quiescent unit vector.

    The sequence is componentwise nondecreasing, so its limit is the least
    nonnegative fixed point with unit quiescent entry. Stops once the
    increment and a geometric estimate of the remaining tail both fall below
    ``eps_fix``.
    """
    k = mat.shape[0]
    v = np.zeros(k)
    v[0] = 1.0
    prev_inc = None
    stalled = 0
    for it in range(1, tol.max_iter + 1):
        nv = mat @ v
        inc = float(np.max(np.abs(nv - v)))
        v = nv
        if np.max(v) > k + 1:
            return v, it, False, True, stalled
        if prev_inc is not None and inc >= prev_inc and inc > 0:
            stalled += 1
        else:
            stalled = 0
        if inc == 0.0:
            return v, it, True, False, stalled
        if inc < tol.eps_fix and prev_inc:
            rho = inc / prev_inc
            if rho < 1 and inc * rho / (1 - rho) < tol.eps_fix:
                return v, it, True, False, stalled
        prev_inc = inc
    return v, tol.max_iter, False, False, stalled


def border_vectors(nm: NMatrices, tol: Tolerances = DEFAULT_TOLERANCES) -> BorderVectors:
    """Least fixed points ``r = N r`` and ``l = l N`` with unit quiescent entry."""
    N = nm.N
    r, it_r, ok_r, div_r, st_r = _minimal_fixed_point(N, tol)
    l, it_l, ok_l, div_l, st_l = _minimal_fixed_point(N.T, tol)
    residual = float(max(np.max(np.abs(N @ r - r)), np.max(np.abs(l @ N - l))))
    for vec in (l, r):
        vec.setflags(write=False)
    return BorderVectors(
        l=l, r=r,
        iterations=max(it_r, it_l),
        residual=residual,
        converged=ok_r and ok_l,
        diverged=div_r or div_l,
        stalled_steps=max(st_r, st_l),
    )


@dataclass(frozen=True)
class BorderConditions:
    lr: float
    sum_product: float
    inner_is_one: bool
    sum_bound: bool
    disjoint_support: bool
    no_linked_pair: bool

    @property
    def all_hold(self) -> bool:
        return self.inner_is_one and self.sum_bound and self.disjoint_support and self.no_linked_pair

    def to_dict(self) -> dict:
        return {
            "l_dot_r": self.lr,
            "sum_product": self.sum_product,
            "i_l_dot_r_is_one": self.inner_is_one,
            "ii_sum_product_bounded": self.sum_bound,
            "iii_disjoint_support": self.disjoint_support,
            "iv_no_linked_pair": self.no_linked_pair,
        }


def check_border_conditions(bv: BorderVectors, nm: NMatrices,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> BorderConditions:
    """Conditions every pair of border vectors satisfies when columns are orthonormal.

    (iv) is checked as ``N_xy != 0 => l_x = 0 or r_y = 0``: a nonzero
    ``l_x N_xy r_y`` would give the all-quiescent row a second antecedent.
    """
    l, r, N = bv.l, bv.r, nm.N
    k = len(l)
    lr = float(l @ r)
    sp = float(l.sum() * r.sum())
    iii = all(l[x] * r[x] < tol.eps_zero for x in range(1, k))
    iv = all(
        l[x] < tol.eps_zero or r[y] < tol.eps_zero
        for x in range(1, k) for y in range(1, k)
        if N[x, y] > tol.eps_zero
    )
    return BorderConditions(
        lr=lr,
        sum_product=sp,
        inner_is_one=abs(lr - 1) < tol.eps_sum,
        sum_bound=sp <= k + tol.eps_sum,
        disjoint_support=iii,
        no_linked_pair=iv,
    )


def sum_product(bv: BorderVectors) -> float:
    return float(bv.l.sum() * bv.r.sum())


def rows_unit(rule: LocalRule, nm: NMatrices, bv: BorderVectors,
              tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """All rows have unit norm iff the border sums multiply to ``|qΣ|``."""
    return abs(sum_product(bv) - rule.k) < tol.eps_sum


def row_norm_squared(rule: LocalRule, nm: NMatrices, bv: BorderVectors, row: Configuration) -> float:
    """Squared norm of the row ``<row|Δ``: ``l . N^(row_k) ... N^(row_l) . r``."""
    dom = interval_domain(row)
    v = bv.r.copy()
    if dom is not None:
        q = rule.quiescent
        for i in range(dom[1], dom[0] - 1, -1):
            v = nm.of(row.get(i, q)) @ v
    return float(bv.l @ v)


@dataclass(frozen=True)
class FastPathResult:
    unit_rows: bool
    value: float

    def to_dict(self) -> dict:
        return {"unit_rows": self.unit_rows, "q_NON_q": self.value}


def full_stability_fast_path(rule: LocalRule, nm: NMatrices,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> FastPathResult | None:
    """Limit-free unit-rows decision, available when no pair of non-quiescent
    symbols can produce the quiescent one. Returns ``None`` otherwise."""
    k = rule.k
    q_amp = np.abs(rule.amplitudes[:, 0]).reshape(k, k)
    if np.any(q_amp[1:, 1:] >= tol.eps_zero):
        return None
    N = nm.N
    ones = np.ones((k, k))
    value = float((N @ ones @ N)[0, 0])
    return FastPathResult(abs(value - k) < tol.eps_sum, value)
