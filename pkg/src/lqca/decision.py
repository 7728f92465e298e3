"""End-to-end unitarity verdict for a local rule."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from typing import Any

from .columns import columns_orthogonal
from .core import DEFAULT_TOLERANCES, LocalRule, Tolerances, validate_rule
from .reduce import reduce_neighborhood
from .rows import (
    border_vectors,
    build_n_matrices,
    check_border_conditions,
    full_stability_fast_path,
    rows_unit,
    sum_product,
)


class Verdict(str, enum.Enum):
    UNITARY = "UNITARY"
    NOT_UNITARY = "NOT_UNITARY"
    INVALID_RULE = "INVALID_RULE"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class Stage:
    name: str
    passed: bool | None
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "data": self.data}


@dataclass
class UnitarityReport:
    verdict: Verdict
    stages: list[Stage]
    tolerances: Tolerances
    timings_ms: dict[str, float]

    def stage(self, name: str) -> Stage | None:
        for st in self.stages:
            if st.name == name:
                return st
        return None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "stages": [st.to_dict() for st in self.stages],
            "tolerances": self.tolerances.to_dict(),
            "timings_ms": dict(self.timings_ms),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


class _Clock:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def __call__(self, name):
        clock = self

        class _Span:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                clock.timings[name] = (time.perf_counter() - self.t0) * 1e3

        return _Span()


def decide_unitarity(rule: LocalRule, tol: Tolerances = DEFAULT_TOLERANCES) -> UnitarityReport:
    """Run validation, reduction, the column test and the row test in that order.

    Unit columns follow from normalization, orthogonality from the M-matrix
    reachability test, and unit rows from the border vectors (or the
    full-stability shortcut). The three together make the evolution unitary.
    The row test is only meaningful once columns are known orthonormal, so it
    is skipped when they are not.
    """
    stages: list[Stage] = []
    clock = _Clock()

    def report(verdict):
        return UnitarityReport(verdict, stages, tol, clock.timings)

    with clock("validation"):
        val = validate_rule(rule, tol)
    stages.append(Stage("validation", val.ok, val.to_dict()))
    if not val.ok:
        return report(Verdict.INVALID_RULE)

    with clock("reduction"):
        applied = rule.n != 2
        work, enc = reduce_neighborhood(rule) if applied else (rule, None)
    stages.append(Stage("reduction", True, {
        "applied": applied,
        "source_n": rule.n,
        "alphabet_size": work.k,
        "block_width": enc.block_width if enc else 1,
        "shift": enc.shift if enc else rule.neighborhood[0],
    }))

    with clock("columns"):
        cols = columns_orthogonal(work, tol)
    stages.append(Stage("columns", cols.orthogonal, cols.to_dict()))
    if not cols.orthogonal:
        return report(Verdict.NOT_UNITARY)

    nm = build_n_matrices(work)
    with clock("full_stability"):
        fast = full_stability_fast_path(work, nm, tol)
    stages.append(Stage("full_stability", fast is not None,
                        fast.to_dict() if fast else {"applicable": False}))
    if fast is not None:
        stages.append(Stage("rows", fast.unit_rows, {
            "method": "full_stability",
            "value": fast.value,
            "alphabet_size": work.k,
        }))
        return report(Verdict.UNITARY if fast.unit_rows else Verdict.NOT_UNITARY)

    with clock("border_vectors"):
        bv = border_vectors(nm, tol)
        cond = check_border_conditions(bv, nm, tol)
    stages.append(Stage("border_vectors", bv.converged and not bv.diverged,
                        {**bv.to_dict(), "conditions": cond.to_dict()}))
    if not bv.converged:
        return report(Verdict.INDETERMINATE)

    unit = rows_unit(work, nm, bv, tol)
    stages.append(Stage("rows", unit, {
        "method": "border_vectors",
        "sum_product": sum_product(bv),
        "alphabet_size": work.k,
    }))
    return report(Verdict.UNITARY if unit else Verdict.NOT_UNITARY)
