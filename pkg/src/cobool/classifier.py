"""Decide P vs NP-complete for a co-Boolean template, with witnesses."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    BooleanOperation,
    ClosureReport,
    HMatrix,
    Retraction,
    build_h_matrix,
    closed_under,
    compute_core,
    tuple_leq,
)
from .model import Template

OPS = (BooleanOperation.MAJOR, BooleanOperation.MINOR, BooleanOperation.MEET, BooleanOperation.JOIN)


class TractabilityReason(enum.Enum):
    MAJORITY_CLOSED = "MajorityClosed"
    MINORITY_CLOSED = "MinorityClosed"
    MEET_CLOSED_ORDERED = "MeetClosedOrdered"
    JOIN_CLOSED_ORDERED = "JoinClosedOrdered"
    DEGENERATE_CORE = "DegenerateCore"


@dataclass(frozen=True)
class OrderViolation:
    """Column where row(0) has a 1 and row(1) has a 0."""

    column: int
    function: str


@dataclass(frozen=True)
class Classification:
    template: Template
    core: Template
    retraction: Retraction
    matrix: Optional[HMatrix]
    reason: Optional[TractabilityReason]
    closures: dict = field(default_factory=dict)
    order_holds: Optional[bool] = None
    order_violation: Optional[OrderViolation] = None

    @property
    def tractable(self) -> bool:
        return self.reason is not None

    @property
    def verdict(self) -> str:
        return "P" if self.tractable else "NP-complete"

    @property
    def verdict_line(self) -> str:
        return f"P {self.reason.value}" if self.tractable else "NP-complete"

    @property
    def semilattice_op(self) -> Optional[BooleanOperation]:
        for op in (BooleanOperation.MEET, BooleanOperation.JOIN):
            if op in self.closures and self.closures[op].closed:
                return op
        return None


def _order_violation(m: HMatrix) -> Optional[OrderViolation]:
    for i, (a, b) in enumerate(zip(m.rows[0], m.rows[1])):
        if a > b:
            return OrderViolation(i, m.columns[i])
    return None


def classify(tmpl: Template) -> Classification:
    core, retraction = compute_core(tmpl)
    if retraction.degenerate or core.size == 1:
        return Classification(tmpl, core, retraction, None, TractabilityReason.DEGENERATE_CORE)

    m = build_h_matrix(core)
    # all four reports are computed so a hardness verdict can cite every one
    closures: dict[BooleanOperation, ClosureReport] = {op: closed_under(m, op) for op in OPS}
    ordered = tuple_leq(m.rows[0], m.rows[1])
    violation = None if ordered else _order_violation(m)

    if closures[BooleanOperation.MAJOR].closed:
        reason = TractabilityReason.MAJORITY_CLOSED
    elif closures[BooleanOperation.MINOR].closed:
        reason = TractabilityReason.MINORITY_CLOSED
    elif closures[BooleanOperation.MEET].closed and ordered:
        reason = TractabilityReason.MEET_CLOSED_ORDERED
    elif closures[BooleanOperation.JOIN].closed and ordered:
        # join must send the Boolean pair (0,1) to 1, i.e. row(0) v row(1) = row(1)
        reason = TractabilityReason.JOIN_CLOSED_ORDERED
    else:
        reason = None
    return Classification(tmpl, core, retraction, m, reason, closures, ordered, violation)


def witnesses(c: Classification) -> dict:
    """Per-operation hardness evidence, keyed by operation name."""
    out = {}
    for op, rep in c.closures.items():
        if not rep.closed:
            out[op.value] = {"closed": False, "witness": list(rep.witness)}
        elif op in (BooleanOperation.MEET, BooleanOperation.JOIN) and c.order_violation:
            v = c.order_violation
            out[op.value] = {
                "closed": True,
                "order_violation": {"column": v.column, "function": v.function},
            }
        else:
            out[op.value] = {"closed": True}
    return out


def _bits(row) -> str:
    return "".join(map(str, row))


def explain(c: Classification) -> dict:
    """JSON-ready pipeline trace with keys verdict, reason, witnesses, core, matrix."""
    r = c.retraction
    core = {
        "size": c.core.size,
        "retraction": list(r.map),
        "image": list(r.image),
        "rename": {str(k): v for k, v in sorted(r.rename.items())},
        "is_input": r.is_identity,
        "functions": {f.name: list(f.table) for f in c.core.functions},
    }
    matrix = None
    if c.matrix is not None:
        matrix = {"columns": list(c.matrix.columns), "rows": [list(row) for row in c.matrix.rows]}
    return {
        "verdict": c.verdict,
        "reason": c.reason.value if c.reason else None,
        "witnesses": witnesses(c),
        "core": core,
        "matrix": matrix,
    }


def explain_text(c: Classification) -> str:
    r = c.retraction
    lines = []
    if r.is_identity:
        lines.append("core: input template is already a core")
    else:
        lines.append(f"retraction: {' '.join(map(str, r.map))}  (image {{{', '.join(map(str, r.image))}}})")
        if c.core.size == 1:
            lines.append(f"core: one-element template on original element {r.image[0]}")
        else:
            lines.append(f"core: {c.core.size} elements, renamed "
                         + ", ".join(f"{k}->{v}" for k, v in sorted(r.rename.items())))
    for f in c.core.functions:
        lines.append(f"  {f.name} = {' '.join(map(str, f.table))}")

    if c.reason is TractabilityReason.DEGENERATE_CORE:
        lines.append("branch: degenerate core (0 and 1 identified); every instance has a constant model")
        return "\n".join(lines)

    m = c.matrix
    lines.append("H-matrix:")
    lines.extend("  " + s for s in m.render().splitlines())
    for op, rep in c.closures.items():
        if rep.closed:
            lines.append(f"{op.value}: closed")
        else:
            labels = rep.witness
            image = op.on_rows(*(m.rows[i] for i in labels))
            lines.append(
                f"{op.value}: not closed, witness rows {tuple(labels)} -> {_bits(image)} absent"
            )
    lines.append(f"order: row(0) = {_bits(m.rows[0])}, row(1) = {_bits(m.rows[1])}, "
                 f"row(0) <= row(1): {'yes' if c.order_holds else 'no'}")
    if c.order_violation:
        f = c.order_violation.function
        lines.append(
            f"  {f}(0) = 1 and {f}(1) = 0, so graph {f} contains {{01, 10}}, "
            "which is closed neither under conjunction nor under disjunction"
        )
    if c.tractable:
        lines.append(f"branch: tractable ({c.reason.value})")
    else:
        lines.append("branch: NP-complete")
    return "\n".join(lines)
