"""Instance solving with engine selection: classify, core-reduce, encode, solve, lift."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classifier import Classification, TractabilityReason, classify
from .encoder import BooleanSystem, encode, lift
from .errors import ContractError, InternalError
from .model import Instance, NormalizedInstance, Pin, Template, TriviallyUnsat, evaluate, normalize_instance
from .oracle import solve_backtracking
from .polysolve import solve_tractable

ENGINES = ("auto", "poly", "oracle")


class NonCorePinError(ContractError):
    """A pin names an element that the core retraction moves."""


@dataclass
class SolveResult:
    satisfiable: bool
    assignment: Optional[dict[str, int]]
    engine: str
    classification: Optional[Classification] = None
    system: Optional[BooleanSystem] = None

    @property
    def status(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"


def to_core(inst: NormalizedInstance, c: Classification) -> NormalizedInstance:
    """Rewrite pins into core coordinates; reject pins on non-core elements."""
    r = c.retraction
    out = []
    for con in inst.constraints:
        if isinstance(con, Pin):
            if con.value not in r.rename:
                raise NonCorePinError(
                    f"pin {con.var} := {con.value} names an element outside the core "
                    f"{{{', '.join(map(str, r.image))}}}; only constants of the core domain "
                    "can be added without changing complexity"
                )
            con = Pin(con.var, r.rename[con.value])
        out.append(con)
    return NormalizedInstance(tuple(out), inst.merge_map, inst.fresh_vars, inst.source_variables)


def solve_poly(norm: NormalizedInstance, c: Classification):
    """Polynomial path on an instance normalized against the original template.

    Returns ``(assignment or None, BooleanSystem or None)``; the assignment
    is in original domain elements.
    """
    if not c.tractable:
        raise ContractError("template classified NP-complete; no polynomial engine applies")
    core_inst = to_core(norm, c)
    back = c.retraction.inverse
    if c.reason is TractabilityReason.DEGENERATE_CORE:
        # every pin names the single core element, which all functions fix
        asg = {v: 0 for v in core_inst.variables}
        return {v: back[d] for v, d in core_inst.expand(asg).items()}, None
    enc = encode(core_inst, c.matrix)
    if isinstance(enc, TriviallyUnsat):
        return None, None
    system, vm = enc
    bits = solve_tractable(system, c.reason)
    if bits is None:
        return None, system
    asg = lift(bits, vm, c.matrix)
    if not evaluate(core_inst, c.core, asg):
        raise InternalError("lifted model fails the core instance")
    return {v: back[d] for v, d in asg.items()}, system


def solve(tmpl: Template, inst: Instance, engine: str = "auto",
          classification: Optional[Classification] = None) -> SolveResult:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    c = classification
    if engine != "oracle" and c is None:
        c = classify(tmpl)
    if engine == "poly" and not c.tractable:
        raise ContractError("template classified NP-complete; engine 'poly' unavailable")
    norm = normalize_instance(inst, tmpl)
    if isinstance(norm, TriviallyUnsat):
        return SolveResult(False, None, engine if engine != "auto" else "normalize", c)

    if engine == "oracle" or not c.tractable:
        model = solve_backtracking(norm, tmpl)
        used = "oracle"
        system = None
    else:
        model, system = solve_poly(norm, c)
        used = "poly:" + c.reason.value
    if model is not None:
        model = {v: model[v] for v in inst.variables}
        if not evaluate(inst, tmpl, model):
            raise InternalError(f"{used} model fails the input instance")
    return SolveResult(model is not None, model, used, c, system)
