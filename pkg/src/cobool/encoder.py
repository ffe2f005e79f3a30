"""Translate a normalized instance into a Boolean constraint system.

Every instance variable ``x`` gets one Boolean variable per matrix column
(``y[x,i]``, the row of ``x``); every variable that occurs as the result
of an application also gets a value bit ``v[x]``.  Constraints:

* ``row``     -- the row of ``x`` is a row of the matrix;
* ``link``    -- ``v[z] = y[x,i]`` for ``f_i(x) = z``;
* ``boolrow`` -- ``(v[z], row of z)`` is ``(0, rows[0])`` or ``(1, rows[1])``;
* ``unit``    -- a single bit is fixed.

Each relation is closed under whatever Boolean operation closes the row
set: equality and the two-tuple ``boolrow`` relation are closed under
majority and minority unconditionally, and ``boolrow`` is meet/join closed
exactly when ``rows[0] <= rows[1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .algebra import HMatrix
from .errors import ContractError, InternalError
from .model import Apply, NormalizedInstance, TriviallyUnsat

EQUALITY = ((0, 0), (1, 1))


@dataclass(frozen=True)
class BoolConstraint:
    kind: str  # row | link | boolrow | unit
    scope: tuple[int, ...]
    relation: tuple[tuple[int, ...], ...]
    label: str = ""

    def holds(self, bits: Sequence[int]) -> bool:
        return tuple(bits[v] for v in self.scope) in self.relation


@dataclass
class BooleanSystem:
    names: list[str] = field(default_factory=list)
    constraints: list[BoolConstraint] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def new_var(self, name: str) -> int:
        self.names.append(name)
        return len(self.names) - 1

    def add(self, kind, scope, relation, label=""):
        self.constraints.append(BoolConstraint(kind, tuple(scope), tuple(relation), label))

    def check(self, bits: Sequence[int]) -> bool:
        return len(bits) == self.num_vars and all(c.holds(bits) for c in self.constraints)

    def relations(self):
        """Distinct constraint relations, in first-use order."""
        return list(dict.fromkeys(c.relation for c in self.constraints))

    def dump(self) -> str:
        """Debug listing: header, then one constraint per line."""
        out = [f"c cobool boolean system: {self.num_vars} variables, {len(self.constraints)} constraints"]
        for i, name in enumerate(self.names, start=1):
            out.append(f"c var {i} {name}")
        out.append(f"p rel {self.num_vars} {len(self.constraints)}")
        for c in self.constraints:
            scope = " ".join(str(v + 1) for v in c.scope)
            tuples = " ".join("".join(map(str, t)) for t in c.relation)
            out.append(f"{c.kind} {scope} : {tuples} 0")
        return "\n".join(out)


@dataclass(frozen=True)
class VarMap:
    instance: NormalizedInstance
    row_vars: Mapping[str, tuple[int, ...]]
    value_vars: Mapping[str, int]
    pins: Mapping[str, int]


def encode(inst: NormalizedInstance, m: HMatrix) -> Union[tuple[BooleanSystem, VarMap], TriviallyUnsat]:
    """Encode ``inst`` (normalized against the template of ``m``)."""
    n = len(m.rows)
    if n < 2:
        raise ContractError("matrix needs labels 0 and 1")
    column = {name: i for i, name in enumerate(m.columns)}
    pins = inst.pins()
    for var, d in pins.items():
        if not 0 <= d < n:
            raise ContractError(f"pin {var} := {d} outside the core domain")
    results = {c.result for c in inst.constraints if isinstance(c, Apply)}
    for var in results:
        # a function value is always 0 or 1
        if pins.get(var, 0) > 1:
            return TriviallyUnsat(f"{var} is pinned to {pins[var]} but is a function value")

    sys = BooleanSystem()
    row_rel = tuple(sorted(m.row_set))
    bool_rel = ((0,) + m.rows[0], (1,) + m.rows[1])

    row_vars = {}
    for x in inst.variables:
        row_vars[x] = tuple(sys.new_var(f"y[{x},{name}]") for name in m.columns)
    value_vars = {}
    for x in inst.variables:
        if x in results:
            value_vars[x] = sys.new_var(f"v[{x}]")

    for x in inst.variables:
        sys.add("row", row_vars[x], row_rel, x)
    for c in inst.constraints:
        if isinstance(c, Apply):
            i = column[c.fn]
            sys.add("link", (row_vars[c.arg][i], value_vars[c.result]), EQUALITY, c.render())
    for x, v in value_vars.items():
        sys.add("boolrow", (v,) + row_vars[x], bool_rel, x)
    for x, d in pins.items():
        for var, bit in zip(row_vars[x], m.rows[d]):
            sys.add("unit", (var,), ((bit,),), f"{x} := {d}")
        if x in value_vars:
            sys.add("unit", (value_vars[x],), ((d,),), f"{x} := {d}")
    return sys, VarMap(inst, row_vars, value_vars, pins)


def lift(bits: Sequence[int], vm: VarMap, m: HMatrix, system: BooleanSystem = None) -> dict[str, int]:
    """Read a domain assignment off a Boolean model.

    Pinned variables take their pin, value-carrying variables their value
    bit, everything else the least label of its row.  The result covers
    representatives, fresh variables and merged-away variables.
    """
    if system is not None and not system.check(bits):
        raise ContractError("Boolean assignment does not satisfy the system")
    asg = {}
    for x, vars_ in vm.row_vars.items():
        if x in vm.pins:
            asg[x] = vm.pins[x]
        elif x in vm.value_vars:
            asg[x] = bits[vm.value_vars[x]]
        else:
            row = tuple(bits[v] for v in vars_)
            try:
                asg[x] = m.row_index(row)
            except KeyError:
                raise InternalError(f"row of {x} is not a matrix row") from None
    return vm.instance.expand(asg)
