"""Exponential reference engines working directly over the domain.

Kept independent of the H-encoding so that disagreements with the
polynomial engines point at a bug in one of the two paths.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .errors import ContractError
from .model import Apply, NormalizedInstance, Pin, Template, evaluate

ENUMERATION_GUARD = 10**7
MAX_ENUMERATED_VARIABLES = 8


def solve_backtracking(inst: NormalizedInstance, tmpl: Template) -> Optional[dict[str, int]]:
    """Depth-first search with forward checking.

    Variables are chosen by minimum remaining values (ties by order of first
    occurrence), values are tried in ascending order.  Returns the first
    model found (expanded to all source variables) or ``None``.
    """
    variables = inst.variables
    tables = {f.name: f.table for f in tmpl.functions}
    preimage = {
        f.name: [tuple(d for d in tmpl.domain if f.table[d] == b) for b in (0, 1)]
        for f in tmpl.functions
    }
    touching = {v: [] for v in variables}
    applies = [c for c in inst.constraints if isinstance(c, Apply)]
    for c in applies:
        touching[c.arg].append(c)
        if c.result != c.arg:
            touching[c.result].append(c)

    domains = {v: set(tmpl.domain) for v in variables}
    for c in inst.constraints:
        if isinstance(c, Pin):
            domains[c.var] &= {c.value}
    for c in applies:
        # results are function values, hence 0 or 1
        domains[c.result] &= set(tables[c.fn])
    if any(not d for d in domains.values()):
        return None

    def forward(var, value, doms):
        """Prune neighbours of ``var := value``; False on wipeout."""
        for c in touching[var]:
            t = tables[c.fn]
            if c.arg == c.result:
                if t[value] != value:
                    return False
                continue
            if c.arg == var:
                other, allowed = c.result, {t[value]}
            else:
                other = c.arg
                allowed = set(preimage[c.fn][value]) if value < 2 else set()
            new = doms[other] & allowed
            if not new:
                return False
            doms[other] = new
        return True

    order = {v: i for i, v in enumerate(variables)}
    assignment = {}

    def choose(doms):
        free = [v for v in variables if v not in assignment]
        return min(free, key=lambda v: (len(doms[v]), order[v])) if free else None

    # explicit stack of (variable, candidate values, next index, domains before the choice)
    stack = []
    doms = domains
    var = choose(doms)
    if var is not None:
        stack.append((var, sorted(doms[var]), 0, doms))
    while stack:
        var, values, i, saved = stack.pop()
        assignment.pop(var, None)
        if i >= len(values):
            continue
        stack.append((var, values, i + 1, saved))
        value = values[i]
        doms = {v: set(d) for v, d in saved.items()}
        doms[var] = {value}
        if not forward(var, value, doms):
            continue
        assignment[var] = value
        nxt = choose(doms)
        if nxt is None:
            model = inst.expand(assignment)
            assert evaluate(inst, tmpl, model)
            return model
        stack.append((nxt, sorted(doms[nxt]), 0, doms))
    if not variables and evaluate(inst, tmpl, {}):
        return {}
    return None


def enumerate_solutions(inst, tmpl: Template, limit: Optional[int] = None) -> list[dict[str, int]]:
    """All models of ``inst`` in lexicographic order (variables sorted by name)."""
    variables = sorted(inst.variables)
    if len(variables) > MAX_ENUMERATED_VARIABLES or tmpl.size ** len(variables) > ENUMERATION_GUARD:
        raise ContractError(
            f"enumeration guard exceeded: {len(variables)} variables over a domain of size {tmpl.size}"
        )
    out = []
    for values in itertools.product(tmpl.domain, repeat=len(variables)):
        asg = dict(zip(variables, values))
        if evaluate(inst, tmpl, asg):
            out.append(asg)
            if limit is not None and len(out) >= limit:
                break
    return out
