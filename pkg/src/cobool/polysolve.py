"""Polynomial-time engines for Boolean systems with a known polymorphism.

* majority  -> binary projections + 2-SAT (implication graph, SCCs)
* minority  -> parity checks + Gaussian elimination over GF(2)
* meet/join -> generalized arc consistency, then all-min / all-max

Every engine re-checks its model against the full system before
returning; a failed re-check raises :class:`InternalError` rather than
returning a wrong answer.  UNSAT is reported as ``None``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .classifier import TractabilityReason
from .encoder import BooleanSystem
from .errors import ContractError, InternalError

Bits = list[int]


def _verified(sys: BooleanSystem, bits: Bits, engine: str) -> Bits:
    for c in sys.constraints:
        if not c.holds(bits):
            raise InternalError(f"{engine} engine produced a model violating {c.kind} {c.label!r}")
    return bits


def _effective(scope, relation):
    """Drop tuples that disagree on repeated scope variables."""
    if len(set(scope)) == len(scope):
        return scope, relation
    first = {}
    for i, v in enumerate(scope):
        first.setdefault(v, i)
    keep = tuple(t for t in relation if all(t[i] == t[first[v]] for i, v in enumerate(scope)))
    idx = sorted(first.values())
    return tuple(scope[i] for i in idx), tuple(dict.fromkeys(tuple(t[i] for i in idx) for t in keep))


def solve_tractable(sys: BooleanSystem, reason: TractabilityReason) -> Optional[Bits]:
    if reason is TractabilityReason.MAJORITY_CLOSED:
        return solve_majority(sys)
    if reason is TractabilityReason.MINORITY_CLOSED:
        return solve_affine(sys)
    if reason is TractabilityReason.MEET_CLOSED_ORDERED:
        return solve_semilattice(sys, "min")
    if reason is TractabilityReason.JOIN_CLOSED_ORDERED:
        return solve_semilattice(sys, "max")
    raise ContractError(f"no Boolean engine for {reason}")


# -- majority: 2-SAT ---------------------------------------------------------


def _lit(var: int, value: int) -> int:
    """Node of the literal ``var == value``."""
    return 2 * var + (1 - value)


def binary_clauses(scope, relation) -> list[tuple[int, ...]]:
    """Unit and two-literal clauses from the 1- and 2-projections of a relation.

    A clause is a tuple of literal nodes (see ``_lit``).
    """
    scope, relation = _effective(scope, relation)
    if not relation:
        # empty relation: contradictory units on the first variable (or a bare falsum)
        return [(_lit(scope[0], 0),), (_lit(scope[0], 1),)] if scope else [()]
    clauses = []
    for i, v in enumerate(scope):
        proj = {t[i] for t in relation}
        if len(proj) == 1:
            clauses.append((_lit(v, proj.pop()),))
    for i, j in itertools.combinations(range(len(scope)), 2):
        proj = {(t[i], t[j]) for t in relation}
        for a, b in itertools.product((0, 1), repeat=2):
            if (a, b) not in proj:
                clauses.append((_lit(scope[i], 1 - a), _lit(scope[j], 1 - b)))
    return clauses


def _tarjan(num_nodes: int, adj: list[list[int]]) -> list[int]:
    """SCC id per node; ids are assigned in reverse topological order."""
    index = [-1] * num_nodes
    low = [0] * num_nodes
    comp = [-1] * num_nodes
    on_stack = [False] * num_nodes
    stack = []
    counter = 0
    ncomp = 0
    for root in range(num_nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, i = work[-1]
            succ = adj[node]
            if i < len(succ):
                work[-1] = (node, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[node]:
                    low[node] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == node:
                        break
                ncomp += 1
    return comp


def solve_2sat(num_vars: int, clauses: Iterable[tuple[int, ...]]) -> Optional[Bits]:
    adj = [[] for _ in range(2 * num_vars)]
    for cl in clauses:
        if len(cl) == 0:
            return None
        if len(cl) == 1:
            (a,) = cl
            adj[a ^ 1].append(a)
        else:
            a, b = cl
            adj[a ^ 1].append(b)
            adj[b ^ 1].append(a)
    comp = _tarjan(2 * num_vars, adj)
    bits = []
    for v in range(num_vars):
        t, f = comp[2 * v], comp[2 * v + 1]
        if t == f:
            return None
        bits.append(1 if t < f else 0)
    return bits


def solve_majority(sys: BooleanSystem) -> Optional[Bits]:
    # clauses depend only on the relation; compute once on local indices, then rebind
    cache = {}
    clauses = []
    for c in sys.constraints:
        scope, relation = _effective(c.scope, c.relation)
        local = cache.get(relation)
        if local is None:
            local = cache[relation] = binary_clauses(tuple(range(len(scope))), relation)
        clauses.extend(tuple(2 * scope[lit >> 1] + (lit & 1) for lit in cl) for cl in local)
    bits = solve_2sat(sys.num_vars, clauses)
    if bits is None:
        return None
    return _verified(sys, bits, "majority")


# -- minority: GF(2) ---------------------------------------------------------


class NotACosetError(ValueError):
    pass


@dataclass(frozen=True)
class AffineHull:
    base: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    checks: tuple[tuple[tuple[int, ...], int], ...]

    def span(self) -> set[tuple[int, ...]]:
        out = set()
        for coeffs in itertools.product((0, 1), repeat=len(self.basis)):
            t = list(self.base)
            for c, vec in zip(coeffs, self.basis):
                if c:
                    t = [a ^ b for a, b in zip(t, vec)]
            out.add(tuple(t))
        return out


def _rref(vectors: Iterable[Sequence[int]], width: int) -> list[list[int]]:
    rows = []
    pivots = []
    for v in vectors:
        v = list(v)
        for r, p in zip(rows, pivots):
            if v[p]:
                v = [a ^ b for a, b in zip(v, r)]
        if any(v):
            p = v.index(1)
            for k, r in enumerate(rows):
                if r[p]:
                    rows[k] = [a ^ b for a, b in zip(r, v)]
            rows.append(v)
            pivots.append(p)
    order = sorted(range(len(rows)), key=lambda k: pivots[k])
    return [rows[k] for k in order]


def affine_hull(rows: Iterable[Sequence[int]]) -> AffineHull:
    """Describe a minority-closed Boolean relation as ``base + span(basis)``.

    ``checks`` are parity equations ``(coeffs, rhs)`` whose common solutions
    are exactly the relation.
    """
    rows = {tuple(r) for r in rows}
    if not rows:
        raise NotACosetError("empty relation")
    base = min(rows)
    width = len(base)
    basis = _rref((tuple(a ^ b for a, b in zip(r, base)) for r in sorted(rows)), width)
    if len(rows) != 2 ** len(basis):
        raise NotACosetError(f"{len(rows)} tuples is not 2^{len(basis)}")
    pivots = [r.index(1) for r in basis]
    checks = []
    for free in range(width):
        if free in pivots:
            continue
        c = [0] * width
        c[free] = 1
        for r, p in zip(basis, pivots):
            if r[free]:
                c[p] = 1
        rhs = sum(a & b for a, b in zip(c, base)) & 1
        checks.append((tuple(c), rhs))
    hull = AffineHull(base, tuple(tuple(r) for r in basis), tuple(checks))
    if hull.span() != rows:
        raise NotACosetError("relation is not closed under minority")
    return hull


class GF2System:
    """Incremental Gaussian elimination; rows are int bitmasks."""

    def __init__(self):
        self.pivots = {}  # pivot bit -> (mask, rhs); all other bits of mask are lower
        self.inconsistent = False

    def add(self, mask: int, rhs: int):
        while mask:
            p = mask.bit_length() - 1
            row = self.pivots.get(p)
            if row is None:
                self.pivots[p] = (mask, rhs)
                return
            mask ^= row[0]
            rhs ^= row[1]
        if rhs:
            self.inconsistent = True

    def solve(self, num_vars: int) -> Optional[Bits]:
        """Back-substitute with free variables set to 0."""
        if self.inconsistent:
            return None
        value = 0
        for p in sorted(self.pivots):
            mask, rhs = self.pivots[p]
            rest = mask ^ (1 << p)
            if rhs ^ (bin(rest & value).count("1") & 1):
                value |= 1 << p
        return [(value >> v) & 1 for v in range(num_vars)]


def solve_affine(sys: BooleanSystem, hulls: Optional[list] = None) -> Optional[Bits]:
    """Solve a minority-closed system.

    ``hulls`` (optional) collects every :class:`AffineHull` computed, for
    callers that audit the coset structure.
    """
    cache = {}
    eqs = GF2System()
    for c in sys.constraints:
        scope, relation = _effective(c.scope, c.relation)
        key = relation
        hull = cache.get(key)
        if hull is None:
            if not relation:
                return None
            try:
                hull = cache[key] = affine_hull(relation)
            except NotACosetError as e:
                raise InternalError(f"{c.kind} relation is not affine: {e}") from None
            if hulls is not None:
                hulls.append((relation, hull))
        for coeffs, rhs in hull.checks:
            mask = 0
            for v, a in zip(scope, coeffs):
                if a:
                    mask ^= 1 << v
            eqs.add(mask, rhs)
            if eqs.inconsistent:
                return None
    bits = eqs.solve(sys.num_vars)
    if bits is None:
        return None
    return _verified(sys, bits, "affine")


# -- meet / join: GAC --------------------------------------------------------

BOTH = 0b11  # candidate set {0, 1} as a bitmask over values


def gac(sys: BooleanSystem) -> Optional[list[int]]:
    """Generalized arc consistency; returns candidate masks or None on wipeout.

    Bit ``1 << b`` of a mask means value ``b`` is still a candidate.
    """
    dom = [BOTH] * sys.num_vars
    cons = []
    watch = [[] for _ in range(sys.num_vars)]
    for k, c in enumerate(sys.constraints):
        scope, relation = _effective(c.scope, c.relation)
        cons.append((scope, relation))
        for v in scope:
            watch[v].append(k)

    queue = deque(range(len(cons)))
    queued = [True] * len(cons)
    while queue:
        k = queue.popleft()
        queued[k] = False
        scope, relation = cons[k]
        doms = [dom[v] for v in scope]
        support = [0] * len(scope)
        found = False
        for t in relation:
            for d, b in zip(doms, t):
                if not d >> b & 1:
                    break
            else:
                found = True
                for i, b in enumerate(t):
                    support[i] |= 1 << b
        if not found:
            return None
        for v, d, s in zip(scope, doms, support):
            if d & s != d:
                dom[v] = d & s
                for k2 in watch[v]:
                    if not queued[k2] and k2 != k:
                        queued[k2] = True
                        queue.append(k2)
    return dom


def solve_semilattice(sys: BooleanSystem, direction: str = "min") -> Optional[Bits]:
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    dom = gac(sys)
    if dom is None:
        return None
    if direction == "min":
        bits = [0 if d & 1 else 1 for d in dom]
    else:
        bits = [1 if d & 2 else 0 for d in dom]
    return _verified(sys, bits, "semilattice")
