"""H-normal form, closure checks, cores and extended operations.

The H-matrix of a template lists, for every domain element ``d``, the
Boolean row ``(f_1(d), ..., f_k(d), 0, 1)``; the two trailing columns are
the constant functions ``bot`` and ``top``.  Everything that decides
tractability is a property of this row set.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ContractError, ValidationError
from .model import CoBooleanFunction, Template

Row = tuple[int, ...]


class BooleanOperation(enum.Enum):
    MAJOR = "Major"
    MINOR = "Minor"
    MEET = "Meet"
    JOIN = "Join"

    @property
    def arity(self) -> int:
        return 3 if self in (BooleanOperation.MAJOR, BooleanOperation.MINOR) else 2

    def __call__(self, *bits: int) -> int:
        if self is BooleanOperation.MAJOR:
            a, b, c = bits
            return (a & b) | (b & c) | (a & c)
        if self is BooleanOperation.MINOR:
            a, b, c = bits
            return a ^ b ^ c
        if self is BooleanOperation.MEET:
            return bits[0] & bits[1]
        return bits[0] | bits[1]

    def on_rows(self, *rows: Row) -> Row:
        return tuple(self(*col) for col in zip(*rows))


@dataclass(frozen=True)
class HMatrix:
    columns: tuple[str, ...]
    rows: tuple[Row, ...]

    @property
    def labels(self) -> range:
        return range(len(self.rows))

    @property
    def row_set(self) -> frozenset:
        return frozenset(self.rows)

    def row_index(self, row: Row) -> int:
        """Least label carrying ``row``."""
        try:
            return self._index[tuple(row)]
        except KeyError:
            raise KeyError(f"{row} is not a row of the matrix") from None

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {}
            for d, r in enumerate(self.rows):
                idx.setdefault(r, d)
            object.__setattr__(self, "_idx", idx)
        return idx

    def render(self) -> str:
        width = len(str(len(self.rows) - 1))
        head = " " * width + " | " + " ".join(self.columns)
        lines = [head]
        for d, row in enumerate(self.rows):
            cells = [str(v).rjust(len(name)) for v, name in zip(row, self.columns)]
            lines.append(f"{d:>{width}} | " + " ".join(cells))
        return "\n".join(lines)


def build_h_matrix(tmpl: Template) -> HMatrix:
    columns = tmpl.names + ("bot", "top")
    rows = tuple(tuple(f.table[d] for f in tmpl.functions) + (0, 1) for d in tmpl.domain)
    return HMatrix(columns, rows)


def matrix_from_rows(rows: Sequence[Sequence[int]], columns: Optional[Sequence[str]] = None) -> HMatrix:
    """Wrap an arbitrary Boolean matrix (no bot/top columns are added)."""
    rows = tuple(tuple(int(v) for v in r) for r in rows)
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise ValidationError("ragged matrix")
    if columns is None:
        columns = tuple(f"c{i}" for i in range(width))
    return HMatrix(tuple(columns), rows)


# -- closure -----------------------------------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    op: BooleanOperation
    witness: Optional[tuple[int, ...]] = None

    @property
    def closed(self) -> bool:
        return self.witness is None


def closed_under(m: HMatrix, op: BooleanOperation) -> ClosureReport:
    """Exhaustively test all label tuples; report the lex-least failure."""
    present = m.row_set
    # image depends only on the distinct rows involved, so cache by row
    seen = {}
    for labels in itertools.product(m.labels, repeat=op.arity):
        key = tuple(m.rows[i] for i in labels)
        ok = seen.get(key)
        if ok is None:
            ok = seen[key] = op.on_rows(*key) in present
        if not ok:
            return ClosureReport(op, labels)
    return ClosureReport(op)


def tuple_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Coordinate-wise ``a <= b``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


# -- cores -------------------------------------------------------------------


@dataclass(frozen=True)
class Retraction:
    """Idempotent commuting self-map of least range, with its renaming.

    ``rename`` sends ``map[0]`` to 0, ``map[1]`` to 1 (when distinct) and
    the remaining image elements to 2, 3, ... in ascending order.
    """

    map: tuple[int, ...]
    image: tuple[int, ...]
    rename: Mapping[int, int]

    @property
    def degenerate(self) -> bool:
        return len(self.map) == 1 or self.map[0] == self.map[1]

    @property
    def is_identity(self) -> bool:
        return all(p == x for x, p in enumerate(self.map))

    @property
    def inverse(self) -> dict[int, int]:
        return {v: k for k, v in self.rename.items()}


def commutes(p: Sequence[int], tmpl: Template) -> bool:
    return all(p[f.table[x]] == f.table[p[x]] for f in tmpl.functions for x in tmpl.domain)


def _least_range_map(tmpl: Template) -> tuple[int, ...]:
    """Lex-least commuting self-map among those with the smallest range.

    Fix ``a = p(0)`` and ``b = p(1)``.  Since every function value lies in
    {0, 1}, ``p(f(x))`` is ``a`` or ``b``, so commuting means: the row of
    ``p(x)`` must equal the row ``target(x)`` obtained from ``x``'s row by
    substituting ``a`` for 0 and ``b`` for 1.  Candidates for ``p(x)`` are
    therefore a whole row class, classes for distinct targets are disjoint,
    and the least range for ``(a, b)`` uses ``a``/``b`` where their class
    matches and one new element per remaining target class.
    """
    if tmpl.size == 1:
        return (0,)
    funcs = tmpl.functions
    rows = [tuple(f.table[d] for f in funcs) for d in tmpl.domain]
    by_row = {}
    for d, r in enumerate(rows):
        by_row.setdefault(r, []).append(d)

    best = None
    for a, b in itertools.product(tmpl.domain, repeat=2):
        subst = (a, b)
        targets = []
        for r in rows:
            t = tuple(subst[v] for v in r)
            if any(v > 1 for v in t) or t not in by_row:
                break
            targets.append(t)
        else:
            if targets[0] != rows[a] or targets[1] != rows[b]:
                continue
            p = [a, b]
            for x in range(2, tmpl.size):
                t = targets[x]
                covered = [e for e in (a, b) if rows[e] == t]
                p.append(min(covered) if covered else by_row[t][0])
            key = (len(set(p)), p)
            if best is None or key < best:
                best = key
    assert best is not None, "identity always commutes"
    return tuple(best[1])


def _idempotent_power(p: tuple[int, ...]) -> tuple[int, ...]:
    q = p
    while tuple(q[x] for x in q) != q:
        q = tuple(p[x] for x in q)
    return q


def compute_core(tmpl: Template) -> tuple[Template, Retraction]:
    """Retract ``tmpl`` onto its core.

    Returns the core (functions restricted to the retraction's image and
    renamed) and the retraction.  Idempotent: the core of a core comes back
    with an identity retraction.
    """
    r = _idempotent_power(_least_range_map(tmpl))
    image = tuple(sorted(set(r)))
    rename = {r[0]: 0}
    if len(r) > 1 and r[1] not in rename:
        rename[r[1]] = 1
    for e in image:
        if e not in rename:
            rename[e] = len(rename)
    inverse = {v: k for k, v in rename.items()}
    m = len(image)
    funcs = tuple(
        CoBooleanFunction(f.name, tuple(rename[f.table[inverse[j]]] for j in range(m)))
        for f in tmpl.functions
    )
    return Template(m, funcs), Retraction(r, image, rename)


# -- extended operations -----------------------------------------------------


@dataclass(frozen=True)
class OperationTable:
    arity: int
    table: Mapping[tuple[int, ...], int]

    def __call__(self, *args: int) -> int:
        return self.table[args]

    @property
    def size(self) -> int:
        return round(len(self.table) ** (1 / self.arity))

    def is_idempotent(self) -> bool:
        return all(self.table[(a,) * self.arity] == a for a in range(self.size))


def extend_operation(m: HMatrix, op: BooleanOperation) -> OperationTable:
    """Lift a Boolean polymorphism of the row set to an operation on labels."""
    if not closed_under(m, op).closed:
        raise ContractError(f"matrix is not closed under {op.value}")
    table = {}
    for args in itertools.product(m.labels, repeat=op.arity):
        if op.arity == 3:
            x, y, z = args
            if x == y or x == z:
                # major(a,a,b)=major(a,b,a)=a ; minor(a,a,b)=minor(a,b,a)=b
                value = (x if op is BooleanOperation.MAJOR else (z if x == y else y))
            elif y == z:
                value = y if op is BooleanOperation.MAJOR else x
            else:
                value = m.row_index(op.on_rows(m.rows[x], m.rows[y], m.rows[z]))
        else:
            x, y = args
            value = x if x == y else m.row_index(op.on_rows(m.rows[x], m.rows[y]))
        table[args] = value
    return OperationTable(op.arity, table)


@dataclass(frozen=True)
class PreservationReport:
    witness: Optional[tuple[str, tuple[int, ...]]] = None

    @property
    def preserved(self) -> bool:
        return self.witness is None


def preserves_graphs(q: OperationTable, tmpl: Template) -> PreservationReport:
    """Check ``f(q(args)) == q(f(args))`` for every function and argument tuple."""
    for f in tmpl.functions:
        t = f.table
        for args in itertools.product(tmpl.domain, repeat=q.arity):
            if t[q.table[args]] != q.table[tuple(t[a] for a in args)]:
                return PreservationReport((f.name, args))
    return PreservationReport()
