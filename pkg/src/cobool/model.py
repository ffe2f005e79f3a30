"""Templates, instances and assignments, plus the two text formats.

A template is a finite chain ``0 < 1 < ... < n-1`` together with named
unary functions whose values all lie in ``{0, 1}``.  An instance is a
conjunction of equations over those functions.  Assignments are plain
``dict[str, int]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import ParseError, ValidationError

RESERVED_NAMES = frozenset({"bot", "top"})
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class CoBooleanFunction:
    name: str
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if not IDENT_RE.match(self.name):
            raise ValidationError(f"invalid function name {self.name!r}")
        bad = [v for v in self.table if v not in (0, 1)]
        if bad:
            raise ValidationError(f"function {self.name}: non-{{0,1}} entry {bad[0]}")

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class Template:
    """Domain ``{0..size-1}`` with an ordered list of co-Boolean functions.

    ``size`` may be 1 only for degenerate cores produced by
    :func:`cobool.algebra.compute_core`; user-facing constructors
    (:func:`parse_template`, the generators) insist on ``size >= 2``.
    """

    size: int
    functions: tuple[CoBooleanFunction, ...] = ()
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.size < 1:
            raise ValidationError(f"domain size must be positive, got {self.size}")
        by_name = {}
        for f in self.functions:
            if f.name in RESERVED_NAMES:
                raise ValidationError(f"function name {f.name!r} is reserved")
            if f.name in by_name:
                raise ValidationError(f"duplicate function name {f.name!r}")
            if len(f.table) != self.size:
                raise ValidationError(
                    f"function {f.name}: table has {len(f.table)} entries, domain has {self.size}"
                )
            by_name[f.name] = f
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def from_tables(cls, size: int, tables: Mapping[str, Iterable[int]]) -> "Template":
        return cls(size, tuple(CoBooleanFunction(n, tuple(t)) for n, t in tables.items()))

    @property
    def domain(self) -> range:
        return range(self.size)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.functions)

    def function(self, name: str) -> CoBooleanFunction:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValidationError(f"unknown function {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name


# -- constraints -------------------------------------------------------------


@dataclass(frozen=True)
class Apply:
    """``fn(arg) = result``"""

    fn: str
    arg: str
    result: str

    @property
    def variables(self):
        return (self.arg, self.result)

    def render(self):
        return f"{self.fn}({self.arg}) = {self.result}"


@dataclass(frozen=True)
class Equal:
    a: str
    b: str

    @property
    def variables(self):
        return (self.a, self.b)

    def render(self):
        return f"{self.a} == {self.b}"


@dataclass(frozen=True)
class ApplyApply:
    """``f(x) = g(y)``"""

    f: str
    x: str
    g: str
    y: str

    @property
    def variables(self):
        return (self.x, self.y)

    def render(self):
        return f"{self.f}({self.x}) = {self.g}({self.y})"


@dataclass(frozen=True)
class Pin:
    var: str
    value: int

    @property
    def variables(self):
        return (self.var,)

    def render(self):
        return f"{self.var} := {self.value}"


Constraint = Union[Apply, Equal, ApplyApply, Pin]


def _ordered_variables(constraints) -> tuple[str, ...]:
    seen = {}
    for c in constraints:
        for v in c.variables:
            seen.setdefault(v, None)
    return tuple(seen)


@dataclass(frozen=True)
class Instance:
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.constraints:
            raise ValidationError("empty instance")

    @property
    def variables(self) -> tuple[str, ...]:
        """Variables in order of first occurrence."""
        return _ordered_variables(self.constraints)

    def render(self) -> str:
        return "".join(c.render() + "\n" for c in self.constraints)


@dataclass(frozen=True)
class TriviallyUnsat:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class NormalizedInstance:
    """Only :class:`Apply` and :class:`Pin` constraints over representatives.

    ``merge_map`` sends every merged-away variable to its representative;
    representatives themselves are absent, so ``rep`` is idempotent.
    """

    constraints: tuple[Constraint, ...]
    merge_map: Mapping[str, str]
    fresh_vars: tuple[str, ...]
    source_variables: tuple[str, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        out = dict.fromkeys(_ordered_variables(self.constraints))
        # a class that only ever appeared in Equal constraints has no constraint left
        for v in self.source_variables:
            out.setdefault(self.rep(v), None)
        return tuple(out)

    def rep(self, var: str) -> str:
        return self.merge_map.get(var, var)

    def pins(self) -> dict[str, int]:
        return {c.var: c.value for c in self.constraints if isinstance(c, Pin)}

    def expand(self, asg: Mapping[str, int]) -> dict[str, int]:
        """Extend an assignment on representatives to every source variable."""
        out = dict(asg)
        for v in self.source_variables:
            out[v] = asg[self.rep(v)]
        return out


# -- evaluation --------------------------------------------------------------


def evaluate(inst, tmpl: Template, asg: Mapping[str, int]) -> bool:
    """True iff ``asg`` satisfies every constraint of ``inst``.

    Accepts :class:`Instance` or :class:`NormalizedInstance`; extra keys in
    ``asg`` are ignored.
    """
    missing = [v for v in inst.variables if v not in asg]
    if missing:
        raise ValidationError(f"assignment is not total: missing {', '.join(missing)}")

    def value(name, x):
        if not 0 <= x < tmpl.size:
            return None
        return tmpl.function(name).table[x]

    for c in inst.constraints:
        if isinstance(c, Apply):
            ok = value(c.fn, asg[c.arg]) == asg[c.result]
        elif isinstance(c, Equal):
            ok = asg[c.a] == asg[c.b]
        elif isinstance(c, ApplyApply):
            fx, gy = value(c.f, asg[c.x]), value(c.g, asg[c.y])
            ok = fx is not None and fx == gy
        elif isinstance(c, Pin):
            ok = asg[c.var] == c.value
        else:
            raise TypeError(f"not a constraint: {c!r}")
        if not ok:
            return False
    return True


# -- normalization -----------------------------------------------------------


def normalize_instance(inst: Instance, tmpl: Template) -> Union[NormalizedInstance, TriviallyUnsat]:
    """Eliminate ``==`` by merging and ``f(x) = g(y)`` by a fresh variable."""
    variables = inst.variables
    for v in variables:
        if v in tmpl:
            raise ValidationError(f"variable {v!r} collides with a function name")
    for c in inst.constraints:
        if isinstance(c, Apply):
            tmpl.function(c.fn)
        elif isinstance(c, ApplyApply):
            tmpl.function(c.f)
            tmpl.function(c.g)
        elif isinstance(c, Pin) and not 0 <= c.value < tmpl.size:
            raise ValidationError(f"pin {c.render()!r}: value out of range 0..{tmpl.size - 1}")

    # union-find; the representative is the earliest-occurring member
    order = {v: i for i, v in enumerate(variables)}
    parent = {v: v for v in variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for c in inst.constraints:
        if isinstance(c, Equal):
            ra, rb = find(c.a), find(c.b)
            if ra != rb:
                if order[rb] < order[ra]:
                    ra, rb = rb, ra
                parent[rb] = ra
    merge_map = {v: find(v) for v in variables if find(v) != v}

    def rep(v):
        return merge_map.get(v, v)

    taken = set(variables)
    fresh = []

    def new_var():
        for i in itertools.count(len(fresh)):
            name = f"_z{i}"
            if name not in taken:
                taken.add(name)
                fresh.append(name)
                return name

    out = []
    pins = {}
    for c in inst.constraints:
        if isinstance(c, Apply):
            out.append(Apply(c.fn, rep(c.arg), rep(c.result)))
        elif isinstance(c, ApplyApply):
            z = new_var()
            out.append(Apply(c.f, rep(c.x), z))
            out.append(Apply(c.g, rep(c.y), z))
        elif isinstance(c, Pin):
            r = rep(c.var)
            if r in pins:
                if pins[r] != c.value:
                    return TriviallyUnsat(
                        f"variable {r} pinned to both {pins[r]} and {c.value}"
                    )
                continue
            pins[r] = c.value
            out.append(Pin(r, c.value))
    return NormalizedInstance(tuple(out), merge_map, tuple(fresh), variables)


# -- text formats ------------------------------------------------------------


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if body.strip():
            yield lineno, body


def _col(body: str, token: str, start: int = 0) -> int:
    return body.index(token, start) + 1


def parse_template(text: str) -> Template:
    """Parse a ``.cbt`` template file."""
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError("missing 'domain <n>' line")
    lineno, body = lines[0]
    words = body.split()
    if words[0] != "domain":
        raise ParseError("expected 'domain <n>'", lineno, _col(body, words[0]))
    if len(words) != 2:
        raise ParseError("expected exactly one domain size", lineno, _col(body, words[-1]))
    if not words[1].isdigit():
        raise ParseError(f"domain size must be an integer, got {words[1]!r}", lineno, _col(body, words[1]))
    size = int(words[1])
    if size < 2:
        raise ValidationError(f"domain size must be at least 2, got {size}")

    functions = []
    for lineno, body in lines[1:]:
        m = re.match(r"\s*fn\s+(\S+)\s*=(.*)\Z", body)
        if not m:
            first = body.split()[0]
            raise ParseError("expected 'fn <name> = <values>'", lineno, _col(body, first))
        name = m.group(1)
        if not IDENT_RE.match(name):
            raise ParseError(f"invalid function name {name!r}", lineno, m.start(1) + 1)
        values = []
        pos = m.start(2)
        for tok in m.group(2).split():
            pos = body.index(tok, pos)
            if not tok.isdigit():
                raise ParseError(f"expected an integer, got {tok!r}", lineno, pos + 1)
            values.append(int(tok))
            pos += len(tok)
        functions.append(CoBooleanFunction(name, tuple(values)))
    return Template(size, tuple(functions))


def render_template(tmpl: Template) -> str:
    out = [f"domain {tmpl.size}\n"]
    for f in tmpl.functions:
        out.append(f"fn {f.name} = {' '.join(map(str, f.table))}\n")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>==|:=|=|\(|\)))")

# token-kind signatures of the four statement forms
_FORMS = {
    ("ident", "(", "ident", ")", "=", "ident"): lambda t: Apply(t[0], t[2], t[5]),
    ("ident", "(", "ident", ")", "=", "ident", "(", "ident", ")"): lambda t: ApplyApply(t[0], t[2], t[5], t[7]),
    ("ident", "==", "ident"): lambda t: Equal(t[0], t[2]),
    ("ident", ":=", "int"): lambda t: Pin(t[0], int(t[2])),
}


def _tokenize(body: str, lineno: int):
    tokens = []
    pos = 0
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(body, pos)
        if not m or m.end() == pos:
            col = pos + len(body[pos:]) - len(body[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {body[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        text = m.group(kind)
        tokens.append((text if kind == "op" else kind, text, m.start(kind) + 1))
        pos = m.end()
    return tokens


def parse_instance(text: str) -> Instance:
    """Parse a ``.cbi`` instance file (template independent)."""
    constraints = []
    for lineno, body in _significant_lines(text):
        tokens = _tokenize(body, lineno)
        kinds = tuple(k for k, _, _ in tokens)
        build = _FORMS.get(kinds)
        if build is None:
            # report the first token where no statement form can continue
            col = tokens[-1][2]
            for i in range(len(tokens)):
                if not any(f[: i + 1] == kinds[: i + 1] for f in _FORMS):
                    col = tokens[i][2]
                    break
            raise ParseError(f"malformed statement {body.strip()!r}", lineno, col)
        constraints.append(build([t for _, t, _ in tokens]))
    if not constraints:
        raise ValidationError("empty instance")
    return Instance(tuple(constraints))


def render_instance(inst: Instance) -> str:
    return inst.render()
