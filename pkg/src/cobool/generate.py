"""Seeded random templates and instances.

All randomness comes from one :class:`numpy.random.Generator` seeded from
the caller's integer; nothing reads global entropy.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .model import Apply, CoBooleanFunction, Equal, Instance, Pin, Template

EQUAL_PROBABILITY = 0.1


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(stream)))


def gen_random_template(seed: int, n: int, k: int) -> Template:
    if n < 2:
        raise ValidationError(f"domain size must be at least 2, got {n}")
    if k < 1:
        raise ValidationError(f"function count must be at least 1, got {k}")
    rng = rng_for(seed)
    tables = rng.integers(0, 2, size=(k, n))
    return Template(n, tuple(CoBooleanFunction(f"f{i + 1}", tuple(int(v) for v in t))
                             for i, t in enumerate(tables)))


def gen_random_instance(seed: int, tmpl: Template, num_vars: int, num_constraints: int,
                        pin_probability: float = 0.0,
                        pin_values: Optional[Sequence[int]] = None,
                        rng: Optional[np.random.Generator] = None) -> Instance:
    """Random conjunction of ``f(x) = y``, ``x == y`` and ``x := d``.

    Each constraint is a pin with probability ``pin_probability``, otherwise
    an equality with probability 0.1, otherwise an application with a
    uniform function and uniform variable pair.  ``pin_values`` restricts
    pins (pass the core image to keep instances core-compatible).
    """
    if num_vars < 1 or num_constraints < 1:
        raise ValidationError("variable and constraint counts must be at least 1")
    if not 0.0 <= pin_probability <= 1.0:
        raise ValidationError(f"pin probability must lie in [0, 1], got {pin_probability}")
    if not tmpl.functions:
        raise ValidationError("template has no functions")
    values = list(tmpl.domain) if pin_values is None else list(pin_values)
    rng = rng_for(seed) if rng is None else rng
    names = [f"x{i}" for i in range(num_vars)]
    fns = tmpl.names

    kinds = rng.random(num_constraints)
    out = []
    for u in kinds:
        if u < pin_probability:
            out.append(Pin(names[rng.integers(num_vars)], int(values[rng.integers(len(values))])))
        elif u < pin_probability + (1 - pin_probability) * EQUAL_PROBABILITY:
            a, b = rng.integers(num_vars, size=2)
            out.append(Equal(names[a], names[b]))
        else:
            f = fns[rng.integers(len(fns))]
            a, b = rng.integers(num_vars, size=2)
            out.append(Apply(f, names[a], names[b]))
    return Instance(tuple(out))
