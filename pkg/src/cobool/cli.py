"""Command-line entry point.

Exit codes: 0 ok, 2 usage/parse/contract error, 10 SAT, 20 UNSAT.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classifier
from .errors import CoboolError
from .generate import gen_random_instance, gen_random_template, rng_for
from .model import evaluate, parse_instance, parse_template, render_template
from .pipeline import ENGINES, solve

EXIT_OK, EXIT_ERROR, EXIT_SAT, EXIT_UNSAT = 0, 2, 10, 20


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CoboolError(f"cannot read {path}: {e.strerror}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_classify(args, out):
    tmpl = parse_template(_read(args.template))
    c = classifier.classify(tmpl)
    if args.json:
        print(_dumps(classifier.explain(c)), file=out)
    else:
        print(c.verdict_line, file=out)
        if args.explain:
            print(classifier.explain_text(c), file=out)
    return EXIT_OK


def cmd_solve(args, out):
    tmpl = parse_template(_read(args.template))
    inst = parse_instance(_read(args.instance))
    res = solve(tmpl, inst, engine=args.engine)
    if args.explain and res.classification is not None:
        for line in classifier.explain_text(res.classification).splitlines():
            print("c " + line, file=out)
    if args.dump_boolean:
        if res.system is not None:
            print(res.system.dump(), file=out)
        else:
            print(f"c no boolean system (engine {res.engine})", file=out)
    if args.json:
        print(_dumps({"status": res.status, "engine": res.engine,
                      "assignment": res.assignment}), file=out)
    else:
        print(res.status, file=out)
        if res.satisfiable:
            for var in sorted(res.assignment):
                print(f"{var} = {res.assignment[var]}", file=out)
    return EXIT_SAT if res.satisfiable else EXIT_UNSAT


def run_check(tmpl, samples, seed, num_vars, num_constraints, pin_probability):
    """Cross-validate the polynomial path against the oracle on random instances."""
    c = classifier.classify(tmpl)
    if not c.tractable:
        raise CoboolError("template classified NP-complete; engine 'poly' unavailable")
    stats = {"samples": samples, "sat": 0, "unsat": 0, "agree": 0, "disagree": 0}
    for i in range(samples):
        inst = gen_random_instance(seed, tmpl, num_vars, num_constraints, pin_probability,
                                   pin_values=c.retraction.image, rng=rng_for(seed, i))
        poly = solve(tmpl, inst, engine="poly", classification=c)
        ref = solve(tmpl, inst, engine="oracle")
        ok = poly.satisfiable == ref.satisfiable
        if poly.satisfiable:
            ok = ok and evaluate(inst, tmpl, poly.assignment)
        stats["agree" if ok else "disagree"] += 1
        stats["sat" if ref.satisfiable else "unsat"] += 1
    return stats


def cmd_check(args, out):
    tmpl = parse_template(_read(args.template))
    stats = run_check(tmpl, args.samples, args.seed, args.vars, args.cons, args.pin_prob)
    for key in ("samples", "sat", "unsat", "agree", "disagree"):
        print(f"{key} {stats[key]}", file=out)
    rate = 100.0 * stats["agree"] / stats["samples"] if stats["samples"] else 100.0
    print(f"agreement {rate:.2f}%", file=out)
    return EXIT_OK if stats["disagree"] == 0 else 1


def cmd_gen(args, out):
    if args.kind == "template":
        print(render_template(gen_random_template(args.seed, args.size, args.functions)), end="", file=out)
        return EXIT_OK
    if args.template is None:
        raise CoboolError("gen instance needs a template file")
    tmpl = parse_template(_read(args.template))
    pin_values = None
    if args.core_pins:
        pin_values = classifier.classify(tmpl).retraction.image
    inst = gen_random_instance(args.seed, tmpl, args.vars, args.cons, args.pin_prob, pin_values)
    print(inst.render(), end="", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    p = argparse.ArgumentParser(prog="cobool", description="Classify and solve co-Boolean CSPs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", formatter_class=fmt, help="decide P vs NP-complete")
    c.add_argument("template")
    c.add_argument("--json", action="store_true", help="print the JSON report")
    c.add_argument("--explain", action="store_true", help="print the pipeline trace")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", formatter_class=fmt, help="solve an instance")
    s.add_argument("template")
    s.add_argument("instance")
    s.add_argument("--engine", choices=ENGINES, default="auto",
                   help="auto: poly when tractable, else oracle")
    s.add_argument("--json", action="store_true", help="print status, engine and assignment as JSON")
    s.add_argument("--dump-boolean", action="store_true", help="list the Boolean encoding")
    s.add_argument("--explain", action="store_true", help="report the classification and retraction")
    s.set_defaults(func=cmd_solve)

    k = sub.add_parser("check", formatter_class=fmt, help="cross-validate poly engine against the oracle")
    k.add_argument("template")
    k.add_argument("--samples", type=int, default=100, help="number of random instances")
    k.add_argument("--seed", type=int, default=0, help="generator seed")
    k.add_argument("--vars", type=int, default=6, help="variables per instance")
    k.add_argument("--cons", type=int, default=8, help="constraints per instance")
    k.add_argument("--pin-prob", type=float, default=0.1, help="probability of a pin constraint")
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", formatter_class=fmt, help="emit a random template or instance")
    g.add_argument("kind", choices=("template", "instance"))
    g.add_argument("template", nargs="?", help="template file (instances only)")
    g.add_argument("--seed", type=int, default=0, help="generator seed")
    g.add_argument("--size", type=int, default=4, help="domain size (templates)")
    g.add_argument("--functions", type=int, default=3, help="function count (templates)")
    g.add_argument("--vars", type=int, default=5, help="variable count (instances)")
    g.add_argument("--cons", type=int, default=6, help="constraint count (instances)")
    g.add_argument("--pin-prob", type=float, default=0.1, help="probability of a pin (instances)")
    g.add_argument("--core-pins", action="store_true", help="pin only core elements")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except CoboolError as e:
        print(f"cobool: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
