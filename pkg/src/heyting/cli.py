"""Command line front end.

Exit codes: 0 yes/valid/success, 1 no/invalid, 2 input or parse error,
3 budget exceeded, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalog, classifiers
from .algebra import HeytingAlgebra, heyting_from_upsets
from .census import random_poset
from .duality import DEFAULT_SEARCH_BUDGET, dual_of, jankov_valid, prime_spectrum
from .errors import BudgetExceeded, InputError, InternalInconsistency, NotDecomposable
from .formulas import (DEFAULT_ASSIGNMENT_BUDGET, parse, parse_equation, to_text, valid_in,
                       valid_on_poset)
from .poset import Poset, count_upsets, depth, width

CHECK_KINDS = ("diamond", "cascade", "root-system", "three-point", "width-cascade",
               "diamond-sequence", "diamond-algebra")
DECIDE_KINDS = ("equations", "generated", "representable", "primitive")


class _Out:
    """Collects output so stdout is written once."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.text: list[str] = []

    def emit(self, payload: dict, human: str):
        self.text.append(json.dumps(payload, indent=2, sort_keys=True) if self.as_json else human)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _source(args, allow_algebra: bool = True):
    """The single poset or algebra named on the command line."""
    given = [x for x in (args.poset, args.named, args.algebra) if x]
    if len(given) != 1 or (len(args.poset or []) + len(args.named or []) + len(args.algebra or [])) != 1:
        raise InputError("give exactly one of --poset, --named, --algebra")
    if args.poset:
        return Poset.from_json(_read_json(args.poset[0]))
    if args.named:
        return catalog.named(args.named[0])
    if not allow_algebra:
        raise InputError("this command needs a poset")
    return HeytingAlgebra.from_json(_read_json(args.algebra[0]))


def _sources(args) -> list:
    out = [Poset.from_json(_read_json(p)) for p in args.poset or []]
    out += [catalog.named(n) for n in args.named or []]
    out += [HeytingAlgebra.from_json(_read_json(a)) for a in args.algebra or []]
    return out


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _poset_out(out: _Out, X: Poset, dot: bool):
    if dot:
        out.text.append(X.to_dot())
    else:
        out.text.append(json.dumps(X.to_json(), indent=None if not out.as_json else 2))


# -- subcommands ---------------------------------------------------------------------


def cmd_gen(args, out: _Out) -> int:
    if args.what == "named":
        if not args.args:
            raise InputError("gen named needs a name")
        X = catalog.named(args.args[0])
    elif args.what == "diamond":
        try:
            levels = [int(a) for a in args.args]
        except ValueError:
            raise InputError("diamond levels must be integers") from None
        X = catalog.diamond_sequence(levels)
    else:
        if args.n is None:
            raise InputError("gen random needs --n")
        X = random_poset(args.n, random.Random(args.seed))
    _poset_out(out, X, args.dot)
    return 0


def cmd_show(args, out: _Out) -> int:
    src = _source(args)
    X = dual_of(src)
    if isinstance(src, Poset):
        try:
            ups = count_upsets(X)
        except BudgetExceeded:
            ups = None
    else:
        ups = src.size
    payload = {"points": X.n, "depth": depth(X) if X.n else 0, "width": width(X) if X.n else 0,
               "rooted": X.is_rooted, "upsets": ups, "spectrum": X.to_json()}
    if args.dot:
        out.text.append(X.to_dot())
        return 0
    human = (f"points {X.n}\ndepth {payload['depth']}\nwidth {payload['width']}\n"
             f"rooted {_yes(X.is_rooted)}\nupsets {ups if ups is not None else '>cap'}\n"
             f"spectrum {X!r}")
    out.emit(payload, human)
    return 0


def _bool_report(name: str, verdict: bool) -> classifiers.ClassifierReport:
    return classifiers.ClassifierReport(verdict, {name: verdict})


def cmd_check(args, out: _Out) -> int:
    src = _source(args)
    X = dual_of(src)
    kind = args.kind
    if kind == "diamond":
        r = classifiers.is_diamond_system(X)
    elif kind == "cascade":
        r = classifiers.is_cascade(X, args.budget)
    elif kind == "root-system":
        r = _bool_report("poset", classifiers.is_root_system(X))
    elif kind == "three-point":
        r = classifiers.three_point_rule(X)
    elif kind == "width-cascade":
        if args.n is None:
            raise InputError("width-cascade needs --n")
        r = classifiers.is_cascade_width(X, args.n, args.budget)
    elif kind == "diamond-sequence":
        r = _bool_report("poset", classifiers.is_diamond_sequence(X))
    else:
        r = classifiers.is_diamond_algebra(X, args.budget)
    payload = {"kind": kind, "answer": _yes(r.verdict), **{k: v for k, v in r.to_json().items() if k != "verdict"}}
    human = _yes(r.verdict)
    if not r.verdict and r.witnesses:
        human += "\n" + json.dumps(payload["witnesses"], sort_keys=True)
    out.emit(payload, human)
    return 0 if r.verdict else 1


def cmd_valid(args, out: _Out) -> int:
    if not args.formula:
        raise InputError("valid needs --formula")
    phi = parse(args.formula)
    src = _source(args)
    budget = args.budget or DEFAULT_ASSIGNMENT_BUDGET
    if isinstance(src, Poset):
        res = valid_on_poset(src, phi, budget)
        ref = None if res.valid else {v: "{" + ",".join(src.names(m)) + "}" for v, m in res.refutation.items()}
    else:
        res = valid_in(src, phi, budget)
        ref = None if res.valid else {v: str(a) for v, a in res.refutation.items()}
    payload = {"formula": to_text(phi), "valid": res.valid, "refutation": ref}
    human = "valid" if res.valid else "refuted by " + ", ".join(f"{v} = {a}" for v, a in ref.items())
    out.emit(payload, human)
    return 0 if res.valid else 1


def cmd_jankov(args, out: _Out) -> int:
    if not args.target:
        raise InputError("jankov needs --target NAME (the rooted poset of the formula)")
    src = _source(args)
    A = catalog.named(args.target)
    v = jankov_valid(src, A, args.budget)
    payload = {"target": args.target, **v.to_json()}
    human = "valid" if v.valid else "refuted\n" + json.dumps(v.witness.to_json())
    out.emit(payload, human)
    return 0 if v.valid else 1


def cmd_decide(args, out: _Out) -> int:
    if args.kind == "equations":
        eqs = [parse_equation(a) for a in args.axioms or []]
        v = catalog.decide_equations(eqs, args.budget if args.budget != DEFAULT_SEARCH_BUDGET else None)
    else:
        K = _sources(args)
        fn = {"generated": catalog.decide_generated,
              "representable": catalog.decide_representable_generated,
              "primitive": catalog.decide_primitive_generated}[args.kind]
        v = fn(K, args.budget)
    payload = v.to_json()
    human = payload["answer"]
    if "depth_bound" in payload:
        human += f" (depth bound {payload['depth_bound']})"
    out.emit(payload, human)
    return 0 if v.answer else 1


def cmd_decompose(args, out: _Out) -> int:
    X = dual_of(_source(args))
    try:
        d = classifiers.decompose_shapes(X)
    except NotDecomposable as e:
        out.emit({"answer": "no", "level": e.level, "reason": e.reason}, f"no: {e}")
        return 1
    payload = {"answer": "yes", **d.to_json()}
    out.emit(payload, " + ".join(d.kinds()))
    return 0


def cmd_dual(args, out: _Out) -> int:
    src = _source(args)
    if isinstance(src, Poset):
        A = heyting_from_upsets(src)
        out.text.append(json.dumps(A.to_json(), indent=2 if out.as_json else None))
    else:
        _poset_out(out, prime_spectrum(src), args.dot)
    return 0


def cmd_counterexample(args, out: _Out) -> int:
    w = catalog.truncated_counterexample(args.case, args.n if args.n is not None else 4)
    if args.dot:
        out.text.append(w.poset.to_dot())
        return 0
    v = jankov_valid(w.poset, catalog.named(w.case), args.budget)
    payload = {**w.to_json(), "refutes_own_jankov": not v.valid}
    human = (f"{w.case} truncation, N={w.N}: {w.poset.n} points, {w.copies} copies, "
             f"map verified, J({w.case}) {'refuted' if not v.valid else 'valid'}")
    out.emit(payload, human)
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poset", action="append", metavar="FILE", help="poset JSON file")
    common.add_argument("--named", action="append", metavar="NAME", help="named poset, e.g. P3, F(3), chain4")
    common.add_argument("--algebra", action="append", metavar="FILE", help="algebra JSON file")
    common.add_argument("--formula")
    common.add_argument("--axioms", action="append", metavar="EQ")
    common.add_argument("--target", metavar="NAME")
    common.add_argument("--n", type=int)
    common.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    common.add_argument("--json", action="store_true")
    common.add_argument("--dot", action="store_true")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="heyting", description="Finite Heyting algebras and their dual posets.")
    sub = p.add_subparsers(dest="command", required=True)
    g = sub.add_parser("gen", parents=[common], help="generate a poset")
    g.add_argument("what", choices=("named", "diamond", "random"))
    g.add_argument("args", nargs="*")
    sub.add_parser("show", parents=[common], help="depth, width and spectrum")
    c = sub.add_parser("check", parents=[common], help="run a classifier")
    c.add_argument("kind", choices=CHECK_KINDS)
    sub.add_parser("valid", parents=[common], help="validity of --formula")
    sub.add_parser("jankov", parents=[common], help="validity of the Jankov formula of --target")
    d = sub.add_parser("decide", parents=[common], help="decision procedures")
    d.add_argument("kind", choices=DECIDE_KINDS)
    sub.add_parser("decompose", parents=[common], help="block decomposition of a diamond sequence")
    sub.add_parser("dual", parents=[common], help="spectrum of an algebra, or Up of a poset")
    ce = sub.add_parser("counterexample", parents=[common], help="truncated counterexample poset")
    ce.add_argument("case", choices=catalog.FORBIDDEN)
    return p


COMMANDS = {"gen": cmd_gen, "show": cmd_show, "check": cmd_check, "valid": cmd_valid,
            "jankov": cmd_jankov, "decide": cmd_decide, "decompose": cmd_decompose,
            "dual": cmd_dual, "counterexample": cmd_counterexample}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = _Out(args.json)
    try:
        code = COMMANDS[args.command](args, out)
    except InputError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=stderr)
        return 3
    except InternalInconsistency as e:
        print(f"internal error: {e}", file=stderr)
        return 4
    if out.text:
        stdout.write("\n".join(out.text) + "\n")
    return code


def main():
    sys.exit(run())
