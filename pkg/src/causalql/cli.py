"""Command-line interface: ``causalql <command> NET.json [options]``.

Every command prints a JSON report on stdout. Exit codes: 0 success,
1 I/O or syntax error, 2 semantic violation, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .closure import DEFAULT_SWEEP_BOUND, BoundExceededError, closures_coincide, is_closed
from .lattice import (
    BlockError,
    NotABCutError,
    boolean_from_bcut,
    build_lattice,
    check_line_crossing_xor,
    check_ortholattice,
    check_orthomodular,
    hasse,
    line_state,
    to_dot,
    verify_state,
)
from .logic import FormulaSyntaxError, Interpretation, UnboundAtomError, interpret, parse_formula, satisfies
from .net import NetError, NetSyntaxError, NetValidationError, UnknownElementError, is_simple, parse_net, validate_net
from .order import (
    derive_poset,
    enumerate_cuts,
    enumerate_lines,
    finiteness_report,
    is_B_cut,
    is_K_dense,
    is_line,
)

EXIT_OK, EXIT_IO, EXIT_SEMANTIC, EXIT_BOUND = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _element_set(text):
    return frozenset(x.strip() for x in text.split(",") if x.strip())


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CommandError(EXIT_IO, "io", f"cannot read {path}: {exc.strerror}") from None
    try:
        desc = parse_net(text)
    except NetError as exc:
        raise CommandError(EXIT_IO, "syntax", str(exc)) from None
    try:
        net = validate_net(desc)
    except NetValidationError as exc:
        raise CommandError(EXIT_SEMANTIC, exc.code, str(exc)) from None
    return net, derive_poset(net)


def _check_elements(poset, names, what):
    unknown = sorted(set(names) - set(poset.elements))
    if unknown:
        raise CommandError(EXIT_SEMANTIC, "unknown_element",
                           f"{what} mentions unknown element {unknown[0]!r}")


def _listing(poset, sets):
    return [poset.ordered(s) for s in sets]


def cmd_validate(args, net, poset):
    return {"valid": True, "simple": is_simple(net),
            "finiteness": finiteness_report(poset)._asdict()}


def cmd_analyze(args, net, poset):
    cuts = enumerate_cuts(poset)
    kd = is_K_dense(poset)
    return {
        "cuts": [{"cut": poset.ordered(c), "b_cut": is_B_cut(poset, c)} for c in cuts],
        "lines": _listing(poset, enumerate_lines(poset)),
        "k_dense": kd.dense,
        "witness": None if kd.witness is None else _listing(poset, kd.witness),
    }


def cmd_lattice(args, net, poset):
    if args.sweep_check and len(poset) > args.sweep_bound:
        raise BoundExceededError(len(poset), args.sweep_bound)
    lat = build_lattice(net, poset, sweep_check=args.sweep_check, bound=args.sweep_bound)
    result = {
        "count": len(lat),
        "elements": _listing(poset, lat.elements),
        "covers": [[poset.ordered(a), poset.ordered(b)] for a, b in hasse(lat)],
        "ortholattice": check_ortholattice(lat).to_json(),
        "orthomodular": check_orthomodular(lat).to_json(),
    }
    if args.sweep_check:
        rep = closures_coincide(net, poset, args.sweep_bound)
        result["coincidence"] = {
            "coincide": rep.coincide,
            "checked": rep.checked,
            "counterexample": None if rep.counterexample is None
            else _listing(poset, rep.counterexample),
        }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(lat))
    return result


def cmd_states(args, net, poset):
    lat = build_lattice(net, poset)
    states = []
    for line in enumerate_lines(poset):
        s = line_state(lat, line)
        states.append({
            "line": poset.ordered(line),
            "assignment": [{"element": lat.label(i), "value": s.assignment[lat.name(i)]}
                           for i in range(len(lat))],
            "verified": verify_state(lat, s).passed,
        })
    return {"states": states, "xor": check_line_crossing_xor(lat).passed}


def cmd_boolean(args, net, poset):
    cut = _element_set(args.cut)
    _check_elements(poset, cut, "--cut")
    lat = build_lattice(net, poset)
    try:
        block = boolean_from_bcut(lat, cut)
    except (NotABCutError, BlockError) as exc:
        raise CommandError(EXIT_SEMANTIC, "not_b_cut" if isinstance(exc, NotABCutError)
                           else "block", str(exc)) from None
    return block.to_json(poset)


def cmd_eval(args, net, poset):
    try:
        formula = parse_formula(args.formula)
    except FormulaSyntaxError as exc:
        raise CommandError(EXIT_IO, "formula_syntax", str(exc)) from None
    binding = {}
    for item in args.bind:
        atom, sep, members = item.partition("=")
        if not sep or not atom.strip():
            raise CommandError(EXIT_IO, "syntax", f"binding {item!r} is not atom=elements")
        members = _element_set(members)
        _check_elements(poset, members, f"binding {atom}")
        if not is_closed(poset, members):
            raise CommandError(EXIT_SEMANTIC, "not_closed",
                               f"binding {atom}={','.join(poset.ordered(members))} is not a closed set")
        binding[atom.strip()] = members
    line = _element_set(args.line)
    _check_elements(poset, line, "--line")
    if not is_line(poset, line):
        raise CommandError(EXIT_SEMANTIC, "not_line", f"{poset.ordered(line)} is not a line")
    lat = build_lattice(net, poset)
    try:
        value = interpret(formula, binding, lat)
    except UnboundAtomError as exc:
        raise CommandError(EXIT_SEMANTIC, "unbound_atom", str(exc)) from None
    return {
        "formula": args.formula,
        "interpretation": poset.ordered(value),
        "line": poset.ordered(line),
        "satisfied": satisfies(Interpretation(binding, line), formula, lat),
    }


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "lattice": cmd_lattice,
    "states": cmd_states,
    "boolean": cmd_boolean,
    "eval": cmd_eval,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="causalql", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("net", help="net file (JSON)")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
        return p

    add("validate", "check the causal-net axioms")
    add("analyze", "cuts, lines, B-cuts and K-density")
    p = add("lattice", "lattice of closed sets and its laws")
    p.add_argument("--dot", help="write the Hasse diagram to this DOT file")
    p.add_argument("--sweep-check", action="store_true",
                   help="also compare both closures on every subset")
    p.add_argument("--sweep-bound", type=int, default=DEFAULT_SWEEP_BOUND,
                   help="largest element count for subset sweeps (default %(default)s)")
    add("states", "two-valued state of every line")
    p = add("boolean", "Boolean block generated by a B-cut")
    p.add_argument("--cut", required=True, help="comma-separated conditions")
    p = add("eval", "interpret a formula and evaluate it on a line")
    p.add_argument("--formula", required=True)
    p.add_argument("--bind", action="append", default=[], metavar="ATOM=ELEMENTS")
    p.add_argument("--line", required=True, help="comma-separated elements of a line")
    return parser


def _payload(args):
    echo = {k: v for k, v in sorted(vars(args).items())
            if k not in ("command", "output", "timing")}
    return {"command": args.command, "args": echo}


def run(argv=None):
    """Execute one command; returns ``(exit_code, report_dict)``."""
    args = build_parser().parse_args(argv)
    report = _payload(args)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        net, poset = _load(args.net)
        report["net"] = {"conditions": len(net.conditions), "events": len(net.events),
                         "arcs": len(net.flow)}
        report["result"] = COMMANDS[args.command](args, net, poset)
        report["violations"] = []
    except CommandError as exc:
        code = exc.code
        report["violations"] = [{"kind": exc.kind, "message": str(exc)}]
    except BoundExceededError as exc:
        code = EXIT_BOUND
        report["violations"] = [{"kind": "bound", "message": str(exc)}]
    except UnknownElementError as exc:
        code = EXIT_SEMANTIC
        report["violations"] = [{"kind": "unknown_element", "message": str(exc)}]
    except OSError as exc:
        code = EXIT_IO
        report["violations"] = [{"kind": "io", "message": str(exc)}]
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return code, report, args


def main(argv=None):
    code, report, args = run(argv)
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for v in report["violations"]:
        print(f"causalql: {v['kind']}: {v['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
