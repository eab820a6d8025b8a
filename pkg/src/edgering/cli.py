"""Command-line interface: ``edgering <command> --input GRAPH [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .betti import (
    BettiTable,
    graded_betti_equal_p,
    graded_betti_recursion,
    pdim_and_type,
    regularity_closed_form,
    total_betti_closed_form,
)
from .classify import ClassifyError, CompactClass, NotCompact, classify, generate, lex_order
from .config import Bounds
from .cone import canonical_generators, top_graded_betti
from .graph import GraphError, load_graph, matching_number, parse_graph, prune_leaves
from .oracle import Refused, monomial_betti_oracle
from .toric import initial_ideal, primitive_even_closed_walks, universal_groebner_basis
from .verify import CHECK_GROUPS, verify_instance

EXIT_OK, EXIT_USAGE, EXIT_NOT_COMPACT, EXIT_REFUSED, EXIT_FAILED = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code, status, payload):
        super().__init__(status)
        self.code, self.status, self.payload = code, status, payload


def _read_graph(path):
    if path == "-":
        return parse_graph(sys.stdin.read())
    return load_graph(path)


def _digest(g) -> str:
    doc = json.dumps(g.to_document(), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(doc.encode()).hexdigest()


def _classified(g):
    g0, removed = prune_leaves(g)
    try:
        c = classify(g0)
    except ClassifyError as exc:
        raise _Exit(EXIT_NOT_COMPACT, "not-compact", {"reason": "empty", "detail": str(exc), "removed": removed})
    if isinstance(c, NotCompact):
        payload = c.to_json()
        payload["removed"] = removed
        payload["witness_verified"] = c.verify(g0)
        raise _Exit(EXIT_NOT_COMPACT, "not-compact", payload)
    return g0, removed, c


def _class_payload(c: CompactClass, removed) -> dict:
    return {
        "class": c.to_json(),
        "name": str(c),
        "hubs": list(c.hubs),
        "labeling": c.labeling_json(),
        "removed": removed,
        "ties_broken_by_input_order": c.ties,
    }


def _map_vector(c: CompactClass, vec) -> dict:
    vm = dict(c.vertex_map) if c.vertex_map else {}
    return {vm.get(v, v): a for v, a in vec.items()}


# -- commands ------------------------------------------------------------------------


def cmd_classify(args, bounds):
    g = _read_graph(args.input)
    _, removed, c = _classified(g)
    return _class_payload(c, removed)


def cmd_invariants(args, bounds):
    g = _read_graph(args.input)
    g0, removed, c = _classified(g)
    pt = pdim_and_type(c)
    out = {
        "t": pt.t,
        "mat": c.matching_number,
        "mat_exact": matching_number(g0),
        "pdim": pt.pdim,
        "type": pt.cm_type,
        "V": len(g0.vertices),
        "E": len(g0.edges),
        "input_V": len(g.vertices),
        "input_E": len(g.edges),
        "class": c.to_json(),
    }
    if c.kind == 0:
        out.update(reg=0, special="odd cycle: zero toric ideal")
    else:
        out["reg"] = regularity_closed_form(c)[1]
        out["topGradedBetti"] = top_graded_betti(c).to_json()
    return out


def cmd_groebner(args, bounds):
    g = _read_graph(args.input)
    _, _, c = _classified(g)
    order = lex_order(c)
    return {
        "class": c.to_json(),
        "order": [v.name for v in order],
        "basis": [str(b) for b in universal_groebner_basis(c)],
        "walks": [str(w) for w in primitive_even_closed_walks(c)],
        "labeling": c.labeling_json(),
    }


def cmd_initial(args, bounds):
    g = _read_graph(args.input)
    _, _, c = _classified(g)
    I = initial_ideal(c) if c.kind else None
    gens = I.to_json() if I else []
    return {"class": c.to_json(), "generators": gens, "count": len(gens)}


def cmd_betti(args, bounds):
    g = _read_graph(args.input)
    _, _, c = _classified(g)
    if c.kind == 0:
        return {"class": c.to_json(), "method": args.method, "table": BettiTable.of({}).to_json()}
    if args.method == "closed":
        if not args.graded:
            totals = [total_betti_closed_form(c, i) for i in range(c.t - 1)]
            return {"class": c.to_json(), "method": "closed", "totals": totals}
        if c.kind == 1 and len(set(c.p)) == 1:
            table = graded_betti_equal_p(c.m, c.p[0])
        else:
            raise _Exit(EXIT_REFUSED, "refused", {"reason": "graded closed form exists only for type 1 with equal p"})
    elif args.method == "recursion":
        table = graded_betti_recursion(c)
    else:
        table = monomial_betti_oracle(initial_ideal(c), bounds.char, bounds.max_gens)
    out = {"class": c.to_json(), "method": args.method}
    if args.graded:
        out["table"] = table.to_json()
    else:
        out["totals"] = table.totals()
    return out


def cmd_canonical(args, bounds):
    g = _read_graph(args.input)
    _, _, c = _classified(g)
    vecs = []
    for v in canonical_generators(c):
        d = v.to_json()
        d["vector"] = _map_vector(c, d["vector"])
        vecs.append(d)
    return {"class": c.to_json(), "generators": vecs, "degrees": [v["degree"] for v in vecs]}


def cmd_verify(args, bounds):
    g = _read_graph(args.input)
    _, _, c = _classified(g)
    checks = CHECK_GROUPS if args.checks == "all" else tuple(args.checks.split(","))
    unknown = set(checks) - set(CHECK_GROUPS)
    if unknown:
        raise _Exit(EXIT_USAGE, "failed", {"reason": f"unknown checks {sorted(unknown)}"})
    rep = verify_instance(c, checks, bounds, tamper=args.inject_fault)
    payload = {"class": c.to_json(), "checks": [ch.to_json() for ch in rep.checks]}
    if not rep.ok:
        first = rep.failed[0]
        payload["first_failure"] = first.to_json()
        raise _Exit(EXIT_FAILED, "failed", payload)
    return payload


def cmd_model(args, bounds):
    parse = lambda s: tuple(int(x) for x in s.split(",")) if s else ()
    if args.type == 0:
        c = CompactClass.type0(args.length)
    elif args.type == 1:
        c = CompactClass.type1(parse(args.p))
    elif args.type == 2:
        c = CompactClass.type2(parse(args.p), parse(args.q), args.s)
    else:
        c = CompactClass.type3(parse(args.p), parse(args.q), parse(args.r))
    return generate(c).to_document()


COMMANDS = {
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "groebner": cmd_groebner,
    "initial": cmd_initial,
    "betti": cmd_betti,
    "canonical": cmd_canonical,
    "verify": cmd_verify,
    "model": cmd_model,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edgering", description="Toric ideals and edge rings of compact graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--input", "-i", required=True, help="graph document (JSON or edge list); '-' for stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-subset", type=int)
        p.add_argument("--max-gens", type=int)
        p.add_argument("--max-box", type=int)
        p.add_argument("--char", type=int)
        return p

    for name in ("classify", "invariants", "groebner", "initial", "canonical"):
        common(sub.add_parser(name))
    b = common(sub.add_parser("betti"))
    b.add_argument("--method", choices=("closed", "recursion", "oracle"), default="recursion")
    b.add_argument("--graded", action="store_true")
    v = common(sub.add_parser("verify"))
    v.add_argument("--checks", default="all", help="all or a comma list of " + ",".join(CHECK_GROUPS))
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    m = common(sub.add_parser("model", help="print the model graph of a class"), with_input=False)
    m.add_argument("--type", type=int, choices=(0, 1, 2, 3), required=True)
    m.add_argument("--p", default="")
    m.add_argument("--q", default="")
    m.add_argument("--r", default="")
    m.add_argument("--s", type=int, default=0)
    m.add_argument("--length", type=int, default=3)
    return ap


def _render_text(report) -> str:
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    if "input_digest" in report:
        lines.append(f"input: {report['input_digest']}")
    for k, val in sorted(report["payload"].items()):
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True, ensure_ascii=False)
        lines.append(f"{k}: {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        bounds = Bounds.from_env().override(
            max_subset=args.max_subset, max_gens=args.max_gens, max_box=args.max_box, char=args.char
        )
    except ValueError as exc:
        print(f"edgering: bad EDGERING_* value: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": args.command}
    code = EXIT_OK
    try:
        if getattr(args, "input", None) and args.input != "-":
            report["input_digest"] = _digest(load_graph(args.input))
        report["payload"] = COMMANDS[args.command](args, bounds)
        report["status"] = "ok"
    except _Exit as exc:
        code, report["status"], report["payload"] = exc.code, exc.status, exc.payload
    except Refused as exc:
        code, report["status"], report["payload"] = EXIT_REFUSED, "refused", {"reason": str(exc)}
    except (GraphError, OSError, ValueError) as exc:
        code, report["status"], report["payload"] = EXIT_USAGE, "failed", {"reason": str(exc)}
    if args.command == "model" and code == EXIT_OK and args.format == "json":
        # bare graph document, so the output can be fed back as --input
        print(json.dumps(report["payload"], sort_keys=True, indent=2, ensure_ascii=False))
    elif args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
