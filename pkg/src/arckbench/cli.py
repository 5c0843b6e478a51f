"""Command-line entry point tying all the engines and compilers together."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arck, cl, clcompile, poscnf, verify
from .arckcompile import compile_b2cl_to_arck, red_budget
from .errors import BudgetExceeded, LayoutError, NonBasisVertex, NotPlanarEmbedding, ParseError
from .gadgets import Backend, GadgetKind
from .graphs import decode, to_dot


def _read(path: str) -> str:
    return Path(path).read_text()


def _cmd_solve_arck(args) -> int:
    pos = arck.decode_position(_read(args.infile))
    res = arck.solve(pos, node_budget=args.budget)
    print(json.dumps({
        "winner": res.winner.value,
        "principal_move": res.principal_move,
        "nodes_searched": res.nodes_searched,
    }))
    return 0


def _cmd_solve_cl(args) -> int:
    inst = cl.decode_instance(_read(args.infile))
    res = cl.solve_cl(inst, node_budget=args.budget)
    print(json.dumps({
        "outcome": res.outcome.value,
        "principal_line": list(res.principal_line),
        "nodes_searched": res.nodes_searched,
    }))
    return 0


def _cmd_solve_poscnf(args) -> int:
    formula = poscnf.parse_formula(_read(args.infile))
    mover = poscnf.TFPlayer(args.first)
    res = poscnf.solve_poscnf(poscnf.new_game(formula, mover))
    print(json.dumps({
        "winner": res.winner.value,
        "principal_variable": res.principal_variable,
    }))
    return 0


_VARIANT_FLAGS = ("standard", "bbb2cl", "npb2cl", "mpb2cl")


def _compile_cl(formula, variant: str):
    compiled = clcompile.compile_poscnf_to_b2cl(formula)
    if variant == "standard":
        return compiled
    compiled = clcompile.to_builder_blocker(*compiled)
    if variant == "bbb2cl":
        return compiled
    if variant == "npb2cl":
        return clcompile.to_normal_play(*compiled)
    return clcompile.to_misere_play(*compiled)


def _cmd_compile(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.source == "poscnf":
        formula = poscnf.parse_formula(_read(args.infile))
        inst, trace, params = _compile_cl(formula, args.variant)
        if args.target == "b2cl":
            (out / "instance.json").write_text(cl.encode_instance(inst))
            payload = trace.payload()
            payload["k"] = params.k
            payload["blue_circuit_moves"] = params.blue_circuit_moves
            (out / "trace.json").write_text(json.dumps(payload, indent=2))
            print(json.dumps({"instance": str(out / "instance.json"),
                              "trace": str(out / "trace.json"),
                              "k": params.k}))
            return 0
        if args.variant != "standard":
            print("error: the arc-kayles lowering consumes the standard circuit",
                  file=sys.stderr)
            return 1
    else:
        inst = cl.decode_instance(_read(args.infile))
    embedding = None
    if args.embedding:
        raw = json.loads(_read(args.embedding))
        embedding = {int(k): [int(x) for x in v] for k, v in raw.items()}
    backend = Backend(args.backend)
    position, trace = compile_b2cl_to_arck(inst, backend, embedding)
    (out / "position.json").write_text(arck.encode_position(position))
    payload = trace.payload()
    payload["red_budget"] = red_budget(trace, position)
    (out / "trace.json").write_text(json.dumps(payload, indent=2))
    print(json.dumps({"position": str(out / "position.json"),
                      "trace": str(out / "trace.json")}))
    return 0


def _cmd_verify(args) -> int:
    kind = GadgetKind(args.kind) if args.kind else None
    backend = Backend(args.backend) if args.backend else None
    matrix = verify.verify_all(kind, backend)
    payload = verify.report_payload(matrix)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for entry in payload["gadgets"]:
            print(f"{entry['kind']:10s} {entry['backend']:10s} {entry['status']}")
            for case in entry["cases"]:
                mark = "ok" if case["passed"] else "WARN" if case["warning"] else "FAIL"
                print(f"  [{mark}] in={case['input']} min={case['min_cost']} "
                      f"outputs={case['achievable']}")
                if case["warning"]:
                    print(f"        {case['warning']}")
        for entry in payload["variable"]:
            print(f"variable   {entry['backend']:10s} "
                  f"{'pass' if entry['passed'] else 'FAIL'}")
        for entry in payload["goal"]:
            print(f"goal       {entry['backend']:10s} "
                  f"{'pass' if entry['passed'] else 'FAIL'}")
        for entry in payload["line_graph_planarity"]:
            print(f"line-graph {entry['kind']:18s} {entry['backend']:10s} "
                  f"planar={entry['planar']}")
        print(f"overall: {payload['status']}")
    return 0 if payload["status"] in ("pass", "warn") else 1


def _cmd_export(args) -> int:
    text = _read(args.infile)
    payload = json.loads(text)
    if "edges" in payload and payload.get("edges") and "tail" in payload["edges"][0]:
        dot = cl.instance_to_dot(cl.decode_instance(text))
    else:
        dot = to_dot(decode(text))
    if args.out:
        Path(args.out).write_text(dot)
    else:
        print(dot)
    return 0


def _cmd_serve(args) -> int:
    from .serve import serve_forever

    position = None
    if args.position:
        position = arck.decode_position(_read(args.position))
    serve_forever(args.host, args.port, position, node_budget=args.budget)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arckbench",
        description="Solvers and reduction compilers for misere partizan "
                    "Arc Kayles, bounded constraint logic, and PosCNF",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="reserved; all operations are deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-arck", help="solve an Arc Kayles position")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--budget", type=int, default=50_000_000)
    p.set_defaults(func=_cmd_solve_arck)

    p = sub.add_parser("solve-cl", help="solve a constraint-logic instance")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--budget", type=int, default=50_000_000)
    p.set_defaults(func=_cmd_solve_cl)

    p = sub.add_parser("solve-poscnf", help="solve a PosCNF game")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--first", choices=("true", "false"), default="true")
    p.set_defaults(func=_cmd_solve_poscnf)

    p = sub.add_parser("compile", help="run the reduction compilers")
    p.add_argument("--from", dest="source", choices=("poscnf", "b2cl"),
                   required=True)
    p.add_argument("--to", dest="target", choices=("b2cl", "arck"), required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--variant", choices=_VARIANT_FLAGS, default="standard")
    p.add_argument("--backend", choices=[b.value for b in Backend],
                   default="general")
    p.add_argument("--embedding", default=None,
                   help="rotation-system JSON for the instance")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("verify", help="machine-check the gadget library")
    p.add_argument("--kind", choices=[k.value for k in GadgetKind], default=None)
    p.add_argument("--backend", choices=[b.value for b in Backend], default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("export", help="export a payload as Graphviz DOT")
    p.add_argument("--dot", action="store_true", default=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="serve one playable position over HTTP")
    p.add_argument("--port", type=int, default=8631)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--position", default=None)
    p.add_argument("--budget", type=int, default=50_000_000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, NonBasisVertex, NotPlanarEmbedding, LayoutError,
            BudgetExceeded, FileNotFoundError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
