"""Command-line front end.

Exit codes: 0 success / positive verdict, 1 negative result, 2 input error.
Reports are plain text; lines starting with ``RESULT`` have a stable
``RESULT <name> <value>`` grammar.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import certifier, coloring, graph
from .errors import GenerationError, InputError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _write_report(path, payload):
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# -- commands ----------------------------------------------------------------------

def cmd_gen(args, out):
    kind = args.kind
    if kind == "cnplus":
        g = graph.gen_cnplus(args.n)
    elif kind == "cycle":
        g = graph.gen_cycle(args.n)
    elif kind == "cubic":
        g = graph.gen_random_cubic(args.n, args.girth, args.seed)
    elif kind == "weight6":
        g = graph.gen_random_weight6(args.n, args.seed)
    else:
        g = graph.gen_petersen()
    text = graph.format_graph(g, comment=f"{kind} n={args.n} seed={args.seed}")
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    print(f"RESULT vertices {g.n}", file=out)
    print(f"RESULT edges {g.m}", file=out)
    return EXIT_OK


def cmd_color(args, out):
    g = graph.read_graph(args.graph)
    if args.lists:
        lists = coloring.read_lists(args.lists, g.m)
        sol = coloring.solve_strong_list(g, lists)
    else:
        lists = None
        sol = coloring.solve_strong_k(g, args.k)
    if sol is None:
        print("NONE", file=out)
        print("RESULT colorable false", file=out)
        return EXIT_NEGATIVE
    assert not coloring.verify(g, sol, lists)
    text = coloring.format_coloring(sol)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    print("RESULT colorable true", file=out)
    print(f"RESULT colors {sol.num_colors()}", file=out)
    return EXIT_OK


def cmd_index(args, out):
    g = graph.read_graph(args.graph)
    k = coloring.strong_chromatic_index(g)
    print(f"RESULT strong_chromatic_index {k}", file=out)
    return EXIT_OK


def cmd_certify(args, out):
    cert = certifier.read_certificate(args.certificate)
    info = certifier.inspect_certificate(cert)
    for key in ("degree", "eta_matches", "eta_nonzero", "per_edge", "bounds_within_k", "max_form"):
        print(f"CHECK {key} {'ok' if info[key] else 'no'}", file=out)
    print(f"RESULT eta {info['eta']}", file=out)
    valid = certifier.check_certificate(cert)
    if valid and not info["max_form"]:
        print("NOTE per-edge bounds hold but 1 + max(i_e) <= s(e) does not hold for every edge", file=out)
    print(f"RESULT certificate {'valid' if valid else 'invalid'}", file=out)
    payload = {"valid": valid, **{k: v for k, v in info.items()}}
    if valid and args.soundness:
        rep = certifier.soundness_trial(cert, args.seed, args.soundness, args.palette)
        print(f"RESULT soundness {rep.successes}/{rep.trials}", file=out)
        payload["soundness"] = {"trials": rep.trials, "successes": rep.successes}
        valid = valid and rep.passed
    _write_report(args.report, payload)
    return EXIT_OK if valid else EXIT_NEGATIVE


def cmd_verify_paper(args, out):
    reports = []
    if args.claim == 1:
        if args.n not in (None, 6):
            raise InputError("claim 1 is the n = 6 configuration")
        reports.append(certifier.verify_claim1())
        if args.emit_certificate:
            certifier.write_certificate(certifier.claim1_certificate(), args.emit_certificate)
    else:
        method = args.method or "staged"
        if args.n is not None:
            ns = [args.n]
        else:
            ns = list(range(7, 10)) if method == "direct" else list(range(8, 21))
        for n in ns:
            if n < 7:
                raise InputError(f"claim 2 needs n >= 7, got {n}")
            if method == "direct":
                if n > 9:
                    raise InputError("direct method supports n <= 9; use --method staged")
                reports.append(certifier.verify_claim2_direct(n, args.orientation))
            else:
                if n < 8:
                    raise InputError("staged method needs n >= 8; use --method direct for n = 7")
                reports.append(certifier.verify_claim2_staged(n, args.orientation))
    for rep in reports:
        print(rep.render(), file=out)
    ok = all(r.passed for r in reports)
    _write_report(args.report, [
        {"claim": r.claim, "n": r.n, "method": r.method, "value": r.value, "expected": r.expected,
         "elapsed": r.elapsed, "passed": r.passed, "checks": r.checks} for r in reports])
    return EXIT_OK if ok else EXIT_NEGATIVE


def run_campaign(kind, count, size, seed, palette, list_size=10, min_girth=3):
    """Yield ``(index, graph, lists, coloring-or-None)`` for each seeded instance."""
    master = random.Random(seed)
    seeds = [master.randrange(2 ** 32) for _ in range(count)]
    for idx, s in enumerate(seeds):
        if kind == "cubic":
            g = graph.gen_random_cubic(size, min_girth, s)
        else:
            g = graph.gen_random_weight6(size, s)
        lists = coloring.ListAssignment.random(g.m, list_size, palette, random.Random(s))
        yield idx, g, lists, coloring.solve_strong_list(g, lists)


def cmd_campaign(args, out):
    if args.count <= 0:
        raise InputError("--count must be positive")
    if args.kind == "cubic" and (args.size % 2 or args.size < 4):
        raise InputError("cubic campaigns need an even --size >= 4")
    if args.size < 2:
        raise InputError("--size must be at least 2")
    ok = 0
    failures = []
    for idx, g, lists, sol in run_campaign(args.kind, args.count, args.size, args.seed,
                                           args.palette, args.list_size, args.girth):
        if sol is not None and not coloring.verify(g, sol, lists):
            ok += 1
        else:
            failures.append(idx)
            stem = Path(args.reproducer_dir) / f"failure_{args.kind}_{args.seed}_{idx}"
            stem.parent.mkdir(parents=True, exist_ok=True)
            graph.write_graph(g, stem.with_suffix(".graph"))
            coloring.write_lists(lists, stem.with_suffix(".lists"))
            print(f"FAILURE instance {idx}: no strong list coloring; reproducer at {stem}.*", file=out)
    print(f"RESULT success {ok}/{args.count}", file=out)
    _write_report(args.report, {"kind": args.kind, "count": args.count, "successes": ok, "failures": failures})
    return EXIT_OK if ok == args.count else EXIT_NEGATIVE


# -- wiring ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="strongedge", description="Strong list edge coloring and Nullstellensatz certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("kind", choices=["cnplus", "cycle", "cubic", "weight6", "petersen"])
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--girth", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="strong (list) edge coloring of a graph file")
    c.add_argument("graph")
    grp = c.add_mutually_exclusive_group(required=True)
    grp.add_argument("--lists")
    grp.add_argument("--k", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_color)

    i = sub.add_parser("index", help="exact strong chromatic index")
    i.add_argument("graph")
    i.set_defaults(func=cmd_index)

    ce = sub.add_parser("certify", help="check a certificate file")
    ce.add_argument("certificate")
    ce.add_argument("--soundness", type=int, default=0, metavar="TRIALS")
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--palette", type=int, default=30)
    ce.add_argument("--report")
    ce.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify-paper", help="recompute the C_6 and C_n (n >= 7) coefficients")
    v.add_argument("--claim", type=int, choices=[1, 2], required=True)
    v.add_argument("--n", type=int)
    v.add_argument("--method", choices=["direct", "staged"])
    v.add_argument("--orientation", choices=["cyclic", "printed"], default="cyclic")
    v.add_argument("--emit-certificate")
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify_paper)

    ca = sub.add_parser("campaign", help="list-color many seeded random graphs")
    ca.add_argument("kind", choices=["cubic", "weight6"])
    ca.add_argument("--count", type=int, default=100)
    ca.add_argument("--size", type=int, default=20)
    ca.add_argument("--seed", type=int, default=1)
    ca.add_argument("--palette", type=int, default=30)
    ca.add_argument("--list-size", type=int, default=10)
    ca.add_argument("--girth", type=int, default=3)
    ca.add_argument("--reproducer-dir", default=".")
    ca.add_argument("--report")
    ca.set_defaults(func=cmd_campaign)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
