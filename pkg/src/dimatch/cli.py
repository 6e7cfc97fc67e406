"""Command-line entry points.

Exit codes: 0 yes/ok, 1 no/infeasible, 2 usage or parse error, 3 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .coloring import format_certificate, parse_certificate, verify_complete
from .graph import Graph, GraphFormatError, load_graph, save_graph
from .matching import solve_saturation
from .oracle import GeneratorError, GeneratorSpec, MIXED_MODELS, brute_dim, generate, mixed_instance
from .pipeline import solve
from .rewrite import LiftError, format_trace

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _read_graph(path: str) -> Graph:
    return load_graph(Path(path).read_text())


def cmd_solve(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    report = solve(g, check_input=not args.allow_unchecked)
    if args.trace:
        print(format_trace(report.trace), file=sys.stderr)
    if report.is_yes:
        print("YES")
        cert = format_certificate(report.certificate)
        if args.certificate:
            Path(args.certificate).write_text(cert)
        else:
            sys.stdout.write(cert)
        return EXIT_YES
    print("NO")
    print(f"witness: {report.witness}")
    return EXIT_NO


def cmd_check(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    cert = parse_certificate(Path(args.certificate).read_text())
    try:
        ok = verify_complete(g, cert)
    except ValueError as exc:
        print(f"FAIL: {exc}")
        return EXIT_NO
    print("OK" if ok else "FAIL")
    return EXIT_YES if ok else EXIT_NO


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(model=args.model, n=args.n, seed=args.seed, family=args.family)
    g = generate(spec)
    text = save_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    coloring = brute_dim(g)
    if coloring is None:
        print("NO")
        return EXIT_NO
    print("YES")
    sys.stdout.write(format_certificate(coloring))
    return EXIT_YES


def cmd_compare(args: argparse.Namespace) -> int:
    mismatches = 0
    for i in range(args.count):
        seed = args.seed + i
        n = args.min_n + (seed % (args.max_n - args.min_n + 1))
        g = mixed_instance(n, seed)
        expected = brute_dim(g) is not None
        report = solve(g)
        if report.is_yes != expected:
            mismatches += 1
            print(f"MISMATCH seed={seed} n={n}: solver={report.decision} oracle={expected}")
        elif report.is_yes and not verify_complete(g, report.certificate):
            mismatches += 1
            print(f"BAD CERTIFICATE seed={seed} n={n}")
    print(f"compared {args.count} instances, {mismatches} discrepancies")
    return EXIT_YES if mismatches == 0 else EXIT_NO


def cmd_saturate(args: argparse.Namespace) -> int:
    raw = Path(args.graph).read_text()
    graph_lines = []
    required: list[int] = []
    for line in raw.splitlines():
        if line.strip().startswith("U:"):
            required += [int(x) for x in line.split(":", 1)[1].split()]
        else:
            graph_lines.append(line)
    g = load_graph("\n".join(graph_lines))
    m = solve_saturation(g, required)
    if m is None:
        print("infeasible")
        return EXIT_NO
    for u, v in sorted(m):
        print(u, v)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dimatch")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide and certify a dominating induced matching")
    p.add_argument("graph")
    p.add_argument("--trace", action="store_true", help="dump the rewrite trace to stderr")
    p.add_argument("--certificate", help="write the YES certificate to this file")
    p.add_argument("--allow-unchecked", action="store_true",
                   help="skip the long-claw input check (at your own risk)")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("check", help="verify a black/white certificate")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("gen", help="generate a long-claw-free instance")
    p.add_argument("--model", default="uniform", choices=list(MIXED_MODELS) + ["known"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", default="cycle", choices=["cycle", "path", "complete", "star"])
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force decision (small graphs)")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("compare", help="cross-check solver against the oracle")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--min-n", type=int, default=7)
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("saturate", help="matching saturating the 'U:' vertices")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_saturate)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (GraphFormatError, FileNotFoundError, ValueError, GeneratorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, LiftError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
