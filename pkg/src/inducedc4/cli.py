"""Command-line surface: gen, detect, find, verify, selftest, bench.

Exit codes: 0 = found/ok, 1 = none/bad, 2 = error.  All randomness is
seed-explicit through the generator spec grammar (see `generate`).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import kernels
from .bench import CSV_HEADER, fitted_slope, run_bench, write_csv
from .decomposition import DecompConfig
from .detector import DetectionReport, detect, find
from .errors import ParseError, SpecError
from .generate import generate, parse_spec
from .graph import C4Witness, dump_graph, load_graph, naive_detect, oracle_detect, verify_witness


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return load_graph(handle.read())


def cmd_gen(args) -> int:
    g = generate(parse_spec(args.spec))
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(dump_graph(g))
    print(f"wrote {args.output}: n={g.n} m={g.edge_count}")
    return 0


def cmd_detect(args) -> int:
    g = _read_graph(args.path)
    if args.algo == "fast":
        report = detect(g)
    else:
        runner = oracle_detect if args.algo == "oracle" else naive_detect
        witness = runner(g)
        outcome = "found" if witness is not None else "not-found"
        report = DetectionReport(
            outcome, "oracle-fallback", witness,
            {"decomp": 0.0, "p2": 0.0, "p3": 0.0, "p4": 0.0},
        )
    print(("FOUND " if report.found else "NONE ") + report.to_line())
    if args.debug_decomp and args.algo == "fast" and g.n >= DecompConfig().n0:
        from .decomposition import FoundC4, decompose_layers

        dec = decompose_layers(g)
        if not isinstance(dec, FoundC4):
            print(dec.debug_report())
    return 0 if report.found else 1


def cmd_find(args) -> int:
    g = _read_graph(args.path)
    witness = find(g)
    if witness is None:
        print("NONE")
        return 1
    print(f"FOUND {witness.a} {witness.b} {witness.c} {witness.d}")
    return 0


def cmd_verify(args) -> int:
    g = _read_graph(args.path)
    witness = C4Witness(args.a, args.b, args.c, args.d)
    ok = verify_witness(g, witness)
    print("OK" if ok else "BAD")
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    from .selfcheck import run_all

    results = run_all(scale="quick" if args.quick else "full", max_n=args.max_n)
    for result in results:
        print(result.line())
    return 0 if all(r.passed for r in results) else 1


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    p = Fraction(args.p)
    records = run_bench(
        sizes,
        args.reps,
        p=p,
        oracle_max=args.oracle_max,
        naive_max=args.naive_max,
        workers=args.workers,
    )
    if args.csv:
        write_csv(records, args.csv)
        print(f"wrote {args.csv} ({len(records)} rows)")
    else:
        print(CSV_HEADER)
        for rec in records:
            print(rec.to_csv())
    slope = fitted_slope(records, "fast")
    print(f"slope={slope:.3f}")
    if args.compare_backends and kernels.compiled_available():
        from .bench import run_one
        from .generate import GraphSpec

        hard = GraphSpec("polarity-blowup", q=7, w=16)
        print("backend comparison (same instances, plus one 4-cycle-free blowup):")
        for backend in ("compiled", "python"):
            kernels.select_backend(backend)
            side = run_bench(sizes, args.reps, p=p, oracle_max=0, naive_max=0)
            total = sum(r.ms for r in side)
            hard_ms = run_one(hard, "fast").ms
            print(
                f"  {backend}: gnp total {total:.1f} ms over {len(side)} runs, "
                f"blowup n={(7 * 7 + 7 + 1) * 16} detect {hard_ms:.1f} ms"
            )
        kernels.select_backend("auto")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inducedc4",
        description="Detect induced 4-cycles with verified witnesses.",
    )
    parser.add_argument(
        "--backend",
        choices=("auto", "compiled", "python"),
        default="auto",
        help="kernel implementation to use",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph from a spec string")
    p_gen.add_argument("spec", help="e.g. gnp:n=128,p=0.3,seed=42")
    p_gen.add_argument("--output", "-o", required=True)
    p_gen.set_defaults(fn=cmd_gen)

    p_detect = sub.add_parser("detect", help="decide induced-4-cycle existence")
    p_detect.add_argument("path")
    p_detect.add_argument("--algo", choices=("fast", "oracle", "naive"), default="fast")
    p_detect.add_argument(
        "--debug-decomp", action="store_true", help="print the decomposition report"
    )
    p_detect.set_defaults(fn=cmd_detect)

    p_find = sub.add_parser("find", help="return a verified witness if one exists")
    p_find.add_argument("path")
    p_find.set_defaults(fn=cmd_find)

    p_verify = sub.add_parser("verify", help="check a witness quadruple")
    p_verify.add_argument("path")
    p_verify.add_argument("a", type=int)
    p_verify.add_argument("b", type=int)
    p_verify.add_argument("c", type=int)
    p_verify.add_argument("d", type=int)
    p_verify.set_defaults(fn=cmd_verify)

    p_self = sub.add_parser("selftest", help="run the acceptance suites")
    p_self.add_argument("--max-n", type=int, default=6)
    p_self.add_argument("--quick", action="store_true", help="reduced case counts")
    p_self.set_defaults(fn=cmd_selftest)

    p_bench = sub.add_parser("bench", help="benchmark and fit the runtime slope")
    p_bench.add_argument("--sizes", default="1024,2048,4096,8192")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--p", default="1/2", help="edge probability (rational)")
    p_bench.add_argument("--csv", default=None)
    p_bench.add_argument("--oracle-max", type=int, default=2048)
    p_bench.add_argument("--naive-max", type=int, default=256)
    p_bench.add_argument("--workers", type=int, default=1)
    p_bench.add_argument("--compare-backends", action="store_true")
    p_bench.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        kernels.select_backend(args.backend)
        return args.fn(args)
    except (ParseError, SpecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
