"""
Command Line Interface

    python -m app.main order symm --q 2 --pi 2,1
    python -m app.main verify map.txt --mode automorphism
    python -m app.main decompose map.txt | python -m app.main expand -
    python -m app.main enumerate --q 3 --pi 1,1 --kind aut --export report.md

Results go to stdout, diagnostics and logs to stderr. Exit codes:

    0  success, or a true verdict
    1  false verdict, or the input is not what the command needs
       (not a symmetry, not an automorphism, zero code)
    2  usage, parse and feasibility-cap errors
"""

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from app.logging_config import get_logger, setup_logging
from app.oracle import enumerate_kind
from app.report_exporter import export_reports
from app.settings import Settings, parse_log_level, parse_workers
from pimetric.autgroup import (
    LinearBlockMap,
    decompose_linear,
    expand_linear,
    is_linear,
    random_automorphism,
)
from pimetric.counting import aut_order, hamming_orders, order_report, symm_order
from pimetric.errors import NotAnAutomorphism, NotASymmetry, PiMetricError, ZeroCode
from pimetric.ffield import make_field
from pimetric.pispace import Partition, PiSpace, code_min_distance, pi_distance
from pimetric.symmetry import (
    StructuredSymmetry,
    compose,
    decompose,
    expand,
    random_symmetry,
    symmetry_witness,
)
from pimetric.textio import (
    format_explicit_map,
    format_linear,
    format_structured,
    parse_explicit_map,
    parse_generator,
    parse_symmetry_document,
)

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2

DOMAIN_FAILURES = (NotASymmetry, NotAnAutomorphism, ZeroCode)


# ============================================================
# HELPERS
# ============================================================

def _read(path: str) -> str:
    """File contents, or stdin for "-"."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _space(args: argparse.Namespace) -> PiSpace:
    return PiSpace(make_field(args.q), Partition.parse(args.pi))


def _as_structured(doc) -> StructuredSymmetry:
    return doc.to_structured() if isinstance(doc, LinearBlockMap) else doc


def _verdict(name: str, value: bool) -> None:
    print(f"{name}: {'true' if value else 'false'}")


def _print_witness(f, pair: tuple[int, int]) -> None:
    space = f.space
    u, v = space.vector(pair[0]), space.vector(pair[1])
    fu, fv = f(u), f(v)
    print(f"witness: u={u} v={v} d(u,v)={pi_distance(u, v)} d(F(u),F(v))={pi_distance(fu, fv)}")


# ============================================================
# COMMANDS
# ============================================================

def cmd_order(args: argparse.Namespace) -> int:
    if args.kind == "hamming":
        if args.n is None:
            raise ValueError("order hamming needs --n")
        symm, aut = hamming_orders(args.n, args.q)
        print(f"symm: {symm}")
        print(f"aut: {aut}")
        return EXIT_OK

    if args.pi is None:
        raise ValueError(f"order {args.kind} needs --pi")
    partition = Partition.parse(args.pi)
    if args.kind == "symm":
        print(symm_order(partition, args.q))
    elif args.kind == "aut":
        print(aut_order(partition, args.q))
    else:
        for key, value in order_report(partition, args.q).items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    f = parse_explicit_map(_read(args.map_file))

    if args.mode == "linear":
        result = is_linear(f)
        _verdict("linear", result)
        return EXIT_OK if result else EXIT_FALSE

    if not f.is_bijective:
        _verdict(args.mode, False)
        print("reason: not a bijection")
        return EXIT_FALSE

    if args.mode == "automorphism" and not is_linear(f):
        _verdict(args.mode, False)
        print("reason: not linear")
        return EXIT_FALSE

    pair = symmetry_witness(f)
    _verdict(args.mode, pair is None)
    if pair is not None:
        _print_witness(f, pair)
        return EXIT_FALSE
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    f = parse_explicit_map(_read(args.map_file))
    if args.linear:
        sys.stdout.write(format_linear(decompose_linear(f)))
    else:
        sys.stdout.write(format_structured(decompose(f, validate=args.validate)))
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    doc = parse_symmetry_document(_read(args.doc_file))
    table = expand_linear(doc) if isinstance(doc, LinearBlockMap) else expand(doc)
    sys.stdout.write(format_explicit_map(table))
    return EXIT_OK


def cmd_compose(args: argparse.Namespace) -> int:
    a = _as_structured(parse_symmetry_document(_read(args.first)))
    b = _as_structured(parse_symmetry_document(_read(args.second)))
    sys.stdout.write(format_structured(compose(a, b)))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    report = enumerate_kind(_space(args), args.kind, workers=args.workers)
    sys.stdout.write(report.to_text())
    if args.export:
        ok, error = export_reports([report], args.export)
        if not ok:
            logger.warning("Export failed", path=args.export, error=error)
            print(f"error: export failed: {error}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK if report.matches else EXIT_FALSE


def cmd_random(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise ValueError(f"--count must be >= 1, got {args.count}")
    space = _space(args)
    if args.expand:
        space.require_enumerable()
    rng = random.Random(args.seed)
    docs = []
    for _ in range(args.count):
        seed = rng.getrandbits(64)
        if args.kind == "aut":
            lin = random_automorphism(space, seed)
            docs.append(format_explicit_map(expand_linear(lin)) if args.expand else format_linear(lin))
        else:
            s = random_symmetry(space, seed)
            docs.append(format_explicit_map(expand(s)) if args.expand else format_structured(s))
    sys.stdout.write("\n".join(docs))
    return EXIT_OK


def cmd_mindist(args: argparse.Namespace) -> int:
    generator = parse_generator(_read(args.generator_file), q=args.q)
    print(code_min_distance(generator))
    return EXIT_OK


# ============================================================
# PARSER
# ============================================================

def _add_space_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, required=True, help="field order (a prime power)")
    parser.add_argument("--pi", required=True, help="partition as comma-separated block sizes, e.g. 2,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pimetric",
        description="Symmetry and automorphism groups of the pi-metric on F_q^n",
    )
    parser.add_argument("--workers", type=parse_workers, default=None,
                        help="oracle worker processes (default: PIMETRIC_WORKERS or core count)")
    parser.add_argument("--log-level", type=parse_log_level, default=None,
                        help="log level (default: PIMETRIC_LOG_LEVEL or WARNING)")
    parser.add_argument("--log-file", default=None, help="also write JSON logs to this file")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_order = sub.add_parser("order", help="closed-form group orders")
    p_order.add_argument("kind", choices=["symm", "aut", "hamming", "all"])
    p_order.add_argument("--q", type=int, required=True)
    p_order.add_argument("--pi", help="partition, e.g. 2,1")
    p_order.add_argument("--n", type=int, help="length for the Hamming orders")
    p_order.set_defaults(handler=cmd_order)

    p_verify = sub.add_parser("verify", help="check a map file")
    p_verify.add_argument("map_file", help="map file, or - for stdin")
    p_verify.add_argument("--mode", choices=["symmetry", "automorphism", "linear"], default="symmetry")
    p_verify.set_defaults(handler=cmd_verify)

    p_decompose = sub.add_parser("decompose", help="factor a symmetry as sigma T")
    p_decompose.add_argument("map_file", help="map file, or - for stdin")
    p_decompose.add_argument("--linear", action="store_true", help="emit block matrices (automorphisms only)")
    p_decompose.add_argument("--validate", action="store_true", help="also check block separability")
    p_decompose.set_defaults(handler=cmd_decompose)

    p_expand = sub.add_parser("expand", help="expand a sigma/T or sigma/A document to a map file")
    p_expand.add_argument("doc_file", help="document, or - for stdin")
    p_expand.set_defaults(handler=cmd_expand)

    p_compose = sub.add_parser("compose", help="compose two documents (apply the second first)")
    p_compose.add_argument("first")
    p_compose.add_argument("second")
    p_compose.set_defaults(handler=cmd_compose)

    p_enumerate = sub.add_parser("enumerate", help="brute-force a group order")
    _add_space_args(p_enumerate)
    p_enumerate.add_argument("--kind", choices=["symm", "aut", "m"], default="symm")
    p_enumerate.add_argument("--export", help="write the report to a .md, .json or .pdf file")
    p_enumerate.set_defaults(handler=cmd_enumerate)

    p_random = sub.add_parser("random", help="random group elements")
    _add_space_args(p_random)
    p_random.add_argument("--kind", choices=["symm", "aut"], default="symm")
    p_random.add_argument("--seed", type=int, default=None)
    p_random.add_argument("--count", type=int, default=1)
    p_random.add_argument("--expand", action="store_true", help="emit map files instead of documents")
    p_random.set_defaults(handler=cmd_random)

    p_mindist = sub.add_parser("mindist", help="minimum pi-distance of a linear code")
    p_mindist.add_argument("generator_file", help="generator matrix file, or - for stdin")
    p_mindist.add_argument("--q", type=int, default=None, help="field order if the file has no header")
    p_mindist.set_defaults(handler=cmd_mindist)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = Settings.from_env()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.workers is None:
        args.workers = settings.workers
    setup_logging(log_level=args.log_level or settings.log_level, log_file=args.log_file or settings.log_file)

    try:
        return args.handler(args)
    except DOMAIN_FAILURES as e:
        logger.warning("Command failed", command=args.cmd, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FALSE
    except (PiMetricError, ValueError, OSError) as e:
        logger.warning("Command rejected", command=args.cmd, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
