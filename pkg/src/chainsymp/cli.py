"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 infeasible target or failed
verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from chainsymp.chain import JordanSpec, almost_abelian_to_chain, build
from chainsymp.graph import ChainDigraph, GraphError, to_dot, validate
from chainsymp.oracle import OracleTooLarge, certify_equivalence
from chainsymp.realize import Infeasible, parse_type, realize
from chainsymp.symplectic import verify

ORACLE_LIMIT_ENV = "CHAINSYMP_ORACLE_LIMIT"


class InputError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def load_graph(path: Optional[str]) -> ChainDigraph:
    """Read a graph JSON document, or an algebra document carrying ``graph``."""
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if isinstance(data, dict) and "graph" in data and "basis" in data:
        data = data["graph"]
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    try:
        return validate(ChainDigraph.from_dict(data))
    except GraphError as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None


def oracle_limit() -> tuple[int, int]:
    raw = os.environ.get(ORACLE_LIMIT_ENV, "4,4")
    try:
        m, k = (int(x) for x in raw.split(","))
    except ValueError:
        raise InputError(f"{ORACLE_LIMIT_ENV} must look like 'm,k', got {raw!r}") from None
    return m, k


def parse_blocks(text: str) -> tuple[tuple[int, int], ...]:
    blocks = []
    for item in filter(None, text.replace(" ", "").split(",")):
        try:
            n, p = item.split(":")
            blocks.append((int(n), int(p)))
        except ValueError:
            raise InputError(f"malformed block {item!r}; expected n:p") from None
    return tuple(blocks)


def cmd_build(args) -> int:
    g = load_graph(args.input)
    _write(args.output, dumps(build(g).to_dict()))
    return 0


def _verify_file(path: str) -> dict:
    """Worker for directory mode: one file, one report (never raises)."""
    try:
        g = load_graph(path)
    except InputError as exc:
        return {"file": Path(path).name, "error": str(exc)}
    out = verify(g).to_dict()
    out["file"] = Path(path).name
    return out


def _verify_directory(args) -> int:
    files = sorted(str(p) for p in Path(args.input).glob("*.json"))
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(_verify_file, files))
    _write(args.output, dumps(reports))
    if any("error" in r for r in reports):
        return 1
    if any(r["verdict"] == "failed" for r in reports):
        return 2
    if args.strict and not all(r["symplectic"] for r in reports):
        return 2
    return 0


def cmd_verify(args) -> int:
    if args.input not in (None, "-") and Path(args.input).is_dir():
        return _verify_directory(args)
    g = load_graph(args.input)
    report = verify(g, cross_check=args.cross_check)
    out = report.to_dict()
    status = 0
    if args.oracle:
        m, k = (None, None) if args.oracle_override else oracle_limit()
        try:
            cert = certify_equivalence(g, max_vertices=m, max_k=k)
        except OracleTooLarge as exc:
            print(f"oracle skipped: {exc}", file=sys.stderr)
            out["oracle"] = {"verdict": "skipped", "reason": str(exc)}
        else:
            out["oracle"] = cert.to_dict()
            if not cert.ok:
                status = 2
    if report.verdict == "failed" or report.top_power_agrees is False:
        status = 2
    if args.strict and report.verdict != "symplectic":
        status = 2
    _write(args.output, dumps(out))
    if status:
        print(f"verification: {report.verdict}", file=sys.stderr)
    return status


def cmd_realize(args) -> int:
    try:
        target = parse_type(args.type)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        g = realize(target)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    _write(args.output, dumps(g.to_dict()))
    return 0


def cmd_almost_abelian(args) -> int:
    try:
        spec = JordanSpec(parse_blocks(args.blocks), args.t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(args.output, dumps(almost_abelian_to_chain(spec).to_dict()))
    return 0


def cmd_export_dot(args) -> int:
    _write(args.output, to_dot(load_graph(args.input)))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainsymp",
        description="Nilpotent Lie algebras of chain digraphs and their symplectic forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the Lie algebra of a chain digraph")
    p.add_argument("-i", "--input", help="graph JSON (default: stdin)")
    p.add_argument("-o", "--output", help="algebra JSON (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the necessary conditions and the family form")
    p.add_argument("-i", "--input", help="graph or algebra JSON, or a directory of them (default: stdin)")
    p.add_argument("-j", "--jobs", type=int, default=None, help="worker processes for directory input")
    p.add_argument("-o", "--output", help="report JSON (default: stdout)")
    p.add_argument("--oracle", action="store_true", help="also certify against the free-algebra quotient")
    p.add_argument(
        "--oracle-override",
        action="store_true",
        help=f"ignore the oracle size limit ({ORACLE_LIMIT_ENV}, default 4,4)",
    )
    p.add_argument("--strict", action="store_true", help="exit 2 unless the verdict is symplectic")
    p.add_argument("--cross-check", action="store_true", help="also test the top wedge power (dim <= 12)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("realize", help="chain digraph of a prescribed nilpotency type")
    p.add_argument("--type", required=True, help="a1,...,ak with optional trailing 0")
    p.add_argument("-o", "--output", help="graph JSON (default: stdout)")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("almost-abelian", help="star digraph of an almost abelian algebra")
    p.add_argument("--blocks", default="", help="comma separated n:p pairs")
    p.add_argument("--t", type=int, default=0, help="number of 1x1 zero blocks")
    p.add_argument("-o", "--output", help="graph JSON (default: stdout)")
    p.set_defaults(func=cmd_almost_abelian)

    p = sub.add_parser("export-dot", help="Graphviz rendering of a chain digraph")
    p.add_argument("-i", "--input", help="graph JSON (default: stdin)")
    p.add_argument("-o", "--output", help="DOT file (default: stdout)")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
