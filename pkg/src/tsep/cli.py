"""Command-line front end.

Exit codes: 0 separated / success, 1 connected / no certificate / law
failure, 2 usage or input error, 3 disagreement with the classical oracle.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Sequence

from . import lawcheck, oracle, separation
from .graph import CondContext, Graph, GraphError, load_graph
from .relation import VertexSet

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _labels(tokens: Sequence[str] | None) -> list[str]:
    out: list[str] = []
    for tok in tokens or ():
        out.extend(x for x in tok.split(",") if x)
    return out


def _read_graph(args: argparse.Namespace) -> Graph:
    if args.inline:
        return load_graph(args.graph.replace(";", "\n"))
    if args.graph == "-":
        return load_graph(sys.stdin.read())
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"file not found: {args.graph}") from None
    return load_graph(text)


def _context(args: argparse.Namespace) -> CondContext:
    g = _read_graph(args)
    return CondContext(g, g.vertex_set(_labels(args.w)))


def _emit(args: argparse.Namespace, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _verdict(sep: bool) -> str:
    return "separated" if sep else "connected"


def cmd_pair(args: argparse.Namespace) -> int:
    ctx = _context(args)
    g = ctx.graph
    b, c = args.pair
    bi, ci = g.index(b), g.index(c)
    inside = [x for x, i in ((b, bi), (c, ci)) if ctx.w.mask >> i & 1]
    if inside:
        _warn(f"endpoint(s) {inside} lie in W; the d/t equivalence only covers vertices outside W")
    fn = separation.d_separated if args.command == "dsep" else separation.t_separated
    sep = fn(ctx, bi, ci)
    payload = {"query": args.command, "pair": [b, c], "w": g.labels(ctx.w), "verdict": _verdict(sep)}
    lines = [_verdict(sep)]
    if args.oracle:
        try:
            classical = oracle.pearl_d_separated(g, ctx.w, bi, ci)
        except oracle.OracleScopeError as exc:
            raise UsageError(str(exc)) from None
        payload["oracle"] = _verdict(classical)
        lines.append(f"oracle: {_verdict(classical)}")
        if classical != sep:
            _emit(args, "\n".join(lines), payload)
            print("error: verdict disagrees with the classical oracle", file=sys.stderr)
            return EXIT_ORACLE
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if sep else EXIT_NEGATIVE


def cmd_split(args: argparse.Namespace) -> int:
    ctx = _context(args)
    g = ctx.graph
    b, c = g.vertex_set(_labels(args.b)), g.vertex_set(_labels(args.c))
    cert = separation.find_splitting(ctx, b, c)
    if args.oracle:
        try:
            brute = oracle.brute_force_splitting(ctx, b, c)
        except oracle.OracleScopeError as exc:
            raise UsageError(str(exc)) from None
        if (brute is None) != (cert is None):
            print("error: certificate existence disagrees with exhaustive search", file=sys.stderr)
            return EXIT_ORACLE
    if cert is None:
        print("null" if args.format == "json" else "none")
        return EXIT_NEGATIVE
    print(cert.to_json(g))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ctx = _context(args)
    g = ctx.graph
    raw = args.cert
    if not raw.lstrip().startswith("{"):
        try:
            raw = Path(raw).read_text(encoding="utf-8")
        except FileNotFoundError:
            raise UsageError(f"file not found: {args.cert}") from None
    cert = separation.SplitCertificate.from_json(g, raw)
    b, c = g.vertex_set(_labels(args.b)), g.vertex_set(_labels(args.c))
    separation.check_disjoint(ctx, b, c)
    ok = separation.verify_splitting(ctx, b, c, cert)
    _emit(args, "valid" if ok else "invalid", {"valid": ok, **cert.to_dict(g)})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_closure(args: argparse.Namespace) -> int:
    ctx = _context(args)
    g = ctx.graph
    s = g.vertex_set(_labels(args.set))
    out = separation.build_conditional(ctx).closure(s)
    labels = g.labels(out)
    _emit(args, "[" + ", ".join(labels) + "]", {"closure": labels})
    return EXIT_OK


def cmd_laws(args: argparse.Namespace) -> int:
    lawcheck.random_graph(args.n, args.p, 0)  # bound check before any work
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    laws = [lid for lid, law in lawcheck.LAWS.items() if not (args.strict and law.extended)]
    first_failure: dict[str, dict] = {}
    failures = dict.fromkeys(laws, 0)
    for i, (gseed, ctx) in enumerate(lawcheck.random_instances(args.count, args.n, args.p, args.seed)):
        for lid in laws:
            rep = lawcheck.check_law(ctx, lid)
            if not rep.holds:
                failures[lid] += 1
                first_failure.setdefault(lid, {"instance": i, "graph_seed": gseed, **rep.counterexample})
    any_failed = False
    for lid in laws:
        rep = {
            "law": lid,
            "holds": failures[lid] == 0,
            "seed": args.seed,
            "instances": args.count,
            "failures": failures[lid],
        }
        if lawcheck.LAWS[lid].extended:
            rep["extended"] = True
        if lid in first_failure:
            rep["counterexample"] = first_failure[lid]
            any_failed = True
        print(json.dumps(rep, sort_keys=True))
    return EXIT_NEGATIVE if any_failed else EXIT_OK


def bench(n: int, p: float, seed: int, repeat: int = 20) -> dict:
    """Time certificate verification against the all-pairs d-separation sweep on one instance."""
    if n < 2:
        raise UsageError("--n must be at least 2")
    if not 0.0 <= p <= 1.0:
        raise UsageError("--p must be in [0, 1]")
    g = lawcheck.random_graph_unchecked(n, p, seed)
    rng = random.Random(seed)
    w = lawcheck.random_subset(rng, n, 0.3)
    outside = [v for v in range(n) if not w.mask >> v & 1]
    if len(outside) < 2:
        w = VertexSet.empty(n)
        outside = list(range(n))
    bi, ci = rng.sample(outside, 2)
    ctx = CondContext(g, w)
    b, c = VertexSet.of(n, [bi]), VertexSet.of(n, [ci])
    cert = separation.find_splitting(ctx, b, c) or separation.SplitCertificate(w, VertexSet.empty(n))

    best_verify = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        separation.verify_splitting(ctx, b, c, cert)
        best_verify = min(best_verify, time.perf_counter() - t0)

    t0 = time.perf_counter()
    rel = separation._build(g, w)  # uncached on purpose
    verdicts = [rel.d_separated(x, y) for x in outside for y in outside if x < y]
    sweep = time.perf_counter() - t0
    return {"n": n, "p": p, "seed": seed, "verify_seconds": best_verify,
            "all_pairs_dsep_seconds": sweep, "pairs": len(verdicts)}


def cmd_bench(args: argparse.Namespace) -> int:
    res = bench(args.n, args.p, args.seed)
    _emit(
        args,
        f"verify_splitting: {res['verify_seconds']:.6f} s\n"
        f"all_pairs_dsep: {res['all_pairs_dsep_seconds']:.6f} s ({res['pairs']} pairs)",
        res,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("graph", help="edge-list or JSON graph file ('-' for stdin)")
        p.add_argument("--inline", action="store_true",
                       help="treat GRAPH as the graph text itself; ';' separates lines")
        p.add_argument("--w", nargs="*", default=[], metavar="LABEL", help="conditioning set W")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    for name in ("dsep", "tsep"):
        p = graph_cmd(name, f"{name[0]}-separation of two vertices given W")
        p.add_argument("--pair", nargs=2, required=True, metavar=("B", "C"))
        p.add_argument("--oracle", action="store_true",
                       help="also run the classical path criterion (acyclic graphs only)")
        p.set_defaults(func=cmd_pair)

    p = graph_cmd("split", "construct a splitting certificate for vertex sets B and C")
    p.add_argument("--b", nargs="*", default=[], metavar="LABEL")
    p.add_argument("--c", nargs="*", default=[], metavar="LABEL")
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive search")
    p.set_defaults(func=cmd_split)

    p = graph_cmd("verify", "check a splitting certificate")
    p.add_argument("--b", nargs="*", default=[], metavar="LABEL")
    p.add_argument("--c", nargs="*", default=[], metavar="LABEL")
    p.add_argument("--cert", required=True, help="certificate JSON text or file")
    p.set_defaults(func=cmd_verify)

    p = graph_cmd("closure", "W-conditional topological closure of a vertex set")
    p.add_argument("--set", nargs="*", default=[], metavar="LABEL")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("laws", help="check every law on random instances")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--strict", action="store_true", help="skip extended laws")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("bench", help="certificate check vs all-pairs d-separation timing")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--p", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, lawcheck.GeneratorBoundsError,
            separation.PreconditionError, separation.InvalidCertificateError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
