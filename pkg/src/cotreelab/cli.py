"""Command-line front end.

Inputs are poset files (``-`` for stdin) or literals ``@comb:n``,
``@hcomb:n``, ``@chain:n``, ``@tau:m,k``.  ``leq TARGET SOURCE`` asks
whether TARGET is a bi-p-morphic image of SOURCE.

Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import analysis
from .cotree import (
    CoTree,
    NotACotreeError,
    ParamError,
    SingletonError,
    comb_number,
    cotrees_of_size,
    decompose,
    enumerate_cotrees,
    in_T,
    make_standard,
)
from .duality import dual_algebra, format_algebra, is_valid, parse_algebra, prime_filter_poset, subframe_refuted
from .formula import AXIOMS, ParseError, parse_formula
from .morphism import UsageError, leq_p
from .multiset import SizeError
from .poset import CycleError, Poset, bits, classify, format_poset, order_embedding, parse_poset

WORKERS_ENV = "COTREELAB_WORKERS"


class CliError(Exception):
    pass


def load_poset(arg: str) -> Poset:
    if arg.startswith("@"):
        return load_literal(arg).poset
    try:
        text = sys.stdin.read() if arg == "-" else open(arg).read()
    except OSError as exc:
        raise CliError(f"cannot read {arg}: {exc.strerror}") from exc
    return parse_poset(text)


def load_literal(arg: str) -> CoTree:
    kind, _, rest = arg[1:].partition(":")
    try:
        params = [int(p) for p in rest.split(",")] if rest else []
    except ValueError as exc:
        raise CliError(f"bad literal {arg}") from exc
    return make_standard(kind, *params)


def load_cotree(arg: str) -> CoTree:
    if arg.startswith("@"):
        return load_literal(arg)
    return CoTree.from_poset(load_poset(arg))


def _emit(args, human: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        sys.stdout.write(human if human.endswith("\n") or not human else human + "\n")


def _table(rows: list[tuple]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows
    ) + "\n"


# -- verbs -------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    keep = (lambda T: in_T(T, args.in_t)) if args.in_t is not None else None
    trees = sorted(enumerate_cotrees(args.nodes, keep), key=lambda T: T.n)
    if args.count_only:
        counts = [sum(1 for T in trees if T.n == k) for k in range(1, args.nodes + 1)]
        _emit(args, " ".join(map(str, counts)), {"counts": counts})
        return 0
    rows = [(T.n, comb_number(T), T.code) for T in trees]
    human = _table([("nodes", "comb", "code")] + rows)
    _emit(args, human, {"cotrees": [{"nodes": n, "comb": c, "code": s} for n, c, s in rows]})
    return 0


def cmd_comb(args) -> int:
    T = load_cotree(args.file)
    n = comb_number(T)
    _emit(args, _table([("code", T.code), ("comb_number", n)]), {"code": T.code, "comb_number": n})
    return 0


def cmd_decompose(args) -> int:
    T = load_cotree(args.file)
    d = decompose(T)
    parts = [str(p) for p in d.parts.occurrences()]
    rows = [("m", d.m), ("k", d.k), ("upper", d.upper.code)] + [("part", p) for p in parts]
    _emit(args, _table(rows), {"m": d.m, "k": d.k, "upper": d.upper.code, "parts": parts})
    return 0


def cmd_leq(args) -> int:
    target, source = load_cotree(args.target), load_cotree(args.source)
    f = leq_p(target, source)
    if f is None:
        _emit(args, "none", {"leq": False, "map": None})
        return 0
    fibres = [[x for x in range(source.n) if f(x) == y] for y in range(target.n)]
    human = "\n".join(f"{y} <- " + " ".join(map(str, xs)) for y, xs in enumerate(fibres))
    _emit(args, human, {"leq": True, "map": list(f.map)})
    return 0


def cmd_embed(args) -> int:
    src, tgt = load_poset(args.src), load_poset(args.tgt)
    w = order_embedding(src, tgt)
    if w is None:
        _emit(args, "none", {"embeds": False, "map": None})
        return 0
    human = "\n".join(f"{i} -> {j}" for i, j in enumerate(w.map))
    _emit(args, human, {"embeds": True, "map": list(w.map)})
    return 0


def cmd_dual(args) -> int:
    A = dual_algebra(load_poset(args.file))
    data = {
        "size": len(A),
        "elements": [list(bits(u)) for u in A.universe],
        "imp": [list(r) for r in A.imp],
        "coimp": [list(r) for r in A.coimp],
    }
    _emit(args, format_algebra(A), data)
    return 0


def cmd_dualize_back(args) -> int:
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc.strerror}") from exc
    P = prime_filter_poset(parse_algebra(text))
    code = CoTree.from_poset(P).code if classify(P).is_cotree else None
    human = format_poset(P) + (f"# code {code}\n" if code else "")
    _emit(args, human, {"n": P.n, "covers": [list(c) for c in P.covers], "code": code})
    return 0


def cmd_valid(args) -> int:
    X = load_poset(args.file)
    phi = AXIOMS[args.axiom] if args.axiom else parse_formula(args.formula)
    res = is_valid(X, phi)
    if res.valid:
        _emit(args, "valid", {"valid": True})
        return 0
    val = {k: sorted(v) for k, v in res.valuation.items()}
    shown = " ".join(f"{k}={{{','.join(map(str, v))}}}" for k, v in val.items())
    _emit(args, f"refuted at {res.point}: {shown}", {"valid": False, "point": res.point, "valuation": val})
    return 0


def cmd_subframe(args) -> int:
    X = load_poset(args.file)
    Y = load_cotree(args.omit)
    refuted = subframe_refuted(X, Y)
    human = "embeds (subframe formula refuted)" if refuted else "omits (subframe formula valid)"
    _emit(args, human, {"embeds": refuted})
    return 0


def cmd_antichain(args) -> int:
    items = [T for T in cotrees_of_size(args.nodes) if in_T(T, args.in_t)]
    anti = analysis.max_antichain(items)
    human = f"size {len(anti)}\n" + "".join(f"{T.code}\n" for T in anti)
    _emit(args, human, {"size": len(anti), "antichain": [T.code for T in anti]})
    return 0


def _run_named(name: str) -> analysis.CheckReport:
    return analysis.run_check(name)


def cmd_verify(args) -> int:
    names = list(analysis.CHECKS) if args.all or not args.check else args.check
    unknown = [n for n in names if n not in analysis.CHECKS]
    if unknown:
        raise CliError(f"unknown check(s): {', '.join(unknown)}")
    workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_run_named, names))
    else:
        reports = [_run_named(n) for n in names]
    human = "".join(r.line(args.timing) + "\n" + "".join(f"    {c}\n" for c in r.counterexamples) for r in reports)
    _emit(args, human, [r.to_dict(args.timing) for r in reports])
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cotreelab", description="Co-trees, bi-p-morphisms and finite duality.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("enumerate", help="list co-trees up to isomorphism")
    s.add_argument("--nodes", type=int, required=True)
    s.add_argument("--in-t", type=int, dest="in_t")
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("comb", help="comb number of a co-tree")
    s.add_argument("file")
    s.set_defaults(func=cmd_comb)

    s = sub.add_parser("decompose", help="upper part and grafted parts")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("leq", help="is TARGET a bi-p-morphic image of SOURCE")
    s.add_argument("target")
    s.add_argument("source")
    s.set_defaults(func=cmd_leq)

    s = sub.add_parser("embed", help="order embedding SRC into TGT")
    s.add_argument("src")
    s.add_argument("tgt")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("dual", help="dual algebra dump")
    s.add_argument("file")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("dualize-back", help="prime filter poset of an algebra dump")
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=cmd_dualize_back)

    s = sub.add_parser("valid", help="validity of a formula on a frame")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--axiom", choices=sorted(AXIOMS))
    s.set_defaults(func=cmd_valid)

    s = sub.add_parser("subframe", help="does the frame omit a co-tree as a subposet")
    s.add_argument("file")
    s.add_argument("--omit", required=True)
    s.set_defaults(func=cmd_subframe)

    s = sub.add_parser("antichain", help="maximum antichain of T_n co-trees with N nodes")
    s.add_argument("--in-t", type=int, dest="in_t", required=True)
    s.add_argument("--nodes", type=int, required=True)
    s.set_defaults(func=cmd_antichain)

    s = sub.add_parser("verify", help="run named checks")
    s.add_argument("--check", action="append", choices=sorted(analysis.CHECKS))
    s.add_argument("--all", action="store_true")
    s.add_argument("--timing", action="store_true", help="append wall time (output no longer reproducible)")
    s.set_defaults(func=cmd_verify)
    return p


USAGE_ERRORS = (
    CliError, UsageError, NotACotreeError, ParamError, SingletonError, ParseError,
    CycleError, SizeError, IndexError, ValueError,
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
