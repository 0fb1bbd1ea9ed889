"""Command-line entry point.

    arbor gen --n 7 [--out DIR]
    arbor decompose --in tree.txt
    arbor subtree-poly --in tree.txt [--brute]
    arbor csf --in tree.txt
    arbor recover --poly-in poly.json
    arbor roundtrip (--in tree.txt | --n-max 10) [--jobs N]
    arbor scan --n 10 --invariant csf [--jobs N]

Results go to stdout as JSON (``--pretty`` for a readable rendering).
Domain errors exit 1 with ``{"error": ..., "detail": ...}`` on stderr;
usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .csf import csf
from .enumeration import INVARIANTS, code_hash, free_trees, parallel_map, roundtrip_check, scan
from .errors import ArborError, ParseError
from .recovery import recover_profile
from .subtree_poly import BivariatePoly, subtree_poly_bruteforce, subtree_poly_fast
from .tree_core import Tree, canonical_code, decompose, parse_tree


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ArborError(f"cannot read {path}: {exc.strerror}") from None


def _load_tree(path):
    return parse_tree(_read(path))


def _load_poly(path):
    try:
        doc = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from None
    return BivariatePoly.from_json(doc)


def _pretty(doc, indent=0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(doc, list):
        return "\n".join(
            (f"{pad}-\n" + _pretty(x, indent + 1)) if isinstance(x, (dict, list)) else f"{pad}- {_scalar(x)}"
            for x in doc
        )
    return pad + _scalar(doc)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v) if v else "(none)"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(doc, args) -> None:
    if args.pretty:
        print(_pretty(doc))
    else:
        print(json.dumps(doc, separators=(",", ":")))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_gen(args):
    trees = list(free_trees(args.n, cap=args.cap))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        names = []
        for t in trees:
            name = f"{code_hash(t)}.tree"
            (out / name).write_text(t.to_text(), encoding="utf-8")
            names.append(name)
        return {"n": args.n, "count": len(trees), "files": sorted(names)}
    return {
        "n": args.n,
        "count": len(trees),
        "trees": [
            {"code": canonical_code(t).decode(), "edges": [list(e) for e in t.edges()]}
            for t in trees
        ],
    }


def cmd_decompose(args):
    return decompose(_load_tree(args.infile)).to_json()


def cmd_subtree_poly(args):
    t = _load_tree(args.infile)
    p = subtree_poly_bruteforce(t, cap=args.cap) if args.brute else subtree_poly_fast(t)
    return p.to_json()


def cmd_csf(args):
    return csf(_load_tree(args.infile), cap=args.cap).to_json()


def cmd_recover(args):
    return recover_profile(_load_poly(args.poly_in)).to_json()


def _roundtrip_one(job):
    n, edges = job
    return roundtrip_check(Tree(n, edges))[1]


def cmd_roundtrip(args):
    if args.infile:
        t = _load_tree(args.infile)
        dec = decompose(t)
        profile, failure = roundtrip_check(t)
        return {
            "match": failure is None,
            "decomposition": {"trunk_size": dec.trunk_size, "twigs": list(dec.twig_lengths)},
            "recovered": profile.to_json() if profile else None,
            **({"failure": failure} if failure else {}),
        }
    if args.n_max is None:
        raise _UsageError("roundtrip needs --in FILE or --n-max N")
    jobs = [(t.n, t.edges()) for n in range(2, args.n_max + 1) for t in free_trees(n, cap=args.cap)]
    failures = [f for f in parallel_map(_roundtrip_one, jobs, args.jobs) if f is not None]
    return {
        "n_max": args.n_max,
        "trees": len(jobs),
        "failures": failures,
        "summary": f"ok: {len(jobs)} trees, failures: {len(failures)}",
    }


def cmd_scan(args):
    report = scan(args.n, args.invariant, jobs=args.jobs, cap=args.cap)
    print(f"scan: {report.tree_count} trees in {report.elapsed:.2f}s", file=sys.stderr)
    return report.to_json()


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--cap", type=int, default=None, help="override the size cap")

    parser = argparse.ArgumentParser(prog="arbor", description="Tree invariants and twig-profile recovery.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="list all free trees of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write one edge-list file per tree into this directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", parents=[common], help="trunk and twigs of a tree")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("subtree-poly", parents=[common], help="bivariate subtree polynomial")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--brute", action="store_true", help="use the enumeration oracle")
    p.set_defaults(func=cmd_subtree_poly)

    p = sub.add_parser("csf", parents=[common], help="chromatic symmetric function (power sums)")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_csf)

    p = sub.add_parser("recover", parents=[common], help="trunk size and twigs from a polynomial")
    p.add_argument("--poly-in", dest="poly_in", required=True)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("roundtrip", parents=[common], help="check recovery against decomposition")
    p.add_argument("--in", dest="infile")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("scan", parents=[common], help="collision scan over all free trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--invariant", choices=["csf", "subtree", "profile", *INVARIANTS[1:]], default="csf")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            parser.error("--jobs must be >= 1")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"arbor: error: {exc}", file=sys.stderr)
        return 2
    except ArborError as exc:
        print(json.dumps({"error": exc.code, "detail": str(exc)}), file=sys.stderr)
        return 1
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
