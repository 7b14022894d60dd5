"""Command line front end.

Exit codes: 0 when the command succeeds and the queried property holds,
1 when the property fails (the witness goes to stdout), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import (check_condition_K, check_condition_L,
                       classify_primitive_ideals, is_purely_infinite,
                       kill_loop_ideal, LoopWitness)
from .errors import UltragraphError
from .exprparse import parse_expression
from .gf import build_GF, export_dot, graph_condition_L
from .ideals import (breaking_vertices, enumerate_admissible_pairs,
                     enumerate_saturated_hereditary,
                     hereditary_saturated_closure, ideal_lattice,
                     pair_from_dict, DEFAULT_CAP)
from .presentation import parse_ultragraph
from .quotient import build_quotient
from .setalgebra import generate_algebra
from .symbolic import base_context, ck_equal, quotient_context


def _print_json(doc):
    print(json.dumps(doc, ensure_ascii=False, indent=2))


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_ultragraph(fh.read())
    except OSError as exc:
        raise UltragraphError(f"cannot read {path}: {exc.strerror}") from None


def _pair_of(P, args):
    if getattr(args, "pair_file", None):
        with open(args.pair_file, encoding="utf-8") as fh:
            doc = json.load(fh)
    elif getattr(args, "pair", None):
        doc = json.loads(args.pair)
    else:
        return None
    if not isinstance(doc, dict):
        raise UltragraphError("pair document must be an object")
    return pair_from_dict(P, doc)


def _parse_F(text):
    items = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.startswith("[") and chunk.endswith("]"):
            items.append(chunk[1:-1])
        else:
            items.append(chunk)
    return items


def _add_pair_flags(sub):
    sub.add_argument("--pair", help="admissible pair as inline JSON")
    sub.add_argument("--pair-file", help="admissible pair from a JSON file")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ultragraphs",
        description="Analyze finitely presented ultragraphs: ideals, "
                    "quotients, loop conditions, primitivity, pure "
                    "infiniteness, and symbolic word arithmetic.")
    sub = ap.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", help="parse and echo a presentation")
    s.add_argument("file")

    s = sub.add_parser("algebra",
                      help="atoms of the set algebra generated by singletons "
                           "and edge ranges")
    s.add_argument("file")

    s = sub.add_parser("closure",
                      help="least saturated hereditary set containing seeds")
    s.add_argument("file")
    s.add_argument("--seeds", required=True,
                   help="comma separated vertex names")

    s = sub.add_parser("ideals",
                      help="saturated hereditary sets, breaking vertices, "
                           "admissible pairs")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)

    s = sub.add_parser("lattice", help="the admissible pair lattice")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--dot", action="store_true")

    s = sub.add_parser("quotient", help="quotient by an admissible pair")
    s.add_argument("file")
    _add_pair_flags(s)
    s.add_argument("--dot", action="store_true")

    s = sub.add_parser("check-l",
                      help="Condition (L) on the quotient by a pair")
    s.add_argument("file")
    _add_pair_flags(s)

    s = sub.add_parser("check-k", help="Condition (K) on the presentation")
    s.add_argument("file")

    s = sub.add_parser("primitive",
                      help="classify which admissible pairs give primitive "
                           "ideals")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)

    s = sub.add_parser("pure-inf", help="decide pure infiniteness")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)

    s = sub.add_parser("gf",
                      help="the finite approximation graph for a quotient "
                           "and a finite F")
    s.add_argument("file")
    _add_pair_flags(s)
    s.add_argument("--F", required=True,
                   help="comma list of edge ids and [vertex] labels")
    s.add_argument("--dot", action="store_true")

    s = sub.add_parser("eval", help="evaluate a word-algebra expression")
    s.add_argument("file")
    _add_pair_flags(s)
    s.add_argument("expr")
    s.add_argument("--equal", help="second expression; compare with ck_equal")
    s.add_argument("--pretty", action="store_true")

    s = sub.add_parser("kill-loop",
                      help="saturated hereditary set isolating a unique loop")
    s.add_argument("file")
    s.add_argument("--loop", required=True,
                   help="comma separated edge ids forming the loop")
    return ap


def run(argv):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _dispatch(args)
    except UltragraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    P = _load(args.file)

    if args.verb == "validate":
        _print_json(P.to_dict())
        return 0

    if args.verb == "algebra":
        gens = [frozenset([v]) for v in P.sorted_vertices]
        gens += [c.range for c in P.edges.values()]
        alg = generate_algebra(P.vertices, gens)
        _print_json({"atoms": [sorted(a) for a in alg.atoms],
                     "member_count": alg.member_count})
        return 0

    if args.verb == "closure":
        seeds = [s.strip() for s in args.seeds.split(",") if s.strip()]
        W = hereditary_saturated_closure(P, [seeds])
        _print_json({"W": sorted(W)})
        return 0

    if args.verb == "ideals":
        sh = enumerate_saturated_hereditary(P, cap=args.cap)
        _print_json({
            "saturated_hereditary": [
                {"W": sorted(W), "breaking": sorted(breaking_vertices(P, W))}
                for W in sh
            ],
            "admissible_pairs": [
                p.to_dict() for p in enumerate_admissible_pairs(P, cap=args.cap)
            ],
        })
        return 0

    if args.verb == "lattice":
        lat = ideal_lattice(P, cap=args.cap)
        if args.dot:
            sys.stdout.write(lat.to_dot())
        else:
            _print_json(lat.to_dict())
        return 0

    if args.verb == "quotient":
        pair = _require_pair(P, args)
        Q = build_quotient(P, pair)
        if args.dot:
            sys.stdout.write(export_dot(Q))
        else:
            _print_json(Q.to_dict())
        return 0

    if args.verb == "check-l":
        pair = _require_pair(P, args)
        witness = check_condition_L(build_quotient(P, pair))
        if witness is None:
            _print_json({"condition_L": True})
            return 0
        _print_json({"condition_L": False, "witness": witness.to_dict()})
        return 1

    if args.verb == "check-k":
        witness = check_condition_K(P)
        if witness is None:
            _print_json({"condition_K": True})
            return 0
        _print_json({"condition_K": False, "witness": witness.to_dict()})
        return 1

    if args.verb == "primitive":
        reports = classify_primitive_ideals(P, cap=args.cap)
        _print_json({"reports": [r.to_dict() for r in reports]})
        return 0

    if args.verb == "pure-inf":
        report = is_purely_infinite(P, cap=args.cap)
        _print_json(report.to_dict())
        return 0 if report.purely_infinite else 1

    if args.verb == "gf":
        pair = _require_pair(P, args)
        Q = build_quotient(P, pair)
        G = build_GF(Q, _parse_F(args.F))
        if args.dot:
            sys.stdout.write(export_dot(G))
        else:
            doc = G.to_dict()
            doc["condition_L"] = graph_condition_L(G)
            _print_json(doc)
        return 0

    if args.verb == "eval":
        pair = _pair_of(P, args)
        if pair is None:
            ctx = base_context(P)
        else:
            ctx = quotient_context(build_quotient(P, pair))
        x = parse_expression(args.expr, ctx)
        if args.equal is not None:
            y = parse_expression(args.equal, ctx)
            equal = ck_equal(x, y)
            _print_json({"equal": equal})
            return 0 if equal else 1
        if args.pretty:
            print(x.pretty())
        else:
            _print_json(x.to_dict())
        return 0

    if args.verb == "kill-loop":
        eids = [e.strip() for e in args.loop.split(",") if e.strip()]
        if not eids:
            raise UltragraphError("empty loop")
        witness = LoopWitness(edges=tuple((e, 0) for e in eids),
                              based_at=P.edge(eids[0]).source)
        W = kill_loop_ideal(P, witness)
        _print_json({"W": sorted(W)})
        return 0

    raise UltragraphError(f"unknown verb {args.verb!r}")


def _require_pair(P, args):
    pair = _pair_of(P, args)
    if pair is None:
        raise UltragraphError("an admissible pair is required "
                              "(--pair or --pair-file)")
    return pair


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
