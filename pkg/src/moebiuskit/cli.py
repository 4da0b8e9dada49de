"""Command-line surface: axiom checks, Mobius tables, Rota verdicts.

Exit codes: 0 all checks pass, 1 a semantic check fails (axiom failure,
inequality, refused certification), 2 unreadable or schema-invalid input.
Builtin instances ship in-package so the headline computations run with
zero assets:

    moebiuskit check builtin:layered-posets --profile decomposition --grade 3
    moebiuskit mobius builtin:posets --n 3
    moebiuskit rota builtin:sets-posets --grade 4

Instance files are UTF-8 JSON documents with a "kind" field: poset,
category, adjunction or correspondence (see README for the schemas).
The env var MOEBIUSKIT_THREADS caps the number of worker threads used for
independent square checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bicomodule as bc
from . import catposet as cp
from . import examples as ex
from . import incidence as inc
from . import simplicial as sp
from .groupoid import DomainError, StructureError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _workers():
    raw = os.environ.get("MOEBIUSKIT_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read instance file {path!r}: {e}")


def _as_pairs(raw, what):
    if not isinstance(raw, list) or not all(isinstance(p, list) and len(p) == 2 for p in raw):
        raise InputError(f"{what} must be a list of pairs")
    return [(a, b) for a, b in raw]


def load_poset(doc) -> cp.FinPoset:
    try:
        return cp.FinPoset(doc["elements"], _as_pairs(doc.get("relations", []), "relations"))
    except (KeyError, TypeError) as e:
        raise InputError(f"invalid poset document: {e}")
    except StructureError as e:
        raise InputError(f"invalid poset: {e}")


def load_category(doc) -> cp.FinCategory:
    try:
        mors = {m["id"]: (m["src"], m["tgt"]) for m in doc["morphisms"]}
        compose = {(f, g): h for f, g, h in doc["compose"]}
        idents = dict(_as_pairs(doc["identities"], "identities"))
        cat = cp.FinCategory(doc["objects"], mors, compose, idents)
        cat.validate()
        return cat
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"invalid category document: {e}")
    except (StructureError, DomainError) as e:
        raise InputError(f"invalid category: {e}")


def _load_side(doc):
    if doc.get("kind", "poset") == "poset":
        P = load_poset(doc)
        return P, cp.FinCategory.from_poset(P)
    return None, load_category(doc)


def load_adjunction(doc):
    try:
        _, X = _load_side(doc["left"])
        _, Y = _load_side(doc["right"])
        fmap = dict(_as_pairs(doc["f"], "f"))
        gmap = dict(_as_pairs(doc["g"], "g"))
        F = cp.FinFunctor(X, Y, fmap)
        G = cp.FinFunctor(Y, X, gmap)
        return F, G
    except (KeyError, TypeError) as e:
        raise InputError(f"invalid adjunction document: {e}")
    except StructureError as e:
        raise InputError(f"invalid adjunction data: {e}")


def load_correspondence(doc):
    try:
        cat = load_category(doc["category"])
        labels = dict(_as_pairs(doc["labels"], "labels"))
        return cp.CorrespondenceCat(cat, labels)
    except (KeyError, TypeError) as e:
        raise InputError(f"invalid correspondence document: {e}")
    except StructureError as e:
        raise InputError(f"invalid correspondence: {e}")


def chain_adjunction():
    """The battery adjunction F : {0<1<2} <-> {0<1} : G."""
    P = cp.chain_poset(3)
    Q = cp.chain_poset(2)
    F = cp.poset_functor(P, Q, {0: 0, 1: 0, 2: 1})
    G = cp.poset_functor(Q, P, {0: 1, 1: 2})
    return F, G


def poset_json(P: cp.FinPoset) -> dict:
    key = ex.poset_key(P)
    canon = ex.key_to_poset(key)
    return {"kind": "poset", "elements": list(canon.elements),
            "relations": sorted(canon.strict_pairs())}


# -- output ---------------------------------------------------------------------


def emit_rows(rows, header, fmt):
    if fmt == "json":
        print(json.dumps([dict(zip(header, r)) for r in rows], default=str))
    elif fmt == "csv":
        print(",".join(header))
        for r in rows:
            print(",".join(str(x) for x in r))
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for r in rows:
            print("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))


def _describe_key(key) -> str:
    ns, np_, colors, rels = key
    m = len(colors)
    if ns and not np_:
        sizes = [sum(1 for c in colors if c == ("s", k + 1)) for k in range(ns)]
        return "set" + str(tuple(sizes))
    if not rels:
        return f"discrete{m}" if not ns else f"key{key}"
    return f"poset{m}:{','.join(f'{a}<{b}' for a, b in rels)}"


# -- check ----------------------------------------------------------------------


def _space_for_check(target, args):
    if target == "builtin:layered-posets" or target == "builtin:posets":
        return ex.layered_posets(args.grade), None
    if target == "builtin:layered-sets" or target == "builtin:sets":
        return ex.layered_sets(args.grade), None
    if target == "builtin:sets-posets":
        return None, ex.sets_posets_bicomodule(args.grade)
    if target == "builtin:chain-adjunction":
        F, G = chain_adjunction()
        corr, report = cp.mapping_cylinder(F)
        return None, cp.correspondence_bisimplicial(corr, 3, 3, report)
    if target.startswith("builtin:"):
        raise InputError(f"unknown builtin {target!r}")
    doc = _load_json(target)
    kind = doc.get("kind")
    if kind == "poset":
        return cp.nerve(load_poset(doc), max_level=args.max_level + 3), None
    if kind == "category":
        return cp.nerve(load_category(doc), max_level=args.max_level + 3), None
    if kind == "adjunction":
        F, G = load_adjunction(doc)
        corr, report = cp.mapping_cylinder(F)
        return None, cp.correspondence_bisimplicial(corr, 3, 3, report)
    if kind == "correspondence":
        corr = load_correspondence(doc)
        return None, cp.correspondence_bisimplicial(corr, 3, 3)
    raise InputError(f"unsupported kind {kind!r}")


def cmd_check(args) -> int:
    space, grid = _space_for_check(args.target, args)
    workers = _workers()
    if grid is not None:
        report = bc.validate_configuration(grid, args.max_level, workers=workers)
        lines = report.lines()
    else:
        profile = args.profile if args.profile != "configuration" else "segal"
        n_max = min(args.max_level, space.max_level - (3 if profile == "decomposition" else 1))
        report = sp.check_axioms(space, profile, max(1, n_max), workers=workers)
        lines = report.lines()
    if args.format == "json":
        print(json.dumps({"passed": report.passed, "report": lines}))
    else:
        for line in lines:
            print(line)
    return EXIT_OK if report.passed else EXIT_FAIL


# -- mobius ---------------------------------------------------------------------


def cmd_mobius(args) -> int:
    fmt = args.format
    if args.target in ("builtin:posets", "builtin:layered-posets"):
        n = args.n if args.n is not None else args.grade
        rows = []
        for P, _aut in ex.enumerate_posets(n):
            mu = ex.mu_posets(P, route="direct")
            rows.append((_describe_key(ex.poset_key(P)), mu))
        emit_rows(rows, ["class", "mu"], fmt)
        return EXIT_OK
    if args.target in ("builtin:sets", "builtin:layered-sets"):
        n = args.n if args.n is not None else args.grade
        X = ex.layered_sets(n, max_level=max(2, n))
        key = (1, 0, (("s", 1),) * n, ())
        emit_rows([(f"set({n},)", inc.mobius(X, key))], ["class", "mu"], fmt)
        return EXIT_OK
    doc = _load_json(args.target)
    kind = doc.get("kind")
    if kind == "poset":
        P = load_poset(doc)
        C = cp.FinCategory.from_poset(P)
        try:
            if args.interval:
                a, b = args.interval
                elems = {str(x): x for x in P.elements}
                a, b = elems.get(str(a), a), elems.get(str(b), b)
                rows = [((a, b), cp.classical_mobius(C, ("le", a, b), args.bound))]
            else:
                rows = [((a, b), cp.classical_mobius(C, ("le", a, b), args.bound))
                        for (a, b) in sorted(P.intervals(), key=repr)]
        except DomainError as e:
            print(f"refused: {e} (locally finite length hypothesis)", file=sys.stderr)
            return EXIT_FAIL
        emit_rows(rows, ["interval", "mu"], fmt)
        return EXIT_OK
    if kind == "category":
        C = load_category(doc)
        report = cp.is_mobius_category(C, args.bound)
        if not report:
            print(f"refused: not a Mobius category ({report.witness}); "
                  "the locally finite length hypothesis fails", file=sys.stderr)
            return EXIT_FAIL
        rows = [(m, cp.classical_mobius(C, m, args.bound))
                for m in sorted(C.morphisms, key=repr)]
        emit_rows(rows, ["morphism", "mu"], fmt)
        return EXIT_OK
    raise InputError(f"mobius does not support kind {kind!r}")


# -- rota -----------------------------------------------------------------------


def _adjunction_rows(F, G, bound):
    checked = cp.check_adjunction(F, G)
    if not checked:
        raise InputError(f"not an adjunction: witness {checked.witness!r}")
    adj = checked.adjunction
    rows = []
    for x in F.source.objects:
        for y in F.target.objects:
            lhs, rhs = cp.rota_direct(adj, x, y, bound)
            rows.append(((x, y), lhs, rhs, "ok" if lhs == rhs else "MISMATCH"))
    return rows


def cmd_rota(args) -> int:
    if args.target == "builtin:sets-posets":
        B = ex.sets_posets_bicomodule(args.grade, max_i=max(2, args.grade),
                                      max_j=max(2, args.grade))
        rows = []
        for key in B.cell(0, 0).iso_classes().reps:
            lhs, rhs = bc.rota_evaluate(B, key)
            rows.append((_describe_key(key), lhs, rhs,
                         "ok" if lhs == rhs else "MISMATCH"))
    elif args.target == "builtin:chain-adjunction":
        F, G = chain_adjunction()
        rows = _adjunction_rows(F, G, args.bound)
    else:
        doc = _load_json(args.target)
        if doc.get("kind") != "adjunction":
            raise InputError("rota needs an adjunction document or a builtin")
        F, G = load_adjunction(doc)
        rows = _adjunction_rows(F, G, args.bound)
    if args.at:
        rows = [r for r in rows if str(r[0]) == args.at]
    emit_rows(rows, ["at", "lhs", "rhs", "verdict"], args.format)
    return EXIT_OK if all(r[3] == "ok" for r in rows) else EXIT_FAIL


# -- entry ----------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="moebiuskit",
        description="Exact incidence coalgebras, Mobius inversion and Rota formulas")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="run axiom or configuration checks")
    pc.add_argument("target")
    pc.add_argument("--profile", default="segal",
                    choices=["identities", "segal", "decomposition", "complete",
                             "configuration"])
    pc.add_argument("--max-level", type=int, default=2)
    pc.add_argument("--grade", type=int, default=3)
    pc.add_argument("--format", default="text", choices=["text", "json", "csv"])
    pc.set_defaults(fn=cmd_check)

    pm = sub.add_parser("mobius", help="Mobius function tables")
    pm.add_argument("target")
    pm.add_argument("--n", type=int, default=None)
    pm.add_argument("--grade", type=int, default=3)
    pm.add_argument("--interval", nargs=2, default=None)
    pm.add_argument("--bound", type=int, default=None)
    pm.add_argument("--format", default="text", choices=["text", "json", "csv"])
    pm.set_defaults(fn=cmd_mobius)

    pr = sub.add_parser("rota", help="evaluate both sides of a Rota formula")
    pr.add_argument("target")
    pr.add_argument("--grade", type=int, default=3)
    pr.add_argument("--bound", type=int, default=None)
    pr.add_argument("--at", default=None)
    pr.add_argument("--format", default="text", choices=["text", "json", "csv"])
    pr.set_defaults(fn=cmd_rota)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (sp.InsufficientLevelsError, inc.MobiusCertificateError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
