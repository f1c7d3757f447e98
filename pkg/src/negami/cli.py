"""Command-line front end.

Exit codes: 0 pass, 1 fail, 2 malformed input, 3 budget exhausted.  Errors
are written to stderr as one JSON record per line.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .covering import classify, deck_group, enumerate_double_covers
from .errors import BudgetExceeded, CoverError, GraphError, NegamiError, PreconditionError
from .graph_core import (
    EmbeddingScheme,
    Graph,
    faces,
    planar_embed,
    surface_id,
    validate_assumptions,
)
from .interchange import InterchangeError, emit, load, to_dot
from .lifting import factor_through_universal, necessity_pipeline, orientation_double_cover
from .negami_props import (
    check_pev,
    check_pev_any_embedding,
    check_property_e,
    check_property_v,
    quotient_embedding,
    signs_are_valid,
)

EXIT_PASS, EXIT_FAIL, EXIT_MALFORMED, EXIT_BUDGET = 0, 1, 2, 3


class Failure(Exception):
    """A check ran to completion and its verdict is negative."""


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_kind(path: str, *kinds: str):
    kind, obj = load(path)
    if kind not in kinds:
        raise InterchangeError(f"{path}: expected a {' or '.join(kinds)} document, got {kind}")
    return obj


def _graph_of(obj) -> Graph:
    if isinstance(obj, EmbeddingScheme):
        return obj.graph
    return obj


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


# --- validate --------------------------------------------------------------

def cmd_validate(args) -> int:
    kind, obj = load(args.file)
    graphs = []
    if kind == "graph":
        graphs = [("graph", obj)]
    elif kind == "scheme":
        graphs = [("graph", obj.graph)]
    elif kind == "cover":
        graphs = [("source", obj.source), ("target", obj.target)]
    elif kind == "quotient_report":
        graphs = [("graph", obj.scheme.graph)]
    elif kind == "results_table":
        graphs = [("graph", obj["graph"])]
    elif kind == "bundle":
        if "cover" in obj:
            graphs = [("source", obj["cover"].source), ("target", obj["cover"].target)]
        elif "scheme" in obj:
            graphs = [("graph", obj["scheme"].graph)]
    ok = True
    _out(f"{kind}: structurally valid")
    for label, g in graphs:
        report = validate_assumptions(g)
        if report.passed:
            _out(f"{label}: assumptions hold")
        else:
            ok = False
            for reason in report.reasons():
                _out(f"{label}: {reason}")
    if kind == "bundle" and {"cover", "scheme", "signs"} <= set(obj):
        c, s, signs = obj["cover"], obj["scheme"], obj["signs"]
        induced = check_property_v(c, s)
        good = (induced.holds and signs_are_valid(c, induced, signs)
                and check_property_e(c, signs) is None)
        _out("certificate: " + ("re-verified" if good else "does not verify"))
        ok = ok and good
    return EXIT_PASS if ok else EXIT_FAIL


# --- cover -----------------------------------------------------------------

def cmd_cover(args) -> int:
    c = _load_kind(args.file, "cover")
    if args.action == "classify":
        cls = classify(c)
        _out(f"kind: {cls.kind}")
        _out(f"degree: {cls.degree}")
        if cls.singular_set:
            _out("singular: " + json.dumps(
                [[_jsonable(u), cls.local_degree[u]] for u in cls.singular_set]))
            _out("branch: " + json.dumps(_jsonable(list(cls.branch_set))))
        for w in cls.witnesses:
            _out("witness: " + json.dumps(_jsonable(w), sort_keys=True))
        return EXIT_PASS if cls.kind in ("unbranched", "branched") else EXIT_FAIL
    dg = deck_group(c, args.budget)
    if args.action == "deck":
        _out(f"deck group order: {dg.order}")
        return EXIT_PASS
    _out("regular" if dg.regular else "not regular")
    if dg.witness:
        _out("witness: " + json.dumps(_jsonable(dg.witness)))
    return EXIT_PASS if dg.regular else EXIT_FAIL


# --- embed -----------------------------------------------------------------

def cmd_embed(args) -> int:
    obj = _load_kind(args.file, "graph", "scheme")
    if args.action == "planar":
        s = planar_embed(_graph_of(obj))
        if s is None:
            _out("NonPlanar")
            return EXIT_FAIL
        _out(emit(s))
        return EXIT_PASS
    if not isinstance(obj, EmbeddingScheme):
        raise InterchangeError("faces and surface need a scheme document")
    if args.action == "surface":
        _out(surface_id(obj).describe())
        return EXIT_PASS
    g = obj.graph
    for walk in faces(obj):
        _out(json.dumps([_jsonable(g.dart_id(d)) for d in walk]))
    return EXIT_PASS


# --- negami ----------------------------------------------------------------

def cmd_negami(args) -> int:
    c = _load_kind(args.cover, "cover")
    if args.all_embeddings:
        hit = check_pev_any_embedding(c, strict=args.strict_pv, budget=args.budget)
        if not hit.found:
            _out(f"PEV fails for every sphere embedding "
                 f"({hit.sphere_schemes_checked} sphere schemes checked)")
            for reason, n in sorted(hit.failures.items()):
                _out(f"  {reason}: {n}")
            return EXIT_FAIL
        s, signs = hit.scheme, hit.signs
    else:
        if args.scheme is None:
            raise InterchangeError("--scheme is required unless --all-embeddings is given")
        s = _load_kind(args.scheme, "scheme")
        result = check_pev(c, s, strict=args.strict_pv, budget=args.budget)
        if not result.holds:
            _out("PEV fails: " + result.violation.describe())
            return EXIT_FAIL
        signs = result.signs
    q = quotient_embedding(c, s, signs)
    if args.action == "quotient":
        _out(emit(q))
        return EXIT_PASS
    _out(f"PEV holds, surface {q.sign_verdict}")
    if args.all_embeddings:
        _out(emit({"cover": c, "scheme": s, "signs": signs, "verdict": q.sign_verdict}, "bundle"))
    return EXIT_PASS


# --- lift ------------------------------------------------------------------

def _signs_for(c, s, budget):
    result = check_pev(c, s, budget=budget)
    if not result.holds:
        raise PreconditionError("cover fails Property V and E: " + result.violation.describe())
    return result.signs


def cmd_lift(args) -> int:
    if args.action == "odc":
        s = _load_kind(args.scheme, "scheme")
        odc = orientation_double_cover(s)
        _out(emit({"cover": odc.projection, "scheme": odc.lifted_scheme,
                   "note": "connected" if odc.connected else "disconnected"}, "bundle"))
        return EXIT_PASS
    if args.action == "factor":
        c = _load_kind(args.cover, "cover")
        s = _load_kind(args.scheme, "scheme")
        q = quotient_embedding(c, s, _signs_for(c, s, args.budget))
        _out(emit(factor_through_universal(c, s, q)))
        return EXIT_PASS
    f = _load_kind(args.f, "cover")
    ft = _load_kind(args.ftilde, "cover")
    s = _load_kind(args.scheme, "scheme")
    r = necessity_pipeline(f, ft, s, budget=args.budget)
    cover = f if r.case == 1 else r.lifted_cover
    _out(emit({"case": r.case, "cover": cover, "scheme": r.scheme, "signs": r.signs,
               "quotient": r.quotient}, "bundle"))
    return EXIT_PASS


# --- gen / search / export ---------------------------------------------------

def cmd_gen(args) -> int:
    what = args.what
    if what == "bouquet":
        _out(emit(corpus.bouquet(args.loops)))
    elif what == "cycle":
        _out(emit(corpus.c_n(args.n)))
    elif what in corpus.GENERATORS:
        _out(emit(corpus.GENERATORS[what]()))
    elif what == "antipodal":
        _out(emit(corpus.antipodal_cover()))
    elif what == "double-covers":
        if not args.graph:
            raise InterchangeError("double-covers needs a graph file")
        g = _graph_of(_load_kind(args.graph, "graph", "scheme"))
        for c in enumerate_double_covers(g):
            _out(emit(c, compact=True))
    elif what == "examples":
        for e in corpus.branched_entries() + corpus.derived_examples(args.budget):
            doc = {"name": e.name, "note": e.provenance, "cover": e.cover, "scheme": e.scheme,
                   "signs": e.signs, "quotient": e.quotient}
            _out(emit(doc, "bundle", compact=True))
    else:
        raise InterchangeError(f"unknown generator {what!r}")
    return EXIT_PASS


def cmd_search(args) -> int:
    g = _graph_of(_load_kind(args.graph, "graph", "scheme"))
    rep = corpus.conjecture_harness(g, args.max_degree, args.budget, path=args.out,
                                    resume=args.resume, limit=args.limit)
    if args.out is None:
        for row in rep.rows:
            _out(json.dumps(row, sort_keys=True))
    _out(json.dumps({"cursor": rep.cursor, "complete": rep.complete, "rows": len(rep.rows)},
                    sort_keys=True))
    out_of_budget = any(r.get("embedding_sweep") == "out of budget" for r in rep.rows)
    return EXIT_BUDGET if (not rep.complete or out_of_budget) else EXIT_PASS


def cmd_export(args) -> int:
    obj = _load_kind(args.file, "graph", "scheme")
    sys.stdout.write(to_dot(obj))
    return EXIT_PASS


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negami", description="Planar covers and induced embeddings")
    p.add_argument("--budget", type=int, default=None,
                   help="search budget (default: NEGAMI_BUDGET or 2000000)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="structural validation and assumption report")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("cover", help="classify a cover, its deck group or regularity")
    c.add_argument("action", choices=["classify", "deck", "regular"])
    c.add_argument("file")
    c.set_defaults(func=cmd_cover)

    e = sub.add_parser("embed", help="faces, surface or a planar embedding")
    e.add_argument("action", choices=["faces", "surface", "planar"])
    e.add_argument("file")
    e.set_defaults(func=cmd_embed)

    n = sub.add_parser("negami", help="Property V and E verdicts and quotients")
    n.add_argument("action", choices=["check", "quotient"])
    n.add_argument("--cover", required=True)
    n.add_argument("--scheme")
    n.add_argument("--all-embeddings", action="store_true")
    n.add_argument("--strict-pv", action="store_true")
    n.set_defaults(func=cmd_negami)

    lf = sub.add_parser("lift", help="orientation double covers and the lift pipeline")
    lf.add_argument("action", choices=["odc", "factor", "pipeline"])
    lf.add_argument("--scheme")
    lf.add_argument("--cover")
    lf.add_argument("--f")
    lf.add_argument("--ftilde")
    lf.set_defaults(func=cmd_lift)

    g = sub.add_parser("gen", help="emit corpus graphs, covers and examples")
    g.add_argument("what", choices=sorted(corpus.GENERATORS) + [
        "cycle", "antipodal", "double-covers", "examples"])
    g.add_argument("graph", nargs="?")
    g.add_argument("--loops", type=int, default=2)
    g.add_argument("--n", type=int, default=3)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("search", help="sweep covers of a graph")
    s.add_argument("what", choices=["conjecture"])
    s.add_argument("--graph", required=True)
    s.add_argument("--max-degree", type=int, default=2)
    s.add_argument("--resume", type=int, default=0)
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--out", default=None, help="append rows to this JSON-lines file")
    s.set_defaults(func=cmd_search)

    x = sub.add_parser("export", help="diagram export")
    x.add_argument("format", choices=["dot"])
    x.add_argument("file")
    x.set_defaults(func=cmd_export)
    return p


def _required(args) -> None:
    if args.command == "lift":
        need = {"odc": ["scheme"], "factor": ["cover", "scheme"],
                "pipeline": ["f", "ftilde", "scheme"]}[args.action]
        missing = [k for k in need if getattr(args, k) is None]
        if missing:
            raise InterchangeError(f"lift {args.action} needs --{missing[0]}")


def _error(kind: str, exc: BaseException, code: int) -> int:
    record = {"error": kind, "type": type(exc).__name__, "message": str(exc), "exit_code": code}
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _required(args)
        return args.func(args)
    except BudgetExceeded as exc:
        return _error("budget", exc, EXIT_BUDGET)
    except (InterchangeError, GraphError, CoverError, OSError) as exc:
        return _error("malformed", exc, EXIT_MALFORMED)
    except PreconditionError as exc:
        return _error("precondition", exc, EXIT_FAIL)
    except NegamiError as exc:
        return _error("internal", exc, EXIT_FAIL)
    except ValueError as exc:
        return _error("malformed", exc, EXIT_MALFORMED)


if __name__ == "__main__":
    sys.exit(main())
