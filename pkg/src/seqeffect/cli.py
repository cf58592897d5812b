"""Command-line front end: ``check``, ``search``, ``decompose``, ``analyze``.

Reports are YAML on stdout.  Exit status is 0 when every requested check
passes, 1 on a property failure, and 2 on usage, parse or unsupported-input
errors.  Output is byte-identical for identical arguments; wall-clock
timing is only included with ``--timing``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import yaml

from . import sequential as seq
from . import structure
from .io import ParseError, emit_element, load, parse_element
from .models import (Model, PreconditionError, UnsupportedError,
                     check_model_ea_axioms)
from .search import (AxiomSet, SearchProblem, SearchRefused, search_effect_monoids,
                     search_products, table_of)

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------------

def render(m: Model, x):
    """Plain data for an element (compact JSON) or any scalar witness."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    try:
        if m.contains(x):
            enc = emit_element(m, x)
            if isinstance(enc, str):
                return enc
            return json.dumps(enc, ensure_ascii=False, separators=(",", ":"))
    except (TypeError, AttributeError, ValueError):
        pass
    if isinstance(x, (tuple, list)):
        return [render(m, y) for y in x]
    if isinstance(x, dict):
        return {str(k): render(m, v) for k, v in x.items()}
    return repr(x)


def render_report(m: Model, rep) -> dict:
    out = {"verdict": "pass" if rep.ok else "fail",
           "violations": [{"axiom": v.axiom, "witness": render(m, list(v.witness)),
                           **({"detail": v.detail} if v.detail else {})}
                          for v in rep.violations]}
    if rep.notes:
        out["notes"] = [str(n) for n in rep.notes]
    return out


def _closure(m: Model, cl) -> dict:
    out = {"description": cl.description}
    if cl.members is not None:
        out["members"] = [render(m, e) for e in cl.members]
    if cl.spanning:
        out["spanning"] = [render(m, e) for e in cl.spanning]
    if cl.checks:
        out["checks"] = dict(cl.checks)
    if cl.closed_under:
        out["closed_under"] = dict(cl.closed_under)
    if cl.notes:
        out["notes"] = list(cl.notes)
    return out


# -- commands ------------------------------------------------------------------------

def cmd_check(args, m: Model) -> tuple[dict, int]:
    cfg = seq.SeaCheckConfig(sample_budget=args.budget, seed=args.seed)
    out: dict = {"model": repr(m), "budget": args.budget}
    ea = check_model_ea_axioms(m, args.budget, args.seed)
    out["effect_algebra"] = render_report(m, ea)
    ok = ea.ok
    if m.has_product:
        sea = seq.check_sea_axioms(m, cfg)
        block = render_report(m, sea)
        block["exhaustive"] = sea.properties.get("exhaustive")
        block["triples"] = sea.properties.get("triples")
        out["sea"] = block
        em = seq.check_effect_monoid(m, cfg)
        block = render_report(m, em)
        block["required"] = args.require_monoid
        block["commutative"] = em.properties.get("commutative")
        out["effect_monoid"] = block
        ok = ok and sea.ok and (em.ok or not args.require_monoid)
    else:
        out["sea"] = "skipped (no product)"
    return out, OK if ok else FAILED


def cmd_search(args, m: Model) -> tuple[dict, int]:
    try:
        t, labels = table_of(m, args.size_bound)
    except SearchRefused as exc:
        raise UsageError(str(exc)) from exc
    axioms = AxiomSet(args.axioms)
    p = SearchProblem(t, axioms, args.max, args.canonical, args.size_bound)
    res = search_products(p) if axioms is AxiomSet.SEA else search_effect_monoids(p)
    n = res.count
    meet = n > 0 and all(res.is_meet(s) for s in res.solutions)
    out: dict = {"model": repr(m), "axioms": axioms.value, "size": t.size,
                 "solutions": f"{n} (meet)" if meet else n, "solution_count": n,
                 "complete": res.complete, "canonical": args.canonical}
    if args.canonical:
        out["before_quotient"] = res.raw_count
    if res.boolean_verdict is not None:
        out["boolean_verdict"] = res.boolean_verdict
    out["nodes"] = res.node_count
    out["pruned"] = res.pruned_count
    if labels != list(range(t.size)):
        out["labels"] = [render(m, e) for e in labels]
    out["tables"] = [[list(r) for r in s] for s in res.solutions]
    if res.zero_symmetric:
        out["zero_symmetric"] = res.zero_symmetric
    return out, OK


def cmd_decompose(args, m: Model) -> tuple[dict, int]:
    cfg = seq.SeaCheckConfig(sample_budget=args.budget, seed=args.seed)
    rep = structure.decompose(m, cfg)
    out = {"model": repr(m),
           "blocks": {b: repr(rep.block(b)) for b in structure.BLOCKS},
           "witnesses": {b: render(m, rep.witnesses[b]) for b in structure.BLOCKS},
           "leaves": [{"leaf": leaf, "block": b} for leaf, b in rep.leaves],
           "evidence": dict(rep.evidence)}
    if rep.notes:
        out["notes"] = list(rep.notes)
    out["verdict"] = "pass" if rep.ok else "fail"
    return out, OK if rep.ok else FAILED


def _opt_repr(x):
    return None if x is None else repr(x)


def _element_arg(m: Model, raw: str):
    try:
        x = json.loads(raw)
    except json.JSONDecodeError:
        x = raw
    return parse_element(m, x, "--element")


def cmd_analyze(args, m: Model) -> tuple[dict, int]:
    cfg = seq.SeaCheckConfig(sample_budget=args.budget, seed=args.seed)
    els = [_element_arg(m, e) for e in args.element]
    op = args.op
    if op in ("floor", "sqrt", "halves", "divide", "bicommutant-rep") and len(els) != 1:
        raise UsageError(f"--op {op} needs exactly one --element")
    if op in ("commutant", "bicommutant") and not els:
        raise UsageError(f"--op {op} needs at least one --element")
    out: dict = {"model": repr(m), "op": op}
    if els:
        out["elements"] = [render(m, e) for e in els]
    status = OK
    if op == "floor":
        out["result"] = render(m, seq.floor(m, els[0]))
    elif op == "sqrt":
        r = seq.sqrt(m, els[0])
        out["result"] = render(m, r.value)
        out["exact"] = r.exact
    elif op == "halves":
        hs = seq.halves_of(m, els[0])
        out["count"] = len(hs)
        out["result"] = [render(m, h) for h in hs]
    elif op == "divide":
        out["n"] = args.n
        out["result"] = render(m, seq.divide_by_n(m, els[0], args.n))
    elif op == "center":
        out["result"] = _closure(m, seq.center(m, cfg))
    elif op == "commutant":
        out["result"] = _closure(m, seq.commutant(m, els, cfg))
    elif op == "bicommutant":
        out["result"] = _closure(m, seq.bicommutant(m, els, cfg))
    elif op == "bicommutant-rep":
        r = structure.bicommutant_representation(m, els[0])
        out["result"] = {"interval_part": _opt_repr(r.interval_part),
                         "boolean_part": _opt_repr(r.boolean_part),
                         "boolean_members": [render(m, e) for e in r.boolean_members],
                         "interval_idempotent": render(m, r.interval_idempotent)}
    elif op == "classify":
        c = structure.classify_convexity(m, cfg)
        out["result"] = c.kind.value
        out["halves_of_one"] = [render(m, h) for h in c.halves]
        out["evidence"] = render(m, c.evidence)
    elif op == "associativity":
        r = structure.analyze_associativity(m, cfg)
        out["result"] = {"associative": r.associative, "commutative": r.commutative,
                         "idempotents": [render(m, p) for p in r.idempotents],
                         "idempotents_central": r.idempotents_central,
                         "factor_classification": r.factor_classification,
                         "exhaustive": r.exhaustive}
        out["witnesses"] = render(m, r.witnesses)
        if r.associative and r.idempotents_central is False:
            status = FAILED
    elif op == "commuting-halves":
        r = structure.check_commuting_halves(m, cfg)
        out["result"] = r.holds
        out["witness"] = render(m, r.witness)
        out["classification"] = r.classification.value if r.classification else None
        out["agrees_with_classification"] = r.agrees
        if r.agrees is False:
            status = FAILED
    elif op == "lemmas":
        rep = seq.check_sea_lemmas(m, cfg)
        out["result"] = render_report(m, rep)
        status = OK if rep.ok else FAILED
    return out, status


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqeffect",
                                 description="Check and explore sequential effect algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, sampling=True):
        p.add_argument("path", help="model document (JSON)")
        if sampling:
            p.add_argument("--budget", type=int, default=24,
                           help="sample size for parametric families (default 24)")
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock time (makes output run-dependent)")

    p = sub.add_parser("check", help="effect-algebra, SEA and effect-monoid axioms")
    common(p)
    p.add_argument("--require-monoid", action="store_true",
                   help="fail unless the effect-monoid axioms hold as well")
    p = sub.add_parser("search", help="enumerate products on a finite model")
    common(p, sampling=False)
    p.add_argument("--axioms", choices=[a.value for a in AxiomSet], default="sea")
    p.add_argument("--max", type=int, default=None, help="stop after K solutions")
    p.add_argument("--canonical", action="store_true",
                   help="report solutions up to automorphisms of the effect algebra")
    p.add_argument("--size-bound", type=int, default=12)
    p = sub.add_parser("decompose", help="Boolean / convex / purely a-convex blocks")
    common(p)
    p = sub.add_parser("analyze", help="run one operation on an element")
    common(p)
    p.add_argument("--op", required=True,
                   choices=["floor", "sqrt", "halves", "divide", "center", "commutant",
                            "bicommutant", "bicommutant-rep", "classify", "associativity",
                            "commuting-halves", "lemmas"])
    p.add_argument("--element", action="append", default=[],
                   help="element as JSON, or 'zero' / 'one' (repeatable)")
    p.add_argument("--n", type=int, default=2, help="divisor for --op divide")
    return ap


COMMANDS = {"check": cmd_check, "search": cmd_search,
            "decompose": cmd_decompose, "analyze": cmd_analyze}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    head = {"command": args.command, "input": args.path}
    for key in ("seed", "budget"):
        if hasattr(args, key):
            head[key] = getattr(args, key)
    t0 = time.perf_counter()
    try:
        if getattr(args, "budget", 8) < 8:
            raise UsageError("--budget must be at least 8")
        doc = load(args.path)
        body, status = COMMANDS[args.command](args, doc.model)
    except ParseError as exc:
        body, status = {"error": "parse error", "location": exc.location,
                        "message": exc.message}, USAGE
    except OSError as exc:
        body, status = {"error": "cannot read input", "message": str(exc)}, USAGE
    except (UsageError, UnsupportedError, PreconditionError, SearchRefused) as exc:
        body, status = {"error": type(exc).__name__, "message": str(exc)}, USAGE
    report = {**head, **body, "status": status}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    yaml.safe_dump(report, out, sort_keys=False, allow_unicode=True, width=100,
                   default_flow_style=None)
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
