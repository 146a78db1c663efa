"""Command-line front end.

Every command builds one report document and prints a short table; with
``--json PATH`` (``-`` for stdout) the document is also written as JSON.
Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .atoms import AdmissibleModule, F, Kind, L, LS, M, T, parse_module, render_module
from .complexes import CohomologyNotInCalculus, cohomology
from .fields import ModP, get_field, parse_field, use_field
from .functors import verify_adjunction
from .graded import DegreeWindow
from .oracle import compare, padded_brute_hom
from .rabinowitz import (CompositionLeavesCalculus, RabClass, compose_classes, extension_witness,
                         h0_shadow, model_stage, rab_complex, rab_model, remark_form, remark_model)
from .ratfunc import parse_ratfunc, render_ratfunc
from .resolution import build_resolution, verify_exact
from .rhom import UnsupportedRHom, rhom_modules


class UsageError(Exception):
    pass


def _scalar(x):
    if isinstance(x, (Fraction, ModP)):
        return get_field().render(x)
    return x


def _clean(obj):
    """Make a report JSON-safe: int keys become strings, exact scalars become "p/q"."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (Fraction, ModP)):
        return _scalar(obj)
    return str(obj)


def render_json(doc) -> str:
    return json.dumps(_clean(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _window(args, default):
    if getattr(args, "window", None):
        lo, hi = args.window
        if lo > hi:
            raise UsageError(f"window lower bound {lo} exceeds upper bound {hi}")
        return DegreeWindow(lo, hi)
    return DegreeWindow(*default)


def _module(text):
    try:
        return parse_module(text)
    except ValueError as e:
        raise UsageError(str(e))


def _config(args, **extra):
    cfg = {"field": get_field().name}
    cfg.update(extra)
    return cfg


# -- commands ---------------------------------------------------------------------------

def cmd_rhom(args):
    a, b = _module(args.source), _module(args.target)
    try:
        r = rhom_modules(a, b)
    except UnsupportedRHom as e:
        raise UsageError(str(e))
    window = _window(args, (-8, 8))
    doc = {"config": _config(args), "symbolic": {"H0": render_module(r.h0), "H1": render_module(r.h1)},
           "tables": {}, "verdicts": {}}
    lines = [f"RHom({a}, {b}):  H0 = {r.h0}   H1 = {r.h1}"]
    ok = True
    # brute force needs degreewise-finite Hom, i.e. a source built from F, T and L
    if all(x.kind in (Kind.FREE, Kind.TORSION, Kind.LAURENT) for x in a):
        brute = padded_brute_hom(a, b, window, args.margin)
        verdict = compare(r.h0, brute, window, args.margin)
        doc["config"].update(window=[window.lo, window.hi], margin=args.margin)
        doc["tables"]["H0_shadow"] = {q: pair for q, pair in verdict.table.items()}
        doc["verdicts"]["H0_shadow_matches"] = verdict.ok
        doc["verdicts"]["notes"] = verdict.notes
        ok = verdict.ok
        lines.append(f"H0 shadow check on {window.trim(args.margin)}: {'ok' if ok else 'MISMATCH'}")
    return ok, doc, lines


def _hom_shadow(c: AdmissibleModule, d: AdmissibleModule, window, margin, N, model):
    total = {q: 0 for q in window.trim(margin)}
    for a in c:
        for b in d:
            for q, v in h0_shadow(model(a, b, N), window, margin).items():
                total[q] += v
    return total


def _cone_command(args, symbolic, model, label):
    c, d = _module(args.c), _module(args.d)
    for x in list(c) + list(d):
        if x.kind not in (Kind.FREE, Kind.TORSION):
            raise UsageError(f"objects must be sums of F(k) and T(m,k), got {x}")
    window = _window(args, (-8, 8))
    if window.trim(args.margin) is None:
        raise UsageError(f"window {window} has empty interior at margin {args.margin}")
    N = args.n or model_stage(window, c, d)
    try:
        h = symbolic(c, d)
    except CohomologyNotInCalculus as e:
        h, err = None, str(e)
    dims = _hom_shadow(c, d, window, args.margin, N, model)
    doc = {"config": _config(args, window=[window.lo, window.hi], margin=args.margin, N=N),
           "tables": {"H0_shadow": dims}, "symbolic": {}, "verdicts": {}}
    lines = [f"{label}({c}, {d}) on {window}, margin {args.margin}, stage N={N}"]
    ok = True
    if h is None:
        doc["symbolic"]["error"] = err
        ok = False
        lines.append(f"symbolic: {err}")
    else:
        doc["symbolic"] = {n: render_module(m) for n, m in h.items()}
        lines.append("symbolic: " + ", ".join(f"H{n} = {m}" for n, m in h.items()) if h else "symbolic: 0")
        h0 = h.get(0, AdmissibleModule())
        verdict = compare(h0, _as_space(dims, window, args.margin), window, args.margin)
        doc["verdicts"]["H0_shadow_matches"] = verdict.ok
        ok = verdict.ok
    lines.append("H0 shadow: " + " ".join(f"{q}:{v}" for q, v in dims.items()))
    return ok, doc, lines


def _as_space(dims, window, margin):
    from .graded import GradedSpace
    interior = window.trim(margin)
    return GradedSpace.from_function(interior, lambda q: dims[q])


def cmd_rab(args):
    return _cone_command(args, lambda c, d: rab_complex(c, d).cohomology, rab_model, "rab")


def cmd_remark(args):
    return _cone_command(args, lambda c, d: cohomology(remark_form(c, d)), remark_model, "remark")


def cmd_verify(args):
    what = args.what
    if what == "appendix-b":
        window = _window(args, (0, 8))
        N = args.n or 6
        rep = verify_exact(build_resolution(N), window, args.margin)
        doc = {"config": _config(args, N=N, window=[window.lo, window.hi], margin=args.margin),
               "tables": {"degrees": {c.degree: c.dims for c in rep.degrees}},
               "verdicts": {"exact": rep.ok, "failures": rep.failures}, "symbolic": {}}
        lines = [f"dual resolution, N={N}, window {window}, margin {args.margin}"]
        lines += [f"  degree {c.degree}: {c.dims}  {'ok' if c.ok else 'FAIL'}" for c in rep.degrees]
        lines += [f"  {f}" for f in rep.failures]
        return rep.ok, doc, lines
    if what == "extension":
        window = _window(args, (0, 8))
        N = args.n or 6
        rep = extension_witness(window, args.margin, N)
        doc = {"config": _config(args, N=N, window=[window.lo, window.hi], margin=args.margin),
               "tables": {"system": {"unknowns": rep.obstruction.unknowns,
                                     "equations": rep.obstruction.equations}},
               "verdicts": {"obstructed": rep.obstructed, "control_splits": rep.control_splits,
                            "representative_ok": rep.representative_ok,
                            "probe_relation_ok": rep.probe_relation_ok, "failures": rep.failures},
               "symbolic": {"certificate_support": sum(1 for y in rep.obstruction.certificate or () if y)}}
        lines = [f"extension certificate, N={N}, window {window}, margin {args.margin}",
                 f"  delta obstructed: {rep.obstructed}", f"  zero control splits: {rep.control_splits}"]
        lines += [f"  {f}" for f in rep.failures]
        return rep.ok, doc, lines
    if what == "adjunction":
        window = _window(args, (-8, 8))
        K = args.grid
        cs = [F(k) for k in range(-K, K + 1)] + [T(m, k) for m in (1, 2, 3) for k in range(-K, K + 1)]
        table, failures = {}, []
        for c in cs:
            for s in (L(), LS(), L(1)):
                rep = verify_adjunction(M(c), M(s), window, args.margin)
                table[f"{c} | {s}"] = "ok" if rep.ok else "FAIL"
                failures += rep.failures
        doc = {"config": _config(args, grid=K, window=[window.lo, window.hi], margin=args.margin),
               "tables": {"pairs": table}, "verdicts": {"failures": failures, "ok": not failures},
               "symbolic": {}}
        lines = [f"adjunction grid |k| <= {K}: {len(table)} pairs, {len(failures)} failures"]
        lines += [f"  {f}" for f in failures]
        return not failures, doc, lines
    raise UsageError(f"unknown verification {what!r}")


def _load_class(spec):
    src, tgt = parse_module(spec["source"]), parse_module(spec["target"])
    f = [[parse_ratfunc(x) for x in row] for row in spec.get("f", [])]
    g = [[parse_ratfunc(x) for x in row] for row in spec.get("g", [])]
    return RabClass.make(src, tgt, f, g)


def render_class(x: RabClass):
    return {"source": render_module(x.source), "target": render_module(x.target),
            "f": [[render_ratfunc(v) for v in row] for row in x.f],
            "g": [[render_ratfunc(v) for v in row] for row in x.g.entries]}


def cmd_compose(args):
    try:
        with open(args.classfile, encoding="utf-8") as fh:
            data = json.load(fh)
        classes = [_load_class(c) for c in data["classes"]]
    except (OSError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"cannot read class file: {e}")
    if not classes:
        raise UsageError("class file lists no classes")
    try:
        result = classes[-1]
        for x in reversed(classes[:-1]):
            result = compose_classes(x, result)
    except CompositionLeavesCalculus as e:
        doc = {"config": _config(args), "symbolic": {"error": str(e)}, "tables": {}, "verdicts": {"ok": False}}
        return False, doc, [str(e)]
    out = render_class(result)
    doc = {"config": _config(args, count=len(classes)), "symbolic": {"composite": out},
           "tables": {}, "verdicts": {"ok": True}}
    return True, doc, [f"composite: f = {out['f']}, g = {out['g']}"]


def cmd_selftest(args):
    from .acceptance import FIELDS, run_all
    # criteria 1-9 under the chosen field, criterion 10 across all configured fields
    chosen = get_field()
    fields = (chosen,) + tuple(f for f in FIELDS if f != chosen)
    outcomes = run_all(fields, seed=args.seed)
    doc = {"config": _config(args, seed=args.seed), "symbolic": {},
           "tables": {o.number: {"name": o.name, "detail": o.detail} for o in outcomes},
           "verdicts": {o.number: o.ok for o in outcomes}}
    lines = [o.line() for o in outcomes]
    return all(o.ok for o in outcomes), doc, lines


# -- parser ------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<prime>")
    common.add_argument("--json", metavar="PATH", help="write the report as JSON ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    common.add_argument("--margin", type=int, default=2)
    common.add_argument("--n", type=int, help="resolution stage N")

    p = argparse.ArgumentParser(prog="rabcone",
                                description="Hom spaces in the punctured neighborhood of infinity of Perf K[t].")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("rhom", parents=[common], help="derived Hom between admissible modules")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(func=cmd_rhom)
    for name, fn in (("rab", cmd_rab), ("remark", cmd_remark)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("c")
        s.add_argument("d")
        s.set_defaults(func=fn)
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("what", choices=["appendix-b", "extension", "adjunction"])
    s.add_argument("--grid", type=int, default=3)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("compose", parents=[common])
    s.add_argument("classfile")
    s.set_defaults(func=cmd_compose)
    s = sub.add_parser("selftest", parents=[common])
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        field = parse_field(args.field)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        with use_field(field):
            ok, doc, lines = args.func(args)
            doc["command"] = ["rabcone"] + argv
            doc["ok"] = bool(ok)
            text = render_json(doc)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json == "-":
        sys.stdout.write(text)
    else:
        print("\n".join(lines))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
