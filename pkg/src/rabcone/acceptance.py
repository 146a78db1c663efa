"""The acceptance checks, one function per criterion.

Each check runs under the active field and returns a :class:`Outcome`.  The
``detail`` payload holds the exact numbers behind the verdict so that runs
over different fields can be compared for identical results.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import List

from .atoms import F, L, LS, M, T, Q
from .complexes import cohomology
from .fields import GF, QQ, use_field
from .functors import triangle_euler_check, verify_adjunction
from .graded import DegreeWindow
from .oracle import brute_hom, compare, stabilization_check
from .rabinowitz import (RabClass, compose_classes, extension_witness, h0_shadow, model_shadow,
                         model_stage, rab_complex, rab_model, remark_form, remark_model, unit_class)
from .ratfunc import RatFunc
from .resolution import build_resolution, verify_exact
from .rhom import rhom_atoms

FIELDS = (QQ, GF(10007), GF(65537))


@dataclass
class Outcome:
    number: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.name} ({self.seconds:.2f}s)"


def _timed(number, name, fn, budget=None):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if budget is not None:
        detail["runtime_budget_s"] = budget
        if dt >= budget:
            ok = False
            detail["runtime_exceeded"] = round(dt, 3)
    return Outcome(number, name, bool(ok), detail, dt)


def _dims(space_or_dict, degrees):
    if hasattr(space_or_dict, "dim"):
        return {q: space_or_dict.dim(q) for q in degrees}
    return {q: space_or_dict.get(q) for q in degrees}


# 1 ---------------------------------------------------------------------------------

def check_resolution_exactness(N=6, window=DegreeWindow(0, 8), margin=2):
    rep = verify_exact(build_resolution(N), window, margin)
    control = verify_exact(build_resolution(N), window, margin, corrupt=-2)
    detail = {"degrees": {c.degree: c.dims for c in rep.degrees}, "failures": rep.failures,
              "corrupted_control_fails": not control.ok}
    return rep.ok and not control.ok, detail


# 2 ---------------------------------------------------------------------------------

def check_ext_identification(window=DegreeWindow(-8, 8), margin=2):
    r = rhom_atoms(L(), F(0))
    brute = brute_hom(M(L()), M(F(0)), window, margin)
    verdict = compare(r.h0, brute, window, margin)
    ok = r.h0.is_zero() and r.h1 == M(Q(0)) and verdict.ok
    return ok, {"h0": str(r.h0), "h1": str(r.h1), "brute_h0": _dims(brute, window.trim(margin)),
                "notes": verdict.notes}


# 3 ---------------------------------------------------------------------------------

def check_example(window=DegreeWindow(-8, 8), margin=2):
    rc = rab_complex(M(F(0)), M(F(0)))
    label = str(rc.h0())        # fires only once the extension is certified
    N = model_stage(window, M(F(0)))
    dims = h0_shadow(rab_model(F(0), F(0), N), window, margin)
    ok = label == "LS" and all(v == 1 for v in dims.values())
    return ok, {"symbolic_h0": label, "shadow_h0": dims, "N": N}


# 4 ---------------------------------------------------------------------------------

def check_extension(N=6, window=DegreeWindow(0, 8), margin=2):
    rep = extension_witness(window, margin, N)
    return rep.ok, {"obstructed": rep.obstructed, "control_splits": rep.control_splits,
                    "representative_ok": rep.representative_ok,
                    "probe_relation_ok": rep.probe_relation_ok,
                    "unknowns": rep.obstruction.unknowns, "equations": rep.obstruction.equations,
                    "failures": rep.failures}


# 5 ---------------------------------------------------------------------------------

def check_remark_agreement(window=DegreeWindow(-8, 8), margin=2, bound=2):
    N = model_stage(window, M(F(bound)))
    table, ok = {}, True
    for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
        c, d = M(F(a)), M(F(b))
        sym_rab = rab_complex(c, d).h0()
        sym_rem = cohomology(remark_form(c, d)).get(0)
        x = h0_shadow(rab_model(F(a), F(b), N), window, margin)
        y = h0_shadow(remark_model(F(a), F(b), N), window, margin)
        agree = sym_rab == sym_rem and x == y and all(v == 1 for v in x.values())
        ok = ok and agree
        table[f"{a},{b}"] = {"symbolic": str(sym_rab), "agree": agree}
    return ok, {"pairs": table, "N": N}


# 6 ---------------------------------------------------------------------------------

def check_torsion_vanishing(window=DegreeWindow(-8, 8), margin=2):
    bad = []
    torsion = [T(m, k) for m in (1, 2, 3) for k in range(-2, 3)]
    others = [F(j) for j in range(-2, 3)] + torsion
    for t_atom in torsion:
        for o in others:
            for c, d in ((t_atom, o), (o, t_atom)):
                h = rab_complex(M(c), M(d)).cohomology
                if any(not v.is_zero() for v in h.values()):
                    bad.append(f"symbolic {c},{d}")
    N = model_stage(window, M(T(3, 2)))
    for t_atom in torsion:
        for c, d in ((t_atom, F(0)), (F(0), t_atom)):
            coh = model_shadow(rab_model(c, d, N), window)
            for n, h in coh.items():
                if any(h.dim(q) for q in window.trim(margin)):
                    bad.append(f"shadow {c},{d} degree {n}")
    return not bad, {"failures": bad, "pairs": len(torsion) * len(others) * 2}


# 7 ---------------------------------------------------------------------------------

def _cls(k, a, zero_f=False):
    c = M(F(0))
    f = RatFunc.zero() if zero_f else RatFunc.monomial(1, k) / (RatFunc.one() - RatFunc.t())
    return RabClass.make(c, c, [[f]], [[RatFunc.monomial(1, a)]])


def check_composition(bound=3, seed=0, mixed=60):
    exps = range(-bound, bound + 1)
    failures = []
    mono = compose_classes(_cls(0, 3, True), _cls(0, 2, True))
    if mono != _cls(0, 5, True):
        failures.append("monomial case")
    unit = unit_class(M(F(0)))
    checked = 0
    samples = [_cls(k, a) for k in exps for a in exps]
    for x in samples:
        if compose_classes(unit, x) != x or compose_classes(x, unit) != x:
            failures.append(f"unit law at {x.f}, {x.g}")
    if compose_classes(unit, unit) != unit:
        failures.append("unit o unit")
    triples = []
    # every exponent triple in g (f = 0) and in f (g = id), plus seeded mixed triples
    triples += [tuple(_cls(0, a, True) for a in t) for t in itertools.product(exps, repeat=3)]
    triples += [tuple(_cls(k, 0) for k in t) for t in itertools.product(exps, repeat=3)]
    rng = random.Random(seed)
    triples += [tuple(rng.choice(samples) for _ in range(3)) for _ in range(mixed)]
    for x2, x1, x0 in triples:
        lhs = compose_classes(compose_classes(x2, x1), x0)
        rhs = compose_classes(x2, compose_classes(x1, x0))
        checked += 1
        if lhs != rhs:
            failures.append(f"associativity fails at {x2.g}, {x1.g}, {x0.g}")
    torsion_unit = unit_class(M(T(2, 0)))
    if torsion_unit.f or not torsion_unit.g.is_zero():
        failures.append("torsion unit is not the zero class")
    return not failures, {"triples": checked, "failures": failures[:10],
                          "monomial": str(mono.g.entries[0][0])}


# 8 ---------------------------------------------------------------------------------

def check_adjunction_triangle(window=DegreeWindow(-8, 8), margin=2, bound=3):
    failures = []
    cs = [F(k) for k in range(-bound, bound + 1)] + \
         [T(m, k) for m in (1, 2, 3) for k in range(-bound, bound + 1)]
    for c in cs:
        for s in (L(), LS(), L(1)):
            rep = verify_adjunction(M(c), M(s), window, margin)
            failures += rep.failures
    atoms = cs + [L(k) for k in range(-bound, bound + 1)] + [LS(k) for k in range(-bound, bound + 1)]
    for a in atoms:
        failures += triangle_euler_check(M(a), window, margin)
    return not failures, {"failures": failures[:10], "adjunction_pairs": len(cs) * 3,
                          "triangle_atoms": len(atoms)}


# 9 ---------------------------------------------------------------------------------

def check_stabilization(growth=4, margin=2):
    unstable = []

    def res_verdicts(w, N):
        rep = verify_exact(build_resolution(N), w, margin)
        return {c.degree: c.ok for c in rep.degrees}

    w1 = DegreeWindow(0, 8)
    if not stabilization_check(res_verdicts, w1, growth, margin, N=6).stable:
        unstable.append("resolution exactness")

    w2 = DegreeWindow(-8, 8)
    if not stabilization_check(lambda w: brute_hom(M(L()), M(F(0)), w, margin), w2, growth, margin).stable:
        unstable.append("Hom(L, F(0)) shadow")

    N = model_stage(w2, M(F(2)))

    def rab_dims(w, n):
        return h0_shadow(rab_model(F(0), F(0), n), w, margin)

    if not stabilization_check(rab_dims, w2, growth, margin, N=N).stable:
        unstable.append("rab(F(0), F(0)) H0 shadow")

    def remark_dims(w, n):
        return h0_shadow(remark_model(F(1), F(-1), n), w, margin)

    if not stabilization_check(remark_dims, w2, growth, margin, N=N).stable:
        unstable.append("remark(F(1), F(-1)) H0 shadow")

    def ext_verdict(w, n):
        rep = extension_witness(w, margin, n)
        return {q: rep.ok for q in w}

    if not stabilization_check(ext_verdict, w1, growth, margin, N=6).stable:
        unstable.append("extension certificate")

    def adj_dims(w):
        return verify_adjunction(M(F(3)), M(LS()), w, margin).direct_dims

    if not stabilization_check(adj_dims, w2, growth, margin).stable:
        unstable.append("adjunction shadow")

    # negative control: margin 0 keeps the faithless window edge
    control = stabilization_check(lambda w: brute_hom(M(L()), M(F(0)), w, 0), DegreeWindow(-6, 6),
                                  growth, 0)
    if control.stable:
        unstable.append("under-truncated control was reported stable")
    return not unstable, {"unstable": unstable, "control_first_unstable": control.first_unstable}


CHECKS: List[tuple] = [
    (1, "resolution dual exactness (N=6, W=[0,8])", check_resolution_exactness, 5.0),
    (2, "RHom(L, F(0)) = Q(0)[-1], brute H0 = 0", check_ext_identification, None),
    (3, "rab(F(0), F(0)) H0 = LS, shadow dims 1", check_example, None),
    (4, "extension certificate and split control", check_extension, None),
    (5, "cone formula vs right-adjoint form, |a|,|b| <= 2", check_remark_agreement, 30.0),
    (6, "torsion arguments give zero", check_torsion_vanishing, None),
    (7, "composition unit, associativity, monomial case", check_composition, None),
    (8, "adjunction and triangle Euler characteristics", check_adjunction_triangle, None),
    (9, "stabilization under window and stage growth", check_stabilization, None),
]


def run_criteria(field=QQ, numbers=None, seed=0) -> List[Outcome]:
    out = []
    with use_field(field):
        for number, name, fn, budget in CHECKS:
            if numbers is None or number in numbers:
                call = (lambda: check_composition(seed=seed)) if fn is check_composition else fn
                out.append(_timed(number, name, call, budget))
    return out


def check_field_robustness(fields=FIELDS, numbers=None, seed=0):
    """Criteria 1-9 under every field, with identical verdicts and numbers."""
    runs = {f.name: run_criteria(f, numbers, seed) for f in fields}
    base = next(iter(runs.values()))

    def strip(o):
        d = {k: v for k, v in o.detail.items() if k not in ("runtime_exceeded",)}
        return (o.number, o.ok, repr(d))

    ok = all(o.ok for r in runs.values() for o in r)
    identical = all([strip(o) for o in r] == [strip(o) for o in base] for r in runs.values())
    return ok and identical, {"fields": {k: [o.ok for o in r] for k, r in runs.items()},
                              "identical": identical}, runs


def run_all(fields=FIELDS, seed=0) -> List[Outcome]:
    """Criteria 1-9 under the first field, then criterion 10 over all fields."""
    t0 = time.perf_counter()
    ok, detail, runs = check_field_robustness(fields, seed=seed)
    dt = time.perf_counter() - t0
    first = runs[fields[0].name]
    return first + [Outcome(10, "field robustness over " + ", ".join(f.name for f in fields),
                            ok, detail, dt)]


__all__ = ["Outcome", "CHECKS", "FIELDS", "run_criteria", "run_all", "check_field_robustness"] + \
          [fn.__name__ for _, _, fn, _ in CHECKS]
