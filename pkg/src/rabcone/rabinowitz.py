"""Hom spaces in the punctured neighborhood of infinity.

For objects ``c, d`` of Perf K[t] the Hom complex is

    Cone( RHom(localize c, d) -> RHom(c, localize d) )

with the map induced by the unit maps.  Two layers compute it:

* symbolic: complexes of atoms with the connecting class ``delta`` from the
  tail ``K[[t]]/K[t]`` (the lim^1 of the t-adic tower) into ``K[t, 1/t]``;
  the cohomology rule ``Cone(delta) = LS`` fires only once
  :func:`extension_witness` has certified that ``delta`` is not null-homotopic;
* shadow models: chain-level Hom complexes out of the stage-N resolution of
  ``K[t, 1/t]``, realized on degree windows for the oracle.

Composition of classes ``(f, g)`` follows the cohomology-level formula
``(f1, g1) o (f0, g0) = (u^-1 g1 u f0 + f1 g0, g1 g0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Tuple

from .atoms import AdmissibleModule, Atom, AtomMorphism, Kind, L, Q, ZERO
from .complexes import (ChainMap, Complex, Connecting, HomotopyResult, cohomology, cone,
                        hom_chain_map, hom_complex, null_homotopy_obstruction,
                        register_extension_rule, shadow_cohomology)
from .functors import localize, right_adj, unit_map
from .graded import DegreeWindow, GradedSpace
from .ratfunc import RatFunc
from .resolution import (check_probe_relation, build_resolution, dualize, extension_probe,
                         resolve, unit_lift)
from .rhom import rhom_modules

DELTA = "delta"


class CompositionLeavesCalculus(ValueError):
    pass


def _check_perfect(m: AdmissibleModule, role: str):
    for a in m:
        if a.kind not in (Kind.FREE, Kind.TORSION):
            raise ValueError(f"{role} must be a sum of Free/Torsion atoms, got {a}")


def _rhom_complex(m, n) -> Complex:
    r = rhom_modules(m, n)
    return Complex({0: r.h0, 1: r.h1})


@dataclass
class RabComplex:
    c: AdmissibleModule
    d: AdmissibleModule
    source: Complex      # RHom(localize c, d)
    target: Complex      # RHom(c, localize d)
    map: ChainMap
    complex: Complex

    @cached_property
    def cohomology(self) -> Dict[int, AdmissibleModule]:
        return cohomology(self.complex)

    def h0(self) -> AdmissibleModule:
        return self.cohomology.get(0, ZERO)


def rab_complex(c: AdmissibleModule, d: AdmissibleModule) -> RabComplex:
    """The cone of ``RHom(localize c, d) -> RHom(c, localize d)``.

    For Free atoms ``F(a)``, ``F(b)`` the source is ``Q(b-a)`` in degree 1 and
    the target ``L(b-a)`` in degree 0; the unit maps induce the connecting
    class ``delta`` between them and nothing in degree 0.  Pairs with a
    torsion atom contribute zero on both sides.
    """
    _check_perfect(c, "source object")
    _check_perfect(d, "target object")
    src_atoms, tgt_atoms, conn = [], [], []
    for a in c:
        for b in d:
            if a.kind is Kind.FREE and b.kind is Kind.FREE:
                k = b.k - a.k
                conn.append(Connecting(1, len(src_atoms), len(tgt_atoms), DELTA))
                src_atoms.append(Q(k))
                tgt_atoms.append(L(k))
    src = Complex({1: AdmissibleModule(src_atoms)})
    tgt = Complex({0: AdmissibleModule(tgt_atoms)})
    # the table agrees with this bookkeeping
    if rhom_modules(localize(c), d).h1 != AdmissibleModule(src_atoms).canonical() \
            or rhom_modules(c, localize(d)).h0 != AdmissibleModule(tgt_atoms).canonical():
        raise AssertionError("rab_complex bookkeeping disagrees with the RHom table")
    phi = ChainMap(src, tgt, {}, conn)
    return RabComplex(c, d, src, tgt, phi, cone(phi))


def remark_form(c: AdmissibleModule, d: AdmissibleModule) -> Complex:
    """``RHom(c, Cone(right_adj(d) -> localize(d)))``, computed cohomology-first."""
    _check_perfect(c, "source object")
    _check_perfect(d, "target object")
    ra = right_adj(d)
    loc = Complex.concentrated(localize(d))
    # pair each lim^1 tail Q(b) with the Laurent atom L(b) it maps to
    free = localize(d)
    used, conn = set(), []
    for i, qa in enumerate(ra.term(1)):
        j = next(j for j, la in enumerate(free) if la.k == qa.k and j not in used)
        used.add(j)
        conn.append(Connecting(1, i, j, DELTA))
    y = cone(ChainMap(ra, loc, {}, conn))
    h = cohomology(y)
    nonzero = {n: m for n, m in h.items() if not m.is_zero()}
    if not nonzero:
        return Complex({})
    if len(nonzero) > 1 and any(a.kind is not Kind.FREE for a in c):
        raise ValueError("remark form needs cohomology in one degree unless c is free")
    terms: Dict[int, List[Atom]] = {}
    for n, m in nonzero.items():
        r = rhom_modules(c, m)
        terms.setdefault(n, []).extend(r.h0)
        terms.setdefault(n + 1, []).extend(r.h1)
    return Complex({n: AdmissibleModule(v).canonical() for n, v in terms.items()})


# -- the extension certificate -----------------------------------------------------

@dataclass
class ExtensionReport:
    N: int
    window: DegreeWindow
    margin: int
    representative_ok: bool
    probe_relation_ok: bool
    obstruction: HomotopyResult
    control: HomotopyResult
    failures: List[str] = field(default_factory=list)

    @property
    def obstructed(self):
        return self.obstruction.obstructed

    @property
    def control_splits(self):
        return not self.control.obstructed

    @property
    def ok(self):
        return not self.failures


def evaluation_map(dual, zero=False) -> ChainMap:
    """``s_0* -> 1`` into ``L``: restriction along the unit lift ``e -> s_0``."""
    y = Complex.concentrated(AdmissibleModule.of(L(0)))
    entries = {} if zero else {(0, dual.s_index[0]): 1}
    comp = AtomMorphism.from_dict(dual.complex.term(0), y.term(0), entries)
    return ChainMap(dual.complex, y, {0: comp})


def extension_witness(window: DegreeWindow = DegreeWindow(0, 8), margin: int = 2,
                      N: int = 6) -> ExtensionReport:
    """Certify that ``delta: Q(0)[-1] -> L`` is not null-homotopic.

    The source is modelled by the dual of the stage-N resolution; ``delta``
    is the evaluation at ``s_0*``.  A degreewise homotopy always exists (the
    dual map is bijective in every degree), so the graded system alone cannot
    see ``delta``.  The probe ``rho = sum_(n<=-1) t^e r_n*``, which exists
    only in the product, satisfies ``(1-t) rho = t^e r_(-1)* - d(...)``; any
    t-linear homotopy then needs ``(1-t) h(rho) = -t^e`` with ``h(rho)`` a
    Laurent polynomial, which the window system refutes with an explicit
    left-kernel certificate.  The zero map is the negative control.
    """
    failures = []
    res = build_resolution(N)
    dual = dualize(res)
    phi = evaluation_map(dual)

    # (a) delta agrees with the map induced by the units on the Hom model
    model = hom_chain_map(unit_lift(Atom(Kind.FREE, 0), N),
                          ChainMap(Complex.concentrated(AdmissibleModule.of(Atom(Kind.FREE, 0))),
                                   Complex.concentrated(AdmissibleModule.of(L(0))),
                                   {0: unit_map(AdmissibleModule.of(Atom(Kind.FREE, 0)))}))
    m0 = model.component(0)
    s0_col = res.s_index[0]
    representative_ok = (m0[0, s0_col] == RatFunc.one()
                         and all(m0[0, j].is_zero() for j in range(len(m0.source)) if j != s0_col))
    if not representative_ok:
        failures.append("evaluation at s_0* is not the unit-induced map on the Hom model")

    interior = window.trim(margin)
    if interior is None:
        raise ValueError(f"window {window} has empty interior at margin {margin}")
    # r_(-1)* generates F(0); the probe must sit in a degree the homotopy sees
    if interior.hi < 0:
        raise ValueError(f"window interior {interior} lies below the dual model's support")
    exponent = max(interior.lo, 0) - dual.complex.term(1)[dual.r_index[-1]].k
    probe = extension_probe(dual, exponent)
    probe_ok = check_probe_relation(dual, window, exponent)
    if not probe_ok:
        failures.append("probe relation fails on the truncated model")

    obstruction = null_homotopy_obstruction(phi, window, margin, probes=[probe])
    if not obstruction.obstructed:
        failures.append("delta admits a homotopy on the window: extension not certified")
    control = null_homotopy_obstruction(evaluation_map(dual, zero=True), window, margin, probes=[probe])
    if control.obstructed:
        failures.append("zero map reported obstructed: the certificate is not discriminating")
    return ExtensionReport(N, window, margin, representative_ok, probe_ok, obstruction, control, failures)


register_extension_rule(DELTA, Kind.LAURENT, Kind.TAIL, Kind.LAURENT_SERIES,
                        lambda: extension_witness().ok)


# -- cohomology-level composition ------------------------------------------------

def _laurent_matrix(g: AtomMorphism):
    for i, j, x in g.nonzero():
        if not x.is_laurent_polynomial():
            raise CompositionLeavesCalculus(
                f"composition leaves calculus: g entry ({i}, {j}) = {x} is not a Laurent polynomial")


@dataclass(frozen=True)
class RabClass:
    """A degree-0 class ``(f, g)`` in the Hom space from ``source`` to ``target``.

    ``g`` maps ``localize(source) -> localize(target)``; ``f`` is a matrix of
    tail classes (rational functions modulo Laurent polynomials) of the same
    shape, stored by canonical representatives.
    """

    source: AdmissibleModule
    target: AdmissibleModule
    f: Tuple[Tuple[RatFunc, ...], ...]
    g: AtomMorphism

    @classmethod
    def make(cls, source, target, f, g):
        _check_perfect(source, "source object")
        _check_perfect(target, "target object")
        ls, lt = localize(source), localize(target)
        if not isinstance(g, AtomMorphism):
            g = AtomMorphism(ls, lt, g)
        if not (g.source.identical(ls) and g.target.identical(lt)):
            raise ValueError("g must map localize(source) -> localize(target)")
        _laurent_matrix(g)
        rows = tuple(tuple(RatFunc.coerce(x).tail_part() for x in row) for row in f)
        if len(rows) != len(lt) or any(len(r) != len(ls) for r in rows):
            raise ValueError(f"f must be {len(lt)}x{len(ls)}")
        return cls(source, target, rows, g)

    def __eq__(self, other):
        if not isinstance(other, RabClass):
            return NotImplemented
        return (self.source.identical(other.source) and self.target.identical(other.target)
                and self.f == other.f and self.g == other.g)

    def __hash__(self):
        return hash((self.f, self.g))

    def __add__(self, other):
        f = [[a + b for a, b in zip(r, s)] for r, s in zip(self.f, other.f)]
        return RabClass.make(self.source, self.target, f, self.g + other.g)

    def scale(self, c):
        c = RatFunc.coerce(c)
        return RabClass.make(self.source, self.target, [[c * a for a in r] for r in self.f],
                             self.g.scale(c))


def _matmul(a, b):
    zero = RatFunc.zero()
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    return [[sum((a[i][l] * b[l][j] for l in range(k) if a[i][l] and b[l][j]), zero)
             for j in range(m)] for i in range(n)]


def compose_classes(x1: RabClass, x0: RabClass) -> RabClass:
    """``x1 o x0 = (u^-1 g1 u f0 + f1 g0, g1 g0)``.

    ``u f0`` places the tail class in ``K((t))/K[t, 1/t]``; multiplying by
    the Laurent-polynomial matrix ``g1`` preserves that subspace, and the
    exact preimage under ``u`` is the canonical tail representative.
    """
    if not x0.target.identical(x1.source):
        raise ValueError(f"cannot compose: {x0.target} vs {x1.source}")
    _laurent_matrix(x1.g)
    _laurent_matrix(x0.g)
    g1 = [list(r) for r in x1.g.entries]
    g0 = [list(r) for r in x0.g.entries]
    pushed = _matmul(g1, [list(r) for r in x0.f])
    pulled = _matmul([list(r) for r in x1.f], g0)
    f = []
    for r1, r2 in zip(pushed, pulled):
        row = []
        for a, b in zip(r1, r2):
            pre = _u_preimage(a)
            row.append(pre + b)
        f.append(row)
    return RabClass.make(x0.source, x1.target, f, x1.g @ x0.g)


def _u_preimage(x: RatFunc) -> RatFunc:
    """Solve ``u(y) = x`` in the tail: ``y`` is the part of ``x`` outside K[t, 1/t]."""
    y = x.tail_part()
    if not (x - y).is_laurent_polynomial():
        raise CompositionLeavesCalculus(f"composition leaves calculus: no preimage of {x}")
    return y


def unit_class(c: AdmissibleModule) -> RabClass:
    """``(0, id)``; for torsion objects this is the zero class."""
    lc = localize(c)
    zero = RatFunc.zero()
    return RabClass.make(c, c, [[zero] * len(lc) for _ in lc], AtomMorphism.identity(lc))


# -- shadow models -------------------------------------------------------------------

def model_stage(window: DegreeWindow, *objects: AdmissibleModule) -> int:
    """A resolution stage large enough that stage artifacts sit outside the window."""
    spread = max([abs(a.k) + a.m for m in objects for a in m] + [0])
    return (window.hi - window.lo) + 2 * spread + max(abs(window.lo), abs(window.hi)) + 4


def _unit_chain(atom: Atom) -> ChainMap:
    m = AdmissibleModule.of(atom)
    return ChainMap(Complex.concentrated(m), Complex.concentrated(localize(m)), {0: unit_map(m)})


def rab_model(c: Atom, d: Atom, N: int) -> Complex:
    """``Cone(Hom(P_(Lc), d) -> Hom(P_c, Ld))`` at resolution stage N."""
    return cone(hom_chain_map(unit_lift(c, N), _unit_chain(d)))


def remark_model(c: Atom, d: Atom, N: int) -> Complex:
    """``Hom(P_c, Cone(Hom(P_L, d) -> Ld))`` at resolution stage N."""
    z = cone(hom_chain_map(unit_lift(Atom(Kind.FREE, 0), N), _unit_chain(d)))
    return hom_complex(resolve(c, N).complex, z)


def model_shadow(model: Complex, window: DegreeWindow) -> Dict[int, GradedSpace]:
    return shadow_cohomology(model, window) if not model.is_zero() else {}


def h0_shadow(model: Complex, window: DegreeWindow, margin: int = 2) -> Dict[int, int]:
    coh = model_shadow(model, window)
    h0 = coh.get(0)
    return {q: (h0.dim(q) if h0 else 0) for q in window.trim(margin)}


__all__ = [
    "RabComplex", "rab_complex", "remark_form", "ExtensionReport", "extension_witness",
    "evaluation_map", "RabClass", "compose_classes", "unit_class", "CompositionLeavesCalculus",
    "rab_model", "remark_model", "model_stage", "model_shadow", "h0_shadow", "DELTA",
]
