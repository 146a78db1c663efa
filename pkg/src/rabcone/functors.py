"""Localization, its right adjoint, the torsion part, and unit maps.

``localize`` is ``M -> M[1/t]`` on atoms, ``right_adj`` is ``RHom(K[t, 1/t], M)``
presented as a two-term complex, and ``torsion_part`` is the fiber of the
unit ``M -> localize(M)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List

from .atoms import AdmissibleModule, Atom, AtomMorphism, Kind
from .complexes import ChainMap, Complex, cone, shadow_cohomology, shift
from .graded import DegreeWindow
from .oracle import compare, padded_brute_hom
from .rhom import Tower, rhom_modules, tower_lim
from .ratfunc import RatFunc


class FunctorTag(Enum):
    RESTRICT = "i"
    LOCALIZE = "i i^L"
    RIGHT_ADJ = "i i^R"
    TORSION_PART = "j j^R"


_LOCALIZE = {
    Kind.FREE: Kind.LAURENT,
    Kind.LAURENT: Kind.LAURENT,
    Kind.POWER_SERIES: Kind.LAURENT_SERIES,
    Kind.LAURENT_SERIES: Kind.LAURENT_SERIES,
    Kind.TAIL: Kind.TAIL,
}


def localize_atom(a: Atom):
    kind = _LOCALIZE.get(a.kind)
    return None if kind is None else Atom(kind, a.k)


def localize(m: AdmissibleModule) -> AdmissibleModule:
    """``M[1/t]`` atom by atom; torsion dies."""
    return AdmissibleModule(x for x in (localize_atom(a) for a in m) if x is not None)


def unit_map(m: AdmissibleModule) -> AtomMorphism:
    """``M -> localize(M)`` with entry 1 on every surviving atom."""
    tgt = localize(m)
    entries, row = {}, 0
    for j, a in enumerate(m):
        if localize_atom(a) is not None:
            entries[(row, j)] = RatFunc.one()
            row += 1
    return AtomMorphism.from_dict(m, tgt, entries)


def localize_morphism(f: AtomMorphism) -> AtomMorphism:
    """The induced map on localizations (entries restricted to surviving atoms)."""
    src_keep = [j for j, a in enumerate(f.source) if localize_atom(a) is not None]
    tgt_keep = [i for i, a in enumerate(f.target) if localize_atom(a) is not None]
    rows = [[f[i, j] for j in src_keep] for i in tgt_keep]
    return AtomMorphism(localize(f.source), localize(f.target), rows)


def right_adj(m: AdmissibleModule) -> Complex:
    """``RHom(L, M)`` as a complex with ``lim`` in degree 0 and ``lim^1`` in degree 1."""
    lim, lim1 = tower_lim(Tower.multiplication(m))
    return Complex({0: lim, 1: lim1})


def torsion_part(m: AdmissibleModule) -> Complex:
    """``cone(M -> localize(M))[-1]``."""
    u = unit_map(m)
    src, tgt = Complex.concentrated(m), Complex.concentrated(localize(m))
    return shift(cone(ChainMap(src, tgt, {0: u})), -1)


@dataclass
class AdjunctionReport:
    c: AdmissibleModule
    s: AdmissibleModule
    window: DegreeWindow
    localized_dims: Dict[int, int]
    direct_dims: Dict[int, int]
    symbolic: Dict[str, str]
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_adjunction(c: AdmissibleModule, s: AdmissibleModule, window: DegreeWindow,
                      margin: int = 2) -> AdjunctionReport:
    """Compare ``Hom(localize(c), s)`` with ``Hom(c, s)`` for local ``s``.

    Checked twice: by brute-force shadows on the window interior and by the
    symbolic table.
    """
    for a in s:
        if a.kind not in (Kind.LAURENT, Kind.LAURENT_SERIES):
            raise ValueError(f"adjunction target must be local, got {a}")
    for a in c:
        if a.kind not in (Kind.FREE, Kind.TORSION):
            raise ValueError(f"adjunction source must be Free/Torsion, got {a}")
    interior = window.trim(margin)
    lc = localize(c)
    left = padded_brute_hom(lc, s, window, margin)
    right = padded_brute_hom(c, s, window, margin)
    sym_left = rhom_modules(lc, s)
    sym_right = rhom_modules(c, s)
    failures = []
    for q in interior:
        if left.dim(q) != right.dim(q):
            failures.append(f"degree {q}: Hom(localize c, s) has dim {left.dim(q)}, Hom(c, s) has {right.dim(q)}")
    if sym_left != sym_right:
        failures.append(f"symbolic mismatch: {sym_left} vs {sym_right}")
    verdict = compare(sym_right.h0, right, window, margin)
    if not verdict.ok:
        failures.append(f"symbolic H0 {sym_right.h0} disagrees with brute force: {verdict.mismatches}")
    return AdjunctionReport(c, s, window, {q: left.dim(q) for q in interior},
                            {q: right.dim(q) for q in interior},
                            {"localized": str(sym_left), "direct": str(sym_right)}, failures)


def shadow_euler_module(m: AdmissibleModule, window: DegreeWindow) -> Dict[int, int]:
    return {q: sum(1 for a in m if a.support(q)) for q in window}


def triangle_euler_check(m: AdmissibleModule, window: DegreeWindow, margin: int = 2) -> List[str]:
    """Per-degree ``chi(torsion_part M) + chi(localize M) = chi(M)`` on the interior."""
    interior = window.trim(margin)
    tp = torsion_part(m)
    coh = shadow_cohomology(tp, window) if not tp.is_zero() else {}
    chi_m = shadow_euler_module(m, window)
    chi_l = shadow_euler_module(localize(m), window)
    bad = []
    for q in interior:
        chi_t = sum((-1) ** n * h.dim(q) for n, h in coh.items())
        if chi_t + chi_l[q] != chi_m[q]:
            bad.append(f"{m} degree {q}: {chi_t} + {chi_l[q]} != {chi_m[q]}")
    return bad


__all__ = ["FunctorTag", "localize", "localize_atom", "localize_morphism", "unit_map", "right_adj",
           "torsion_part", "verify_adjunction", "AdjunctionReport", "triangle_euler_check",
           "shadow_euler_module"]
