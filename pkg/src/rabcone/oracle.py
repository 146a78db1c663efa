"""Brute-force checks on degree windows.

Everything here works on shadows: finite-dimensional graded pieces with the
t-action, solved by raw linear algebra.  No symbolic rule is consulted, so the
results are an independent check on the table and the cohomology calculus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .atoms import AdmissibleModule, Kind, shadow, t_action
from .fields import get_field
from .graded import DegreeWindow, GradedSpace
from .linalg import Matrix, rank


def brute_hom(m: AdmissibleModule, n: AdmissibleModule, window: DegreeWindow,
              margin: int = 2) -> GradedSpace:
    """Dimensions of t-linear maps ``M -> N`` of each internal degree in the interior.

    For degree ``d`` the unknowns are blocks ``X_q: M_q -> N_(q+d)``; the
    constraints are ``t X_q = X_(q+1) t`` wherever all four degrees lie in the
    window.  Degrees near the edge see fewer constraints, which is why only
    the interior is reported.
    """
    interior = window.trim(margin)
    if interior is None:
        raise ValueError(f"window {window} has empty interior at margin {margin}")
    fld = get_field()
    sm, sn = shadow(m, window), shadow(n, window)
    tm, tn = t_action(m, window), t_action(n, window)
    dims = {}
    for d in interior:
        var = {}
        for q in window:
            if q + d in window:
                for r in range(sn.dim(q + d)):
                    for c in range(sm.dim(q)):
                        var[(q, r, c)] = len(var)
        rows = []
        for q in window:
            if not all(x in window for x in (q + 1, q + d, q + d + 1)):
                continue
            a_n = tn.block(q + d, fld)     # N_(q+d) -> N_(q+d+1)
            a_m = tm.block(q, fld)         # M_q -> M_(q+1)
            for r in range(sn.dim(q + d + 1)):
                for c in range(sm.dim(q)):
                    row = {}
                    for k in range(sn.dim(q + d)):
                        if a_n[r, k]:
                            v = var[(q, k, c)]
                            row[v] = row.get(v, fld.zero) + a_n[r, k]
                    for k in range(sm.dim(q + 1)):
                        if a_m[k, c]:
                            v = var[(q + 1, r, k)]
                            row[v] = row.get(v, fld.zero) - a_m[k, c]
                    if row:
                        rows.append(row)
        if not var:
            dims[d] = 0
            continue
        dense = [[fld.zero] * len(var) for _ in rows]
        for i, row in enumerate(rows):
            for v, x in row.items():
                dense[i][v] = x
        a = Matrix(dense, len(rows), len(var), fld)
        dims[d] = len(var) - (rank(a) if rows else 0)
    return GradedSpace.from_function(interior, lambda d: dims[d])


def object_spread(*modules: AdmissibleModule) -> int:
    """How far generator shifts and torsion lengths reach from degree 0."""
    return max([abs(a.k) + a.m for m in modules for a in m] + [0])


def padded_brute_hom(m: AdmissibleModule, n: AdmissibleModule, window: DegreeWindow,
                     margin: int = 2) -> GradedSpace:
    """:func:`brute_hom` on a window grown by the objects' spread, reported on
    the interior of the original window."""
    pad = object_spread(m, n)
    return brute_hom(m, n, window.grow(pad), margin + pad)


@dataclass
class Verdict:
    ok: bool
    table: Dict[int, tuple]
    mismatches: List[int]
    notes: List[str] = field(default_factory=list)


def compare(symbolic: AdmissibleModule, brute: GradedSpace, window: DegreeWindow,
            margin: int = 2) -> Verdict:
    """Exact per-degree comparison of a symbolic module's shadow with brute-force dims."""
    interior = window.trim(margin)
    expected = shadow(symbolic, window)
    table, bad = {}, []
    for q in interior:
        pair = (expected.dim(q), brute.dim(q))
        table[q] = pair
        if pair[0] != pair[1]:
            bad.append(q)
    notes = []
    if any(a.kind is Kind.TAIL for a in symbolic):
        notes.append("Tail content is shadow-invisible, certified symbolically")
    return Verdict(not bad, table, bad, notes)


@dataclass
class StabilityReport:
    stable: bool
    window: DegreeWindow
    grown: DegreeWindow
    first_unstable: Optional[int]
    base: Dict[int, object]
    enlarged: Dict[int, object]


def _as_table(result, degrees):
    if isinstance(result, GradedSpace):
        return {q: result.dim(q) for q in degrees}
    return {q: result.get(q) for q in degrees}


def stabilization_check(compute: Callable, window: DegreeWindow, growth: int = 4, margin: int = 2,
                        N: Optional[int] = None) -> StabilityReport:
    """Rerun ``compute`` on the window grown by ``growth`` (and at ``N + 1`` if given).

    ``compute(window)`` or ``compute(window, N)`` returns a GradedSpace or a
    dict keyed by degree; the two runs must agree on the margin-trimmed
    interior of the original window.
    """
    interior = window.trim(margin)
    if interior is None:
        raise ValueError(f"window {window} has empty interior at margin {margin}")
    grown = window.grow(growth)
    if N is None:
        base, big = compute(window), compute(grown)
    else:
        base, big = compute(window, N), compute(grown, N + 1)
    degrees = list(interior)
    t0, t1 = _as_table(base, degrees), _as_table(big, degrees)
    first = next((q for q in degrees if t0[q] != t1[q]), None)
    return StabilityReport(first is None, window, grown, first, t0, t1)


__all__ = ["brute_hom", "padded_brute_hom", "object_spread", "compare", "Verdict", "stabilization_check", "StabilityReport"]
