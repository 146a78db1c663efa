"""Bounded complexes of admissible modules.

Sign convention for cones, fixed once here::

    cone(phi)^n = X^(n+1) (+) Y^n,      d = [[-d_X, 0], [phi, d_Y]]

Symbolic cohomology first cancels isomorphism components of the differential
(Gaussian elimination of a complex), then identifies what is left with a small
set of two-term rules plus registered extension rules.  Anything else raises
:class:`CohomologyNotInCalculus`; no isomorphism is ever guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from .atoms import (AdmissibleModule, Atom, AtomMorphism, Kind, ZERO, T, normalize_entry,
                    realize_morphism, shadow, t_action, basis_at)
from .fields import get_field
from .graded import DegreeWindow, GradedMap, GradedSpace, homology_at
from .linalg import Matrix, inconsistency_certificate, solve
from .ratfunc import RatFunc


class NotAChainMap(ValueError):
    pass


class CohomologyNotInCalculus(ValueError):
    pass


@dataclass(frozen=True)
class Gluing:
    """Cohomology at ``degree`` extends summand ``quotient`` by summand ``sub`` via ``symbol``."""

    degree: int
    sub: int
    quotient: int
    symbol: str


@dataclass(frozen=True)
class Connecting:
    """A registered degree-raising class from source summand ``X^degree[source]``
    to target summand ``Y^(degree-1)[target]``; these are derived morphisms with
    no componentwise chain representative in the symbolic layer."""

    degree: int
    source: int
    target: int
    symbol: str


class Complex:
    """Finitely supported cochain complex of admissible modules."""

    def __init__(self, terms: Dict[int, AdmissibleModule], differentials: Dict[int, AtomMorphism] = None,
                 gluings=(), *, check=True):
        self.terms = {n: m for n, m in terms.items() if not m.is_zero()}
        diffs = {}
        for n, d in (differentials or {}).items():
            if not (d.source.identical(self.term(n)) and d.target.identical(self.term(n + 1))):
                raise ValueError(f"differential d^{n} does not match terms {n} -> {n + 1}")
            if not d.is_zero():
                diffs[n] = d
        self.differentials = diffs
        self.gluings = tuple(gluings)
        if check:
            self.check_square_zero()

    @classmethod
    def concentrated(cls, module: AdmissibleModule, degree: int = 0):
        return cls({degree: module})

    def term(self, n) -> AdmissibleModule:
        return self.terms.get(n, ZERO)

    def diff(self, n) -> AtomMorphism:
        d = self.differentials.get(n)
        if d is None:
            return AtomMorphism.zero(self.term(n), self.term(n + 1))
        return d

    def degrees(self):
        if not self.terms:
            return range(0)
        return range(min(self.terms), max(self.terms) + 1)

    def is_zero(self):
        return not self.terms

    def check_square_zero(self):
        for n in self.degrees():
            if n in self.differentials and n + 1 in self.differentials:
                if not (self.diff(n + 1) @ self.diff(n)).is_zero():
                    raise ValueError(f"d^{n + 1} o d^{n} != 0")

    def __repr__(self):
        parts = [f"{n}: {self.term(n)}" for n in self.degrees()]
        return f"Complex({'; '.join(parts)})"


class ChainMap:
    def __init__(self, source: Complex, target: Complex, components: Dict[int, AtomMorphism] = None,
                 connecting=(), *, check=True):
        self.source = source
        self.target = target
        comps = {}
        for n, f in (components or {}).items():
            if not (f.source.identical(source.term(n)) and f.target.identical(target.term(n))):
                raise ValueError(f"component {n} has the wrong source/target")
            if not f.is_zero():
                comps[n] = f
        self.components = comps
        self.connecting = tuple(connecting)
        if check:
            self.check()

    def component(self, n) -> AtomMorphism:
        f = self.components.get(n)
        if f is None:
            return AtomMorphism.zero(self.source.term(n), self.target.term(n))
        return f

    def degrees(self):
        ds = list(self.source.degrees()) + list(self.target.degrees())
        return range(min(ds), max(ds) + 1) if ds else range(0)

    def check(self):
        for n in self.degrees():
            lhs = self.target.diff(n) @ self.component(n)
            rhs = self.component(n + 1) @ self.source.diff(n)
            if lhs != rhs:
                raise NotAChainMap(f"square at degree {n} does not commute")

    @classmethod
    def identity(cls, x: Complex):
        return cls(x, x, {n: AtomMorphism.identity(x.term(n)) for n in x.terms})

    @classmethod
    def zero(cls, x: Complex, y: Complex):
        return cls(x, y, {})


def _block(rows_mod, cols_mod, parts):
    """Assemble a block morphism from ``{(row_block, col_block): AtomMorphism}``."""
    zero = RatFunc.zero()
    n_rows = sum(len(m) for m in rows_mod)
    n_cols = sum(len(m) for m in cols_mod)
    entries = [[zero] * n_cols for _ in range(n_rows)]
    row_off = list(itertools.accumulate([0] + [len(m) for m in rows_mod]))
    col_off = list(itertools.accumulate([0] + [len(m) for m in cols_mod]))
    for (bi, bj), f in parts.items():
        for i, j, x in f.nonzero():
            entries[row_off[bi] + i][col_off[bj] + j] = x
    src = AdmissibleModule(itertools.chain.from_iterable(m.atoms for m in cols_mod))
    tgt = AdmissibleModule(itertools.chain.from_iterable(m.atoms for m in rows_mod))
    return AtomMorphism(src, tgt, entries, check=False)


def cone(phi: ChainMap) -> Complex:
    """Mapping cone with differential ``[[-d_X, 0], [phi, d_Y]]``."""
    x, y = phi.source, phi.target
    degs = set(n - 1 for n in x.terms) | set(y.terms)
    terms, diffs = {}, {}
    for n in degs | {n + 1 for n in degs}:
        terms[n] = x.term(n + 1) + y.term(n)
    for n in degs:
        rows = [x.term(n + 2), y.term(n + 1)]
        cols = [x.term(n + 1), y.term(n)]
        diffs[n] = _block(rows, cols, {(0, 0): -x.diff(n + 1), (1, 0): phi.component(n + 1),
                                       (1, 1): y.diff(n)})
    gluings = []
    for g in x.gluings:
        gluings.append(Gluing(g.degree - 1, g.sub, g.quotient, g.symbol))
    for g in y.gluings:
        off = len(x.term(g.degree + 1))
        gluings.append(Gluing(g.degree, off + g.sub, off + g.quotient, g.symbol))
    for c in phi.connecting:
        # X^n sits in cone degree n-1 next to Y^(n-1)
        off = len(x.term(c.degree))
        gluings.append(Gluing(c.degree - 1, off + c.target, c.source, c.symbol))
    return Complex(terms, diffs, gluings)


def shift(x: Complex, s: int) -> Complex:
    """``X[s]``: terms move down by ``s``, differentials pick up ``(-1)^s``."""
    sign = -1 if s % 2 else 1
    terms = {n - s: m for n, m in x.terms.items()}
    diffs = {n - s: (d if sign == 1 else -d) for n, d in x.differentials.items()}
    gl = [Gluing(g.degree - s, g.sub, g.quotient, g.symbol) for g in x.gluings]
    return Complex(terms, diffs, gl, check=False)


def shift_map(phi: ChainMap, s: int) -> ChainMap:
    """``phi[s]``; components are reindexed without a sign."""
    comps = {n - s: f for n, f in phi.components.items()}
    conn = [Connecting(c.degree - s, c.source, c.target, c.symbol) for c in phi.connecting]
    return ChainMap(shift(phi.source, s), shift(phi.target, s), comps, conn)


# -- extension rules ---------------------------------------------------------------

@dataclass
class ExtensionRule:
    symbol: str
    sub_kind: Kind
    quotient_kind: Kind
    result_kind: Kind
    certify: Callable[[], bool]
    _verdicts: dict = field(default_factory=dict)

    def certified(self):
        # one verdict per coefficient field
        key = get_field()
        if key not in self._verdicts:
            self._verdicts[key] = bool(self.certify())
        return self._verdicts[key]


EXTENSION_RULES: Dict[str, ExtensionRule] = {}


def register_extension_rule(symbol, sub_kind, quotient_kind, result_kind, certify):
    """Register ``0 -> sub -> result -> quotient -> 0`` for classes named ``symbol``.

    The rule fires only when ``certify()`` returns True (evaluated once per field).
    """
    EXTENSION_RULES[symbol] = ExtensionRule(symbol, sub_kind, quotient_kind, result_kind, certify)


# -- symbolic cohomology -------------------------------------------------------------

class _Reduction:
    """Mutable copy of a complex keyed by stable summand ids."""

    def __init__(self, x: Complex):
        self.atoms = {}             # id -> Atom
        self.degree_of = {}         # id -> n
        self.ids = {}               # n -> [ids]
        self.d = {}                 # (tgt_id, src_id) -> RatFunc, nonzero only
        counter = itertools.count()
        index = {}
        for n in x.degrees():
            self.ids[n] = []
            for i, a in enumerate(x.term(n)):
                k = next(counter)
                self.atoms[k] = a
                self.degree_of[k] = n
                self.ids[n].append(k)
                index[(n, i)] = k
        for n, dn in x.differentials.items():
            for i, j, r in dn.nonzero():
                self.d[(index[(n + 1, i)], index[(n, j)])] = r
        self.glued = {}
        for g in x.gluings:
            sub, quo = index[(g.degree, g.sub)], index[(g.degree, g.quotient)]
            self.glued[sub] = (g, sub, quo)
            self.glued[quo] = (g, sub, quo)

    def outgoing(self, k):
        return {t: r for (t, s), r in self.d.items() if s == k}

    def incoming(self, k):
        return {s: r for (t, s), r in self.d.items() if t == k}

    def remove(self, k):
        del self.atoms[k]
        self.ids[self.degree_of[k]].remove(k)
        self.d = {key: r for key, r in self.d.items() if k not in key}

    def cancel_once(self):
        for (tgt, src), r in list(self.d.items()):
            if tgt in self.glued or src in self.glued:
                continue
            a, b = self.atoms[src], self.atoms[tgt]
            if a.kind is not b.kind or (a.kind is Kind.TORSION and a.m != b.m):
                continue
            if not r.is_unit_in(a.kind.value):
                continue
            inv = r.inverse()
            ins = self.incoming(tgt)   # from degree n into tgt (includes src)
            outs = self.outgoing(src)  # from src into degree n+1 (includes tgt)
            for y, ry in ins.items():
                if y == src:
                    continue
                for x_, rx in outs.items():
                    if x_ == tgt:
                        continue
                    val = self.d.get((x_, y), RatFunc.zero()) - rx * inv * ry
                    val = normalize_entry(self.atoms[x_], val)
                    if val.is_zero():
                        self.d.pop((x_, y), None)
                    else:
                        self.d[(x_, y)] = val
            self.remove(src)
            self.remove(tgt)
            return True
        return False


def _two_term(a: Atom, b: Atom, r: RatFunc):
    """(kernel, cokernel) of a single nonzero entry ``a -> b``, or None if outside the rules."""
    mono = r.as_monomial()
    if mono is None:
        return None
    _, j = mono
    if a.kind in (Kind.FREE, Kind.POWER_SERIES) and b.kind is a.kind and j > 0:
        return ZERO, AdmissibleModule.of(T(j, b.k))
    if a.kind in (Kind.FREE, Kind.POWER_SERIES) and b.kind is Kind.TORSION and 0 <= j < b.m:
        ker = AdmissibleModule.of(a.__class__(a.kind, a.k + b.m - j))
        coker = AdmissibleModule.of(T(j, b.k)) if j > 0 else ZERO
        return ker, coker
    if a.kind is Kind.TORSION and b.kind is Kind.TORSION and j >= 0:
        cut = max(0, b.m - j)
        ker = AdmissibleModule.of(T(a.m - cut, a.k + cut)) if a.m > cut else ZERO
        cj = min(j, b.m)
        coker = AdmissibleModule.of(T(cj, b.k)) if cj > 0 else ZERO
        return ker, coker
    return None


def cohomology(x: Complex) -> Dict[int, AdmissibleModule]:
    """Symbolic cohomology, degree by degree (zero degrees included)."""
    red = _Reduction(x)
    while red.cancel_once():
        pass
    out = {n: [] for n in x.degrees()}
    handled = set()
    for (tgt, src), r in red.d.items():
        if tgt in handled or src in handled:
            raise CohomologyNotInCalculus(
                f"cohomology not in calculus: summand {red.atoms[src]} or {red.atoms[tgt]} "
                f"meets more than one differential entry")
        if len(red.outgoing(src)) != 1 or len(red.incoming(tgt)) != 1 \
                or red.incoming(src) or red.outgoing(tgt):
            raise CohomologyNotInCalculus(
                f"cohomology not in calculus: unresolved zig-zag through {red.atoms[src]} -> {red.atoms[tgt]}")
        if src in red.glued or tgt in red.glued:
            raise CohomologyNotInCalculus(
                f"cohomology not in calculus: glued summand {red.atoms[src]} meets a differential")
        res = _two_term(red.atoms[src], red.atoms[tgt], r)
        if res is None:
            raise CohomologyNotInCalculus(
                f"cohomology not in calculus: subquotient of {red.atoms[src]} -({r})-> {red.atoms[tgt]}")
        ker, coker = res
        n = red.degree_of[src]
        out[n].extend(ker)
        out.setdefault(n + 1, []).extend(coker)
        handled.update((src, tgt))
    seen_gluings = set()
    for n, ids in red.ids.items():
        for k in ids:
            if k in handled:
                continue
            if k in red.glued:
                g, sub, quo = red.glued[k]
                if (sub, quo) in seen_gluings:
                    continue
                seen_gluings.add((sub, quo))
                if sub not in red.atoms or quo not in red.atoms:
                    raise CohomologyNotInCalculus("cohomology not in calculus: glued summand was cancelled")
                out[n].append(_apply_extension(g.symbol, red.atoms[sub], red.atoms[quo]))
                continue
            out[n].append(red.atoms[k])
    return {n: AdmissibleModule(v).canonical() for n, v in sorted(out.items())}


def _apply_extension(symbol, sub: Atom, quo: Atom) -> Atom:
    rule = EXTENSION_RULES.get(symbol)
    if rule is None:
        raise CohomologyNotInCalculus(f"cohomology not in calculus: no rule for extension class {symbol!r}")
    if sub.kind is not rule.sub_kind or quo.kind is not rule.quotient_kind or sub.k != quo.k:
        raise CohomologyNotInCalculus(
            f"cohomology not in calculus: rule {symbol!r} does not apply to {quo} by {sub}")
    if not rule.certified():
        raise CohomologyNotInCalculus(
            f"cohomology not in calculus: extension {symbol!r} lacks its nontriviality certificate")
    return Atom(rule.result_kind, sub.k)


# -- Hom complexes out of free complexes ------------------------------------------------

def _hom_index(p: Complex, y: Complex, n: int):
    """Summands of Hom^n(P, Y) as ``(i, p_index, y_index)`` plus the atom list."""
    idx, atoms = [], []
    for i in p.degrees():
        for pi, pa in enumerate(p.term(i)):
            if pa.kind is not Kind.FREE:
                raise ValueError(f"hom_complex needs a complex of free atoms, got {pa}")
            for yi, ya in enumerate(y.term(i + n)):
                idx.append((i, pi, yi))
                atoms.append(ya.shifted(-pa.k))
    return idx, AdmissibleModule(atoms)


def hom_complex(p: Complex, y: Complex) -> Complex:
    """Total Hom complex ``Hom(P, Y)`` with ``D f = d_Y f - (-1)^n f d_P``."""
    if p.is_zero() or y.is_zero():
        return Complex({})
    lo = min(y.degrees()) - max(p.degrees())
    hi = max(y.degrees()) - min(p.degrees())
    index = {n: _hom_index(p, y, n) for n in range(lo, hi + 2)}
    terms = {n: index[n][1] for n in range(lo, hi + 1)}
    diffs = {}
    zero = RatFunc.zero()
    for n in range(lo, hi + 1):
        src_idx, src_mod = index[n]
        tgt_idx, tgt_mod = index[n + 1]
        pos = {key: r for r, key in enumerate(tgt_idx)}
        entries = [[zero] * len(src_idx) for _ in tgt_idx]
        sign = -1 if n % 2 else 1
        for c, (i, pi, yi) in enumerate(src_idx):
            # post-composition: d_Y^(i+n) moves the Y index, same P summand
            for yt, ys, r in y.diff(i + n).nonzero():
                if ys == yi:
                    row = pos[(i, pi, yt)]
                    entries[row][c] = entries[row][c] + r
            # pre-composition with d_P^(i-1): f on P^i gives a component on P^(i-1)
            for pt, ps, r in p.diff(i - 1).nonzero():
                if pt == pi:
                    row = pos[(i - 1, ps, yi)]
                    entries[row][c] = entries[row][c] - sign * r
        diffs[n] = AtomMorphism(src_mod, tgt_mod, entries, check=False)
    gluings = []
    for g in y.gluings:
        for i in p.degrees():
            n = g.degree - i
            if n not in index:
                continue
            idx = index[n][0]
            pos = {key: r for r, key in enumerate(idx)}
            for pi in range(len(p.term(i))):
                gluings.append(Gluing(n, pos[(i, pi, g.sub)], pos[(i, pi, g.quotient)], g.symbol))
    return Complex(terms, diffs, gluings)


def hom_chain_map(alpha: ChainMap, beta: ChainMap, p_source: Complex = None) -> ChainMap:
    """``f -> beta o f o alpha`` from ``Hom(P, Y)`` to ``Hom(P', Y')``.

    ``alpha: P' -> P`` and ``beta: Y -> Y'`` are chain maps of degree 0.
    """
    p_prime, p = alpha.source, alpha.target
    y, y_prime = beta.source, beta.target
    src = hom_complex(p, y)
    tgt = hom_complex(p_prime, y_prime)
    zero = RatFunc.zero()
    comps = {}
    for n in set(src.degrees()) | set(tgt.degrees()):
        s_idx, s_mod = _hom_index(p, y, n)
        t_idx, t_mod = _hom_index(p_prime, y_prime, n)
        if not s_idx or not t_idx:
            continue
        pos = {key: r for r, key in enumerate(t_idx)}
        entries = [[zero] * len(s_idx) for _ in t_idx]
        for c, (i, pi, yi) in enumerate(s_idx):
            a_i = alpha.component(i)
            b_i = beta.component(i + n)
            for pt, pp, ra in a_i.nonzero():
                if pt != pi:
                    continue
                for yt, ys, rb in b_i.nonzero():
                    if ys != yi:
                        continue
                    row = pos[(i, pp, yt)]
                    entries[row][c] = entries[row][c] + ra * rb
        comps[n] = AtomMorphism(s_mod, t_mod, entries, check=False)
    return ChainMap(src, tgt, comps)


# -- realization ---------------------------------------------------------------------

@dataclass
class RealizedComplex:
    window: DegreeWindow
    spaces: Dict[int, GradedSpace]
    differentials: Dict[int, GradedMap]
    t_actions: Dict[int, GradedMap]

    def degrees(self):
        return sorted(self.spaces)


def realize_complex(x: Complex, window: DegreeWindow) -> RealizedComplex:
    spaces, diffs, acts = {}, {}, {}
    degs = list(x.degrees())
    for n in range(degs[0] - 1, degs[-1] + 2) if degs else []:
        spaces[n] = shadow(x.term(n), window)
        acts[n] = t_action(x.term(n), window)
    for n in list(spaces)[:-1]:
        d = x.diff(n)
        deg = d.homogeneous_degree()
        if deg is None or deg != 0:
            raise ValueError(f"differential d^{n} is not homogeneous of degree 0")
        diffs[n] = realize_morphism(d, window, 0)
    return RealizedComplex(window, spaces, diffs, acts)


def shadow_cohomology(x: Complex, window: DegreeWindow) -> Dict[int, GradedSpace]:
    """Per-degree homology dimensions of the window shadow (oracle side)."""
    if x.is_zero():
        return {}
    rc = realize_complex(x, window)
    out = {}
    for n in x.degrees():
        out[n] = homology_at(rc.differentials[n - 1], rc.differentials[n]).space
    return out


def shadow_euler(x: Complex, window: DegreeWindow) -> GradedSpace:
    """Degreewise Euler characteristic sum_n (-1)^n dim H^n; may be negative, so a dict."""
    coh = shadow_cohomology(x, window)
    return {q: sum((-1) ** n * h.dim(q) for n, h in coh.items()) for q in window}


def realize_chain_map(phi: ChainMap, window: DegreeWindow) -> Dict[int, GradedMap]:
    out = {}
    for n in phi.degrees():
        f = phi.component(n)
        deg = f.homogeneous_degree()
        if deg is None or deg != 0:
            raise ValueError(f"chain map component {n} is not homogeneous of degree 0")
        out[n] = realize_morphism(f, window, 0)
    return out


# -- null-homotopy obstruction ----------------------------------------------------------

@dataclass(frozen=True)
class Probe:
    """A non-homogeneous element ``rho`` of ``X^degree`` known through a relation

        multiplier * rho = known + d_X(g)

    where ``known`` is a finite sum of homogeneous basis elements, given as
    ``(summand, exponent, coefficient)`` meaning ``coefficient * t^exponent * e``,
    and ``boundary_image`` is ``phi(g)`` per target summand of ``Y^(degree-1)``.
    Any K[t]-linear homotopy ``h`` then satisfies
    ``multiplier * h(rho) = h(known) + phi(g)`` (requires ``Y^(degree-2) = 0``).
    """

    degree: int
    multiplier: RatFunc
    known: Tuple[Tuple[int, int, object], ...]
    boundary_image: Dict[int, RatFunc]


@dataclass
class HomotopyResult:
    obstructed: bool
    window: DegreeWindow
    interior: DegreeWindow
    unknowns: int
    equations: int
    witness: Optional[dict] = None
    certificate: Optional[tuple] = None


class WindowTooSmall(ValueError):
    pass


def null_homotopy_obstruction(phi: ChainMap, window: DegreeWindow, margin: int = 2,
                              probes=()) -> HomotopyResult:
    """Solve ``phi = d_Y h + h d_X`` (h K[t]-linear, degree 0) on the window interior.

    Returns a witness homotopy, or an inconsistency certificate ``y`` with
    ``y A = 0`` and ``y b != 0`` for the assembled linear system ``A h = b``.
    """
    interior = window.trim(margin)
    if interior is None:
        raise WindowTooSmall(f"window {window} has empty interior at margin {margin}")
    field = get_field()
    x, y = phi.source, phi.target
    rx = realize_complex(x, window) if not x.is_zero() else None
    ry = realize_complex(y, window) if not y.is_zero() else None
    rphi = realize_chain_map(phi, window)

    def xdim(n, q):
        return rx.spaces[n].dim(q) if rx and n in rx.spaces else 0

    def ydim(n, q):
        return ry.spaces[n].dim(q) if ry and n in ry.spaces else 0

    degs = sorted(set(phi.degrees()) | {n + 1 for n in phi.degrees()})
    # unknowns: h^n_q blocks, Y^(n-1)_q x X^n_q, for q in the window
    var = {}
    for n in degs:
        for q in window:
            for r in range(ydim(n - 1, q)):
                for c in range(xdim(n, q)):
                    var[("h", n, q, r, c)] = len(var)
    probe_vars = []
    for pi, pr in enumerate(probes):
        for i, atom in enumerate(y.term(pr.degree - 1)):
            for q in window:
                if atom.support(q):
                    var[("y", pi, i, q)] = len(var)
        probe_vars.append(pi)

    rows, rhs = [], []

    def add(coeffs: dict, b):
        rows.append(coeffs)
        rhs.append(field(b))

    def hblock(n, q, r, c):
        return var.get(("h", n, q, r, c))

    def mat(gm: Optional[GradedMap], q, nr, nc):
        if gm is None:
            return Matrix.zero(nr, nc, field)
        return gm.block(q, field) if q in gm.source.window else Matrix.zero(nr, nc, field)

    for n in degs:
        for q in interior:
            nx, nyp = xdim(n, q), ydim(n, q)
            if not nx or not nyp:
                continue
            dy = mat(ry.differentials.get(n - 1) if ry else None, q, nyp, ydim(n - 1, q))
            dx = mat(rx.differentials.get(n) if rx else None, q, xdim(n + 1, q), nx)
            ph = rphi[n].block(q, field) if n in rphi else Matrix.zero(nyp, nx, field)
            for r in range(nyp):
                for c in range(nx):
                    coeffs = {}
                    for k in range(ydim(n - 1, q)):
                        a = dy[r, k]
                        if a:
                            v = hblock(n, q, k, c)
                            coeffs[v] = coeffs.get(v, field.zero) + a
                    for k in range(xdim(n + 1, q)):
                        a = dx[k, c]
                        if a:
                            v = hblock(n + 1, q, r, k)
                            coeffs[v] = coeffs.get(v, field.zero) + a
                    add(coeffs, ph[r, c])
        # K[t]-linearity: t_Y h_q = h_(q+1) t_X
        for q in interior:
            if q + 1 not in interior:
                continue
            ty = ry.t_actions[n - 1].block(q, field) if ry and (n - 1) in ry.t_actions else None
            tx = rx.t_actions[n].block(q, field) if rx and n in rx.t_actions else None
            nr1, nc0 = ydim(n - 1, q + 1), xdim(n, q)
            for r in range(nr1):
                for c in range(nc0):
                    coeffs = {}
                    for k in range(ydim(n - 1, q)):
                        a = ty[r, k] if ty is not None else 0
                        if a:
                            v = hblock(n, q, k, c)
                            coeffs[v] = coeffs.get(v, field.zero) + a
                    for k in range(xdim(n, q + 1)):
                        a = tx[k, c] if tx is not None else 0
                        if a:
                            v = hblock(n, q + 1, r, k)
                            coeffs[v] = coeffs.get(v, field.zero) - a
                    if coeffs:
                        add(coeffs, 0)

    for pi, pr in enumerate(probes):
        ymod = y.term(pr.degree - 1)
        if not y.term(pr.degree - 2).is_zero():
            raise ValueError("probe relations need Y^(degree-2) = 0")
        deg_p = pr.multiplier.num.degree
        # h(known), per target summand and degree
        known_img = {}
        for (j, e, coeff) in pr.known:
            q = e + x.term(pr.degree)[j].k
            if q not in window:
                raise WindowTooSmall(f"probe term at degree {q} outside window {window}")
            col = basis_at(x.term(pr.degree), q).index(j)
            for r_pos, i in enumerate(basis_at(ymod, q)):
                v = hblock(pr.degree, q, r_pos, col)
                known_img.setdefault((i, q), {})
                known_img[(i, q)][v] = known_img[(i, q)].get(v, field.zero) + field(coeff)
        for i, atom in enumerate(ymod):
            for q in range(window.lo, window.hi + deg_p + 1):
                coeffs = {}
                for e in range(deg_p + 1):
                    c = pr.multiplier.num.coeff(e)
                    v = var.get(("y", pi, i, q - e))
                    if c and v is not None:
                        coeffs[v] = coeffs.get(v, field.zero) + c
                for v, c in known_img.get((i, q), {}).items():
                    coeffs[v] = coeffs.get(v, field.zero) - c
                b = pr.boundary_image.get(i, RatFunc.zero()).laurent_coeff(q - atom.k) \
                    if pr.boundary_image.get(i) else field.zero
                if coeffs or b:
                    add(coeffs, b)

    nvars = len(var)
    dense = [[field.zero] * nvars for _ in rows]
    for r, coeffs in enumerate(rows):
        for v, c in coeffs.items():
            dense[r][v] = dense[r][v] + c
    a = Matrix(dense, len(rows), nvars, field)
    sol = solve(a, rhs) if rows else tuple(field.zero for _ in range(nvars))
    if sol is not None:
        names = {v: k for k, v in var.items()}
        witness = {names[v]: val for v, val in enumerate(sol) if val}
        return HomotopyResult(False, window, interior, nvars, len(rows), witness=witness)
    cert = inconsistency_certificate(a, rhs)
    # re-check the certificate directly: y A = 0 and y b != 0
    ya = a.transpose().apply(cert)
    yb = sum((y * b for y, b in zip(cert, rhs)), field.zero)
    if any(ya) or not yb:
        raise AssertionError("inconsistency certificate failed verification")
    return HomotopyResult(True, window, interior, nvars, len(rows), certificate=cert)


__all__ = [
    "Complex", "ChainMap", "Gluing", "Connecting", "cone", "shift", "shift_map", "cohomology",
    "CohomologyNotInCalculus", "NotAChainMap", "register_extension_rule", "EXTENSION_RULES",
    "hom_complex", "hom_chain_map", "realize_complex", "shadow_cohomology", "shadow_euler",
    "realize_chain_map", "Probe", "HomotopyResult", "null_homotopy_obstruction", "WindowTooSmall",
]
