"""The explicit free resolution of K[t, 1/t] and its dual.

Index-truncated at ``N``, the resolution

    0 -> (+)_{-N<=n<=-1} F(n+1) r_n  ->  (+)_{-N<=n<=0} F(n) s_n,     r_n -> t s_n - s_{n+1}

resolves ``t^(-N) K[t]``, the N-th stage of ``K[t, 1/t] = colim t^(-n) K[t]``.
Every finite stage has vanishing Ext^1 into ``K[t]``; the ``K[[t]]/K[t]``
of the full Ext^1 appears only in the limit over N (see :mod:`rabcone.rhom`).
Both views are exposed: :func:`stage_dual` is the honest ``Hom(R_N, F(0))``,
while :func:`dualize` keeps only the dual generators whose images are complete
at stage N, which is the window on which the limit is already visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .atoms import AdmissibleModule, AtomMorphism, F, L, PS, basis_at, realize_morphism, shadow
from .complexes import ChainMap, Complex, Probe
from .fields import get_field
from .graded import DegreeWindow
from .linalg import Matrix, rank
from .ratfunc import RatFunc


@dataclass(frozen=True)
class TruncatedResolution:
    """Generators ``s_n`` (-N <= n <= 0) in degree n, ``r_n`` (-N <= n <= -1) in degree n+1.

    ``degree_cap`` bounds the polynomial degree used by default realizations.
    """

    N: int
    degree_cap: int
    complex: Complex
    s_index: Dict[int, int]
    r_index: Dict[int, int]

    @property
    def map(self) -> AtomMorphism:
        return self.complex.diff(-1)


def build_resolution(N: int, degree_cap: int = None, shift: int = 0) -> TruncatedResolution:
    """The stage-N resolution, optionally with every generator shifted by ``shift``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    degree_cap = degree_cap if degree_cap is not None else N
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    s_ns = list(range(-N, 1))
    r_ns = list(range(-N, 0))
    s_mod = AdmissibleModule(F(n + shift) for n in s_ns)
    r_mod = AdmissibleModule(F(n + 1 + shift) for n in r_ns)
    s_index = {n: i for i, n in enumerate(s_ns)}
    r_index = {n: i for i, n in enumerate(r_ns)}
    entries = {}
    for n in r_ns:
        entries[(s_index[n], r_index[n])] = RatFunc.t()
        entries[(s_index[n + 1], r_index[n])] = RatFunc.const(-1)
    d = AtomMorphism.from_dict(r_mod, s_mod, entries)
    cx = Complex({-1: r_mod, 0: s_mod}, {-1: d})
    return TruncatedResolution(N, degree_cap, cx, s_index, r_index)


def augmentation(res: TruncatedResolution, shift: int = 0) -> AtomMorphism:
    """``s_n -> t^n e`` into ``L(shift)``."""
    s_mod = res.complex.term(0)
    tgt = AdmissibleModule.of(L(shift))
    return AtomMorphism.from_dict(s_mod, tgt, {(0, i): RatFunc.monomial(1, n)
                                               for n, i in res.s_index.items()})


@dataclass(frozen=True)
class DualComplex:
    """A dual two-term complex ``s^* -> r^*`` with generator bookkeeping."""

    complex: Complex
    N: int
    s_index: Dict[int, int]
    r_index: Dict[int, int]

    @property
    def map(self) -> AtomMorphism:
        return self.complex.diff(0)


def _dual(res: TruncatedResolution, s_range, corrupt: Optional[int] = None) -> DualComplex:
    r_ns = sorted(res.r_index)
    s_ns = list(s_range)
    s_mod = AdmissibleModule(F(-n) for n in s_ns)
    r_mod = AdmissibleModule(F(-n - 1) for n in r_ns)
    s_index = {n: i for i, n in enumerate(s_ns)}
    r_index = {n: i for i, n in enumerate(r_ns)}
    entries = {}
    for n in s_ns:
        # s_n* o d picks the coefficient of s_n in d(r_m): t at m = n, -1 at m = n-1
        if n in r_index:
            entries[(r_index[n], s_index[n])] = RatFunc.t()
        if n - 1 in r_index and n != corrupt:
            entries[(r_index[n - 1], s_index[n])] = RatFunc.const(-1)
    d = AtomMorphism.from_dict(s_mod, r_mod, entries)
    return DualComplex(Complex({0: s_mod, 1: r_mod}, {0: d}), res.N, s_index, r_index)


def dualize(res: TruncatedResolution, corrupt: Optional[int] = None) -> DualComplex:
    """Dual generators ``s_n*`` for -N < n <= 0 and ``r_n*`` for -N <= n <= -1.

    ``s_n*`` sits in ``F(-n)`` and ``r_n*`` in ``F(-n-1)``, with
    ``s_n* -> t r_n* - r_(n-1)*`` and ``s_0* -> -r_(-1)*``.  ``s_(-N)*`` is left
    out: its image would need the absent ``r_(-N-1)*``.  The degree-d matrix is
    square of size ``min(d+1, N)``.

    ``corrupt=n`` drops the unit entry of ``s_n*`` (negative control).
    """
    return _dual(res, range(-res.N + 1, 1), corrupt)


def stage_dual(res: TruncatedResolution) -> DualComplex:
    """``Hom(R_N, F(0))`` including ``s_(-N)*``: H^0 = F(N), H^1 = 0."""
    return _dual(res, range(-res.N, 1))


def sigma_map(dual: DualComplex) -> AtomMorphism:
    """``r_n* -> t^(-n-1)`` into the power-series atom ``PS(0)``."""
    r_mod = dual.complex.term(1)
    tgt = AdmissibleModule.of(PS(0))
    return AtomMorphism.from_dict(r_mod, tgt, {(0, i): RatFunc.monomial(1, -n - 1)
                                               for n, i in dual.r_index.items()})


@dataclass
class DegreeCheck:
    degree: int
    dims: Dict[str, int]
    injective: bool
    exact_middle: bool
    sigma_onto: bool
    composite_zero: bool

    @property
    def ok(self):
        return self.injective and self.exact_middle and self.sigma_onto and self.composite_zero


@dataclass
class ExactnessReport:
    N: int
    window: DegreeWindow
    interior: DegreeWindow
    degrees: List[DegreeCheck]
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_exact(res: TruncatedResolution, window: DegreeWindow, margin: int = 2,
                 corrupt: Optional[int] = None) -> ExactnessReport:
    """Per-degree oracle check of the dual sequence ending in the power-series shadow.

    (a) ``s* -> r*`` is injective; (b) on the subcomplex without ``s_0*``, the
    image of the dual map is the kernel of Sigma; (c) Sigma is onto the
    ``PS(0)`` shadow.  ``Sigma o d`` vanishing on ``s_n*`` (n <= -1) is checked
    as well.
    """
    interior = window.trim(margin)
    if interior is None:
        raise ValueError(f"window {window} has empty interior at margin {margin}")
    fld = get_field()
    dual = dualize(res, corrupt)
    d = dual.map
    sigma = sigma_map(dual)
    dmap = realize_morphism(d, window)
    smap = realize_morphism(sigma, window)
    s_mod = d.source
    rest_cols = [i for n, i in dual.s_index.items() if n <= -1]
    checks, failures = [], []
    for q in interior:
        dq = dmap.block(q, fld)
        sq = smap.block(q, fld)
        s_basis = basis_at(s_mod, q)
        rest = [c for c, i in enumerate(s_basis) if i in rest_cols]
        d_rest = Matrix.from_columns([dq.column(c) for c in rest], dq.nrows, fld)
        ns, nr, nps = dq.ncols, dq.nrows, sq.nrows
        rk_d = rank(dq)
        rk_rest = rank(d_rest) if rest else 0
        rk_s = rank(sq) if nr else 0
        composite_zero = (sq @ d_rest).is_zero() if rest and nr else True
        check = DegreeCheck(
            q, {"s*": ns, "r*": nr, "PS": nps, "rank_d": rk_d, "rank_sigma": rk_s},
            injective=rk_d == ns,
            exact_middle=composite_zero and rk_rest == nr - rk_s,
            sigma_onto=rk_s == nps,
            composite_zero=composite_zero,
        )
        checks.append(check)
        if not check.injective:
            failures.append(f"degree {q}: dual map not injective (rank {rk_d} < {ns})")
        if not check.composite_zero:
            failures.append(f"degree {q}: Sigma o d != 0 on s_n*, n <= -1")
        elif not check.exact_middle:
            failures.append(f"degree {q}: image {rk_rest} != ker Sigma {nr - rk_s}")
        if not check.sigma_onto:
            failures.append(f"degree {q}: Sigma not onto PS shadow (rank {rk_s} < {nps})")
    return ExactnessReport(res.N, window, interior, checks, failures)


def first_map_injective(res: TruncatedResolution, window: DegreeWindow) -> bool:
    """The resolution's own first map ``r -> s`` is injective in every degree of ``window``."""
    fld = get_field()
    m = realize_morphism(res.map, window)
    return all(rank(m.block(q, fld)) == shadow(res.map.source, window).dim(q) for q in window)


# -- chain-level resolutions used by the Hom models ------------------------------------

@dataclass(frozen=True)
class Resolved:
    """A free complex ``P`` with a quasi-isomorphism (at stage N) onto an atom."""

    complex: Complex
    augmentation: AtomMorphism   # P^0 -> the atom
    stage: Optional[int] = None


def resolve(atom, N: int) -> Resolved:
    """Free (or stage-N) resolution of a Free, Torsion or Laurent atom."""
    from .atoms import Kind
    one = RatFunc.one()
    if atom.kind is Kind.FREE:
        mod = AdmissibleModule.of(atom)
        return Resolved(Complex({0: mod}), AtomMorphism.identity(mod))
    if atom.kind is Kind.TORSION:
        top = AdmissibleModule.of(F(atom.k + atom.m))
        bot = AdmissibleModule.of(F(atom.k))
        d = AtomMorphism(top, bot, [[RatFunc.monomial(1, atom.m)]])
        aug = AtomMorphism(bot, AdmissibleModule.of(atom), [[one]])
        return Resolved(Complex({-1: top, 0: bot}, {-1: d}), aug)
    if atom.kind is Kind.LAURENT:
        res = build_resolution(N, shift=atom.k)
        return Resolved(res.complex, augmentation(res, atom.k), N)
    raise ValueError(f"no resolution model for {atom}")


def unit_lift(atom, N: int) -> ChainMap:
    """Lift of the unit ``F(a) -> L(a)`` to ``P_F(a) -> P_L(a)``: ``e_a -> s_0``.

    Torsion atoms localize to zero, so their lift is the zero map.
    """
    from .atoms import Kind
    src = resolve(atom, N).complex
    if atom.kind is Kind.TORSION:
        return ChainMap(src, Complex({}), {})
    if atom.kind is not Kind.FREE:
        raise ValueError(f"unit lift needs a Free or Torsion atom, got {atom}")
    res = build_resolution(N, shift=atom.k)
    tgt = res.complex
    comp = AtomMorphism.from_dict(src.term(0), tgt.term(0), {(res.s_index[0], 0): 1})
    return ChainMap(src, tgt, {0: comp})


def extension_probe(dual: DualComplex, exponent: int) -> Probe:
    """The relation ``(1 - t) rho = r_(-1)* - d(sum_(n<=-1) s_n*)`` times ``t^exponent``.

    ``rho = sum_(n<=-1) t^exponent r_n*`` lives only in the product, never in a
    finite window; the relation pins ``h(rho)`` for any K[t]-linear homotopy.
    """
    return Probe(degree=1, multiplier=RatFunc.one() - RatFunc.t(),
                 known=((dual.r_index[-1], exponent, 1),), boundary_image={})


def check_probe_relation(dual: DualComplex, window: DegreeWindow, exponent: int = 0) -> bool:
    """Verify the probe relation on the truncated model in every degree below the cut.

    Writes ``rho`` and ``sigma = sum s_n*`` as finite truncations; the only
    residual is ``t^(exponent+1) r_(-N)*`` at degree ``N + exponent``.
    """
    fld = get_field()
    d = dual.map
    s_mod, r_mod = d.source, d.target
    cut = dual.N + exponent
    for q in window:
        if q >= cut:
            continue
        # coordinates in r*_q of (1-t) rho - r_(-1)* t^e + d(sigma t^e), indexed by summand
        vec = {}
        for n, i in dual.r_index.items():
            k = r_mod[i].k
            # t^e r_n* at degree e + k, and -t^(e+1) r_n* at e + k + 1
            if q == exponent + k:
                vec[i] = vec.get(i, fld.zero) + 1
            if q == exponent + k + 1:
                vec[i] = vec.get(i, fld.zero) - 1
        i1 = dual.r_index[-1]
        if q == exponent + r_mod[i1].k:
            vec[i1] = vec.get(i1, fld.zero) - 1
        for n, j in dual.s_index.items():
            if n > -1:
                continue
            for i, col, r in d.nonzero():
                if col != j:
                    continue
                # d is homogeneous of degree 0: t^e s_n* and its image share a degree
                if q == exponent + s_mod[j].k:
                    vec[i] = vec.get(i, fld.zero) + r.as_monomial()[0]
        if any(vec.values()):
            return False
    return True


__all__ = [
    "TruncatedResolution", "build_resolution", "augmentation", "DualComplex", "dualize",
    "stage_dual", "sigma_map", "verify_exact", "ExactnessReport", "DegreeCheck",
    "first_map_injective", "Resolved", "resolve", "unit_lift", "extension_probe",
    "check_probe_relation",
]
