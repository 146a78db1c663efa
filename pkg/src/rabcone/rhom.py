"""Symbolic derived Hom between atoms.

Maps out of ``K[t, 1/t]`` are computed as derived inverse limits: writing
``K[t, 1/t] = colim t^(-n) K[t]`` gives ``RHom(L, X) = R lim (X, t)``, the
derived limit of the tower ``... -> X -t-> X -t-> X``.  Limits and lim^1 come
from closed-form rules; truncating the tower would be wrong (every finite stage
is Mittag-Leffler and has lim^1 = 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

from .atoms import (AdmissibleModule, Atom, AtomMorphism, Kind, ZERO, Q, T)
from .ratfunc import RatFunc


class UnsupportedRHom(ValueError):
    pass


class TowerOutOfCalculus(ValueError):
    pass


@dataclass(frozen=True)
class Tower:
    """The inverse system ``body <- body <- ...`` with a fixed transition map."""

    body: AdmissibleModule
    transition: AtomMorphism

    def __post_init__(self):
        if not (self.transition.source.identical(self.body) and self.transition.target.identical(self.body)):
            raise ValueError("tower transition must be an endomorphism of the body")
        for a in self.body:
            if a.kind in (Kind.POWER_SERIES, Kind.TAIL):
                raise ValueError(f"tower body atom {a} outside the calculus")

    @classmethod
    def multiplication(cls, body: AdmissibleModule, power: int = 1):
        t = RatFunc.monomial(1, power)
        zero = RatFunc.zero()
        rows = [[t if i == j else zero for j in range(len(body))] for i in range(len(body))]
        return cls(body, AtomMorphism(body, body, rows))


def tower_lim(tower: Tower) -> Tuple[AdmissibleModule, AdmissibleModule]:
    """``(lim, lim^1)`` of a tower with diagonal monomial transition."""
    lim, lim1 = [], []
    for i, atom in enumerate(tower.body):
        for j in range(len(tower.body)):
            if j != i and tower.transition[i, j]:
                raise TowerOutOfCalculus(f"tower out of calculus: off-diagonal entry ({i}, {j})")
        entry = tower.transition[i, i]
        if entry.is_zero():
            continue  # zero transitions: images stabilize at 0, so lim = lim^1 = 0
        mono = entry.as_monomial()
        if mono is None:
            raise TowerOutOfCalculus(
                f"tower out of calculus: transition entry {tower.transition[i, i]} is not c*t^j")
        _, j = mono
        if j == 0 or atom.kind in (Kind.LAURENT, Kind.LAURENT_SERIES):
            lim.append(atom)
        elif j > 0 and atom.kind is Kind.FREE:
            # the t-adic tower (t^k K[t], t): no compatible threads, lim^1 = K[[t]]/K[t]
            lim1.append(Q(atom.k))
        elif j > 0 and atom.kind is Kind.TORSION:
            pass  # nilpotent transitions: eventually zero
        else:
            raise TowerOutOfCalculus(f"tower out of calculus: {atom} with transition t^{j}")
    return AdmissibleModule(lim).canonical(), AdmissibleModule(lim1).canonical()


@dataclass(frozen=True)
class RHomResult:
    h0: AdmissibleModule
    h1: AdmissibleModule
    witness: dict = field(default_factory=dict, compare=False)

    def is_zero(self):
        return self.h0.is_zero() and self.h1.is_zero()

    def __str__(self):
        return f"H0 = {self.h0}, H1 = {self.h1}"


def t_power_kernel_cokernel(atom: Atom, m: int):
    """Kernel and cokernel of ``t^m: atom -> atom.shifted(-m)``.

    The target is the same module with its generator ``m`` degrees lower, so the
    map is homogeneous of degree 0.  Used for RHom out of torsion via
    ``0 -> F(k+m) -t^m-> F(k) -> T(m, k) -> 0``.
    """
    kind, b = atom.kind, atom.k
    if kind in (Kind.LAURENT, Kind.LAURENT_SERIES, Kind.TAIL):
        return ZERO, ZERO
    if kind in (Kind.FREE, Kind.POWER_SERIES):
        return ZERO, AdmissibleModule.of(T(m, b - m))
    # torsion T(m', b): t^m kills the top min(m, m') degrees, cokernel is the bottom m
    mp = atom.m
    n = min(m, mp)
    ker = AdmissibleModule.of(T(n, b + max(0, mp - m)))
    coker = AdmissibleModule.of(T(n, b - m))
    return ker, coker


def rhom_atoms(a: Atom, b: Atom) -> RHomResult:
    """RHom(a, b) for the supported whitelist of atom pairs."""
    one = RatFunc.one()
    if a.kind is Kind.FREE:
        h0 = AdmissibleModule.of(b.shifted(-a.k))
        witness = {"h0_generators": [AtomMorphism(AdmissibleModule.of(a), AdmissibleModule.of(b), [[one]])]
                   if b.kind is not Kind.TAIL else []}
        return RHomResult(h0, ZERO, witness)
    if a.kind is Kind.LAURENT:
        if b.kind is Kind.FREE:
            return RHomResult(ZERO, AdmissibleModule.of(Q(b.k - a.k)),
                              {"h1": "class of sum_n c_n r_n^* on the dual resolution, via r_n^* -> t^(-n-1)"})
        if b.kind in (Kind.LAURENT, Kind.LAURENT_SERIES):
            gen = AtomMorphism(AdmissibleModule.of(a), AdmissibleModule.of(b), [[one]])
            return RHomResult(AdmissibleModule.of(b.shifted(-a.k)), ZERO, {"h0_generators": [gen]})
        if b.kind is Kind.TORSION:
            return RHomResult(ZERO, ZERO)
        raise UnsupportedRHom(f"unsupported RHom pair ({a}, {b})")
    if a.kind is Kind.TORSION:
        src = b.shifted(-a.k)
        ker, coker = t_power_kernel_cokernel(src, a.m)
        return RHomResult(ker, coker, {"resolution": f"0 -> F({a.k + a.m}) -t^{a.m}-> F({a.k}) -> {a}"})
    raise UnsupportedRHom(f"unsupported RHom pair ({a}, {b})")


def rhom_modules(m: AdmissibleModule, n: AdmissibleModule) -> RHomResult:
    h0, h1, witnesses = [], [], []
    for a in m:
        for b in n:
            r = rhom_atoms(a, b)
            h0.extend(r.h0)
            h1.extend(r.h1)
            witnesses.append(((a, b), r.witness))
    return RHomResult(AdmissibleModule(h0).canonical(), AdmissibleModule(h1).canonical(),
                      {"pairs": witnesses})


__all__ = ["Tower", "tower_lim", "RHomResult", "rhom_atoms", "rhom_modules",
           "t_power_kernel_cokernel", "UnsupportedRHom", "TowerOutOfCalculus"]
