import pytest

from rabcone.atoms import M, F, L, LS, PS, Q, T, ZERO
from rabcone.graded import DegreeWindow
from rabcone.oracle import compare, padded_brute_hom
from rabcone.rhom import (Tower, TowerOutOfCalculus, UnsupportedRHom, rhom_atoms, rhom_modules,
                          tower_lim)

W8 = DegreeWindow(-8, 8)


def test_table_examples():
    r = rhom_atoms(L(), F(0))
    assert (r.h0, r.h1) == (ZERO, M(Q(0)))
    r = rhom_atoms(F(0), L())
    assert (r.h0, r.h1) == (M(L()), ZERO)
    r = rhom_atoms(L(), L())
    assert (r.h0, r.h1) == (M(L()), ZERO)
    r = rhom_atoms(T(2, 0), F(0))
    assert (r.h0, r.h1) == (ZERO, M(T(2, -2)))
    assert rhom_atoms(L(), LS()).h0 == M(LS())
    assert rhom_atoms(L(), T(2, 1)).is_zero()
    assert rhom_atoms(T(3, 1), L()).is_zero()


def test_free_source_shifts_target():
    for b in (F(2), L(1), PS(-1), LS(3), Q(0), T(2, 1)):
        r = rhom_atoms(F(3), b)
        assert r.h0 == M(b.shifted(-3)) and r.h1 == ZERO


def test_module_examples():
    assert rhom_modules(M(F(0), F(1)), M(L())).h0 == M(L(), L(-1))
    assert rhom_modules(ZERO, M(F(0))).is_zero()
    r = rhom_modules(M(L()), M(F(0), T(2, 0)))
    assert (r.h0, r.h1) == (ZERO, M(Q(0)))


@pytest.mark.parametrize("pair", [(L(), Q(0)), (L(), PS(0)), (PS(0), F(0)), (LS(), L()), (Q(0), L())])
def test_unsupported_pairs(pair):
    with pytest.raises(UnsupportedRHom, match="unsupported RHom pair"):
        rhom_atoms(*pair)


def test_tower_lim():
    assert tower_lim(Tower.multiplication(M(F(0)))) == (ZERO, M(Q(0)))
    assert tower_lim(Tower.multiplication(M(T(3, 0)))) == (ZERO, ZERO)
    assert tower_lim(Tower.multiplication(M(F(0), F(2)))) == (ZERO, M(Q(0), Q(2)))
    assert tower_lim(Tower.multiplication(M(L()))) == (M(L()), ZERO)


def test_tower_out_of_calculus():
    from rabcone.atoms import AtomMorphism
    from rabcone.ratfunc import parse_ratfunc
    body = M(F(0))
    with pytest.raises(TowerOutOfCalculus, match="tower out of calculus"):
        tower_lim(Tower(body, AtomMorphism(body, body, [[parse_ratfunc("1+t")]])))
    assert tower_lim(Tower.multiplication(body, power=0)) == (body, ZERO)


@pytest.mark.parametrize("b", [F(0), F(2), L(), LS(), T(2, 0), T(1, -1)])
def test_laurent_source_matches_tower(b):
    try:
        lim, lim1 = tower_lim(Tower.multiplication(M(b)))
    except (TowerOutOfCalculus, ValueError):
        pytest.skip("tower not in calculus")
    r = rhom_atoms(L(), b)
    assert (r.h0, r.h1) == (lim, lim1)


def _grid():
    ks = range(-3, 4)
    sources = [F(k) for k in ks] + [L(k) for k in ks] + [T(m, k) for m in (1, 2, 3) for k in ks]
    targets = [F(k) for k in ks] + [L(k) for k in ks] + [T(m, k) for m in (1, 2, 3) for k in ks]
    return [(a, b) for a in sources for b in targets]


def test_table_matches_brute_force_on_grid():
    bad = []
    for a, b in _grid():
        r = rhom_atoms(a, b)
        if r.h0.has_tail():
            continue
        v = compare(r.h0, padded_brute_hom(M(a), M(b), W8), W8)
        if not v.ok:
            bad.append((str(a), str(b), v.mismatches))
    assert bad == []


def test_torsion_ext_matches_resolution_cokernel():
    # Ext^1(T(2,0), F(0)) is the cokernel of t^2: F(0) -> F(-2)
    r = rhom_atoms(T(2, 0), F(0))
    from rabcone.atoms import AtomMorphism
    from rabcone.complexes import Complex, shadow_cohomology
    from rabcone.ratfunc import RatFunc
    d = AtomMorphism(M(F(0)), M(F(-2)), [[RatFunc.monomial(1, 2)]])
    coh = shadow_cohomology(Complex({0: M(F(0)), 1: M(F(-2))}, {0: d}), W8)
    v = compare(r.h1, coh[1], W8)
    assert v.ok
