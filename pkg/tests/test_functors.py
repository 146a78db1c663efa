import pytest
from hypothesis import given, strategies as st

from rabcone.atoms import AdmissibleModule, AtomMorphism, F, L, LS, M, PS, Q, T, ZERO
from rabcone.complexes import cohomology, shadow_cohomology
from rabcone.functors import (localize, localize_morphism, right_adj, torsion_part,
                              triangle_euler_check, unit_map, verify_adjunction)
from rabcone.graded import DegreeWindow
from rabcone.ratfunc import RatFunc

W6, W8 = DegreeWindow(-6, 6), DegreeWindow(-8, 8)

k = st.integers(-3, 3)
atoms = st.one_of(k.map(F), k.map(L), k.map(PS), k.map(LS), k.map(Q),
                  st.tuples(st.integers(1, 3), k).map(lambda mk: T(*mk)))
modules = st.lists(atoms, max_size=4).map(AdmissibleModule)


def nonzero(coh):
    return {n: m for n, m in coh.items() if not m.is_zero()}


def test_localize_examples():
    assert localize(M(F(0))) == M(L())
    assert localize(M(T(3, 1))) == ZERO
    assert localize(M(F(0), T(2, 0))) == M(L())
    assert localize(M(PS(2))) == M(LS(2))


@given(modules)
def test_localize_idempotent(m):
    assert localize(localize(m)) == localize(m)


def test_right_adj_examples():
    assert nonzero(cohomology(right_adj(M(F(0))))) == {1: M(Q(0))}
    assert nonzero(cohomology(right_adj(M(L())))) == {0: M(L())}
    assert right_adj(M(T(2, 1))).is_zero()


def test_torsion_part_of_torsion():
    assert nonzero(cohomology(torsion_part(M(T(2, 1))))) == {0: M(T(2, 1))}


def test_torsion_part_of_laurent_is_acyclic():
    assert nonzero(cohomology(torsion_part(M(L())))) == {}


def test_torsion_part_of_free_is_local_cohomology():
    # K[t, 1/t]/K[t] sits in cohomological degree 1 of cone(u)[-1]
    sh = shadow_cohomology(torsion_part(M(F(0))), W6)
    interior = W6.trim(2)
    assert [sh[1].dim(q) for q in interior] == [1 if q < 0 else 0 for q in interior]
    assert all(sh[0].dim(q) == 0 for q in interior)


def test_unit_map_examples():
    u = unit_map(M(F(0)))
    assert u.target == M(L()) and u[0, 0] == RatFunc.one()
    assert unit_map(M(T(2, 0))).target == ZERO


@pytest.mark.parametrize("j", [0, 1, 2, 3])
def test_unit_naturality(j):
    f = AtomMorphism(M(F(j)), M(F(0)), [[RatFunc.monomial(1, j)]])
    assert unit_map(f.target) @ f == localize_morphism(f) @ unit_map(f.source)


def test_unit_naturality_mixed():
    src, tgt = M(F(1), T(2, 0)), M(F(0), T(1, 0))
    f = AtomMorphism(src, tgt, [[RatFunc.t(), RatFunc.zero()], [RatFunc.zero(), RatFunc.one()]])
    assert unit_map(tgt) @ f == localize_morphism(f) @ unit_map(src)


@pytest.mark.parametrize("c, s", [(F(0), L()), (T(2, 0), L()), (F(3), LS()), (F(-2), L(1))])
def test_adjunction(c, s):
    rep = verify_adjunction(M(c), M(s), W8)
    assert rep.ok, rep.failures


def test_adjunction_dims():
    rep = verify_adjunction(M(T(2, 0)), M(L()), W8)
    assert set(rep.direct_dims.values()) == {0}
    rep = verify_adjunction(M(F(3)), M(LS()), W8)
    assert set(rep.direct_dims.values()) == {1}


def test_adjunction_rejects_bad_arguments():
    with pytest.raises(ValueError):
        verify_adjunction(M(F(0)), M(F(0)), W8)
    with pytest.raises(ValueError):
        verify_adjunction(M(L()), M(L()), W8)


@pytest.mark.parametrize("m", [M(F(0)), M(F(2), T(3, -1)), M(L(1)), M(LS(-2)), M(T(1, 3))])
def test_triangle_euler(m):
    assert triangle_euler_check(m, W8) == []
