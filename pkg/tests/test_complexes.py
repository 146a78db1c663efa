import pytest
from hypothesis import given, settings, strategies as st

from rabcone.atoms import AtomMorphism, F, L, LS, M, Q, T
from rabcone.complexes import (ChainMap, CohomologyNotInCalculus, Complex, Connecting, NotAChainMap,
                               cohomology, cone, hom_complex, null_homotopy_obstruction,
                               shadow_cohomology, shift, shift_map, WindowTooSmall)
from rabcone.graded import DegreeWindow
from rabcone.ratfunc import RatFunc, parse_ratfunc
import rabcone.rabinowitz  # noqa: F401  registers the extension rule

W6 = DegreeWindow(-6, 6)
one = RatFunc.one()


def mor(src, tgt, *rows):
    return AtomMorphism(src, tgt, [[parse_ratfunc(x) if isinstance(x, str) else x for x in r] for r in rows])


def conc(m, n=0):
    return Complex.concentrated(m, n)


def nonzero(coh):
    return {n: m for n, m in coh.items() if not m.is_zero()}


def dims(space, window):
    return [space.dim(q) for q in window]


def test_multiplication_complex_gives_torsion():
    for m in (1, 2, 3):
        x = Complex({-1: M(F(m)), 0: M(F(0))}, {-1: mor(M(F(m)), M(F(0)), [f"t^{m}"])})
        assert nonzero(cohomology(x)) == {0: M(T(m, 0))}


def test_cone_of_identity_is_acyclic():
    x = conc(M(F(0)))
    c = cone(ChainMap.identity(x))
    assert nonzero(cohomology(c)) == {}
    assert all(h.dim(q) == 0 for h in shadow_cohomology(c, W6).values() for q in W6.trim(2))


def test_cone_of_zero_splits():
    x = conc(M(F(0)))
    c = cone(ChainMap.zero(x, x))
    assert cohomology(c) == {-1: M(F(0)), 0: M(F(0))}
    sh = shadow_cohomology(c, W6)
    assert dims(sh[-1], W6) == dims(sh[0], W6) == [0] * 6 + [1] * 7


def test_cone_of_unit_has_laurent_over_free_shadow():
    u = ChainMap(conc(M(F(0))), conc(M(L())), {0: mor(M(F(0)), M(L()), [one])})
    sh = shadow_cohomology(cone(u), W6)
    interior = W6.trim(2)
    assert [sh[0].dim(q) for q in interior] == [1 if q < 0 else 0 for q in interior]
    assert all(sh[-1].dim(q) == 0 for q in interior)


def _delta(zero=False):
    x, y = conc(M(Q(0)), 1), conc(M(L()))
    conn = () if zero else (Connecting(1, 0, 0, "delta"),)
    return ChainMap(x, y, {}, conn)


def test_extension_rule_fires_on_delta():
    assert cohomology(cone(_delta())) == {0: M(LS())}


def test_zero_connecting_map_splits():
    assert cohomology(cone(_delta(zero=True))) == {0: M(L(), Q(0))}


def test_unidentified_cohomology_raises():
    # t - 1 is a unit on L but the two-term rule set has no name for its cokernel on F
    x = Complex({-1: M(F(0)), 0: M(F(0))}, {-1: mor(M(F(0)), M(F(0)), ["1+t^2"])})
    with pytest.raises(CohomologyNotInCalculus, match="cohomology not in calculus"):
        cohomology(x)


def test_non_chain_map_names_square():
    x = Complex({-1: M(F(1)), 0: M(F(0))}, {-1: mor(M(F(1)), M(F(0)), ["t"])})
    # identity in degree -1 only: the square into degree 0 fails
    with pytest.raises(NotAChainMap, match="degree -1"):
        ChainMap(x, x, {-1: mor(M(F(1)), M(F(1)), [one])})


def test_d_squared_rejected():
    d = mor(M(F(0)), M(F(0)), [one])
    with pytest.raises(ValueError, match="d\\^"):
        Complex({0: M(F(0)), 1: M(F(0)), 2: M(F(0))}, {0: d, 1: d})


def _res_complex():
    from rabcone.resolution import build_resolution
    return build_resolution(3).complex


def test_shift_round_trip_and_shadow():
    x = _res_complex()
    back = shift(shift(x, 1), -1)
    assert back.terms == x.terms and back.differentials == x.differentials
    assert shift(Complex({}), 3).is_zero()
    a, b = shadow_cohomology(shift(x, 1), W6), shadow_cohomology(x, W6)
    for n, h in b.items():
        assert dims(a.get(n - 1, h.__class__.zero(W6)), W6) == dims(h, W6)


def test_shift_sign():
    x = Complex({-1: M(F(1)), 0: M(F(0))}, {-1: mor(M(F(1)), M(F(0)), ["t"])})
    assert shift(x, 1).diff(-2) == -x.diff(-1)
    assert shift(x, 2).diff(-3) == x.diff(-1)


def test_cone_shift_compatibility():
    x = Complex({-1: M(F(1)), 0: M(F(0))}, {-1: mor(M(F(1)), M(F(0)), ["t"])})
    y = Complex({-1: M(F(1)), 0: M(L())}, {-1: mor(M(F(1)), M(L()), ["t"])})
    phi = ChainMap(x, y, {-1: mor(M(F(1)), M(F(1)), [one]), 0: mor(M(F(0)), M(L()), [one])})
    a = shadow_cohomology(shift(cone(phi), 1), W6)
    b = shadow_cohomology(cone(shift_map(phi, 1)), W6)
    assert {n: dims(h, W6) for n, h in a.items()} == {n: dims(h, W6) for n, h in b.items()}


monos = st.integers(0, 3)


@given(monos, st.booleans())
@settings(max_examples=20, deadline=None)
def test_cone_long_exact_sequence_count(j, use_zero):
    """dim H^n(cone) = dim H^n(Y) + dim H^(n+1)(X) - ranks of the connecting maps."""
    x, y = conc(M(F(0))), conc(M(L(-j)))
    entry = RatFunc.zero() if use_zero else RatFunc.monomial(1, j)
    phi = ChainMap(x, y, {0: AtomMorphism(M(F(0)), M(L(-j)), [[entry]])})
    sh = shadow_cohomology(cone(phi), W6)
    for q in W6.trim(2):
        hx = int(q >= 0)
        r = 0 if use_zero else hx
        assert sh[-1].dim(q) == hx - r
        assert sh[0].dim(q) == 1 - r


def test_hom_complex_of_resolution_computes_ext():
    from rabcone.resolution import resolve
    res = resolve(T(2, 0), 1).complex
    h = hom_complex(res, conc(M(F(0))))
    assert nonzero(cohomology(h)) == {1: M(T(2, -2))}


def test_null_homotopy_of_zero_map():
    x = conc(M(F(0)))
    r = null_homotopy_obstruction(ChainMap.zero(x, x), W6)
    assert not r.obstructed


def test_identity_on_contractible_cone_is_null_homotopic():
    x = conc(M(F(0)))
    c = cone(ChainMap.identity(x))
    r = null_homotopy_obstruction(ChainMap.identity(c), W6)
    assert not r.obstructed


def test_identity_on_free_is_obstructed():
    x = conc(M(F(0)))
    r = null_homotopy_obstruction(ChainMap.identity(x), W6)
    assert r.obstructed and r.certificate is not None


def test_window_too_small():
    x = conc(M(F(0)))
    with pytest.raises(WindowTooSmall):
        null_homotopy_obstruction(ChainMap.zero(x, x), DegreeWindow(0, 2), margin=2)
