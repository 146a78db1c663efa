import pytest

from rabcone.atoms import M, F, L, Q, T
from rabcone.graded import DegreeWindow, GradedSpace
from rabcone.oracle import (brute_hom, compare, object_spread, padded_brute_hom,
                            stabilization_check)
from rabcone.rabinowitz import h0_shadow, model_stage, rab_model

W5, W6, W8 = DegreeWindow(-5, 5), DegreeWindow(-6, 6), DegreeWindow(-8, 8)


def dims(space, window):
    return [space.dim(q) for q in window]


def test_free_free():
    h = brute_hom(M(F(0)), M(F(0)), W5)
    interior = W5.trim(2)
    assert dims(h, interior) == [1 if d >= 0 else 0 for d in interior]


def test_laurent_free_vanishes():
    assert set(dims(brute_hom(M(L()), M(F(0)), W6), W6.trim(2))) == {0}


def test_free_laurent_is_one():
    assert set(dims(brute_hom(M(F(0)), M(L()), W6), W6.trim(2))) == {1}


def test_empty_interior_rejected():
    with pytest.raises(ValueError):
        brute_hom(M(F(0)), M(F(0)), DegreeWindow(0, 3), margin=2)


def test_padding_covers_object_spread():
    assert object_spread(M(F(3), T(2, -1))) == 4
    h = padded_brute_hom(M(F(3)), M(F(0)), W8)
    assert dims(h, W8.trim(2)) == [1 if d >= -3 else 0 for d in W8.trim(2)]


def test_compare_match_and_shift_mismatch():
    brute = brute_hom(M(F(0)), M(F(0)), W8)
    assert compare(M(F(0)), brute, W8).ok
    v = compare(M(F(1)), brute, W8)
    assert not v.ok and v.mismatches == [0]
    assert v.table[0] == (0, 1)


def test_laurent_shifts_share_a_shadow():
    # degreewise dims cannot separate L from L(1); shift errors are caught on Free atoms
    brute = brute_hom(M(F(0)), M(L()), W8)
    assert compare(M(L(1)), brute, W8).ok


def test_compare_is_exact_and_symmetric():
    w = DegreeWindow(0, 4)
    a = GradedSpace.from_function(w, lambda q: 1)
    assert compare(M(L()), a, w, 0).ok
    b = GradedSpace.from_function(w, lambda q: 2 if q == 2 else 1)
    assert compare(M(L()), b, w, 0).mismatches == [2]


def test_tail_is_noted():
    v = compare(M(L(), Q(0)), brute_hom(M(F(0)), M(L()), W8), W8)
    assert v.ok and any("shadow-invisible" in n for n in v.notes)


def test_torsion_ext_against_resolution():
    from rabcone.rhom import rhom_atoms
    from rabcone.resolution import resolve
    from rabcone.complexes import Complex, hom_complex, shadow_cohomology
    h = hom_complex(resolve(T(2, 0), 1).complex, Complex.concentrated(M(F(0))))
    coh = shadow_cohomology(h, W8)
    assert compare(rhom_atoms(T(2, 0), F(0)).h1, coh[1], W8).ok


def test_rab_dims_stable():
    def rab_dims(w, N):
        return h0_shadow(rab_model(F(0), F(0), N), w, 0)
    N = model_stage(W8, M(F(0)))
    assert stabilization_check(rab_dims, W8, growth=4, margin=2, N=N).stable


def test_under_truncation_is_reported():
    # margin 0 keeps the edge degrees, where the commuting constraints are missing
    rep = stabilization_check(lambda w: brute_hom(M(L()), M(F(0)), w, 0), W5, growth=4, margin=0)
    assert not rep.stable
    assert rep.base[rep.first_unstable] != rep.enlarged[rep.first_unstable]


def test_stabilization_rejects_empty_interior():
    with pytest.raises(ValueError):
        stabilization_check(lambda w: {}, DegreeWindow(0, 1), margin=2)
