import pytest
from hypothesis import given, strategies as st

from rabcone.graded import (DegreeWindow, GradedMap, GradedSpace, NotAComplexError, compose,
                            homology_at, kernel_image)
from rabcone.linalg import Matrix
from rabcone.resolution import build_resolution, dualize
from rabcone.atoms import realize_morphism


def space(lo, hi, d):
    return GradedSpace.from_function(DegreeWindow(lo, hi), lambda n: d)


@st.composite
def graded_maps(draw, src=None, tgt=None):
    src = src or space(0, 2, draw(st.integers(0, 3)))
    tgt = tgt or space(0, 2, draw(st.integers(0, 3)))
    blocks = {}
    for n in src.window:
        r, c = tgt.dim(n), src.dim(n)
        blocks[n] = Matrix([[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)], r, c)
    return GradedMap(src, tgt, 0, blocks)


def test_window_basics():
    w = DegreeWindow(-2, 3)
    assert list(w) == [-2, -1, 0, 1, 2, 3]
    assert w.trim(2) == DegreeWindow(0, 1)
    assert w.trim(3) is None
    assert w.grow(1) == DegreeWindow(-3, 4)
    with pytest.raises(ValueError):
        DegreeWindow(2, 1)


def test_dims_outside_window_are_zero():
    s = space(0, 2, 3)
    assert s.dim(5) == 0 and s.dim(-1) == 0


@given(graded_maps())
def test_identity_and_zero_composition(f):
    assert compose(GradedMap.identity(f.target), f) == f
    assert compose(f, GradedMap.identity(f.source)) == f
    assert compose(GradedMap.zero(f.target, f.target), f).is_zero()


@given(st.data())
def test_compose_associative(data):
    a, b, c, d = (space(0, 2, data.draw(st.integers(0, 3))) for _ in range(4))
    f = data.draw(graded_maps(a, b))
    g = data.draw(graded_maps(b, c))
    h = data.draw(graded_maps(c, d))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(graded_maps())
def test_rank_nullity_per_degree(f):
    ki = kernel_image(f)
    for n in f.source.window:
        assert ki.kernel.dim(n) + ki.image.dim(n + f.shift) == f.source.dim(n)


def test_compose_shape_mismatch_names_degree():
    f = GradedMap.identity(space(0, 1, 2))
    g = GradedMap.identity(space(0, 1, 3))
    with pytest.raises(ValueError, match="degree 0"):
        compose(g, f)


def test_identity_and_zero_kernel_image():
    s = space(-1, 1, 2)
    ki = kernel_image(GradedMap.identity(s))
    assert ki.kernel.as_dict() == {-1: 0, 0: 0, 1: 0} and ki.image.as_dict() == s.as_dict()
    kz = kernel_image(GradedMap.zero(s, s))
    assert kz.kernel.as_dict() == s.as_dict() and kz.image.as_dict() == {-1: 0, 0: 0, 1: 0}


def test_homology_of_zero_maps_is_middle():
    s = space(0, 2, 2)
    h = homology_at(GradedMap.zero(s, s), GradedMap.zero(s, s))
    assert h.space.as_dict() == s.as_dict()


def test_homology_exact_sequence():
    s = space(0, 0, 1)
    h = homology_at(GradedMap.identity(s), GradedMap.zero(s, space(0, 0, 0)))
    assert h.space.dim(0) == 0


def test_not_a_complex():
    s = space(0, 1, 1)
    with pytest.raises(NotAComplexError, match="degree 0"):
        homology_at(GradedMap.identity(s), GradedMap.identity(s))


def test_dual_block_rank_agrees_across_fields():
    from rabcone.fields import GF, QQ, use_field
    from rabcone.linalg import rank
    ranks = set()
    for fld in (QQ, GF(10007), GF(65537), GF(1000003)):
        with use_field(fld):
            d = dualize(build_resolution(4)).map
            ranks.add(rank(realize_morphism(d, DegreeWindow(0, 6)).block(3, fld)))
    assert len(ranks) == 1
