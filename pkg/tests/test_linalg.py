from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rabcone.fields import GF, QQ, ModP, parse_field, use_field
from rabcone.linalg import (Matrix, bareiss_echelon, image, inconsistency_certificate,
                            integer_rank, kernel, rank, rank_mod_p, rref, solve)

from conftest import PRIMES

small = st.integers(-6, 6)


def int_matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def fraction_rank(rows):
    """Textbook Gauss-Jordan over Fractions, the reference for Bareiss."""
    a = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(a[0])
    for c in range(ncols):
        p = next((i for i in range(rk, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][c] != 0:
                f = a[i][c] / a[rk][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


@given(int_matrices())
def test_bareiss_rank_matches_fraction_gauss(rows):
    assert integer_rank(rows, len(rows[0])) == fraction_rank(rows)


@given(int_matrices())
def test_bareiss_intermediates_stay_integral(rows):
    out, _ = bareiss_echelon(rows, len(rows[0]))
    assert all(isinstance(x, int) for r in out for x in r)


@given(int_matrices())
def test_rank_over_large_primes_matches_q(rows):
    # entries are tiny, so every minor is far below the primes
    r = integer_rank(rows, len(rows[0]))
    assert all(rank_mod_p(rows, len(rows[0]), p) == r for p in PRIMES)


@given(int_matrices())
def test_rank_nullity(rows):
    for fld in (QQ, GF(10007)):
        m = Matrix(rows, field=fld)
        k = kernel(m)
        assert rank(m) + k.ncols == m.ncols
        assert (m @ k).is_zero() if k.ncols else True
        assert image(m).ncols == rank(m)


@given(int_matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_or_certificate(rows, rhs):
    m = Matrix(rows, field=QQ)
    b = [QQ(x) for x in rhs[:m.nrows]]
    x = solve(m, b)
    y = inconsistency_certificate(m, b)
    assert (x is None) != (y is None)
    if x is not None:
        assert list(m.apply(x)) == b
    else:
        assert (Matrix([y], field=QQ) @ m).is_zero()
        assert sum(a * c for a, c in zip(y, b)) != 0


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n), square(n))))
@settings(max_examples=50)
def test_matmul_associative(abc):
    a, b, c = (Matrix(x, field=QQ) for x in abc)
    assert (a @ b) @ c == a @ (b @ c)


def test_rref_pivots_are_one():
    m = Matrix([[2, 4, 6], [1, 3, 5]], field=QQ)
    rows, pivots = rref(m)
    assert pivots == [0, 1]
    assert rows[0][0] == 1 and rows[1][1] == 1 and rows[0][1] == 0


def test_naive_product_over_f5():
    f5 = GF(5)
    a = [[1, 2, 3], [4, 0, 1], [2, 2, 2]]
    b = [[3, 1, 4], [1, 0, 2], [0, 4, 1]]
    ref = [[sum(a[i][k] * b[k][j] for k in range(3)) % 5 for j in range(3)] for i in range(3)]
    assert Matrix(a, field=f5) @ Matrix(b, field=f5) == Matrix(ref, field=f5)


def test_modp_canonical_and_inverse():
    x = ModP(-3, 7)
    assert x.value == 4
    assert x * (1 / x) == ModP(1, 7)
    with pytest.raises(ZeroDivisionError):
        1 / ModP(0, 7)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("fp:10007") == GF(10007)
    with pytest.raises(ValueError):
        parse_field("fp:10")
    with pytest.raises(ValueError):
        parse_field("r")


def test_field_context_is_scoped():
    with use_field(GF(7)):
        assert Matrix([[8]]).rows[0][0] == ModP(1, 7)
    assert Matrix([[8]]).rows[0][0] == Fraction(8)


def test_mixed_fields_rejected():
    with pytest.raises(TypeError):
        Matrix([[1]], field=QQ) @ Matrix([[1]], field=GF(7))
