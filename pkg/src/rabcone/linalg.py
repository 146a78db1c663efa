"""Dense exact matrices and elimination.

Over Q the elimination is fraction-free (Bareiss): each row is scaled to
integers and every intermediate entry is a minor of the input, so entries stay
integral and bounded by Hadamard's inequality.  Over F_p plain Gaussian
elimination is used.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import QQ, ModP, RationalField, get_field


class Matrix:
    """An immutable ``nrows x ncols`` matrix over an exact field."""

    __slots__ = ("nrows", "ncols", "rows", "field", "_echelon")

    def __init__(self, rows, nrows=None, ncols=None, field=None):
        field = field or get_field()
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError(f"ragged matrix data for shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self.field = field
        self._echelon = None

    @classmethod
    def zero(cls, nrows, ncols, field=None):
        field = field or get_field()
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)], nrows, ncols, field)

    @classmethod
    def identity(cls, n, field=None):
        field = field or get_field()
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
                   n, n, field)

    @classmethod
    def from_columns(cls, columns, nrows, field=None):
        field = field or get_field()
        return cls([[col[i] for col in columns] for i in range(nrows)], nrows, len(columns), field)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def transpose(self):
        return Matrix([self.column(j) for j in range(self.ncols)], self.ncols, self.nrows, self.field)

    def _check_field(self, other):
        if other.field != self.field:
            raise TypeError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols, self.field)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.nrows, self.ncols, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.nrows, self.ncols, self.field)

    def __matmul__(self, other):
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = other.columns()
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append([sum((a * col[k] for k, a in nz), zero) for col in cols])
        return Matrix(out, self.nrows, other.ncols, self.field)

    def apply(self, vector):
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        return tuple(sum((a * v for a, v in zip(row, vector) if a and v), zero) for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.render(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def hstack(blocks, nrows, field=None):
    field = field or (blocks[0].field if blocks else get_field())
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack: row count mismatch")
        for i in range(nrows):
            rows[i].extend(b.rows[i])
    return Matrix(rows, nrows, sum(b.ncols for b in blocks), field)


def vstack(blocks, ncols, field=None):
    field = field or (blocks[0].field if blocks else get_field())
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack: column count mismatch")
        rows.extend(b.rows)
    return Matrix(rows, len(rows), ncols, field)


# -- elimination ---------------------------------------------------------------

def bareiss_echelon(int_rows, ncols):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(rows, pivots)``; ``rows[:len(pivots)]`` are the nonzero echelon
    rows, with the pivot of row ``r`` in column ``pivots[r]``.
    """
    a = [list(r) for r in int_rows]
    n = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= n:
            break
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, n):
            lead = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                # exact: every entry is a minor of the input (Sylvester identity)
                row_i[j] = (row_i[j] * piv - lead * row_r[j]) // prev
            row_i[c] = 0
        # rows above the active block keep their entries
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def _gauss_echelon_mod_p(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= n:
            break
        piv_row = next((i for i in range(r, n) if a[i][c]), None)
        if piv_row is None:
            continue
        a[r], a[piv_row] = a[piv_row], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(r + 1, n):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _integer_rows(m: Matrix):
    out = []
    for row in m.rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def integer_rank(int_rows, ncols) -> int:
    return len(bareiss_echelon(int_rows, ncols)[1])


def rank_mod_p(int_rows, ncols, p: int) -> int:
    return len(_gauss_echelon_mod_p(int_rows, ncols, p)[1])


def _echelon(m: Matrix):
    """Row echelon form as field-element rows plus pivot columns (cached)."""
    if m._echelon is not None:
        return m._echelon
    if isinstance(m.field, RationalField):
        rows, pivots = bareiss_echelon(_integer_rows(m), m.ncols)
        rows = [[Fraction(x) for x in r] for r in rows[:len(pivots)]]
    else:
        p = m.field.p
        rows, pivots = _gauss_echelon_mod_p([[x.value for x in r] for r in m.rows], m.ncols, p)
        rows = [[ModP(x, p) for x in r] for r in rows[:len(pivots)]]
    m._echelon = (rows, pivots)
    return m._echelon


def rank(m: Matrix) -> int:
    return len(_echelon(m)[1])


def rref(m: Matrix):
    """Reduced row echelon rows (pivot entries 1) and pivot columns."""
    rows, pivots = _echelon(m)
    rows = [list(r) for r in rows]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        inv = m.field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(r):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
    return rows, pivots


def kernel(m: Matrix) -> Matrix:
    """Columns form a basis of the right kernel."""
    field = m.field
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [field.zero] * m.ncols
        v[free] = field.one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][free]
        basis.append(v)
    return Matrix.from_columns(basis, m.ncols, field)


def image(m: Matrix) -> Matrix:
    """Columns form a basis of the column space (pivot columns of ``m``)."""
    _, pivots = _echelon(m)
    return Matrix.from_columns([m.column(c) for c in pivots], m.nrows, m.field)


def solve(a: Matrix, b):
    """A particular solution of ``a x = b`` or ``None`` when inconsistent."""
    field = a.field
    aug = hstack([a, Matrix.from_columns([tuple(b)], a.nrows, field)], a.nrows, field)
    rows, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = [field.zero] * a.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][a.ncols]
    return tuple(x)


def inconsistency_certificate(a: Matrix, b):
    """A row vector ``y`` with ``y a = 0`` and ``y b != 0``, or ``None``.

    Such a ``y`` exists exactly when ``a x = b`` has no solution.
    """
    left = kernel(a.transpose())
    for y in left.columns():
        if sum((yi * bi for yi, bi in zip(y, b)), a.field.zero):
            return y
    return None


def to_integer_matrix(m: Matrix):
    if not isinstance(m.field, RationalField):
        return [[x.value for x in r] for r in m.rows]
    return _integer_rows(m)


__all__ = [
    "Matrix", "hstack", "vstack", "bareiss_echelon", "integer_rank", "rank_mod_p",
    "rank", "rref", "kernel", "image", "solve", "inconsistency_certificate",
    "to_integer_matrix", "QQ",
]
