"""Degree-windowed graded vector spaces and graded linear maps.

A :class:`GradedSpace` is the degreewise shadow of a graded module restricted
to a finite :class:`DegreeWindow`.  Degrees outside the window are dimension 0;
window arithmetic saturates instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Tuple

from .fields import get_field
from .linalg import Matrix, image, kernel, rank


class NotAComplexError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def trim(self, margin: int):
        """The interior after removing ``margin`` degrees at each edge, or None."""
        lo, hi = self.lo + margin, self.hi - margin
        return DegreeWindow(lo, hi) if lo <= hi else None

    def grow(self, k: int):
        return DegreeWindow(self.lo - k, self.hi + k)

    def shifted(self, k: int):
        return DegreeWindow(self.lo + k, self.hi + k)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class GradedSpace:
    window: DegreeWindow
    dims: Tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) != len(self.window):
            raise ValueError("dims must cover exactly the window degrees")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    @classmethod
    def from_function(cls, window, f):
        return cls(window, tuple(f(n) for n in window))

    @classmethod
    def zero(cls, window):
        return cls(window, (0,) * len(window))

    def dim(self, n: int) -> int:
        return self.dims[n - self.window.lo] if n in self.window else 0

    def as_dict(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in self.window}

    def restrict(self, window):
        return GradedSpace.from_function(window, self.dim)

    def __add__(self, other):
        if self.window != other.window:
            raise ValueError("direct sum of spaces over different windows")
        return GradedSpace(self.window, tuple(a + b for a, b in zip(self.dims, other.dims)))


@dataclass(frozen=True, eq=False)
class GradedMap:
    """A graded linear map of internal degree ``shift``.

    ``blocks[n]`` is the matrix from source degree ``n`` to target degree
    ``n + shift``; a missing block is the zero map.
    """

    source: GradedSpace
    target: GradedSpace
    shift: int = 0
    blocks: Dict[int, Matrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        for n, b in self.blocks.items():
            expected = (self.target.dim(n + self.shift), self.source.dim(n))
            if n not in self.source.window or b.shape != expected:
                raise ValueError(f"block at degree {n} has shape {b.shape}, expected {expected}")

    def block(self, n: int, field=None) -> Matrix:
        b = self.blocks.get(n)
        if b is None:
            return Matrix.zero(self.target.dim(n + self.shift), self.source.dim(n), field)
        return b

    @classmethod
    def zero(cls, source, target, shift=0):
        return cls(source, target, shift, {})

    @classmethod
    def identity(cls, space, field=None):
        return cls(space, space, 0, {n: Matrix.identity(space.dim(n), field) for n in space.window})

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            return False
        return all(self.block(n) == other.block(n) for n in self.source.window)

    def __add__(self, other):
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            raise ValueError("sum of incompatible graded maps")
        return GradedMap(self.source, self.target, self.shift,
                         {n: self.block(n) + other.block(n) for n in self.source.window})


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g o f``; blockwise products, shifts add."""
    if f.target.window != g.source.window:
        raise ValueError(f"compose: window mismatch {f.target.window} vs {g.source.window}")
    for n in f.target.window:
        if f.target.dim(n) != g.source.dim(n):
            raise ValueError(f"compose: dimension mismatch at degree {n}: "
                             f"{f.target.dim(n)} vs {g.source.dim(n)}")
    blocks = {}
    for n, fb in f.blocks.items():
        m = n + f.shift
        gb = g.blocks.get(m)
        if gb is None or m not in g.source.window:
            continue
        blocks[n] = gb @ fb
    return GradedMap(f.source, g.target, f.shift + g.shift, blocks)


@dataclass(frozen=True)
class KernelImage:
    kernel: GradedSpace
    image: GradedSpace
    kernel_basis: Dict[int, Matrix]
    image_basis: Dict[int, Matrix]


def kernel_image(f: GradedMap, field=None) -> KernelImage:
    """Per-degree kernel (in the source) and image (in the target) with bases."""
    kdims, idims = {}, {}
    kb, ib = {}, {}
    for n in f.source.window:
        b = f.block(n, field)
        k = kernel(b)
        r = rank(b)
        if k.ncols + r != f.source.dim(n):
            raise AssertionError(f"rank-nullity violated at degree {n}")
        kdims[n] = k.ncols
        kb[n] = k
        m = n + f.shift
        if m in f.target.window:
            idims[m] = r
            ib[m] = image(b)
    ker = GradedSpace.from_function(f.source.window, lambda n: kdims[n])
    im = GradedSpace.from_function(f.target.window, lambda n: idims.get(n, 0))
    return KernelImage(ker, im, kb, ib)


@dataclass(frozen=True)
class Homology:
    space: GradedSpace
    representatives: Dict[int, Tuple[tuple, ...]]


def homology_at(f_in: GradedMap, f_out: GradedMap, field=None) -> Homology:
    """Middle homology ``ker(f_out) / im(f_in)`` degree by degree."""
    if f_in.target.window != f_out.source.window or f_in.target.dims != f_out.source.dims:
        raise ValueError("homology_at: f_in target and f_out source differ")
    field = field or get_field()
    mid = f_out.source
    dims, reps = {}, {}
    for n in mid.window:
        bout = f_out.block(n, field)
        src = n - f_in.shift
        bin_ = f_in.block(src, field) if src in f_in.source.window else Matrix.zero(mid.dim(n), 0, field)
        if bout.ncols and bin_.ncols and not (bout @ bin_).is_zero():
            raise NotAComplexError(f"not a complex: f_out o f_in != 0 at degree {n}")
        z = kernel(bout)
        r_in = rank(bin_)
        dims[n] = z.ncols - r_in
        reps[n] = _complement_representatives(z, bin_)
    space = GradedSpace.from_function(mid.window, lambda n: dims[n])
    return Homology(space, reps)


def _complement_representatives(cycles: Matrix, boundaries: Matrix):
    # greedy: keep cycle columns that raise the rank of span(boundaries, kept)
    field = cycles.field
    current = [c for c in boundaries.columns()]
    base = rank(Matrix.from_columns(current, cycles.nrows, field)) if current else 0
    reps = []
    for col in cycles.columns():
        trial = current + [col]
        r = rank(Matrix.from_columns(trial, cycles.nrows, field))
        if r > base:
            current, base = trial, r
            reps.append(col)
    return tuple(reps)
