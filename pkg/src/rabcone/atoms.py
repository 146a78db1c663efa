"""Tate-type K[t]-modules ("atoms"), finite direct sums of them, and morphisms.

Atom kinds and their text codes::

    F(k)    t^k K[t]            free, generator in degree k
    L(k)    K[t, 1/t]           Laurent polynomials, generator in degree k
    PS(k)   K[[t]]              power series, generator in degree k
    LS(k)   K((t))              Laurent series, generator in degree k
    Q(k)    K[[t]] / K[t]       the tail quotient (invisible degreewise)
    T(m,k)  K[t] / (t^m)        torsion, generator in degree k, length m

A morphism entry ``r`` from a summand with generator ``e_a`` to a summand with
generator ``e_b`` sends ``e_a`` to ``r * e_b``.  A monomial ``c t^j`` entry is
therefore homogeneous of internal degree ``j + b - a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from .fields import get_field
from .graded import DegreeWindow, GradedMap, GradedSpace
from .linalg import Matrix
from .ratfunc import RatFunc


class Kind(Enum):
    FREE = "F"
    LAURENT = "L"
    POWER_SERIES = "PS"
    LAURENT_SERIES = "LS"
    TAIL = "Q"
    TORSION = "T"


_KIND_ORDER = {k: i for i, k in enumerate(Kind)}

# modules on which t acts invertibly
LOCAL_KINDS = frozenset({Kind.LAURENT, Kind.LAURENT_SERIES, Kind.TAIL})


@dataclass(frozen=True)
class Atom:
    kind: Kind
    k: int = 0
    m: int = 1

    def __post_init__(self):
        if self.kind is Kind.TORSION and self.m < 1:
            raise ValueError("torsion length must be >= 1")
        if self.kind is not Kind.TORSION and self.m != 1:
            object.__setattr__(self, "m", 1)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.k, self.m)

    def shifted(self, k: int) -> "Atom":
        return Atom(self.kind, self.k + k, self.m)

    def support(self, n: int) -> bool:
        """Whether the degreewise shadow is nonzero (and 1-dimensional) at ``n``."""
        kind = self.kind
        if kind in (Kind.FREE, Kind.POWER_SERIES):
            return n >= self.k
        if kind in (Kind.LAURENT, Kind.LAURENT_SERIES):
            return True
        if kind is Kind.TORSION:
            return self.k <= n < self.k + self.m
        return False  # tail: product and sum agree degreewise

    @property
    def is_local(self):
        return self.kind in LOCAL_KINDS

    def __str__(self):
        code = self.kind.value
        if self.kind is Kind.TORSION:
            return f"T({self.m},{self.k})"
        if self.kind in (Kind.LAURENT, Kind.LAURENT_SERIES) and self.k == 0:
            return code
        return f"{code}({self.k})"

    def __repr__(self):
        return f"Atom<{self}>"


def F(k=0):
    return Atom(Kind.FREE, k)


def L(k=0):
    return Atom(Kind.LAURENT, k)


def PS(k=0):
    return Atom(Kind.POWER_SERIES, k)


def LS(k=0):
    return Atom(Kind.LAURENT_SERIES, k)


def Q(k=0):
    return Atom(Kind.TAIL, k)


def T(m, k=0):
    return Atom(Kind.TORSION, k, m)


_ATOM_RE = re.compile(r"^(PS|LS|F|L|Q|T)(?:\(\s*([+-]?\d+)\s*(?:,\s*([+-]?\d+)\s*)?\))?$")


def parse_atom(text: str) -> Atom:
    s = text.strip().replace("−", "-")
    mt = _ATOM_RE.match(s)
    if not mt:
        raise ValueError(f"cannot parse atom {text!r}")
    code, a, b = mt.groups()
    kind = Kind(code)
    if kind is Kind.TORSION:
        if a is None or b is None:
            raise ValueError(f"torsion atom needs T(m,k): {text!r}")
        return T(int(a), int(b))
    if b is not None:
        raise ValueError(f"atom {code} takes one parameter: {text!r}")
    if a is None and kind not in (Kind.LAURENT, Kind.LAURENT_SERIES):
        raise ValueError(f"atom {code} needs a shift parameter: {text!r}")
    return Atom(kind, int(a) if a is not None else 0)


class AdmissibleModule:
    """A formal direct sum of atoms.

    Summands keep construction order so morphism matrices can be indexed by
    position; equality and hashing use the canonical (sorted) order.
    """

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        self.atoms = tuple(atoms)

    @classmethod
    def of(cls, *atoms):
        return cls(atoms)

    def canonical(self):
        return AdmissibleModule(sorted(self.atoms, key=Atom.sort_key))

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __getitem__(self, i):
        return self.atoms[i]

    def __add__(self, other):
        return AdmissibleModule(self.atoms + tuple(other.atoms))

    def is_zero(self):
        return not self.atoms

    def __eq__(self, other):
        if not isinstance(other, AdmissibleModule):
            return NotImplemented
        return sorted(self.atoms, key=Atom.sort_key) == sorted(other.atoms, key=Atom.sort_key)

    def __hash__(self):
        return hash(tuple(sorted(self.atoms, key=Atom.sort_key)))

    def identical(self, other):
        """Equality including summand order."""
        return self.atoms == other.atoms

    def shifted(self, k: int):
        return AdmissibleModule(a.shifted(k) for a in self.atoms)

    def has_tail(self):
        return any(a.kind is Kind.TAIL for a in self.atoms)

    def __str__(self):
        return render_module(self)

    def __repr__(self):
        return f"AdmissibleModule({render_module(self)})"


def M(*atoms) -> AdmissibleModule:
    return AdmissibleModule(atoms)


ZERO = AdmissibleModule()


def render_module(module: AdmissibleModule) -> str:
    if module.is_zero():
        return "0"
    return "+".join(str(a) for a in module.canonical())


def parse_module(text: str) -> AdmissibleModule:
    s = text.strip().replace("−", "-").replace(" ", "")
    if s in ("", "0"):
        return ZERO
    parts = re.split(r"\+(?![^()]*\))", s)
    return AdmissibleModule(parse_atom(p) for p in parts)


def shift_atom(module: AdmissibleModule, k: int) -> AdmissibleModule:
    return module.shifted(k)


# -- morphisms -------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    row: int
    col: int
    rule: str

    def __str__(self):
        return f"entry ({self.row}, {self.col}): {self.rule}"


class InvalidMorphism(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def _entry_rule(src: Atom, tgt: Atom, r: RatFunc):
    """None if ``r`` is an admissible Hom entry from ``src`` to ``tgt``, else the rule text."""
    if r.is_zero():
        return None
    s, g = src.kind, tgt.kind
    if s is Kind.FREE:
        if g is Kind.FREE:
            return None if r.is_polynomial() else "Hom(F, F) entries are polynomials"
        if g is Kind.LAURENT:
            return None if r.is_laurent_polynomial() else "Hom(F, L) entries are Laurent polynomials"
        if g is Kind.LAURENT_SERIES:
            return None
        if g in (Kind.POWER_SERIES, Kind.TORSION):
            return None if r.is_power_series() else "entries into PS/T must be power series"
        return "Tail admits only 0 or registered canonical maps"
    if s is Kind.LAURENT:
        if g is Kind.FREE:
            return "H0(RHom(L,F)) = 0"
        if g is Kind.LAURENT:
            return None if r.is_laurent_polynomial() else "Hom(L, L) entries are Laurent polynomials"
        if g is Kind.LAURENT_SERIES:
            return None
        if g is Kind.TORSION:
            return "Hom(L, T) = 0"
        if g is Kind.POWER_SERIES:
            return "Hom(L, PS) = 0"
        return "Tail admits only 0 or registered canonical maps"
    if s is Kind.POWER_SERIES:
        if g in (Kind.POWER_SERIES, Kind.TORSION):
            return None if r.is_power_series() else "entries into PS/T must be power series"
        if g is Kind.LAURENT_SERIES:
            return None
        if g is Kind.TAIL:
            return "Tail admits only 0 or registered canonical maps"
        return f"Hom(PS, {g.value}) = 0"
    if s is Kind.LAURENT_SERIES:
        if g is Kind.LAURENT_SERIES:
            return None
        return f"Hom(LS, {g.value}) = 0 in the calculus"
    if s is Kind.TAIL:
        if g is Kind.TAIL:
            # registered canonical maps: the K[t, 1/t]-action (t is invertible on K[[t]]/K[t])
            return None if r.is_laurent_polynomial() else "Tail admits only 0 or registered canonical maps"
        return "Tail admits only 0 or registered canonical maps"
    # torsion source
    if g is Kind.TORSION:
        if not r.is_power_series():
            return "entries into T must be power series"
        need = tgt.m - src.m
        v = r.truncate(tgt.m).valuation()
        if v is not None and v < need:
            return f"Hom(T(m), T(m')) entries need t-valuation >= m' - m = {need}"
        return None
    return f"Hom(T, {g.value}) = 0"


def normalize_entry(tgt: Atom, r: RatFunc) -> RatFunc:
    """Canonical form of ``r`` as an element of the target's Hom space."""
    if tgt.kind is Kind.TORSION and r.is_power_series():
        return r.truncate(tgt.m)
    return r


class AtomMorphism:
    """A matrix of rational-function entries between admissible modules.

    ``entries[i][j]`` maps source summand ``j`` to target summand ``i``.
    """

    __slots__ = ("source", "target", "entries")

    def __init__(self, source, target, entries=None, *, check=True):
        field = get_field()
        if entries is None:
            entries = [[RatFunc.zero(field)] * len(source) for _ in range(len(target))]
        rows = []
        for i, row in enumerate(entries):
            row = [RatFunc.coerce(x, field) for x in row]
            rows.append(tuple(normalize_entry(target[i], x) for x in row))
        if len(rows) != len(target) or any(len(r) != len(source) for r in rows):
            raise ValueError(f"entry matrix must be {len(target)}x{len(source)}")
        self.source = source
        self.target = target
        self.entries = tuple(rows)
        if check:
            bad = validate_morphism(self)
            if bad:
                raise InvalidMorphism(bad)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target)

    @classmethod
    def identity(cls, module):
        one, zero = RatFunc.one(), RatFunc.zero()
        return cls(module, module, [[one if i == j else zero for j in range(len(module))]
                                    for i in range(len(module))])

    @classmethod
    def from_dict(cls, source, target, entries: dict, *, check=True):
        zero = RatFunc.zero()
        rows = [[zero] * len(source) for _ in range(len(target))]
        for (i, j), x in entries.items():
            rows[i][j] = RatFunc.coerce(x)
        return cls(source, target, rows, check=check)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def nonzero(self):
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if not x.is_zero():
                    yield i, j, x

    def __matmul__(self, other):
        """``self o other``."""
        if not self.source.identical(other.target):
            raise ValueError(f"cannot compose: {other.target} -> {self.source}")
        zero = RatFunc.zero()
        rows = []
        for i in range(len(self.target)):
            row = []
            for j in range(len(other.source)):
                acc = zero
                for k in range(len(self.source)):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return AtomMorphism(other.source, self.target, rows, check=False)

    def __add__(self, other):
        if not (self.source.identical(other.source) and self.target.identical(other.target)):
            raise ValueError("sum of morphisms with different source/target")
        return AtomMorphism(self.source, self.target,
                            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                            check=False)

    def __neg__(self):
        return AtomMorphism(self.source, self.target, [[-a for a in r] for r in self.entries], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = RatFunc.coerce(c)
        return AtomMorphism(self.source, self.target, [[c * a for a in r] for r in self.entries],
                            check=False)

    def __eq__(self, other):
        if not isinstance(other, AtomMorphism):
            return NotImplemented
        return (self.source.identical(other.source) and self.target.identical(other.target)
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def homogeneous_degree(self):
        """The internal degree if every nonzero entry is a monomial of one common degree.

        Returns 0 for the zero morphism and None for inhomogeneous morphisms.
        """
        degrees = set()
        for i, j, x in self.nonzero():
            mono = x.as_monomial()
            if mono is None:
                return None
            degrees.add(mono[1] + self.target[i].k - self.source[j].k)
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.entries]
        return f"AtomMorphism({self.source} -> {self.target}: {', '.join(rows)})"


def validate_morphism(f: AtomMorphism) -> List[Violation]:
    """All entries violating the admissibility rules of their Hom space."""
    out = []
    for i, row in enumerate(f.entries):
        for j, r in enumerate(row):
            rule = _entry_rule(f.source[j], f.target[i], r)
            if rule is not None:
                out.append(Violation(i, j, rule))
    return out


# -- realization -----------------------------------------------------------------

def basis_at(module: AdmissibleModule, n: int) -> List[int]:
    """Summand indices whose shadow is nonzero at degree ``n`` (in summand order)."""
    return [i for i, a in enumerate(module.atoms) if a.support(n)]


def shadow(module: AdmissibleModule, window: DegreeWindow) -> GradedSpace:
    return GradedSpace.from_function(window, lambda n: len(basis_at(module, n)))


def t_action(module: AdmissibleModule, window: DegreeWindow) -> GradedMap:
    """Multiplication by ``t`` as a degree-1 self-map of the shadow."""
    field = get_field()
    space = shadow(module, window)
    blocks = {}
    for n in window:
        if n + 1 not in window:
            continue
        src, tgt = basis_at(module, n), basis_at(module, n + 1)
        pos = {s: r for r, s in enumerate(tgt)}
        rows = [[field.zero] * len(src) for _ in tgt]
        for c, s in enumerate(src):
            if s in pos:
                rows[pos[s]][c] = field.one
        blocks[n] = Matrix(rows, len(tgt), len(src), field)
    return GradedMap(space, space, 1, blocks)


def realize_module(module: AdmissibleModule, window: DegreeWindow) -> Tuple[GradedSpace, GradedMap]:
    return shadow(module, window), t_action(module, window)


def realize_morphism(f: AtomMorphism, window: DegreeWindow, degree: int = 0) -> GradedMap:
    """The internal-degree-``degree`` component of ``f`` on the window shadows."""
    field = get_field()
    src_space, tgt_space = shadow(f.source, window), shadow(f.target, window)
    blocks = {}
    for n in window:
        m = n + degree
        if m not in window:
            continue
        src, tgt = basis_at(f.source, n), basis_at(f.target, m)
        rows = []
        for i in tgt:
            b = f.target[i].k
            row = []
            for j in src:
                r = f.entries[i][j]
                row.append(r.laurent_coeff(degree - b + f.source[j].k) if r else field.zero)
            rows.append(row)
        blocks[n] = Matrix(rows, len(tgt), len(src), field)
    return GradedMap(src_space, tgt_space, degree, blocks)


def generator_image(f: AtomMorphism, col: int, row: int, window: DegreeWindow):
    """Coordinates of the image of generator ``col`` in summand ``row`` over the window degrees."""
    tgt = f.target[row]
    r = f.entries[row][col]
    return tuple(r.laurent_coeff(n - tgt.k) if tgt.support(n) else get_field().zero for n in window)


__all__ = [
    "Kind", "Atom", "F", "L", "PS", "LS", "Q", "T", "parse_atom", "AdmissibleModule", "M",
    "ZERO", "render_module", "parse_module", "shift_atom", "Violation", "InvalidMorphism",
    "AtomMorphism", "validate_morphism", "basis_at", "shadow", "t_action", "realize_module",
    "realize_morphism", "generator_image", "LOCAL_KINDS", "normalize_entry",
]
