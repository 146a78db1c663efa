"""Polynomials and rational functions in one variable ``t`` over an exact field.

Rational functions are kept reduced with denominator ``t^a * u`` where
``u(0) = 1``.  That normal form makes the Laurent expansion at ``t = 0``
direct: ``r = t^(-a) * num * u^(-1)``.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .fields import get_field


class Poly:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of ``t^i``."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=None):
        field = field or get_field()
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def monomial(cls, c, j, field=None):
        field = field or get_field()
        if j < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([field.zero] * j + [field(c)], field)

    @classmethod
    def constant(cls, c, field=None):
        return cls([c], field)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _new(self, cs):
        return Poly(cs, self.field)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return self._new(())
            out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return self._new(out)
        c = self.field(other)
        return self._new([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``t^k`` (``k >= 0``) or divide exactly (``k < 0``)."""
        if k >= 0:
            return self._new([self.field.zero] * k + list(self.coeffs))
        if self.coeffs and (self.valuation() or 0) < -k:
            raise ValueError("inexact division by a power of t")
        return self._new(self.coeffs[-k:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        lead_inv = self.field.one / other.leading()
        dlen = len(other.coeffs)
        for i in range(len(rem) - dlen, -1, -1):
            c = rem[i + dlen - 1] * lead_inv
            q[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return self._new(q), self._new(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self * (self.field.one / self.leading())

    def truncate(self, m):
        """Reduce modulo ``t^m``."""
        return self._new(self.coeffs[:m])

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(other, self.field)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coeffs))

    def __repr__(self):
        return f"Poly({render_poly(self)})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """``(g, s, u)`` with ``s a + u b = g`` and ``g`` monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly([1], f), Poly([], f)
    u0, u1 = Poly([], f), Poly([1], f)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    inv = f.one / r0.leading()
    return r0 * inv, s0 * inv, u0 * inv


def render_poly(p: Poly, var="t") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        terms.append(_term(c, i, p.field, var))
    out = terms[0]
    for term in terms[1:]:
        out += " - " + term[1:] if term.startswith("-") else " + " + term
    return out


def _term(c, i, field, var):
    s = field.render(c)
    neg = s.startswith("-")
    mag = s[1:] if neg else s
    if i == 0:
        body = mag
    else:
        mono = var if i == 1 else f"{var}^{i}"
        body = mono if mag == "1" else f"{mag}*{mono}"
    return ("-" if neg else "") + body


class RatFunc:
    """A reduced rational function ``num / den`` in ``t``."""

    __slots__ = ("num", "den", "field", "_series")

    def __init__(self, num: Poly, den: Poly | None = None, *, _reduced=False):
        field = num.field
        den = den if den is not None else Poly([1], field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1], field)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            # normalize: lowest nonzero coefficient of den is 1
            low = den.coeff(den.valuation())
            if low != field.one:
                inv = field.one / low
                num, den = num * inv, den * inv
        self.num = num
        self.den = den
        self.field = field
        self._series = None

    # construction ---------------------------------------------------------------
    @classmethod
    def const(cls, c, field=None):
        field = field or get_field()
        return cls(Poly([c], field))

    @classmethod
    def zero(cls, field=None):
        return cls.const(0, field)

    @classmethod
    def one(cls, field=None):
        return cls.const(1, field)

    @classmethod
    def monomial(cls, c, j, field=None):
        """``c * t^j`` for any integer ``j``."""
        field = field or get_field()
        if j >= 0:
            return cls(Poly.monomial(c, j, field))
        return cls(Poly([c], field), Poly.monomial(1, -j, field))

    @classmethod
    def t(cls, field=None):
        return cls.monomial(1, 1, field)

    @classmethod
    def coerce(cls, x, field=None):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x)
        if isinstance(x, str):
            return parse_ratfunc(x, field)
        return cls.const(x, field)

    # arithmetic -----------------------------------------------------------------
    def __add__(self, other):
        other = RatFunc.coerce(other, self.field)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other, self.field))

    def __rsub__(self, other):
        return RatFunc.coerce(other, self.field) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other, self.field)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other, self.field).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other, self.field) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.one(self.field)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other, self.field)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # predicates -----------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def t_power_of_den(self):
        return self.den.valuation()

    def unit_part_of_den(self):
        return self.den.shift(-self.den.valuation())

    def is_polynomial(self):
        return self.den.degree == 0

    def is_laurent_polynomial(self):
        return self.unit_part_of_den().degree == 0

    def is_power_series(self):
        return self.den.valuation() == 0

    def valuation(self):
        """t-adic valuation; ``None`` for zero."""
        if self.is_zero():
            return None
        return self.num.valuation() - self.den.valuation()

    def as_monomial(self):
        """``(c, j)`` if this is ``c * t^j`` with ``c != 0``, else ``None``."""
        if self.is_zero() or not self.is_laurent_polynomial():
            return None
        v = self.num.valuation()
        if self.num.degree != v:
            return None
        return self.num.coeff(v), v - self.den.valuation()

    def is_unit_in(self, kind):
        """Whether multiplication by this scalar is invertible on an atom of ``kind``."""
        if self.is_zero():
            return False
        if kind in ("L", "Q"):
            return self.as_monomial() is not None
        if kind == "LS":
            return True
        if kind in ("F",):
            return self.as_monomial() is not None and self.as_monomial()[1] == 0
        if kind in ("PS", "T"):
            return self.is_power_series() and self.valuation() == 0
        return False

    # expansion --------------------------------------------------------------------
    def laurent_coeff(self, j: int):
        """Coefficient of ``t^j`` in the Laurent expansion at ``t = 0``."""
        a = self.den.valuation()
        k = j + a
        if k < 0:
            return self.field.zero
        if self.is_laurent_polynomial():
            c = self.num.coeff(k)
            return c * (self.field.one / self.den.coeff(a))
        return self._num_times_unit_inverse(k)

    def _num_times_unit_inverse(self, k):
        series = self._unit_inverse_series(k + 1)
        return sum((self.num.coeff(i) * series[k - i] for i in range(0, min(k, self.num.degree) + 1)
                    if self.num.coeff(i)), self.field.zero)

    def _unit_inverse_series(self, n):
        if self._series is None:
            self._series = [self.field.one]  # u(0) = 1 by normalization
        u = self.unit_part_of_den()
        s = self._series
        while len(s) < n:
            k = len(s)
            acc = self.field.zero
            for i in range(1, min(k, u.degree) + 1):
                acc = acc + u.coeff(i) * s[k - i]
            s.append(-acc)
        return s

    def series(self, lo: int, hi: int):
        return [self.laurent_coeff(j) for j in range(lo, hi + 1)]

    def support_bounds(self):
        """(lowest, highest) exponent for Laurent polynomials; highest is None otherwise."""
        if self.is_zero():
            return None
        lo = self.valuation()
        if self.is_laurent_polynomial():
            return lo, self.num.degree - self.den.valuation()
        return lo, None

    def truncate(self, m: int):
        """Reduce modulo ``t^m``; requires a power series."""
        if not self.is_power_series():
            raise ValueError(f"{self} is not a power series; cannot reduce mod t^{m}")
        return RatFunc(Poly([self.laurent_coeff(j) for j in range(m)], self.field))

    def tail_part(self):
        """Canonical representative modulo Laurent polynomials.

        Every rational function splits as (Laurent polynomial) + q/u with
        ``deg q < deg u`` and ``u(0) = 1``; the second summand is returned.
        """
        u = self.unit_part_of_den()
        if u.degree == 0:
            return RatFunc.zero(self.field)
        a = self.den.valuation()
        # q = num * t^(-a) mod u; t is invertible mod u since u(0) != 0
        ta = Poly.monomial(1, a, self.field)
        g, s, _ = poly_xgcd(ta, u)
        q = (self.num * s) % u
        return RatFunc(q, u)

    def __repr__(self):
        return f"RatFunc({render_ratfunc(self)})"

    def __str__(self):
        return render_ratfunc(self)


def render_ratfunc(r: RatFunc) -> str:
    if r.is_polynomial():
        return render_poly(r.num * (r.field.one / r.den.coeff(0)))
    if r.is_laurent_polynomial():
        a = r.den.valuation()
        terms = []
        for i, c in enumerate(r.num.coeffs):
            if c:
                terms.append(_laurent_term(c, i - a, r.field))
        out = terms[0]
        for term in terms[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out
    num = render_poly(r.num)
    den = render_poly(r.den)
    if len(r.num.coeffs) - sum(1 for c in r.num.coeffs if not c) > 1:
        num = f"({num})"
    return f"{num}/({den})"


def _laurent_term(c, j, field):
    if j >= 0:
        return _term(c, j, field, "t")
    s = field.render(c)
    neg = s.startswith("-")
    mag = s[1:] if neg else s
    mono = f"t^{j}"
    body = mono if mag == "1" else f"{mag}*{mono}"
    return ("-" if neg else "") + body


def parse_ratfunc(text: str, field=None) -> RatFunc:
    """Parse expressions such as ``t^3``, ``1/(1-t)``, ``2/3*t^-1 + t``."""
    field = field or get_field()
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc
    try:
        return _eval(tree.body, field, text)
    except ZeroDivisionError as exc:
        raise ValueError(f"division by zero in {text!r}") from exc


def _eval(node, field, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return RatFunc.const(node.value, field)
    if isinstance(node, ast.Name) and node.id == "t":
        return RatFunc.t(field)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, field, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = _int_literal(node.right, text)
            return _eval(node.left, field, text) ** exp
        a = _eval(node.left, field, text)
        b = _eval(node.right, field, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ValueError(f"unsupported syntax in scalar {text!r}")


def _int_literal(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    raise ValueError(f"exponent must be an integer literal in {text!r}")
