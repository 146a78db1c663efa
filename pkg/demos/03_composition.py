"""Composing classes (f, g): f is a tail class, g a Laurent polynomial matrix."""

from rabcone import F, M, RabClass, compose_classes, parse_ratfunc, unit_class

c = M(F(0))


def cls(f, g):
    return RabClass.make(c, c, [[parse_ratfunc(f)]], [[parse_ratfunc(g)]])


x0 = cls("0", "t^2")
x1 = cls("0", "t^3")
print(compose_classes(x1, x0).g.entries)          # t^5

# g acts on tail classes by multiplication, modulo Laurent polynomials
tail = cls("1/(1-t)", "1")
shift = cls("0", "t^-2")
y = compose_classes(shift, tail)
print(y.f)                                        # t^-2/(1-t) = t^-2 + t^-1 + 1/(1-t)

u = unit_class(c)
assert compose_classes(u, y) == y == compose_classes(y, u)
z = cls("t/(1-t^2)", "t+t^-1")
assert compose_classes(compose_classes(z, y), x0) == compose_classes(z, compose_classes(y, x0))
print("unit and associativity hold")
print(compose_classes(z, z).f, compose_classes(z, z).g.entries)
