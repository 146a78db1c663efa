"""The free resolution of K[t,1/t], its dual, and the map onto the power series."""

from rabcone import DegreeWindow, build_resolution, dualize, sigma_map, verify_exact
from rabcone.atoms import realize_morphism

res = build_resolution(4)
print(res.complex)                    # r_n -> t s_n - s_(n+1)

dual = dualize(res)
d = realize_morphism(dual.map, DegreeWindow(0, 6))
for q in range(0, 6):
    print(q, [[str(x) for x in row] for row in d.block(q).rows])   # square, unitriangular

sig = sigma_map(dual)
print([str(x) for x in (sig @ dual.map).entries[0]])   # 0 on s_n*, n <= -1; -1 on s_0*

rep = verify_exact(build_resolution(6), DegreeWindow(0, 8), 2)
print("exact:", rep.ok)
for c in rep.degrees:
    print(" ", c.degree, c.dims)

# negative control: drop one unit entry
bad = verify_exact(build_resolution(6), DegreeWindow(0, 8), 2, corrupt=-3)
print("corrupted:", bad.failures)
