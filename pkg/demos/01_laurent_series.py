"""Hom from K[t] to itself in the punctured neighborhood is K((t))."""

from rabcone import F, LS, M, DegreeWindow, extension_witness, rab_complex
from rabcone.rabinowitz import h0_shadow, model_stage, rab_model

c = d = M(F(0))
rc = rab_complex(c, d)
print("source   :", rc.source)          # RHom(K[t,1/t], K[t]) = Q(0)[-1]
print("target   :", rc.target)          # RHom(K[t], K[t,1/t]) = L
print("H0       :", rc.h0())            # LS, via the certified extension rule
assert rc.h0() == M(LS())

# the same answer from the chain-level model, one t-degree at a time
w = DegreeWindow(-8, 8)
N = model_stage(w, c, d)
print("stage N  :", N)
print("H0 dims  :", h0_shadow(rab_model(F(0), F(0), N), w))

# why LS and not L + Q(0): the connecting map is not null-homotopic
rep = extension_witness(DegreeWindow(0, 8), 2, 6)
print("obstructed:", rep.obstructed, " zero map splits:", rep.control_splits)
print("system   :", rep.obstruction.unknowns, "unknowns,", rep.obstruction.equations, "equations")
