"""Exact computations of Hom spaces in the formal punctured neighborhood of
infinity of Perf K[t], with a brute-force oracle on degree windows."""

from .atoms import (AdmissibleModule, Atom, AtomMorphism, Kind, F, L, LS, M, PS, Q, T, ZERO,
                    parse_atom, parse_module, realize_module, realize_morphism, render_module,
                    shift_atom, validate_morphism)
from .complexes import ChainMap, Complex, cohomology, cone, null_homotopy_obstruction, shift
from .fields import GF, QQ, get_field, parse_field, use_field
from .functors import localize, right_adj, torsion_part, unit_map, verify_adjunction
from .graded import DegreeWindow, GradedMap, GradedSpace, compose, homology_at, kernel_image
from .oracle import brute_hom, compare, stabilization_check
from .rabinowitz import (RabClass, compose_classes, extension_witness, rab_complex, remark_form,
                         unit_class)
from .ratfunc import RatFunc, parse_ratfunc
from .resolution import build_resolution, dualize, sigma_map, verify_exact
from .rhom import RHomResult, Tower, rhom_atoms, rhom_modules, tower_lim

__all__ = [
    "AdmissibleModule", "Atom", "AtomMorphism", "Kind", "F", "L", "LS", "M", "PS", "Q", "T",
    "ZERO", "parse_atom", "parse_module", "realize_module", "realize_morphism", "render_module",
    "shift_atom", "validate_morphism", "ChainMap", "Complex", "cohomology", "cone",
    "null_homotopy_obstruction", "shift", "GF", "QQ", "get_field", "parse_field", "use_field",
    "localize", "right_adj", "torsion_part", "unit_map", "verify_adjunction", "DegreeWindow",
    "GradedMap", "GradedSpace", "compose", "homology_at", "kernel_image", "brute_hom",
    "compare", "stabilization_check", "RabClass", "compose_classes", "extension_witness",
    "rab_complex", "remark_form", "unit_class", "RatFunc", "parse_ratfunc", "build_resolution",
    "dualize", "sigma_map", "verify_exact", "RHomResult", "Tower", "rhom_atoms", "rhom_modules",
    "tower_lim",
]

__version__ = "0.1.0"
