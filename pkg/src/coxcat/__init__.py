"""
Coxeter-Catalan combinatorics in exact arithmetic.

Noncrossing partitions, c-sortable elements, translated Bruhat intervals,
their moment polytopes, GKM cohomology bases and finite-field Plucker
checks for small Weyl groups.

>>> from coxcat import root_system, build_nc, coxeter_element
>>> rs = root_system("A", 3)
>>> len(build_nc(coxeter_element(rs, [1, 3, 2])).elements)
14
"""

from .rootsys import (
    CoxcatError, ValidationError, NotFiniteTypeError, MixedGroupError,
    CartanDatum, Root, WeylElement, Reflection, RootSystemData,
    classical_datum, custom_datum, build_root_system, root_system,
    root_of_reflection, reflection_of_root, act, enumerate_weyl,
)
from .catalan import CoxeterElement, NcLattice, coxeter_element, build_nc, enumerate_coxeter_elements

__all__ = [
    "CoxcatError", "ValidationError", "NotFiniteTypeError", "MixedGroupError",
    "CartanDatum", "Root", "WeylElement", "Reflection", "RootSystemData",
    "classical_datum", "custom_datum", "build_root_system", "root_system",
    "root_of_reflection", "reflection_of_root", "act", "enumerate_weyl",
    "CoxeterElement", "NcLattice", "coxeter_element", "build_nc", "enumerate_coxeter_elements",
]

__version__ = "0.1.0"
