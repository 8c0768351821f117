"""Exact-arithmetic cobordism invariants of homogeneous spaces G/H.

Everything is computed over arbitrary-precision rationals from Lie-theoretic
root data: universal toric genus via torus fixed-point localization, cobordism
classes and characteristic numbers s_omega, Hirzebruch chi_y / signature /
Todd genera, rigidity functionals, invariant almost complex and SU structure
inventories, and twisted products of homogeneous fibrations.
"""

__version__ = "0.1.0"

from . import exactalg, rootdata, cobordism, structures, toricgenus, hirzebruch, catalog

__all__ = [
    "exactalg",
    "rootdata",
    "cobordism",
    "structures",
    "toricgenus",
    "hirzebruch",
    "catalog",
]
