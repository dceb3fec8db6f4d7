"""Characteristic cycles of cominuscule Schubert varieties.

CSM and Mather classes, local Euler obstructions and parabolic
Kazhdan-Lusztig polynomials, with the irreducibility check e = P(1).
"""
from .classes import ClassMatrix, ObstructionMatrix, csm_cell, euler_obstructions, mather
from .kernels import DEFAULT_BACKEND
from .kl import KLCache, KLPolynomial, kl_parabolic, kl_poly
from .rootsys import CartanDatum, RootSystem, cartan_matrix, cominuscule_nodes, root_system
from .verify import ObstructionReport, check_positivity, sweep, verify_irreducible
from .weyl import ParabolicData, WeylGroup, generate_WP, longest_element, weyl_group

__version__ = "0.1.0"

__all__ = [
    "CartanDatum", "ClassMatrix", "DEFAULT_BACKEND", "KLCache", "KLPolynomial",
    "ObstructionMatrix", "ObstructionReport", "ParabolicData", "RootSystem", "WeylGroup",
    "cartan_matrix", "check_positivity", "cominuscule_nodes", "csm_cell", "euler_obstructions",
    "generate_WP", "kl_parabolic", "kl_poly", "longest_element", "mather", "root_system",
    "sweep", "verify_irreducible", "weyl_group",
]
