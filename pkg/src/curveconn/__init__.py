"""Numerical toolkit for 1-connected curves on smooth surfaces.

Intersection data, adjunction genera, connectedness numbers by exhaustive
lattice enumeration, and consistency reports for curves asserted to lie in
the fixed part of the canonical system of a 1-connected curve.
"""

__version__ = "0.1.0"

from .config import (ConfigurationError, Decomposition, Divisor, SurfaceConfiguration,
                     component_genus, is_subdivisor, support_and_reducedness,
                     validate_configuration)
from .connectivity import (BudgetExceeded, ConnectivityResult, EnumerationBudget,
                           connectedness_number, enumerate_decompositions, is_m_connected,
                           split_connectivity_check)
from .intersection import GenusReport, additivity_check, arithmetic_genus, intersect
from .structure import (ChainDecomposition, ConsistencyReport, chain_decomposition_search,
                        enumerate_subcurves, fixed_part_report, genus_spectrum,
                        lemma_b_shadow_check, lemma_dec_reduced_witness, prop_go_check,
                        reduced_h0, reduced_h1)

__all__ = [
    "ChainDecomposition", "ConfigurationError", "ConnectivityResult", "ConsistencyReport",
    "Decomposition", "Divisor", "EnumerationBudget", "BudgetExceeded", "GenusReport",
    "SurfaceConfiguration", "additivity_check", "arithmetic_genus",
    "chain_decomposition_search", "component_genus", "connectedness_number",
    "enumerate_decompositions", "enumerate_subcurves", "fixed_part_report", "genus_spectrum",
    "intersect", "is_m_connected", "is_subdivisor", "lemma_b_shadow_check",
    "lemma_dec_reduced_witness", "prop_go_check", "reduced_h0", "reduced_h1",
    "split_connectivity_check", "support_and_reducedness", "validate_configuration",
]
