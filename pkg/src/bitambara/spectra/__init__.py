"""Ideals, primality searches and prime spectra."""

from .families import PrimeFamily, SpectrumTable, Strata, assemble, evaluate_template, strata_for
from .ideals import IdealViolation, TambaraIdeal, ideal_closure, is_ideal
from .pipeline import (
    HullRefused,
    add_transfers,
    compute_spectrum,
    extend_component_prime,
    ghost_points,
    ghost_spectrum,
    hull_transport,
    spectrum_self_compatible,
)
from .primality import (
    generalized_products,
    is_g_prime_witness,
    g_prime_search,
    q_condition,
    radical_audit,
    refute_primality,
    translates,
)
from .shape import homeomorphic, homeomorphism_classes, shape_graph, to_dot

__all__ = [
    "TambaraIdeal", "IdealViolation", "is_ideal", "ideal_closure",
    "generalized_products", "q_condition", "refute_primality", "translates",
    "is_g_prime_witness", "g_prime_search", "radical_audit",
    "PrimeFamily", "SpectrumTable", "Strata", "strata_for", "assemble", "evaluate_template",
    "HullRefused", "compute_spectrum", "spectrum_self_compatible", "add_transfers",
    "hull_transport", "ghost_spectrum", "ghost_points", "extend_component_prime",
    "shape_graph", "homeomorphic", "homeomorphism_classes", "to_dot",
]
