"""Neighborhoods of product vertices in the superspecial (ell, ell)-isogeny graph."""

from .cases import CASES, E0_SQ, E1728_SQ, PAIR_DISTINCT, SQUARE_GENERIC, parse_scenario, scenarios_for
from .curves import (
    build_curve,
    census_agrees,
    concrete_kernel_census,
    endo_eigenlines,
    torsion_basis,
    velu_neighborhood,
    weil_pairing,
)
from .kernels import (
    analyze,
    classify,
    eigen_setup,
    enumerate_kernels,
    find_loops,
    orbit_decompose,
    vertex_partition,
)
from .neighborhood import elliptic_neighborhood, export, neighbor_table, verify_tables, vertex_census

__all__ = [
    "CASES", "E0_SQ", "E1728_SQ", "PAIR_DISTINCT", "SQUARE_GENERIC", "parse_scenario", "scenarios_for",
    "build_curve", "census_agrees", "concrete_kernel_census", "endo_eigenlines", "torsion_basis",
    "velu_neighborhood", "weil_pairing",
    "analyze", "classify", "eigen_setup", "enumerate_kernels", "find_loops", "orbit_decompose",
    "vertex_partition",
    "elliptic_neighborhood", "export", "neighbor_table", "verify_tables", "vertex_census",
]
