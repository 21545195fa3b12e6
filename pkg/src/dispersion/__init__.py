"""Solvers for geometric max-dispersion: pick k of n integer points
maximizing the total pairwise distance.

Exact for fixed k under rectilinear (and planar Chebyshev) distances via
directional candidate sets; arbitrarily accurate for variable k via a
strip/cell approximation scheme; verified against a brute-force oracle.
Hot enumeration loops run in a compiled extension when available, with a
pure-Python fallback selected at import (see dispersion.backend).
"""

from .backend import HAVE_COMPILED, backend_name
from .baselines import brute_force, greedy_baseline
from .errors import (
    BudgetExceededError,
    DispersionError,
    InfeasibleError,
    ParseError,
)
from .exact import (
    DirectionFamily,
    candidate_union,
    enumerate_directions,
    solve_fixed_k,
)
from .geometry import (
    COORD_LIMIT,
    Metric,
    PointSet,
    directional_topk,
    inner_product,
    l1_distance,
    l2_distance,
    linf_distance,
    rotate_linf_to_l1,
    subset_weight,
)
from .instances import (
    InstanceSpec,
    ScaledDecimal,
    generate_instance,
    parse_instance,
    read_solution,
    write_instance,
    write_solution,
)
from .ptas import (
    CellConfig,
    PtasParams,
    assign_cells,
    bound_fraction,
    cell_direction,
    choose_m,
    enumerate_count_matrices,
    enumerate_splits,
    solve_ptas,
    strip_quotas,
)
from .solution import Solution, format_weight

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CellConfig",
    "COORD_LIMIT",
    "DirectionFamily",
    "DispersionError",
    "HAVE_COMPILED",
    "InfeasibleError",
    "InstanceSpec",
    "Metric",
    "ParseError",
    "PointSet",
    "PtasParams",
    "ScaledDecimal",
    "Solution",
    "assign_cells",
    "backend_name",
    "bound_fraction",
    "brute_force",
    "candidate_union",
    "cell_direction",
    "choose_m",
    "directional_topk",
    "enumerate_count_matrices",
    "enumerate_directions",
    "enumerate_splits",
    "format_weight",
    "generate_instance",
    "greedy_baseline",
    "inner_product",
    "l1_distance",
    "l2_distance",
    "linf_distance",
    "parse_instance",
    "read_solution",
    "rotate_linf_to_l1",
    "solve_fixed_k",
    "solve_ptas",
    "strip_quotas",
    "subset_weight",
    "write_instance",
    "write_solution",
]
