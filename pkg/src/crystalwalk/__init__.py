"""Limiting distributions of time-averaged continuous-time quantum walks.

The package covers finite graphs and their periodic lattice products:
numeric and closed-form limiting densities, band-structure collision scans,
exact torus dynamics with finite and infinite time averaging, and the
classical random-walk baseline.
"""

from .classical import (
    WalkReport,
    is_bipartite,
    iterate_distribution,
    stationary_distribution,
    transition_matrix,
    walk_report,
)
from .closed_forms import (
    CLOSED_FORM_FAMILIES,
    closed_form_density,
    closed_form_labels,
    d_cycle,
    d_cycle_exact,
    d_hypercube,
    d_hypercube_exact,
    d_path,
    d_path_exact,
    d_star,
    d_star_exact,
)
from .dynamics import (
    PAIR_SUM_LIMIT,
    STATE_BUDGET,
    TimeAveragedDistribution,
    TorusOperator,
    apply_adjacency,
    build_torus,
    evolve,
    infinite_time_averaged,
    limit_prediction,
    time_averaged,
    total_variation,
)
from .floquet import (
    DEFAULT_COLLISION_DELTA,
    BandStructure,
    BaseLattice,
    FloquetScanReport,
    GridDensityResult,
    base_band,
    build_floquet_matrix,
    flat_band_check,
    floquet_condition_fraction,
    general_density,
    product_bands,
    product_spec,
)
from .graphs import (
    FAMILIES,
    EdgeListError,
    FiniteGraph,
    ParameterError,
    PeriodicGraphSpec,
    ProductKind,
    build_named,
    from_edge_list,
    honeycomb_spec,
    zd_product_spec,
)
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    DensityMatrix,
    EigenSolverError,
    NumericalError,
    ProjectionKernel,
    SpectralDecomposition,
    analytic_spectrum,
    cluster_eigenvalues,
    density_from_decomposition,
    eigendecompose_symmetric,
    limiting_density,
    projection_kernels,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # graphs
    "FiniteGraph", "PeriodicGraphSpec", "ProductKind", "ParameterError",
    "EdgeListError", "FAMILIES", "build_named", "from_edge_list",
    "zd_product_spec", "honeycomb_spec",
    # spectral
    "DEFAULT_CLUSTER_TOL", "NumericalError", "EigenSolverError",
    "SpectralDecomposition", "ProjectionKernel", "DensityMatrix",
    "cluster_eigenvalues", "eigendecompose_symmetric", "projection_kernels",
    "density_from_decomposition", "limiting_density", "analytic_spectrum",
    # closed forms
    "CLOSED_FORM_FAMILIES", "d_cycle", "d_path", "d_star", "d_hypercube",
    "d_cycle_exact", "d_path_exact", "d_star_exact", "d_hypercube_exact",
    "closed_form_density", "closed_form_labels",
    # floquet
    "DEFAULT_COLLISION_DELTA", "BaseLattice", "BandStructure",
    "FloquetScanReport", "GridDensityResult", "base_band",
    "build_floquet_matrix", "product_spec", "product_bands",
    "flat_band_check", "floquet_condition_fraction", "general_density",
    # dynamics
    "STATE_BUDGET", "PAIR_SUM_LIMIT", "TorusOperator",
    "TimeAveragedDistribution", "build_torus", "evolve", "apply_adjacency",
    "time_averaged", "infinite_time_averaged", "total_variation",
    "limit_prediction",
    # classical
    "WalkReport", "transition_matrix", "stationary_distribution",
    "is_bipartite", "iterate_distribution", "walk_report",
]
