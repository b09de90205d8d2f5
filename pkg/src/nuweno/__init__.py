"""High-order WENO reconstruction on nonuniform grids, with a 1D FV solver."""

from .grid import (
    PAPER_SEEDS,
    CellGrid,
    StencilGeometry,
    WichmannHillState,
    algebraic_test_stencil,
    geometric_delta_grid,
    perturbed_grid,
    wichmann_hill_next,
)
from .reconstruct import (
    Framework,
    SampleData,
    cell_leading_term,
    lagrange_cell_eval,
    lagrange_point_eval,
    undivided_difference,
)
from .weno import (
    ReconstructionPlan,
    WenoOutput,
    WenoParams,
    global_smoothness,
    reconstruct,
    reconstruction_plan,
    smoothness_indicators,
    weights,
    weno_params,
)
from .fvm import (
    BoundaryKind,
    BoundarySpec,
    CflSpeed,
    FixedDt,
    FluxKind,
    FluxSpec,
    InterfaceReconstructor,
    PowerLaw,
    StateField,
    compute_dt,
    integrate,
    interface_states,
    llf_flux,
    semidiscrete_rhs,
    tvd_rk2_step,
    tvd_rk3_step,
)
from .problems import (
    ProblemDef,
    advection_problem,
    burgers_problem,
    delta_problem,
    error_norms,
    init_cell_averages,
    shu_osher_problem,
    solve,
)

__version__ = "0.1.0"
