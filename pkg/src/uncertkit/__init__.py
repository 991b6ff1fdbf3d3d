"""uncertkit: numerical verification and exploration of uncertainty-principle
functionals, operator classes and extremal function families on sampled grids."""

from .grid import (
    DESK_SCALE,
    GridSpec,
    NormResult,
    SampledField,
    boundary_mass,
    desk_grid,
    dilate,
    entropy,
    export_csv,
    field_from_bytes,
    field_to_bytes,
    load_field,
    lp_norm,
    save_field,
    variance,
    weighted_norm,
)
from .families import (
    FamilyHandle,
    gaussian,
    gc_lq_bounds,
    hermite_norm_asymptotics,
    hermite_values,
    make_falpha,
    make_gc,
    make_hermite,
    parse_family,
)
from .operators import (
    Diffeomorphism,
    FourierTransform,
    FractionalALaplacian,
    FractionalFourier,
    Identity,
    InverseFourierTransform,
    LinearOperator,
    MatrixOperator,
    OperatorComposition,
    OperatorError,
    OperatorSum,
    PartitionSpec,
    PhaseMultiplier,
    StepMultiplier,
    fractional_a_laplacian,
    halfspace_partition,
    load_operator,
    make_twist_diffeo,
    operator_from_dict,
    operator_to_dict,
    save_operator,
    scale_operator,
    uniform_partition,
)
from .classify import (
    ClassReport,
    classify_operator,
    divergence_demo_identity,
    estimate_1_to_inf,
    estimate_k,
    special_residual,
    standard_family,
)
from .inequalities import (
    FunctionalSpec,
    ParameterWindowError,
    VerificationReport,
    babenko_beckner,
    check_embedding,
    check_fractional_laplacian,
    check_generalized_up,
    check_hausdorff_young,
    check_heisenberg_nd,
    check_weighted_up,
    entropic_gap,
    evaluate_spec,
    functional_F,
    functional_G,
    hausdorff_young_bound,
    heisenberg_window,
    holder_dual,
    norm_up_bound,
    sobolev_rhs_general,
    sobolev_rhs_simple,
)
from .explorer import (
    SearchResult,
    SweepResult,
    fit_loglog,
    minimize_functional,
    probe_conjecture_4_13,
    run_sequence,
    shapiro_growth,
    sweep,
)

__version__ = "0.1.0"
