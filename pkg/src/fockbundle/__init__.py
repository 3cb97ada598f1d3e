"""Two-mode oscillator sections: basis algebra, chart geometry, evolution,
star divisors, coherent states.

The library keeps three layers apart on purpose: holomorphic amplitude
algebra (`fock`), the chart/quotient geometry under it (`geometry`,
`divisor`), and exact time evolution plus the conserved current
(`dynamics`).  `coherent` builds displaced vacua two independent ways,
and `checks` replays the invariants behind the `check` CLI command.
"""

from .backend import backend_name
from .coherent import (
    DisplacementParam,
    annihilation_eigen_residual,
    coherent_coeffs,
    displacement_apply,
    ladder_map,
    norm_tail_bound,
)
from .divisor import (
    Divisor,
    RootConfig,
    chordal_distance,
    divisor_degree,
    divisor_match,
    equivariant_divisor,
    from_local_coeffs,
    local_coeffs,
    majorana_stars,
    sphere_coords,
)
from .dynamics import (
    OrbitSample,
    Trajectory,
    charge_current,
    charge_density,
    classical_orbit,
    continuity_residual,
    continuity_residual_grid,
    evolve_state,
    extended_point_orbit,
    fiber_rotation,
    period,
    sample_trajectory,
    zn_orbit,
)
from .errors import (
    ChartPoleError,
    FockBundleError,
    InvalidGridError,
    MixedGradeError,
    NearOriginError,
    NonConvergenceError,
    TruncationOverflowError,
    TruncationTailWarning,
    ZeroSectionError,
)
from .fock import (
    Bidegree,
    HoloPoly,
    PhasePoint,
    PhysicalConstants,
    SectionState,
    apply_annihilation,
    apply_creation,
    grade_project,
    grades,
    hamiltonian_apply,
    inner_product,
    mc_inner_product,
    monomial_eval,
    norm,
    number_apply,
    poly_add,
    poly_eval,
    poly_scale,
    section_eval,
    top_grade,
)
from .geometry import (
    Angles,
    BlowupPoint,
    ChartPoint,
    LensPoint,
    OrbifoldRep,
    angles,
    blowdown,
    blowup_lift,
    chart_transition,
    cocycle_residual,
    from_orbifold,
    gauge_fix_fiber,
    hopf_project,
    lens_point,
    on_point_equal,
    to_orbifold,
    zn_apply,
    zn_canonicalize,
    zn_element,
)

__version__ = "0.1.0"
