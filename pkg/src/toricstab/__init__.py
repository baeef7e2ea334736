"""toricstab: executable combinatorics of fans, non-resultant systems, and
their stability dimensions."""

__version__ = "0.1.0"

from .complexes import (
    NonFaceFamily,
    PointInProduct,
    SimplicialComplex,
    UndefinedValueError,
    UnsupportedFanError,
    complex_power,
    dim_arrangement,
    dim_config,
    in_arrangement,
    in_polyhedral_product,
    minimal_non_faces,
    non_faces,
    primitive_collections,
    r_min,
    underlying_complex,
)
from .fans import (
    Fan,
    FanJsonError,
    FanStructureError,
    ValidationReport,
    builtin_fan,
    cox_group_rank,
    cox_group_sample,
    degree_is_null,
    fan_from_complex,
    fan_from_json,
    fan_from_max_cones,
    fan_power,
    fan_to_json,
    find_degree_vector,
    is_complete,
    is_smooth,
    load_fan,
    primitive_ray,
    spans_lattice,
    validate_fan,
)
from .hermite import (
    HermiteSpec,
    RankCheck,
    bundle_rank,
    confluent_vandermonde,
    exact_rank,
    hermite_dimension,
    hermite_solution,
    stacked_system,
    verify_rank_claim,
)
from .polynomials import (
    GaussianRational,
    JetTuple,
    MembershipResult,
    PolySystem,
    RationalPoly,
    RootPoly,
    derivative,
    evaluate_jet,
    gcd_monic,
    is_member,
    jet,
    jet_section,
    mult_part,
    n_of,
    phi_map,
    stabilize,
    system_from_json,
    system_to_json,
    witness_roots,
)
from .stability import (
    BandResult,
    CapExceededError,
    E1Support,
    StabilityReport,
    connectivity_bound,
    e1_support,
    min_unknown_band,
    stability_dim,
    stability_dim_n1,
    stability_dim_projective,
    stability_report,
    truncation_dim,
)
