"""Exact arithmetic for real tropical geometry.

Sign-and-valuation computations with hyperfields, oriented valuated
matroids, real tropical linear spaces, signed seminorms, and real
Bergman fans, all over exact rationals.
"""

from .hyperfields import (
    INF,
    KV,
    RT,
    RT_ONE,
    RT_ZERO,
    TV,
    HyperSet,
    Val,
    ball,
    contains_zero,
    display_rt,
    hyper_add,
    hyper_div,
    hyper_mul,
    hyper_neg,
    hyper_sum,
    hyperset_add,
    hyperset_contains,
    pushmap,
    rt,
    rt_cmp,
    singleton,
)
from .puiseux import (
    FineValue,
    PuiseuxParseError,
    PuiseuxSeries,
    as_series,
    compare,
    det,
    format_series,
    fval,
    parse_puiseux,
    signed_value,
)
from .matroids import (
    CovectorPoset,
    EnumerationCapError,
    GrassmannPlucker,
    GroundSet,
    RankDeficientError,
    Report,
    SignedCircuit,
    UnderlyingMatroid,
    check_circuit_axioms,
    check_covector_axioms,
    check_gp_relations,
    circuits_from_matrix,
    cocircuits_from_gp,
    covector_closure,
    covector_zero_flat,
    gp_from_matrix,
    ground_from_matrix,
    normalize_rt_vector,
    pushforward_gp,
    rt_cocircuits_from_gp,
)
from .tropical import (
    BergmanFan,
    LinearEmbedding,
    ProjPoint,
    bergman_fan,
    bergman_member,
    hyperplane_member,
    linear_space_member,
    trop_r_point,
    unsigned_hyperplane_member,
)
from .seminorms import (
    CompatibleFamily,
    Composition,
    DiagonalSeminorm,
    DiagonalizationError,
    FamilyError,
    FlagStep,
    InconsistentFamilyError,
    Morphism,
    NoApplicableEmbeddingError,
    PhiImage,
    SeminormExpr,
    SignedFlag,
    SingularBasisError,
    UnsignedFlag,
    check_diagram_commutes,
    cocircuit_value,
    compose,
    decomposition_value,
    diagonalize,
    family_from_seminorm,
    flag_of,
    flags_equivalent,
    nondiag_fixture,
    phi_abs,
    phi_fiber,
    project_point,
    reconstruct_from_family,
    scaled_cocircuit_decomposition,
    seminorm_from_flag,
    standard_leaf,
)

__version__ = "0.1.0"
