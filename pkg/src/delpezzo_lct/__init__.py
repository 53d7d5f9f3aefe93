"""Exact Picard-lattice arithmetic and log canonical thresholds for del
Pezzo surfaces: curve-class enumeration, weighted-cluster resolution of
divisor configurations, threshold certificates, and verification suites."""

from .clusters import (
    ClusterError,
    ClusterNode,
    Component,
    ConfigPoint,
    DivisorConfiguration,
    Germ,
    Incidence,
    InconsistentConfigError,
    LctCertificate,
    WeightedCluster,
    canonical_form,
    compile_configuration,
    is_log_canonical,
    lct_at_point,
    lct_global,
    local_intersection,
    log_discrepancy,
    multiplicity_at,
    non_klt_locus,
    scale_configuration,
    transform_by_blowup,
    valuation,
    with_coefficients,
)
from .glct import (
    SCENARIOS,
    GlctScenario,
    WitnessRecord,
    scenario,
    verify_complementary_sections,
    verify_corollary,
    verify_degree4_bound_chain,
    verify_lemma_G,
    verify_lemma_H,
    verify_lines,
    verify_table1,
    witness,
)
from .lattice import (
    BLOWUP,
    QUADRIC,
    DivisorClass,
    LatticeError,
    LatticeIsometry,
    SurfaceModel,
    apply_isometry,
    arithmetic_genus,
    degree_of,
    enumerate_classes,
    find_model_isometry,
    intersect,
    line_intersection_matrix,
    make_surface,
)
from .oracles import (
    brute_force_classes,
    resolve_germ,
    resolve_parametrized,
    simulate_pullbacks,
)
from .properties import run_property_suites
from .report import CheckResult, Report

__all__ = [name for name in dir() if not name.startswith("_")]
