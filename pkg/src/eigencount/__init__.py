"""Explicit eigenvalue-count bounds for two-dimensional Schrodinger
operators with measure potentials, plus an independent counting oracle.

The library is organized bottom-up:

- orlicz: complementary N-function pairs and level/average/mixed norms
- measures: discrete measures with potentials, loading, projections
- line: one-dimensional weighted terms, bounds and interval partitions
- strip: transverse Robin spectra and the two strip bounds
- plane: ring decompositions and the plane bounds
- inertia: finite-difference discretizations and the inertia counter
- reporting: deterministic reports with tagged constants
"""

from .constants import THEOREM_CONSTANTS, ConstantInfo
from .errors import ConvergenceError, InputError, InvariantError
from .inertia import (
    OracleResult,
    SymmetricBandMatrix,
    discretize_1d,
    discretize_plane,
    discretize_strip,
    inertia_count,
)
from .line import (
    DyadicDecomposition,
    KappaCalculus,
    assign_dyadic,
    bound_1d,
    bound_1d_general,
    c_kappa,
    mollify_measure,
    optimize_phi,
    partition_interval,
    partition_piece_value,
    partition_quality,
    partition_target,
    phi_kappa,
    recompute_constants,
    weighted_terms_1d,
)
from .measures import (
    AhlforsEstimate,
    DiscreteMeasure,
    Grid2D,
    LoadedInput,
    Measure1D,
    PotentialField,
    ahlfors_check,
    cantor_gap_squares,
    cantor_measure,
    line_projection,
    load_measure,
    loads_measure,
    mass_in_ball,
    mass_in_rect,
    pushforward,
    radial_projection,
    spherical_rearrangement,
    transverse_projection,
)
from .orlicz import (
    NFunctionPair,
    WeightedSamples,
    average_norm,
    binv_asymptotic,
    eval_nfunction,
    inverse_nfunction,
    l1w_quasinorm,
    level_norm,
    log_pair,
    luxemburg_norm,
    mixed_norm,
    orlicz_norm,
    power_pair,
    tau_average_norm,
)
from .plane import (
    CornerGap,
    CoverReport,
    RingDecomposition,
    adaptive_cover,
    bound_plane_lebesgue,
    bound_plane_measure,
    corner_cutoff_energy,
    corner_inequality,
    khuri_bound,
    orlicz_terms_plane,
    weighted_terms_plane,
)
from .reporting import (
    BoundReport,
    SumRule,
    TermSeries,
    apply_rule,
    format_table,
    to_json_text,
)
from .strip import (
    RobinParams,
    TransverseSpectrum,
    bound_strip_neumann,
    bound_strip_robin,
    lambda12,
    region_classify,
    strip_orlicz_terms,
    strip_terms_neumann,
    strip_terms_robin,
    transverse_spectrum,
)

__version__ = "0.1.0"
