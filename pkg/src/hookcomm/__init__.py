"""Jordan types in the nilpotent commutator of a nilpotent hook matrix.

A nilpotent matrix of Jordan type (n, 1^m) has a nilpotent commutant
whose elements realize a precisely describable set of Jordan types: the
multiset unions of an almost rectangular partition of n, n - 1, or n - 2
with a free remainder, under small arithmetic side conditions.  This
package decides membership, enumerates the full set, constructs explicit
witness matrices, and cross checks everything against exhaustive and
randomized linear algebra oracles over the rationals.
"""

from .classify import (
    CommutationCertificate,
    classification_table,
    d_hook,
    decide,
    enumerate_commuting,
    known_commutes,
    validate_certificate,
    witness,
)
from .commutant import (
    HookType,
    UBParams,
    build_ub,
    commutant_strips,
    commutes,
    jordan_matrix,
    nilcommutant_sampler,
    ub_coordinate_positions,
)
from .errors import (
    BadPrimeError,
    DominanceAnomalyWarning,
    NotNilpotentError,
    ResourceLimitError,
    UnsupportedHookError,
    VerificationError,
    WitnessUnavailableError,
)
from .linalg import ExactMatrix, JordanReport, jordan_type_of, rank, rank_mod_p
from .oracle import GridSpec, grid_types, oracle_report, sample_generic
from .partitions import (
    Partition,
    ar,
    concat,
    dominates,
    enumerate_partitions,
    is_almost_rectangular,
    is_rr,
    is_universally_commuting,
    subtract,
)

__version__ = "0.1.0"

__all__ = [
    "BadPrimeError",
    "CommutationCertificate",
    "DominanceAnomalyWarning",
    "ExactMatrix",
    "GridSpec",
    "HookType",
    "JordanReport",
    "NotNilpotentError",
    "Partition",
    "ResourceLimitError",
    "UBParams",
    "UnsupportedHookError",
    "VerificationError",
    "WitnessUnavailableError",
    "ar",
    "build_ub",
    "classification_table",
    "commutant_strips",
    "commutes",
    "concat",
    "d_hook",
    "decide",
    "dominates",
    "enumerate_commuting",
    "enumerate_partitions",
    "grid_types",
    "is_almost_rectangular",
    "is_rr",
    "is_universally_commuting",
    "jordan_matrix",
    "jordan_type_of",
    "known_commutes",
    "nilcommutant_sampler",
    "oracle_report",
    "rank",
    "rank_mod_p",
    "sample_generic",
    "subtract",
    "ub_coordinate_positions",
    "validate_certificate",
    "witness",
    "__version__",
]
