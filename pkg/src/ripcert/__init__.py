"""Exact certification toolkit for spark and restricted-isometry questions.

Everything verdict-bearing runs in arbitrary-precision integer/rational
arithmetic; floating point appears only in advisory eigenvalue estimates.
"""

from .errors import (
    BudgetExceededError,
    DependentSubsetError,
    InputError,
    NoNullVectorError,
    ParseError,
    ReductionError,
)
from .generators import PLANTED, RANDOM, GeneratorSpec, SplitMix64, gen_planted, gen_random
from .linalg import (
    EigenInterval,
    Matrix,
    SymmetricMatrix,
    decide_pd,
    decide_psd,
    det_bareiss,
    float_extreme_eigs,
    gershgorin_interval,
    gram,
    nullspace_vector,
    rank_exact,
)
from .matrixio import parse_matrix, parse_rational, qstr, serialize_matrix, sha256_hex
from .reduction import (
    AuditReport,
    DetAuditEntry,
    LambdaAuditEntry,
    ReductionInstance,
    audit_theorem,
    build_reduction,
    det_chain_audit,
    lambda_min_audit,
)
from .rip import (
    DeltaBracket,
    OperatorNormCertificate,
    RipDecision,
    RipViolation,
    Side,
    certify_operator_norm,
    coherence_bound,
    is_rip,
    rip_constant_bracket,
)
from .spark import SparkResult, SubsetWitness, has_dependent_k_columns, spark, verify_witness
from .subsets import DEFAULT_SUBSET_BUDGET

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BudgetExceededError",
    "DEFAULT_SUBSET_BUDGET",
    "DeltaBracket",
    "DependentSubsetError",
    "DetAuditEntry",
    "EigenInterval",
    "GeneratorSpec",
    "InputError",
    "LambdaAuditEntry",
    "Matrix",
    "NoNullVectorError",
    "OperatorNormCertificate",
    "PLANTED",
    "ParseError",
    "RANDOM",
    "ReductionError",
    "ReductionInstance",
    "RipDecision",
    "RipViolation",
    "Side",
    "SparkResult",
    "SplitMix64",
    "SubsetWitness",
    "SymmetricMatrix",
    "audit_theorem",
    "build_reduction",
    "certify_operator_norm",
    "coherence_bound",
    "decide_pd",
    "decide_psd",
    "det_bareiss",
    "det_chain_audit",
    "float_extreme_eigs",
    "gen_planted",
    "gen_random",
    "gershgorin_interval",
    "gram",
    "has_dependent_k_columns",
    "is_rip",
    "lambda_min_audit",
    "nullspace_vector",
    "parse_matrix",
    "parse_rational",
    "qstr",
    "rank_exact",
    "rip_constant_bracket",
    "serialize_matrix",
    "sha256_hex",
    "spark",
    "verify_witness",
]
