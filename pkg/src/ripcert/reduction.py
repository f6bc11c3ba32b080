"""The spark-to-RIP reduction gadget and its auditing harness.

Given an integer matrix with largest entry magnitude P, the gadget scales the
matrix by C = 2^t where t is the least integer with 4^t >= M*N*P^2, so that
the operator norm of the scaled matrix is at most 1 and its entries stay
exactly representable. Two delta values accompany the instance:

    delta_sharp  = 1 - 1 / (C^2 * (K*M*P^2)^(K-1))
    delta_coarse = 1 - 2^(-5*M*N*b)   with b the bit length of P

delta_sharp comes from the exact eigenvalue lower bound for independent
column subsets; delta_coarse is the coarser closed form, defined only when
K <= M <= N. The audit checks, on a concrete instance, that the spark
question and both RIP questions have the same answer, and that every bound in
the chain holds with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DependentSubsetError, InputError, ReductionError
from .linalg import Matrix, decide_pd, decide_psd, det_bareiss, gram
from .rip import OperatorNormCertificate, RipDecision, certify_operator_norm, is_rip
from .spark import SparkResult, spark
from .subsets import DEFAULT_SUBSET_BUDGET, iter_subsets


@dataclass(frozen=True)
class ReductionInstance:
    """The gadget bundle produced from an integer matrix and a sparsity level."""

    source: Matrix
    k: int
    max_entry: int
    scale_exponent: int
    scale: int
    scaled: Matrix
    delta_sharp: Fraction
    delta_coarse: Fraction | None
    max_entry_bits: int


@dataclass(frozen=True)
class DetAuditEntry:
    subset: tuple[int, ...]
    det: int
    entry_bound_ok: bool
    passed: bool


@dataclass(frozen=True)
class LambdaAuditEntry:
    subset: tuple[int, ...]
    passed: bool


@dataclass(frozen=True)
class AuditReport:
    """Joint outcome of the spark oracle, the RIP decisions, and the bound audits."""

    instance: ReductionInstance
    spark_result: SparkResult
    rip_at_sharp: RipDecision
    rip_at_coarse: RipDecision | None
    equivalence_holds: bool
    det_audit: tuple[DetAuditEntry, ...]
    lambda_min_audit: tuple[LambdaAuditEntry, ...]
    norm_certificate: OperatorNormCertificate

    @property
    def norm_certified(self) -> bool:
        return self.norm_certificate.norm_le_one


def build_reduction(matrix: Matrix, k: int) -> ReductionInstance:
    """Construct the gadget instance with every field computed exactly.

    The scale exponent is found by integer search on 4^t >= M*N*P^2; no
    floating logarithm is involved. delta_coarse is omitted when K <= M <= N
    fails.
    """
    if not matrix.is_integer:
        raise InputError("the reduction takes a matrix with integer entries")
    if matrix.is_zero():
        raise InputError("the reduction is undefined for the zero matrix")
    m, n = matrix.rows, matrix.cols
    if not isinstance(k, int) or isinstance(k, bool) or k < 1 or k > n:
        raise InputError(f"k = {k!r} out of range for {n} columns")

    p = int(matrix.max_abs_entry())
    target = m * n * p * p
    t = 0
    while 4**t < target:
        t += 1
    c = 2**t

    sharp_den = c * c * (k * m * p * p) ** (k - 1)
    delta_sharp = 1 - Fraction(1, sharp_den)
    if delta_sharp == 0:
        # only the 1x1 matrix with entry +-1; no delta in (0, 1) matches the bound
        raise InputError("degenerate instance: the sharp delta collapses to 0 for a 1x1 unit matrix")

    bits = p.bit_length()
    delta_coarse = None
    if k <= m <= n:
        delta_coarse = 1 - Fraction(1, 2 ** (5 * m * n * bits))
        if not delta_sharp <= delta_coarse:
            raise ReductionError(
                f"delta ordering violated: sharp {delta_sharp} > coarse {delta_coarse}"
            )

    return ReductionInstance(
        source=matrix,
        k=k,
        max_entry=p,
        scale_exponent=t,
        scale=c,
        scaled=matrix.scaled(Fraction(1, c)),
        delta_sharp=delta_sharp,
        delta_coarse=delta_coarse,
        max_entry_bits=bits,
    )


def det_chain_audit(
    matrix: Matrix,
    k: int,
    *,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> tuple[DetAuditEntry, ...]:
    """Check det(Gram) >= 1 and the M*P^2 entry bound on every k-subset.

    Requires spark > k; a dependent subset raises
    :class:`DependentSubsetError` naming it.
    """
    if not matrix.is_integer:
        raise InputError("the determinant audit takes a matrix with integer entries")
    if matrix.is_zero():
        raise InputError("the determinant audit is undefined for the zero matrix")
    if k < 1 or k > matrix.cols:
        raise InputError(f"k = {k!r} out of range for {matrix.cols} columns")
    m = matrix.rows
    p = int(matrix.max_abs_entry())
    bound = m * p * p
    entries = []
    for subset in iter_subsets(matrix.cols, k, budget):
        g = gram(matrix, subset)
        det = det_bareiss(g.to_matrix())
        if det <= 0:
            raise DependentSubsetError(subset)
        entry_ok = g.max_abs_entry() <= bound
        entries.append(DetAuditEntry(subset, det, entry_ok, det >= 1 and entry_ok))
    return tuple(entries)


def lambda_min_audit(
    instance: ReductionInstance,
    *,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> tuple[LambdaAuditEntry, ...]:
    """Verify lambda_min(Gram of scaled columns) >= 1 - delta_sharp exactly.

    Requires spark > k; a dependent subset raises
    :class:`DependentSubsetError`.
    """
    floor = 1 - instance.delta_sharp
    entries = []
    for subset in iter_subsets(instance.scaled.cols, instance.k, budget):
        g = gram(instance.scaled, subset)
        if not decide_pd(g):
            raise DependentSubsetError(subset)
        entries.append(LambdaAuditEntry(subset, decide_psd(g.shifted(-floor))))
    return tuple(entries)


def audit_theorem(
    matrix: Matrix,
    k: int,
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> AuditReport:
    """Run the full reduction audit on one instance.

    Computes the spark, decides RIP at delta_sharp (and at delta_coarse when
    defined), and checks that all verdicts agree with the spark > k test.
    When spark > k the determinant and eigenvalue bound chains are audited on
    every subset; otherwise the spark witness doubles as the exact zero-norm
    certificate.
    """
    instance = build_reduction(matrix, k)
    spark_result = spark(matrix, threads=threads, budget=budget)
    rip_sharp = is_rip(instance.scaled, k, instance.delta_sharp, threads=threads, budget=budget)
    rip_coarse = None
    if instance.delta_coarse is not None:
        rip_coarse = is_rip(
            instance.scaled, k, instance.delta_coarse, threads=threads, budget=budget
        )

    spark_above_k = spark_result.spark is None or spark_result.spark > k
    equivalence = spark_above_k == rip_sharp.is_rip
    if rip_coarse is not None:
        equivalence = equivalence and spark_above_k == rip_coarse.is_rip

    if spark_above_k:
        det_entries = det_chain_audit(matrix, k, budget=budget)
        lambda_entries = lambda_min_audit(instance, budget=budget)
    else:
        det_entries = ()
        lambda_entries = ()

    return AuditReport(
        instance=instance,
        spark_result=spark_result,
        rip_at_sharp=rip_sharp,
        rip_at_coarse=rip_coarse,
        equivalence_holds=equivalence,
        det_audit=det_entries,
        lambda_min_audit=lambda_entries,
        norm_certificate=certify_operator_norm(instance.scaled),
    )
