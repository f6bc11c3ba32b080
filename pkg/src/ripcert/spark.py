"""Exact spark computation and K-column dependence tests with certified witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .linalg import Matrix, nullspace_vector, rank_exact
from .subsets import DEFAULT_SUBSET_BUDGET, first_subset_hit


@dataclass(frozen=True)
class SubsetWitness:
    """A dependent column subset together with an exact null vector over it."""

    indices: tuple[int, ...]
    null_vector: tuple[Fraction, ...]


@dataclass(frozen=True)
class SparkResult:
    """Spark value plus witness; ``spark is None`` means full column rank.

    Serializations report full column rank as ``n_cols + 1``.
    """

    n_cols: int
    spark: int | None
    witness: SubsetWitness | None

    @property
    def full_column_rank(self) -> bool:
        return self.spark is None

    @property
    def reported(self) -> int:
        return self.n_cols + 1 if self.spark is None else self.spark


def has_dependent_k_columns(
    matrix: Matrix,
    k: int,
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> SubsetWitness | None:
    """Witness for the lexicographically first dependent k-subset, if any."""
    if k < 1 or k > matrix.cols:
        raise InputError(f"k = {k} out of range for {matrix.cols} columns")

    def probe(subset: tuple[int, ...]) -> SubsetWitness | None:
        if rank_exact(matrix.columns(subset)) < k:
            return SubsetWitness(subset, nullspace_vector(matrix, subset))
        return None

    hit = first_subset_hit(matrix.cols, k, probe, threads=threads, budget=budget)
    return hit[1] if hit else None


def spark(
    matrix: Matrix,
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> SparkResult:
    """Size of the smallest dependent column set, by exhaustive enumeration."""
    n = matrix.cols
    if rank_exact(matrix) == n:
        return SparkResult(n, None, None)
    for k in range(1, n + 1):
        witness = has_dependent_k_columns(matrix, k, threads=threads, budget=budget)
        if witness is not None:
            return SparkResult(n, k, witness)
    raise AssertionError("rank deficit guarantees a dependent subset")


def verify_witness(matrix: Matrix, witness: SubsetWitness) -> bool:
    """True iff the witness columns times its null vector is exactly zero."""
    idx = witness.indices
    x = witness.null_vector
    if not idx or len(idx) != len(x):
        return False
    if any(not isinstance(j, int) or j < 0 or j >= matrix.cols for j in idx):
        return False
    if any(b <= a for a, b in zip(idx, idx[1:])):
        return False
    if all(v == 0 for v in x):
        return False
    for row in matrix.data:
        if sum(row[j] * v for j, v in zip(idx, x)) != 0:
            return False
    return True
