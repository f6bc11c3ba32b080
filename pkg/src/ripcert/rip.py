"""Exact (K, delta)-restricted-isometry decisions and related certificates.

The verdict for a subset S reduces to two exact positive-semidefiniteness
tests on the Gram matrix G of the selected columns:

    lower side:  G - (1 - delta) I  is PSD
    upper side:  (1 + delta) I - G  is PSD

Both inequalities are non-strict, so boundary eigenvalues count as satisfying
the property.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InputError
from .linalg import Matrix, decide_pd, decide_psd, float_extreme_eigs, gram
from .subsets import DEFAULT_SUBSET_BUDGET, check_budget, first_subset_hit, iter_subsets


class Side(str, Enum):
    """Which inequality a violating subset breaks."""

    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class RipViolation:
    subset: tuple[int, ...]
    side: Side


@dataclass(frozen=True)
class RipDecision:
    """Exact verdict; ``violation`` is present exactly when ``is_rip`` is False."""

    is_rip: bool
    violation: RipViolation | None


@dataclass(frozen=True)
class DeltaBracket:
    """Rational bracket around the restricted isometry constant delta_K.

    When ``lower > 0`` the matrix is not (K, lower)-RIP; when ``upper < 1`` it
    is (K, upper)-RIP. The sentinel bracket [1, 1] means no delta in (0, 1)
    certifies RIP (delta_K >= 1, e.g. a singular K-subset exists).
    """

    lower: Fraction
    upper: Fraction

    @property
    def no_valid_delta(self) -> bool:
        return self.lower >= 1


@dataclass(frozen=True)
class OperatorNormCertificate:
    """Exact verdict on the spectral-norm condition, plus the cheap certificate.

    ``norm_le_one`` decides the operator norm bound exactly; the cheap
    sufficient test checks M*N*max_entry^2 <= 1 without any eigenvalue work.
    """

    norm_le_one: bool
    cheap_bound_holds: bool

    def __bool__(self) -> bool:
        return self.norm_le_one


def _as_exact_fraction(value, name: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{name} must be an exact int or Fraction, not {type(value).__name__}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise InputError(f"{name} must be an exact int or Fraction, not {type(value).__name__}")


def _check_k(matrix: Matrix, k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1 or k > matrix.cols:
        raise InputError(f"k = {k!r} out of range for {matrix.cols} columns")


def is_rip(
    matrix: Matrix,
    k: int,
    delta,
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> RipDecision:
    """Exact (k, delta)-RIP decision over every k-subset Gram matrix.

    On failure reports the lexicographically first violating subset, with the
    lower side checked before the upper side.
    """
    _check_k(matrix, k)
    delta = _as_exact_fraction(delta, "delta")
    if not (0 < delta < 1):
        raise InputError(f"delta must lie strictly between 0 and 1, got {delta}")
    one_minus = 1 - delta
    one_plus = 1 + delta

    def probe(subset: tuple[int, ...]) -> Side | None:
        g = gram(matrix, subset)
        if not decide_psd(g.shifted(-one_minus)):
            return Side.LOWER
        if not decide_psd(g.negated().shifted(one_plus)):
            return Side.UPPER
        return None

    hit = first_subset_hit(matrix.cols, k, probe, threads=threads, budget=budget)
    if hit is None:
        return RipDecision(True, None)
    return RipDecision(False, RipViolation(hit[0], hit[1]))


def rip_constant_bracket(
    matrix: Matrix,
    k: int,
    tol,
    *,
    threads: int = 1,
    budget: int | None = DEFAULT_SUBSET_BUDGET,
) -> DeltaBracket:
    """Bracket of width <= tol around delta_K, by bisection over exact verdicts.

    A floating pass over the subset spectra seeds the bracket; every accepted
    bound comes from an exact :func:`is_rip` call. Returns the [1, 1] sentinel
    when no delta < 1 works.
    """
    _check_k(matrix, k)
    tol = _as_exact_fraction(tol, "tol")
    if tol <= 0:
        raise InputError("tol must be positive")
    check_budget(matrix.cols, k, budget)

    # delta_K < 1 iff every subset Gram G has 0 < lambda_min and lambda_max < 2
    estimate = 0.0
    for subset in iter_subsets(matrix.cols, k):
        g = gram(matrix, subset)
        if not decide_pd(g) or not decide_pd(g.negated().shifted(2)):
            return DeltaBracket(Fraction(1), Fraction(1))
        lo, hi = float_extreme_eigs(g)
        estimate = max(estimate, 1.0 - lo, hi - 1.0)

    lo, hi = Fraction(0), Fraction(1)
    half = tol / 2
    seed = Fraction(max(estimate, 0.0))
    for candidate in (seed + half, seed - half):
        if lo < candidate < hi and 0 < candidate < 1:
            if is_rip(matrix, k, candidate, threads=threads, budget=budget).is_rip:
                hi = candidate
            else:
                lo = candidate
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if is_rip(matrix, k, mid, threads=threads, budget=budget).is_rip:
            hi = mid
        else:
            lo = mid
    return DeltaBracket(lo, hi)


def certify_operator_norm(matrix: Matrix) -> OperatorNormCertificate:
    """Decide the operator-norm-at-most-one condition exactly.

    The exact test is PSD(I - G) on the full Gram matrix G. The cheap
    certificate sqrt(M*N) * max_abs_entry <= 1 is only sufficient and is
    reported alongside.
    """
    g = gram(matrix)
    exact = decide_psd(g.negated().shifted(1))
    peak = Fraction(matrix.max_abs_entry())
    cheap = matrix.rows * matrix.cols * peak * peak <= 1
    return OperatorNormCertificate(exact, cheap)


def coherence_bound(matrix: Matrix, k: int) -> Fraction:
    """Gershgorin-style upper bound on delta_K from the full Gram matrix.

    Returns max_i |G_ii - 1| + (k - 1) * max_{i != j} |G_ij|; when the value is
    below 1 the matrix is (k, delta)-RIP for every delta at or above it. Valid
    for columns of any norm, not just unit columns.
    """
    _check_k(matrix, k)
    g = gram(matrix)
    n = g.order
    diag_dev = max(abs(Fraction(g.entry(i, i)) - 1) for i in range(n))
    off_peak = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            off_peak = max(off_peak, abs(Fraction(g.entry(i, j))))
    return diag_dev + (k - 1) * off_peak
