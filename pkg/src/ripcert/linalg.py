"""Exact dense linear algebra over arbitrary-precision integers and rationals.

Entries are Python ints or ``fractions.Fraction`` values, so nothing here ever
rounds. Matrices are immutable; every operation returns a fresh value and may
be shared freely across worker threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, NoNullVectorError

Entry = int | Fraction


def _normalize_entry(value) -> Entry:
    if isinstance(value, bool):
        raise InputError("matrix entries must be integers or fractions")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        # keep integer-valued entries as plain ints so integer matrices stay integer
        return int(value) if value.denominator == 1 else value
    raise InputError(
        f"matrix entries must be integers or fractions, got {type(value).__name__}"
    )


def _checked_subset(subset: Iterable[int], n: int) -> tuple[int, ...]:
    idx = tuple(subset)
    if not idx:
        raise InputError("column subset must be nonempty")
    previous = -1
    for j in idx:
        if isinstance(j, bool) or not isinstance(j, int):
            raise InputError(f"column index {j!r} is not an integer")
        if j < 0 or j >= n:
            raise InputError(f"column index {j} out of range for {n} columns")
        if j <= previous:
            raise InputError("column indices must be strictly increasing")
        previous = j
    return idx


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return q


@dataclass(frozen=True)
class Matrix:
    """Dense matrix with exact integer or rational entries, stored row-major.

    Build instances through :meth:`from_rows`, which validates the shape and
    normalizes entries.
    """

    rows: int
    cols: int
    data: tuple[tuple[Entry, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Matrix":
        table = [tuple(_normalize_entry(v) for v in row) for row in rows]
        if not table or not table[0]:
            raise InputError("matrix needs at least one row and one column")
        width = len(table[0])
        if any(len(row) != width for row in table):
            raise InputError("matrix rows must all have the same length")
        return Matrix(len(table), width, tuple(table))

    @staticmethod
    def identity(n: int) -> "Matrix":
        if n < 1:
            raise InputError("identity order must be at least 1")
        return Matrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def entry(self, i: int, j: int) -> Entry:
        return self.data[i][j]

    def column(self, j: int) -> tuple[Entry, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self, subset: Iterable[int]) -> "Matrix":
        """Submatrix formed by the given strictly increasing column indices."""
        idx = _checked_subset(subset, self.cols)
        return Matrix(self.rows, len(idx), tuple(tuple(row[j] for j in idx) for row in self.data))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)))

    def scaled(self, factor: Entry) -> "Matrix":
        """Entrywise exact multiplication by an integer or rational factor."""
        f = _normalize_entry(factor)
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(_normalize_entry(f * v) for v in row) for row in self.data),
        )

    def mul_vector(self, vec: Sequence[Entry]) -> tuple[Entry, ...]:
        if len(vec) != self.cols:
            raise InputError("vector length must match the column count")
        return tuple(_normalize_entry(sum(a * x for a, x in zip(row, vec))) for row in self.data)

    @property
    def is_integer(self) -> bool:
        return all(isinstance(v, int) for row in self.data for v in row)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def max_abs_entry(self) -> Entry:
        return max(abs(v) for row in self.data for v in row)


@dataclass(frozen=True)
class SymmetricMatrix:
    """Symmetric matrix stored as the packed upper triangle, row-major."""

    order: int
    packed: tuple[Entry, ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "SymmetricMatrix":
        table = [tuple(_normalize_entry(v) for v in row) for row in rows]
        n = len(table)
        if n < 1 or any(len(row) != n for row in table):
            raise InputError("a symmetric matrix must be square with order >= 1")
        for i in range(n):
            for j in range(i + 1, n):
                if table[i][j] != table[j][i]:
                    raise InputError(f"entries ({i},{j}) and ({j},{i}) differ")
        packed = tuple(table[i][j] for i in range(n) for j in range(i, n))
        return SymmetricMatrix(n, packed)

    @staticmethod
    def identity(n: int) -> "SymmetricMatrix":
        if n < 1:
            raise InputError("identity order must be at least 1")
        return SymmetricMatrix(n, tuple(1 if j == 0 else 0 for i in range(n) for j in range(n - i)))

    def _offset(self, i: int, j: int) -> int:
        # packed index of (i, j) with i <= j
        return i * self.order - i * (i + 1) // 2 + j

    def entry(self, i: int, j: int) -> Entry:
        if i > j:
            i, j = j, i
        return self.packed[self._offset(i, j)]

    def to_rows(self) -> tuple[tuple[Entry, ...], ...]:
        n = self.order
        return tuple(tuple(self.entry(i, j) for j in range(n)) for i in range(n))

    def to_matrix(self) -> Matrix:
        return Matrix(self.order, self.order, self.to_rows())

    def shifted(self, c: Entry) -> "SymmetricMatrix":
        """The matrix self + c*I."""
        out = list(self.packed)
        for i in range(self.order):
            out[self._offset(i, i)] = _normalize_entry(out[self._offset(i, i)] + c)
        return SymmetricMatrix(self.order, tuple(out))

    def negated(self) -> "SymmetricMatrix":
        return SymmetricMatrix(self.order, tuple(-v for v in self.packed))

    def max_abs_entry(self) -> Entry:
        return max(abs(v) for v in self.packed)


@dataclass(frozen=True)
class EigenInterval:
    """Exact rational interval enclosing every eigenvalue of a symmetric matrix."""

    lower: Fraction
    upper: Fraction


def gram(matrix: Matrix, subset: Sequence[int] | None = None) -> SymmetricMatrix:
    """Exact Gram matrix A_S^T A_S of the selected columns.

    ``subset`` must be strictly increasing; ``None`` selects every column.
    The result is integer-valued whenever ``matrix`` is.
    """
    if subset is None:
        idx: tuple[int, ...] = tuple(range(matrix.cols))
    else:
        idx = _checked_subset(subset, matrix.cols)
    cols = [matrix.column(j) for j in idx]
    k = len(idx)
    packed = []
    for i in range(k):
        ci = cols[i]
        for j in range(i, k):
            cj = cols[j]
            packed.append(_normalize_entry(sum(a * b for a, b in zip(ci, cj))))
    return SymmetricMatrix(k, tuple(packed))


def det_bareiss(matrix: Matrix) -> int:
    """Exact determinant of a square integer matrix.

    Uses Bareiss fraction-free elimination with row pivoting; every
    intermediate division is exact by construction.
    """
    if matrix.rows != matrix.cols:
        raise InputError("determinant requires a square matrix")
    if not matrix.is_integer:
        raise InputError("det_bareiss expects integer entries")
    n = matrix.rows
    work = [list(row) for row in matrix.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if work[r][k] != 0), None)
            if pivot is None:
                return 0
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        pk = work[k][k]
        rowk = work[k]
        for i in range(k + 1, n):
            rowi = work[i]
            wik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = _exact_div(pk * rowi[j] - wik * rowk[j], prev)
            rowi[k] = 0
        prev = pk
    return sign * work[n - 1][n - 1]


def _integer_rows(matrix: Matrix) -> list[list[int]]:
    # scale each row by the lcm of its denominators; rank is unaffected
    out = []
    for row in matrix.data:
        scale = 1
        for v in row:
            if isinstance(v, Fraction):
                scale = scale * v.denominator // math.gcd(scale, v.denominator)
        out.append([int(v * scale) for v in row])
    return out


def rank_exact(matrix: Matrix) -> int:
    """Exact rank over the rationals via fraction-free elimination.

    Rows are cleared of denominators first, then eliminated Bareiss-style with
    row pivoting and column skipping.
    """
    work = _integer_rows(matrix)
    n_rows, n_cols = matrix.rows, matrix.cols
    rank = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        pk = work[row][col]
        rowp = work[row]
        for r in range(row + 1, n_rows):
            rowr = work[r]
            wrc = rowr[col]
            for c in range(col + 1, n_cols):
                rowr[c] = _exact_div(pk * rowr[c] - wrc * rowp[c], prev)
            rowr[col] = 0
        prev = pk
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def nullspace_vector(matrix: Matrix, subset: Sequence[int]) -> tuple[Fraction, ...]:
    """Exact nonzero x with A_subset x = 0, first nonzero coordinate fixed to 1.

    Raises :class:`NoNullVectorError` when the selected columns are linearly
    independent.
    """
    idx = _checked_subset(subset, matrix.cols)
    m = matrix.rows
    k = len(idx)
    work = [[Fraction(matrix.entry(r, j)) for j in idx] for r in range(m)]

    pivots: list[int] = []
    r = 0
    for c in range(k):
        if r == m:
            break
        pr = next((i for i in range(r, m) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1

    free = next((c for c in range(k) if c not in pivots), None)
    if free is None:
        raise NoNullVectorError("the selected columns are linearly independent")
    x = [Fraction(0)] * k
    x[free] = Fraction(1)
    for row_i, c in enumerate(pivots):
        x[c] = -work[row_i][free]
    lead = next(v for v in x if v != 0)
    return tuple(v / lead for v in x)


def _scaled_symmetric_rows(s: SymmetricMatrix) -> list[list[int]]:
    # multiply by the (positive) lcm of all denominators; definiteness is unaffected
    scale = 1
    for v in s.packed:
        if isinstance(v, Fraction):
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    rows = s.to_rows()
    return [[int(v * scale) for v in row] for row in rows]


def decide_psd(s: SymmetricMatrix) -> bool:
    """Exact positive-semidefiniteness decision.

    Repeatedly pivots on a positive diagonal entry and reduces to the Schur
    complement, carried fraction-free over scaled integers. A negative
    diagonal entry, or a zero diagonal entry in a nonzero row, refutes
    immediately; once no positive diagonal remains, the matrix is PSD iff the
    remaining block is zero.
    """
    work = _scaled_symmetric_rows(s)
    active = list(range(s.order))
    prev = 1
    while active:
        pivot = None
        for i in active:
            d = work[i][i]
            if d < 0:
                return False
            if d == 0:
                if any(work[i][j] for j in active):
                    return False
            elif pivot is None:
                pivot = i
        if pivot is None:
            return True
        active.remove(pivot)
        d = work[pivot][pivot]
        prow = work[pivot]
        for ai, i in enumerate(active):
            wip = work[i][pivot]
            rowi = work[i]
            for j in active[ai:]:
                val = _exact_div(d * rowi[j] - wip * prow[j], prev)
                rowi[j] = val
                work[j][i] = val
        prev = d
    return True


def decide_pd(s: SymmetricMatrix) -> bool:
    """Exact positive-definiteness decision: all leading principal minors positive.

    Fraction-free elimination makes the k-th pivot equal to the k-th leading
    principal minor of the denominator-cleared matrix, whose sign matches the
    original's.
    """
    work = _scaled_symmetric_rows(s)
    n = s.order
    prev = 1
    for k in range(n):
        d = work[k][k]
        if d <= 0:
            return False
        rowk = work[k]
        for i in range(k + 1, n):
            rowi = work[i]
            wik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = _exact_div(d * rowi[j] - wik * rowk[j], prev)
        prev = d
    return True


def gershgorin_interval(s: SymmetricMatrix) -> EigenInterval:
    """Exact interval [min_i (S_ii - R_i), max_i (S_ii + R_i)] with R_i the
    off-diagonal absolute row sum."""
    lower = None
    upper = None
    for i in range(s.order):
        center = Fraction(s.entry(i, i))
        radius = sum((abs(Fraction(s.entry(i, j))) for j in range(s.order) if j != i), Fraction(0))
        lo, hi = center - radius, center + radius
        lower = lo if lower is None or lo < lower else lower
        upper = hi if upper is None or hi > upper else upper
    return EigenInterval(lower, upper)


_JACOBI_SWEEPS = 60


def float_extreme_eigs(s: SymmetricMatrix) -> tuple[float, float]:
    """Floating estimates of the extreme eigenvalues via cyclic Jacobi sweeps.

    Deterministic sweep order (p < q, row-major); advisory only, never part of
    an exact verdict.
    """
    n = s.order
    a = [[float(s.entry(i, j)) for j in range(n)] for i in range(n)]
    if n == 1:
        return a[0][0], a[0][0]
    scale = max(max(abs(v) for row in a for v in row), 1.0)
    for _ in range(_JACOBI_SWEEPS):
        off = max(abs(a[p][q]) for p in range(n - 1) for q in range(p + 1, n))
        if off <= 1e-16 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p][q]) > 1e-300:
                    _jacobi_rotate(a, p, q, n)
    diag = [a[i][i] for i in range(n)]
    return min(diag), max(diag)


def _jacobi_rotate(a: list[list[float]], p: int, q: int, n: int) -> None:
    apq = a[p][q]
    diff = a[q][q] - a[p][p]
    if abs(apq) < abs(diff) * 1e-36:
        t = apq / diff
    else:
        theta = diff / (2.0 * apq)
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    sn = t * c
    for i in range(n):
        if i == p or i == q:
            continue
        aip, aiq = a[i][p], a[i][q]
        a[i][p] = a[p][i] = c * aip - sn * aiq
        a[i][q] = a[q][i] = sn * aip + c * aiq
    app, aqq = a[p][p], a[q][q]
    a[p][p] = app - t * apq
    a[q][q] = aqq + t * apq
    a[p][q] = a[q][p] = 0.0
