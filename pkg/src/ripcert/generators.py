"""Deterministic instance generators for test suites.

All randomness comes from an in-repo SplitMix64 stream so that a given
:class:`GeneratorSpec` yields the same matrix on every platform and run,
independent of Python's own generator.

Draw order, which is part of the format contract:

* ``random``: entries row-major, each ``next() mod (2*p_max + 1) - p_max``.
* ``planted``: the full entry grid is drawn exactly as for ``random``; then
  the target column index is ``next() mod n``; then k-1 distinct source
  columns are drawn by rejection (``next() mod n``, skipping the target and
  repeats); then one sign draw per source (``next() mod 2``, 0 meaning +1).
  The target column is overwritten with the signed sum of the source columns,
  so some k columns are dependent and spark <= k. Planted entries may reach
  (k-1)*p_max in magnitude, and the spark may come out below k by chance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .linalg import Matrix

_MASK64 = (1 << 64) - 1

RANDOM = "random"
PLANTED = "planted"


class SplitMix64:
    """SplitMix64: state += 0x9E3779B97F4A7C15, output via the standard finalizer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for one instance; equal specs give equal matrices."""

    kind: str
    m: int
    n: int
    p_max: int
    k: int | None = None
    seed: int = 0


def _validate_common(spec: GeneratorSpec) -> None:
    if spec.m < 1 or spec.n < 1:
        raise InputError("matrix dimensions must be at least 1")
    if spec.p_max < 0:
        raise InputError("p_max must be nonnegative")


def _draw_entries(rng: SplitMix64, m: int, n: int, p_max: int) -> list[list[int]]:
    span = 2 * p_max + 1
    return [[rng.below(span) - p_max for _ in range(n)] for _ in range(m)]


def gen_random(spec: GeneratorSpec) -> Matrix:
    """Matrix with entries uniform on [-p_max, p_max] from the seeded stream."""
    if spec.kind != RANDOM:
        raise InputError(f"gen_random needs kind={RANDOM!r}, got {spec.kind!r}")
    _validate_common(spec)
    rng = SplitMix64(spec.seed)
    return Matrix.from_rows(_draw_entries(rng, spec.m, spec.n, spec.p_max))


def gen_planted(spec: GeneratorSpec) -> Matrix:
    """Matrix with a planted dependent k-subset, guaranteeing spark <= k."""
    if spec.kind != PLANTED:
        raise InputError(f"gen_planted needs kind={PLANTED!r}, got {spec.kind!r}")
    _validate_common(spec)
    if spec.k is None or spec.k < 2 or spec.k > spec.n:
        raise InputError("planted instances need 2 <= k <= n")
    rng = SplitMix64(spec.seed)
    entries = _draw_entries(rng, spec.m, spec.n, spec.p_max)
    target = rng.below(spec.n)
    sources: list[int] = []
    while len(sources) < spec.k - 1:
        c = rng.below(spec.n)
        if c != target and c not in sources:
            sources.append(c)
    signs = [1 if rng.below(2) == 0 else -1 for _ in sources]
    for row in entries:
        row[target] = sum(sign * row[c] for sign, c in zip(signs, sources))
    return Matrix.from_rows(entries)
