"""Finite-domain functions and their image statistics.

A function f: A -> B with |A| = n is stored as the sequence of its values.
Codomain labels are arbitrary non-negative integers compared only for
equality; gaps in the label range are allowed.  All counts are exact Python
integers, so they never overflow regardless of magnitude.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

ORACLE_BUDGET = 10**8  # max n**s a brute-force oracle will accept


class EnumerationBudgetError(RuntimeError):
    """A brute-force oracle refused to run because it would exceed its budget."""


@dataclass(frozen=True)
class FunctionTable:
    """A function on the domain {0, ..., domain_size-1} given by its values."""

    domain_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.domain_size <= 0:
            raise ValueError("domain_size must be positive")
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.domain_size:
            raise ValueError(
                f"expected {self.domain_size} values, got {len(self.values)}"
            )
        for v in self.values:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"codomain labels must be non-negative integers, got {v!r}")

    @classmethod
    def from_values(cls, values) -> "FunctionTable":
        values = tuple(values)
        return cls(len(values), values)

    @classmethod
    def identity(cls, n: int) -> "FunctionTable":
        return cls(n, tuple(range(n)))

    @classmethod
    def constant(cls, n: int, label: int = 0) -> "FunctionTable":
        return cls(n, (label,) * n)


@dataclass(frozen=True)
class MultiplicitySpectrum:
    """Counts of codomain labels by multiplicity.

    counts[r] is the number of labels hit exactly r times, for 1 <= r <= m;
    counts[0] is a padding zero so indexing matches the multiplicity.
    """

    n: int
    m: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.m + 1 or self.counts[0] != 0:
            raise ValueError("counts must be indexed 0..m with counts[0] == 0")
        if self.counts[self.m] <= 0:
            raise ValueError("counts[m] must be positive (m is the maximal multiplicity)")
        if sum(r * c for r, c in enumerate(self.counts)) != self.n:
            raise ValueError("sum of r*counts[r] must equal the domain size")

    def multiplicity(self, r: int) -> int:
        """M_r: the number of labels hit exactly r times (0 for r > m)."""
        if r < 1:
            raise ValueError("multiplicity index must be >= 1")
        return self.counts[r] if r <= self.m else 0

    @property
    def image_count(self) -> int:
        return sum(self.counts)


def spectrum(f: FunctionTable) -> MultiplicitySpectrum:
    """Tally how many labels are hit exactly r times, for each r."""
    tally = Counter(f.values)
    m = max(tally.values())
    counts = [0] * (m + 1)
    for hits in tally.values():
        counts[hits] += 1
    return MultiplicitySpectrum(f.domain_size, m, tuple(counts))


def image_count(f: FunctionTable) -> int:
    """Number of distinct values taken by f."""
    return len(set(f.values))


def falling_factorial(r: int, s: int) -> int:
    """Number of s-permutations of r objects: r(r-1)...(r-s+1); 0 when r < s."""
    if r < 0 or s < 0:
        raise ValueError("falling_factorial requires non-negative arguments")
    return math.perm(r, s)


def collision_count(f: FunctionTable, s: int) -> int:
    """Number of ordered s-tuples of pairwise-distinct points with equal images.

    Computed from the multiplicity spectrum: each label of multiplicity r
    contributes P(r, s) tuples.
    """
    if s < 2:
        raise ValueError("collision order s must be >= 2")
    spec = spectrum(f)
    return sum(math.perm(r, s) * spec.counts[r] for r in range(s, spec.m + 1))


def collision_count_oracle(f: FunctionTable, s: int, budget: int = ORACLE_BUDGET) -> int:
    """Count the same tuples by direct enumeration, for cross-checking.

    Walks every ordered s-tuple of distinct domain points with a common image
    and counts one per tuple.  Refuses (rather than truncates) when the
    worst-case tuple space n**s exceeds the budget.
    """
    if s < 2:
        raise ValueError("collision order s must be >= 2")
    n = f.domain_size
    if n**s > budget:
        raise EnumerationBudgetError(
            f"enumerating up to {n}^{s} = {n**s} tuples exceeds budget {budget}"
        )
    positions: dict[int, list[int]] = {}
    for i, v in enumerate(f.values):
        positions.setdefault(v, []).append(i)

    total = 0
    chosen: list[int] = []

    def extend(candidates: list[int], depth: int):
        nonlocal total
        if depth == s:
            total += 1
            return
        for x in candidates:
            if x not in chosen:
                chosen.append(x)
                extend(candidates, depth + 1)
                chosen.pop()

    for group in positions.values():
        extend(group, 0)
    return total
