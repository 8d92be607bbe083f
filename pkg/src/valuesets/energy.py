"""Product sets and multiplicative energy of subset pairs in finite groups.

Groups are given as cyclic groups, direct products of cyclics, or explicit
Cayley tables (validated on load).  Elements are indices 0..n-1; the energy
E(A, B) counts quadruples (a, a', b, b') with ab = a'b', and E - |A||B| is
exactly the pair-collision count of the multiplication map on A x B.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .bounds import BoundReport, _s2_report
from .functable import EnumerationBudgetError, FunctionTable

ENERGY_ORACLE_BUDGET = 10**8  # max quadruples the brute-force oracle will visit


class GroupAxiomError(ValueError):
    """A Cayley table failed the group-axiom checks."""


class GroupSpec:
    """A finite group with elements 0..order-1 and a multiplication map."""

    def __init__(self, kind: str, order: int, op, identity: int):
        self.kind = kind
        self.order = order
        self.op = op
        self.identity = identity

    @classmethod
    def cyclic(cls, n: int) -> "GroupSpec":
        if n < 1:
            raise GroupAxiomError("cyclic group order must be positive")
        return cls("cyclic", n, lambda i, j: (i + j) % n, 0)

    @classmethod
    def product_of_cyclics(cls, orders) -> "GroupSpec":
        orders = tuple(orders)
        if not orders or any(n < 1 for n in orders):
            raise GroupAxiomError("component orders must be positive")
        total = math.prod(orders)

        def op(i: int, j: int) -> int:
            out = 0
            base = 1
            for n in orders:
                out += ((i % n + j % n) % n) * base
                i //= n
                j //= n
                base *= n
            return out

        g = cls("product", total, op, 0)
        g.component_orders = orders
        return g

    @classmethod
    def from_cayley(cls, table) -> "GroupSpec":
        """Build from an n x n multiplication table, checking the group axioms."""
        table = [list(row) for row in table]
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupAxiomError("Cayley table must be square and non-empty")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise GroupAxiomError(f"entry {v!r} is not an element index")
        full = set(range(n))
        for i in range(n):
            if set(table[i]) != full:
                raise GroupAxiomError(f"row {i} is not a permutation")
            if {table[j][i] for j in range(n)} != full:
                raise GroupAxiomError(f"column {i} is not a permutation")
        identity = None
        for e in range(n):
            if all(table[e][j] == j for j in range(n)) and all(
                table[i][e] == i for i in range(n)
            ):
                identity = e
                break
        if identity is None:
            raise GroupAxiomError("no two-sided identity element")
        for a in range(n):
            if not any(
                table[a][b] == identity and table[b][a] == identity for b in range(n)
            ):
                raise GroupAxiomError(f"element {a} has no two-sided inverse")
        for a in range(n):
            for b in range(n):
                tab = table[a][b]
                for c in range(n):
                    if table[tab][c] != table[a][table[b][c]]:
                        raise GroupAxiomError(
                            f"associativity fails at ({a}, {b}, {c})"
                        )
        g = cls("cayley", n, lambda i, j: table[i][j], identity)
        g.table = table
        return g


@dataclass(frozen=True)
class SubsetPair:
    group: GroupSpec
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(sorted(self.a)))
        object.__setattr__(self, "b", tuple(sorted(self.b)))
        for name, subset in (("A", self.a), ("B", self.b)):
            if not subset:
                raise ValueError(f"subset {name} must be non-empty")
            if len(set(subset)) != len(subset):
                raise ValueError(f"subset {name} has duplicate elements")
            if any(not 0 <= x < self.group.order for x in subset):
                raise ValueError(f"subset {name} has out-of-range indices")


def _product_multiplicities(pair: SubsetPair) -> Counter:
    op = pair.group.op
    tally: Counter = Counter()
    for a in pair.a:
        for b in pair.b:
            tally[op(a, b)] += 1
    return tally


def product_set(pair: SubsetPair) -> tuple[int, ...]:
    """Sorted distinct products {ab : a in A, b in B}."""
    return tuple(sorted(_product_multiplicities(pair)))


def energy(pair: SubsetPair) -> int:
    """E(A, B): quadruples with ab = a'b', via squared product multiplicities."""
    return sum(m * m for m in _product_multiplicities(pair).values())


def energy_oracle(pair: SubsetPair, budget: int = ENERGY_ORACLE_BUDGET) -> int:
    """Count the quadruples literally; refuses rather than truncates."""
    quads = (len(pair.a) * len(pair.b)) ** 2
    if quads > budget:
        raise EnumerationBudgetError(
            f"enumerating {quads} quadruples exceeds budget {budget}"
        )
    op = pair.group.op
    total = 0
    for a in pair.a:
        for b in pair.b:
            ab = op(a, b)
            for a2 in pair.a:
                for b2 in pair.b:
                    if op(a2, b2) == ab:
                        total += 1
    return total


def n2_from_energy(pair: SubsetPair) -> int:
    """Pair-collision count of the multiplication map: E(A, B) - |A||B|."""
    return energy(pair) - len(pair.a) * len(pair.b)


def multiplication_table(pair: SubsetPair) -> FunctionTable:
    """The map (a, b) -> ab as a FunctionTable on |A||B| points (a-major)."""
    op = pair.group.op
    values = tuple(op(a, b) for a in pair.a for b in pair.b)
    return FunctionTable(len(values), values)


def energy_bounds(pair: SubsetPair) -> BoundReport:
    """Two-sided bound on |A.B| from the energy: lower (3n - E)/2 clamped to
    1, upper from the pair-collision bound with t = E - n."""
    n = len(pair.a) * len(pair.b)
    e = energy(pair)
    t = e - n
    report = _s2_report(n, t)
    lower_real = Fraction(3 * n - e, 2)
    provenance = {
        "lower": "energy-deficit bound (3n - E)/2",
        "upper": "quadratic-root bound with t = E - n",
    }
    if lower_real < 1:
        lower_real = Fraction(1)
        provenance["lower"] += " (clamped to 1)"
    return BoundReport(
        n=n,
        s=2,
        collision_count=t,
        lower_real=lower_real,
        lower_int=math.ceil(lower_real),
        upper_real=report.upper_real,
        upper_int=report.upper_int,
        provenance=provenance,
        extras={"energy": e, "product_set_size": len(product_set(pair))},
    )
