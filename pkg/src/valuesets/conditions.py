"""Collision-structure conditions on functions over small finite fields.

For a polynomial (or raw value table) f over GF(q), four progressively weaker
conditions are tested:

  C1  every difference map x -> f(x+a) - f(x), a != 0, is a bijection
      (f is planar);
  C2  every nontrivial additive character sum over f has squared magnitude
      exactly q;
  C3  every difference map has exactly one root;
  C4  the pair-collision count N_2(f) equals q - 1.

C1 implies C2 and C3, and C2/C3 each imply C4.  The module also verifies the
exact average identity sum_a N_2(f(X) + aX) = q(q-1), computes the power-sum
invariant used by the Wan-Shiue-Chen lower bound, and classifies all q^q
value tables over small fields by their 4-bit condition mask.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import BoundReport, _s2_report
from .functable import FunctionTable
from .gf import (
    FieldElement,
    FieldPoly,
    FieldSpec,
    char_count_vector_from_values,
    char_sum_sq_is_q,
    interpolate,
    poly_values,
    prime_power_decomposition,
)

CLASSIFY_BUDGET = 1_000_000  # default cap on q**q table enumerations


class ClassificationBudgetError(RuntimeError):
    """classify_all refused to enumerate; raise the budget to override."""


@dataclass(frozen=True)
class ConditionProfile:
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    n2: int
    c1_witness: int | None = None  # an a with a non-bijective difference map
    c2_witness: int | None = None  # an h whose character sum is off-magnitude
    c3_witness: int | None = None  # an a whose difference map has != 1 roots
    note: str | None = None

    @property
    def mask(self) -> str:
        return "".join("1" if c else "0" for c in (self.c1, self.c2, self.c3, self.c4))

    def lattice_ok(self) -> bool:
        """The implications C1->C2, C1->C3, C3->C4, C2->C4 all hold."""
        return not (
            (self.c1 and not self.c2)
            or (self.c1 and not self.c3)
            or (self.c3 and not self.c4)
            or (self.c2 and not self.c4)
        )

    def to_dict(self) -> dict:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "c4": self.c4,
            "n2": self.n2,
            "mask": self.mask,
            "c1_witness": self.c1_witness,
            "c2_witness": self.c2_witness,
            "c3_witness": self.c3_witness,
            "note": self.note,
        }


@dataclass(frozen=True)
class ClassificationSummary:
    q: int
    p: int
    k: int
    modulus: tuple[int, ...] | None
    total: int
    mask_counts: dict[str, int]
    witness_indices: dict[str, int]
    witness_polys: dict[str, tuple[int, ...]]

    def mask_set(self, condition: str) -> set[str]:
        """All masks (with nonzero count) under which `condition` holds."""
        bit = {"c1": 0, "c2": 1, "c3": 2, "c4": 3}[condition]
        return {m for m in self.mask_counts if m[bit] == "1"}

    def count_where(self, c1=None, c2=None, c3=None, c4=None) -> int:
        """Number of functions whose profile matches the given constraints."""
        want = (c1, c2, c3, c4)
        total = 0
        for mask, cnt in self.mask_counts.items():
            if all(w is None or (mask[i] == "1") == w for i, w in enumerate(want)):
                total += cnt
        return total

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus) if self.modulus else None,
            "total": self.total,
            "masks": dict(sorted(self.mask_counts.items())),
            "witnesses": {m: list(c) for m, c in sorted(self.witness_polys.items())},
            "witness_indices": dict(sorted(self.witness_indices.items())),
        }


# -- value-table level tests ------------------------------------------------

def n2_of_values(values) -> int:
    """N_2 from the value distribution: sum of m(m-1) over label counts."""
    return sum(m * (m - 1) for m in Counter(values).values())


def difference_values(spec: FieldSpec, values, a: int) -> list[int]:
    """Table of x -> f(x+a) - f(x) from f's value table."""
    if a == 0:
        raise ValueError("difference map needs a != 0")
    q = spec.q
    return [spec.sub(values[spec.add(x, a)], values[x]) for x in range(q)]


def difference_table(f: FieldPoly, a) -> FunctionTable:
    """FunctionTable of the difference map of f with shift a != 0."""
    av = a.value if isinstance(a, FieldElement) else int(a)
    vals = difference_values(f.spec, poly_values(f), av)
    return FunctionTable(f.spec.q, tuple(vals))


def _c1_scan(spec: FieldSpec, values) -> int | None:
    """First a != 0 whose difference map is not a bijection, else None."""
    q = spec.q
    for a in range(1, q):
        if len(set(difference_values(spec, values, a))) != q:
            return a
    return None


def _c3_scan(spec: FieldSpec, values) -> int | None:
    """First a != 0 whose difference map has root count != 1, else None."""
    q = spec.q
    for a in range(1, q):
        roots = 0
        for x in range(q):
            if values[spec.add(x, a)] == values[x]:
                roots += 1
                if roots > 1:
                    break
        if roots != 1:
            return a
    return None


def _c2_scan(spec: FieldSpec, values) -> int | None:
    """First h != 0 with |S_h|^2 != q, else None."""
    for h in range(1, spec.q):
        if not char_sum_sq_is_q(char_count_vector_from_values(spec, values, h)):
            return h
    return None


def profile_from_values(spec: FieldSpec, values) -> ConditionProfile:
    n2 = n2_of_values(values)
    a1 = _c1_scan(spec, values)
    h2 = _c2_scan(spec, values)
    a3 = _c3_scan(spec, values)
    note = None
    if spec.p == 2:
        note = "even characteristic: N_2 is even, so C4 (and with it C1) cannot hold"
    return ConditionProfile(
        c1=a1 is None,
        c2=h2 is None,
        c3=a3 is None,
        c4=n2 == spec.q - 1,
        n2=n2,
        c1_witness=a1,
        c2_witness=h2,
        c3_witness=a3,
        note=note,
    )


# -- polynomial level API -----------------------------------------------------

def test_c1(f: FieldPoly) -> tuple[bool, int | None]:
    a = _c1_scan(f.spec, poly_values(f))
    return a is None, a


def test_c2(f: FieldPoly) -> tuple[bool, int | None]:
    h = _c2_scan(f.spec, poly_values(f))
    return h is None, h


def test_c3(f: FieldPoly) -> tuple[bool, int | None]:
    a = _c3_scan(f.spec, poly_values(f))
    return a is None, a


def n2_poly(f: FieldPoly) -> int:
    return n2_of_values(poly_values(f))


def test_c4(f: FieldPoly) -> bool:
    return n2_poly(f) == f.spec.q - 1


def condition_profile(f: FieldPoly) -> ConditionProfile:
    return profile_from_values(f.spec, poly_values(f))


def verify_average_lemma(f: FieldPoly) -> tuple[int, bool]:
    """Exact check of sum over a of N_2(f(X) + aX) == q(q-1)."""
    spec = f.spec
    q = spec.q
    base = poly_values(f)
    total = 0
    for a in range(q):
        shifted = [spec.add(base[x], spec.mul(a, x)) for x in range(q)]
        total += n2_of_values(shifted)
    return total, total == q * (q - 1)


def poly_version_bounds(q: int) -> BoundReport:
    """Image-count bounds for a polynomial whose N_2 equals the average q-1."""
    report = _s2_report(q, q - 1)
    provenance = dict(report.provenance)
    provenance["hypothesis"] = "collision count at its average value q-1"
    return BoundReport(
        n=report.n,
        s=2,
        collision_count=report.collision_count,
        lower_real=report.lower_real,
        lower_int=report.lower_int,
        upper_real=report.upper_real,
        upper_int=report.upper_int,
        provenance=provenance,
        extras=dict(report.extras),
    )


def up_invariant(f: FieldPoly) -> int | None:
    """Least k in [1, q-1] with sum_x f(x)^k != 0 in the field; None if all
    power sums vanish (they are (q-1)-periodic, so no further k can work)."""
    spec = f.spec
    q = spec.q
    values = poly_values(f)
    powers = [1] * q
    for k in range(1, q):
        total = 0
        for i, v in enumerate(values):
            powers[i] = spec.mul(powers[i], v)
            total = spec.add(total, powers[i])
        if total != 0:
            return k
    return None


def wsc_lower(f: FieldPoly) -> int | None:
    """Wan-Shiue-Chen lower bound V(f) >= u_p(f) + 1, when u_p is finite."""
    u = up_invariant(f)
    return None if u is None else u + 1


# -- exhaustive classification ------------------------------------------------

def index_to_values(index: int, q: int) -> list[int]:
    """Lexicographic enumeration: index digits base q, values[0] most significant."""
    out = [0] * q
    for pos in range(q - 1, -1, -1):
        out[pos] = index % q
        index //= q
    return out


def values_to_index(values, q: int) -> int:
    index = 0
    for v in values:
        index = index * q + v
    return index


def _classify_shard(args) -> tuple[list[int], list[int | None]]:
    """Profile every value table with index in [lo, hi); returns per-mask
    counts and the first (minimal) index seen per mask."""
    p, k, modulus, lo, hi = args
    spec = FieldSpec(p, k, modulus)
    q = spec.q
    qm1 = q - 1
    add_rows = spec.add_rows()
    sub_rows = spec.sub_rows()
    trh_rows = spec.trace_mul_rows()
    pp = spec.p

    counts = [0] * 16
    first: list[int | None] = [None] * 16

    vals = index_to_values(lo, q)
    idx = lo
    while idx < hi:
        # C4: pair-collision count
        cnt = [0] * q
        for v in vals:
            cnt[v] += 1
        n2 = 0
        for c in cnt:
            n2 += c * (c - 1)
        c4 = n2 == qm1

        # C3: every difference map has exactly one root
        c3 = True
        for a in range(1, q):
            row = add_rows[a]
            roots = 0
            for x in range(q):
                if vals[row[x]] == vals[x]:
                    roots += 1
                    if roots > 1:
                        break
            if roots != 1:
                c3 = False
                break

        # C1: every difference map is a bijection
        c1 = True
        for a in range(1, q):
            row = add_rows[a]
            seen = [False] * q
            for x in range(q):
                d = sub_rows[vals[row[x]]][vals[x]]
                if seen[d]:
                    c1 = False
                    break
                seen[d] = True
            if not c1:
                break

        # C2: every character sum has squared magnitude q
        w = [0] * q
        nonzero = [v for v in range(q) if cnt[v]]
        for v1 in nonzero:
            m1 = cnt[v1]
            srow = sub_rows[v1]
            for v2 in nonzero:
                w[srow[v2]] += m1 * cnt[v2]
        c2 = True
        for h in range(1, q):
            row = trh_rows[h]
            d = [0] * pp
            for c in range(q):
                wc = w[c]
                if wc:
                    d[row[c]] += wc
            head = d[0] - q
            for j in range(1, pp):
                if d[j] != head:
                    c2 = False
                    break
            if not c2:
                break

        mask = (8 if c1 else 0) | (4 if c2 else 0) | (2 if c3 else 0) | (1 if c4 else 0)
        counts[mask] += 1
        if first[mask] is None:
            first[mask] = idx

        idx += 1
        for pos in range(q - 1, -1, -1):  # odometer increment
            vals[pos] += 1
            if vals[pos] < q:
                break
            vals[pos] = 0
    return counts, first


def _mask_bits_to_str(mask: int) -> str:
    return "".join("1" if mask & b else "0" for b in (8, 4, 2, 1))


def classify_all(
    q: int,
    budget: int = CLASSIFY_BUDGET,
    jobs: int = 1,
    modulus=None,
) -> ClassificationSummary:
    """Profile all q^q value tables over GF(q) and aggregate by condition mask.

    Enumeration is lexicographic on value tables; with several jobs the range
    is split into contiguous shards whose merge (count sums, minimum witness
    index) makes the summary independent of the shard count.
    """
    p, k = prime_power_decomposition(q)
    total = q**q
    if total > budget:
        raise ClassificationBudgetError(
            f"classifying GF({q}) means {q}^{q} = {total} tables, over budget "
            f"{budget}; pass an explicit larger budget to force it"
        )
    spec = FieldSpec(p, k, modulus)
    mod = spec.modulus

    jobs = max(1, jobs)
    shards = []
    step = -(-total // jobs)
    for lo in range(0, total, step):
        shards.append((p, k, mod, lo, min(lo + step, total)))

    if len(shards) == 1:
        results = [_classify_shard(shards[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_shard, shards))

    counts = [0] * 16
    first: list[int | None] = [None] * 16
    for shard_counts, shard_first in results:
        for m in range(16):
            counts[m] += shard_counts[m]
            fi = shard_first[m]
            if fi is not None and (first[m] is None or fi < first[m]):
                first[m] = fi

    mask_counts = {}
    witness_indices = {}
    witness_polys = {}
    for m in range(16):
        if counts[m] == 0:
            continue
        ms = _mask_bits_to_str(m)
        mask_counts[ms] = counts[m]
        witness_indices[ms] = first[m]
        table = FunctionTable(q, tuple(index_to_values(first[m], q)))
        witness_polys[ms] = interpolate(table, spec).coeffs

    return ClassificationSummary(
        q=q,
        p=p,
        k=k,
        modulus=mod,
        total=total,
        mask_counts=mask_counts,
        witness_indices=witness_indices,
        witness_polys=witness_polys,
    )
