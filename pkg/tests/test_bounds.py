import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuesets.bounds import (
    InfeasibleError,
    ParityError,
    bound_report,
    bounds_s2,
    construct_lower_tight,
    construct_upper_tight,
    lower_bound,
    max_multiplicity_for,
    triangular_B,
    triangular_number,
    upper_bound_exact,
    upper_bound_refined_s2,
    wan_degree_bound,
)
from valuesets.functable import FunctionTable, collision_count, image_count, spectrum


def test_lower_bound_examples():
    assert lower_bound(10, 2, 4) == (Fraction(8), 8)
    assert lower_bound(10, 3, 6) == (Fraction(9, 2), 5)
    for n in (1, 7, 100):
        assert lower_bound(n, 2, 0) == (Fraction(n), n)
        assert lower_bound(n, 4, 0) == (Fraction(n, 3), math.ceil(Fraction(n, 3)))


def test_lower_bound_rejects_small_s():
    with pytest.raises(ValueError):
        lower_bound(10, 1, 0)


def test_max_multiplicity():
    assert max_multiplicity_for(2, 6) == 3  # P(3,2)=6 <= 6 < P(4,2)=12
    assert max_multiplicity_for(3, 6) == 3  # P(3,3)=6
    assert max_multiplicity_for(2, 10**12) == 1000000
    with pytest.raises(InfeasibleError):
        max_multiplicity_for(3, 4)  # 0 < t < 3!


def test_upper_bound_exact_examples():
    assert upper_bound_exact(10, 2, 6) == 8
    assert upper_bound_exact(10, 3, 6) == 8
    for n in (1, 9, 50):
        assert upper_bound_exact(n, 2, 0) == n
        assert upper_bound_exact(n, 4, 0) == n
    with pytest.raises(InfeasibleError):
        upper_bound_exact(10, 3, 4)


def test_bounds_s2_examples():
    r = bounds_s2(10, 4)
    assert (r.lower_int, r.upper_int) == (8, 8)
    assert r.lower_real == 8
    assert abs(float(r.upper_real) - 8.438447) < 1e-5
    assert r.extras["m1_lower"] == 6

    r = bounds_s2(10, 6)  # 4t+1 = 25 is a perfect square: bound exact
    assert r.upper_int == 8
    assert isinstance(r.upper_real, Fraction) and r.upper_real == 8

    r = bounds_s2(12, 0)
    assert (r.lower_int, r.upper_int) == (12, 12)


def test_bounds_s2_parity():
    with pytest.raises(ParityError):
        bounds_s2(10, 3)


def test_triangular_B_at_triangular_numbers():
    for u in range(2, 51):
        bk, witness = triangular_B(triangular_number(u))
        assert bk == u - 1
        assert witness.parts == (u,)


def test_triangular_B_examples():
    assert triangular_B(0)[0] == 0
    assert triangular_B(1)[0] == 1
    bk, witness = triangular_B(4)
    assert bk == 3 and witness.parts == (3, 2)  # T_3 + T_2 = 3 + 1
    bk, witness = triangular_B(10)
    assert bk == 4 and witness.parts == (5,)  # T_5 = 10 beats 6+3+1


def _exhaustive_min_weight(k):
    """Minimum weight over all triangular decompositions, by direct recursion."""
    best = [None]

    def rec(rest, max_part, weight):
        if rest == 0:
            if best[0] is None or weight < best[0]:
                best[0] = weight
            return
        r = max_part
        while r >= 2:
            t = triangular_number(r)
            if t <= rest:
                rec(rest - t, r, weight + r - 1)
            r -= 1

    top = 2
    while triangular_number(top + 1) <= k:
        top += 1
    rec(k, max(top, 2), 0)
    return best[0] if k else 0


def test_triangular_B_against_exhaustive():
    for k in range(0, 101):
        assert triangular_B(k)[0] == _exhaustive_min_weight(k)


def test_triangular_B_monotone_step():
    prev = 0
    for k in range(1, 2001):
        bk = triangular_B(k)[0]
        assert bk <= prev + 1
        prev = bk


def test_gauss_three_triangulars():
    # every k up to 1000 is a sum of at most 3 triangular numbers >= T_2
    tri = [triangular_number(r) for r in range(2, 50)]
    tri_set = set(tri)
    pair_sums = {a + b for a in tri for b in tri}
    for k in range(1, 1001):
        assert (
            k in tri_set
            or k in pair_sums
            or any(k - a in pair_sums or k - a in tri_set for a in tri if a < k)
        )


def test_refined_upper_dominates_closed_form():
    for t in range(0, 20001, 2):
        n = 30000
        assert upper_bound_refined_s2(n, t) <= bounds_s2(n, t).upper_int


def test_refined_upper_parity():
    with pytest.raises(ParityError):
        upper_bound_refined_s2(10, 5)


def test_construct_lower_tight():
    f = construct_lower_tight(6, 4)
    assert image_count(f) == 4 and collision_count(f, 2) == 4
    f = construct_lower_tight(5, 4)
    assert f.values == (0, 0, 1, 1, 2)
    f = construct_lower_tight(7, 0)
    assert image_count(f) == 7
    with pytest.raises(ParityError):
        construct_lower_tight(6, 3)
    with pytest.raises(InfeasibleError):
        construct_lower_tight(3, 4)


def test_construct_upper_tight():
    f = construct_upper_tight(6, 3)  # single block of 3
    assert image_count(f) == 4 and collision_count(f, 2) == 6
    f = construct_upper_tight(10, 6)  # T_4: block of 4, V = 10 + 1 - 4
    assert image_count(f) == 7 and collision_count(f, 2) == 12
    f = construct_upper_tight(4, 0)
    assert image_count(f) == 4
    with pytest.raises(InfeasibleError):
        construct_upper_tight(2, 3)


def test_wan_degree_bound():
    assert wan_degree_bound(7, 2) == 4
    assert wan_degree_bound(7, 6) == 6
    for q in (5, 9, 27):
        assert wan_degree_bound(q, 1) == 1
    with pytest.raises(ValueError):
        wan_degree_bound(7, 0)


def test_bound_report_s2_merges_refinement():
    r = bound_report(10, 2, 6)
    assert r.lower_int == 7
    assert r.extras["upper_int_refined"] == 8
    assert r.upper_int == 8
    d = r.to_dict()
    assert d["collision_count"] == 6 and d["extras"]["b_k"] == 2


def test_bound_report_general_s():
    r = bound_report(10, 3, 6)
    assert (r.lower_int, r.upper_int) == (5, 8)


def _partitions(n, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield []
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            yield [first] + rest


def test_sandwich_over_all_spectra_small():
    # every multiplicity spectrum of n <= 16: lower <= V <= upper, all s
    for n in range(1, 17):
        for parts in _partitions(n):
            v = len(parts)
            for s in (2, 3, 4):
                t = sum(math.perm(r, s) for r in parts)
                assert lower_bound(n, s, t)[1] <= v <= upper_bound_exact(n, s, t)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=14))
@settings(max_examples=300)
def test_sandwich_on_random_functions(values):
    f = FunctionTable.from_values(values)
    v = image_count(f)
    n = f.domain_size
    for s in (2, 3, 4):
        t = collision_count(f, s)
        assert lower_bound(n, s, t)[1] <= v <= upper_bound_exact(n, s, t)
    t2 = collision_count(f, 2)
    assert v <= upper_bound_refined_s2(n, t2)
    assert v <= bounds_s2(n, t2).upper_int
    assert spectrum(f).multiplicity(1) >= bounds_s2(n, t2).extras["m1_lower"]
