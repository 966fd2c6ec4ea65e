import itertools
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from pinnacles.admissible import InadmissibleError, admissible_subsets
from pinnacles.cache import CountCache
from pinnacles.counting import (
    BRUTE_FORCE_LIMIT,
    NoClosedFormError,
    brute_force_count,
    check_bounds,
    closed_form,
    closed_form_double,
    closed_form_single,
    count,
    d_max,
    empty_count,
    inject_minimal,
    linear_count,
    max_count,
    maximizing_d,
    min_count,
    pinnacle_distribution,
    plateau_starts,
    q_transform,
    quadratic_count,
    quadratic_nonzero_summands,
    quadratic_summand,
    reduce,
    stirling2,
)
from pinnacles.perm_core import Permutation, PinnacleSet, SizeLimitError, enumerate_permutations, pinnacle_set

P_AT_7 = [64, 32, 96, 224, 480, 992, 16, 48, 48, 144, 288, 112, 336, 688, 1200, 8, 24, 24, 72, 144]
P_AT_MAX = [None, 2, 12, 56, 240, 992, 4, 12, 24, 72, 144, 112, 336, 688, 1200, 8, 24, 24, 72, 144]


def set_partitions(n, k):
    """Count partitions of an n-set into k blocks by listing restricted growth strings."""
    total = 0
    for rgs in itertools.product(range(k), repeat=n):
        if rgs and rgs[0] != 0:
            continue
        seen = -1
        ok = True
        for b in rgs:
            if b > seen + 1:
                ok = False
                break
            seen = max(seen, b)
        total += ok and seen == k - 1
    return total if n else int(k == 0)


@pytest.mark.parametrize("method", ["brute", "quadratic", "linear", "auto"])
def test_table4(method):
    sets = list(admissible_subsets(7))
    assert [count(S, 7, method) for S in sets] == P_AT_7
    assert [count(S, S.m, method) if S else None for S in sets] == P_AT_MAX


def test_engines_agree_exhaustively():
    quad, lin = CountCache(), CountCache()
    for n in range(0, 10):
        for S in admissible_subsets(max(n, 1)):
            b = brute_force_count(S, n)
            assert quadratic_count(S, n, quad) == b == linear_count(S, n, lin), (S, n)


def test_zero_cases():
    assert count({3, 5, 6}, 8) == 0
    assert count({9}, 8) == 0
    assert linear_count({2}, 5) == quadratic_count({2}, 5) == closed_form({2}, 5) == 0
    with pytest.raises(InadmissibleError):
        count({3, 5, 6}, 8, strict=True)
    with pytest.raises(ValueError):
        count({9}, 8, strict=True)
    with pytest.raises(ValueError):
        count({3}, 5, method="magic")
    with pytest.raises(ValueError):
        count({3}, -1)


def test_worked_values():
    assert count({4, 7, 9}, 9) == 4128
    assert quadratic_summand({4, 7, 9}, 9, {1, 2, 4}) == 48
    assert empty_count(0) == empty_count(1) == 1 and empty_count(5) == 16
    assert reduce({4, 7}, 9) == (4, 7)
    assert reduce(set(), 5) == (16, 1)
    with pytest.raises(ValueError):
        reduce({4, 7}, 9, 5)


def _summand_oracle(S, n, A):
    # permutations with n in position |A|+1, the letters of A before it, and pinnacle set S
    A = set(A)
    pos = len(A)
    return sum(1 for w in enumerate_permutations(n)
               if w[pos] == n and set(w[:pos]) == A and pinnacle_set(w) == S)


@pytest.mark.parametrize("A", [{1, 2, 4}, {1, 2, 3, 5, 6}, {7, 8}, {4, 8}, {1}])
def test_quadratic_summand_oracle(A):
    assert quadratic_summand({4, 7, 9}, 9, A) == _summand_oracle({4, 7, 9}, 9, A)


def test_quadratic_nonzero_summands():
    S = {4, 7, 9}
    oracle = sum(1 for r in range(1, 8) for A in itertools.combinations(range(1, 9), r)
                 if quadratic_summand(S, 9, A))
    assert quadratic_nonzero_summands(S) == oracle == 90
    assert quadratic_nonzero_summands({3, 5, 6}) == 0
    with pytest.raises(ValueError):
        quadratic_summand(S, 10, {1})
    with pytest.raises(ValueError):
        quadratic_summand(S, 9, set(range(1, 9)))


def test_closed_forms_domains():
    for n in range(3, 10):
        for l in range(3, n + 1):
            assert closed_form_single(l, n) == brute_force_count({l}, n)
            for m in range(l + 1, n + 1):
                assert closed_form_double(l, m, n) == brute_force_count({l, m}, n)
        for d in range(0, (n + 1) // 2):
            assert min_count(n, d) == brute_force_count(PinnacleSet.minimal(d), n)
            assert max_count(n, d) == brute_force_count(PinnacleSet.top(n, d), n)
    with pytest.raises(ValueError):
        closed_form_single(2, 5)
    with pytest.raises(ValueError):
        closed_form_double(5, 5, 7)
    with pytest.raises(ValueError):
        max_count(6, 3)
    with pytest.raises(NoClosedFormError):
        closed_form({4, 7, 9}, 9)
    assert closed_form({5, 6, 7}, 8) == 2 * 144


def test_stirling_against_partitions():
    for n in range(0, 9):
        for k in range(0, n + 1):
            assert stirling2(n, k) == set_partitions(n, k)
    assert stirling2(3, 5) == 0
    with pytest.raises(ValueError):
        stirling2(-1, 0)


def test_bounds_and_sharpness():
    cache = CountCache()
    for n in range(3, 11):
        for S in admissible_subsets(n):
            d = len(S)
            if 2 * d >= n:
                with pytest.raises(ValueError):
                    check_bounds(S, n, cache)
                continue
            assert check_bounds(S, n, cache) == (True, True)
            p = linear_count(S, n, cache)
            assert (p == min_count(n, d)) == (S == PinnacleSet.minimal(d))
            assert (p == max_count(n, d)) == (S == PinnacleSet.top(n, d))
    with pytest.raises(InadmissibleError):
        check_bounds({3, 4}, 9)


def test_inject_minimal_example():
    assert "".join(map(str, inject_minimal(Permutation.parse("813254679"), {5, 8}))) == "715284369"
    with pytest.raises(ValueError):
        inject_minimal(Permutation.parse("12345"), {3})


def test_inject_minimal_injective():
    for n in range(3, 9):
        by_set = {}
        for w in enumerate_permutations(n):
            by_set.setdefault(pinnacle_set(w), []).append(w)
        for d in range(1, (n + 1) // 2):
            sources = by_set[PinnacleSet.minimal(d)]
            for S in admissible_subsets(n):
                if len(S) != d:
                    continue
                images = {inject_minimal(w, S) for w in sources}
                assert len(images) == len(sources)
                assert all(pinnacle_set(v) == S for v in images)


def test_dmax_and_plateaus():
    assert [d_max(n) for n in range(4, 23)] == [1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 6, 6, 6]
    assert plateau_starts(200) == [(13, 4), (38, 12), (63, 20), (85, 27), (110, 35), (135, 43), (160, 51), (185, 59)]
    assert not maximizing_d(50).tie
    with pytest.raises(ValueError):
        maximizing_d(3)


def test_q_transform():
    for n in range(1, 10):
        assert q_transform(set(), n) == 2 ** (n - 1)
        for l in range(3, n + 1):
            assert q_transform({l}, n) == 2 ** (n + l - 3)
            for m in range(l + 1, n + 1):
                assert q_transform({l, m}, n) == 2 ** (n + m - l - 3) * (3 ** (l - 1) + 1)
    with pytest.raises(ValueError):
        q_transform({5}, 4)


def test_sum_over_sets_is_factorial():
    cache = CountCache()
    for n in range(1, 13):
        assert sum(count(S, n, cache=cache) for S in admissible_subsets(n)) == factorial(n)


def test_distribution_parallel_matches_serial():
    assert pinnacle_distribution(8, jobs=3) == pinnacle_distribution(8, jobs=1)
    assert sum(pinnacle_distribution(7).values()) == factorial(7)


def test_brute_force_guard():
    with pytest.raises(SizeLimitError):
        brute_force_count({3}, BRUTE_FORCE_LIMIT + 1)
    with pytest.raises(SizeLimitError):
        count({3}, 12, method="brute")


def test_cache_shared_across_engines_is_consistent():
    cache = CountCache()
    a = linear_count({4, 7, 9}, 12, cache)
    b = quadratic_count({4, 7, 9}, 12, cache)
    assert a == b == 8 * 4128
    assert cache.hits > 0


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(3, 18), max_size=6), st.integers(0, 4))
def test_linear_equals_quadratic(S, extra):
    n = max(S, default=1) + extra
    assert linear_count(S, n) == quadratic_count(S, n)


@pytest.mark.parametrize("call, expected", [
    (lambda: max_count(7, 2), 1200),
    (lambda: max_count(7, 1), 992),
    (lambda: max_count(7, 3), 144),
    (lambda: min_count(7, 3), 8),
    (lambda: min_count(7, 2), 16),
    (lambda: min_count(9, 4), 2 ** 4),
    (lambda: stirling2(5, 3), 25),
    (lambda: stirling2(6, 1), 1),
    (lambda: stirling2(4, 4), 1),
    (lambda: d_max(13), 4),
    (lambda: d_max(16), 4),
    (lambda: d_max(38), 12),
    (lambda: plateau_starts(12), []),
    (lambda: plateau_starts(63), [(13, 4), (38, 12), (63, 20)]),
    (lambda: q_transform(set(), 7), 64),
    (lambda: q_transform({5}, 7), 512),
    (lambda: q_transform({3, 6}, 7), 1280),
    (lambda: check_bounds({4, 6}, 7), (True, True)),
    (lambda: closed_form_single(5, 7), 224),
    (lambda: closed_form_double(5, 7, 7), 688),
])
def test_documented_values(call, expected):
    assert call() == expected


def test_inject_minimal_fixes_minimal_class():
    for w in enumerate_permutations(7):
        if pinnacle_set(w) == {3, 5}:
            assert inject_minimal(w, {3, 5}) == w


def test_inject_minimal_35_to_46():
    sources = [w for w in enumerate_permutations(7) if pinnacle_set(w) == {3, 5}]
    images = {inject_minimal(w, {4, 6}) for w in sources}
    assert len(sources) == len(images) == 16
    assert all(pinnacle_set(v) == {4, 6} for v in images)
