"""Counting permutations by pinnacle set.

p_S(n) is the number of permutations of [n] whose pinnacle set is exactly S.
Four independent routes compute it:

* :func:`brute_force_count` scans every permutation (the oracle);
* :func:`quadratic_count` splits around the largest letter;
* :func:`linear_count` deletes the largest letter;
* closed forms for |S| <= 2 and for the extremal sets M_d and [n-d+1, n].

Every count is an exact Python int. Inadmissible S, or S not inside [n],
simply has count 0.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from math import comb, factorial
from typing import Iterable, Iterator, NamedTuple, Sequence

from .admissible import InadmissibleError, is_admissible
from .cache import CountCache
from .perm_core import (
    Permutation,
    PinnacleSet,
    SizeLimitError,
    enumerate_permutations,
    pinnacle_key,
    pinnacle_set,
    standardize,
)

__all__ = [
    "CountCache",
    "NoClosedFormError",
    "StirlingTable",
    "BRUTE_FORCE_LIMIT",
    "METHODS",
    "empty_count",
    "pinnacle_distribution",
    "brute_force_count",
    "reduce",
    "quadratic_count",
    "quadratic_summand",
    "quadratic_nonzero_summands",
    "linear_count",
    "closed_form_single",
    "closed_form_double",
    "closed_form",
    "stirling2",
    "max_count",
    "min_count",
    "check_bounds",
    "inject_minimal",
    "maximizing_d",
    "d_max",
    "plateau_starts",
    "q_transform",
    "count",
]

BRUTE_FORCE_LIMIT = 11
METHODS = ("auto", "brute", "quadratic", "linear", "closed")

Key = tuple[int, ...]


class NoClosedFormError(ValueError):
    pass


def _key(S: Iterable[int]) -> Key:
    return PinnacleSet(S).elements


def _in_range(key: Key, n: int) -> bool:
    return is_admissible(key) and (not key or key[-1] <= n)


def empty_count(n: int) -> int:
    """p_emptyset(n) = 2^(n-1), and 1 for the empty permutation."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 1 if n <= 1 else 2 ** (n - 1)


# -- brute force ------------------------------------------------------------

_distributions: dict[int, dict[Key, int]] = {}
_distributions_lock = threading.Lock()


def _count_prefix(n: int, first: int) -> Counter:
    return Counter(pinnacle_key(w) for w in enumerate_permutations(n, limit=n, prefix=(first,)))


def pinnacle_distribution(n: int, limit: int = BRUTE_FORCE_LIMIT, jobs: int = 1) -> dict[Key, int]:
    """Map every pinnacle set occurring in S_n to its number of permutations.

    The scan is split by first letter; with ``jobs > 1`` the prefixes run in
    worker processes and their tallies are added up afterwards.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise SizeLimitError(f"brute force over S_{n} exceeds the guard n <= {limit}")
    cached = _distributions.get(n)
    if cached is not None:
        return cached
    if n <= 1:
        total = Counter({(): 1})
    elif jobs > 1:
        total = Counter()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_count_prefix, itertools.repeat(n), range(1, n + 1)):
                total.update(part)
    else:
        total = Counter()
        for first in range(1, n + 1):
            total.update(_count_prefix(n, first))
    result = dict(total)
    with _distributions_lock:
        _distributions.setdefault(n, result)
    return result


def brute_force_count(S: Iterable[int], n: int, limit: int = BRUTE_FORCE_LIMIT, jobs: int = 1) -> int:
    return pinnacle_distribution(n, limit=limit, jobs=jobs).get(_key(S), 0)


# -- size reduction -----------------------------------------------------------

def reduce(S: Iterable[int], n: int, t: int | None = None) -> tuple[int, int]:
    """Return (2^(n-t), t) so that p_S(n) = 2^(n-t) * p_S(t).

    ``t`` defaults to max S. For the empty set the factor is taken relative
    to t = 1, matching p_emptyset(n) = 2^(n-1).
    """
    key = _key(S)
    low = key[-1] if key else 1
    if t is None:
        t = low
    if not low <= t <= n:
        raise ValueError(f"t={t} must lie in [{low}, {n}]")
    return 2 ** (n - t), t


def _reduced(key: Key, size: int, at_max) -> int:
    # p_key(size) for an admissible key inside [size]
    if not key:
        return empty_count(size)
    return 2 ** (size - key[-1]) * at_max(key)


# -- quadratic recurrence -------------------------------------------------------

class _Split(NamedTuple):
    multiplicity: int
    left_size: int
    left: Key
    right: Key


def _quadratic_splits(key: Key) -> Iterator[_Split]:
    """Classes of sets A in [n-1] (n = max S) with both halves admissible.

    A is described by which pinnacles below n it takes and how many of the
    other letters it takes from each gap between consecutive pinnacles; all A
    with the same description give the same summand, so each class is
    reported once with its multiplicity.
    """
    n = key[-1]
    below = key[:-1]
    bounds = (0,) + below + (n,)
    gaps = [bounds[i + 1] - bounds[i] - 1 for i in range(len(bounds) - 1)]

    def walk(stage: int, mult: int, a: int, c: int, left: list, right: list) -> Iterator[_Split]:
        g = gaps[stage]
        for take in range(g + 1):
            m2, a2, c2 = mult * comb(g, take), a + take, c + g - take
            if stage == len(below):
                if a2 and c2:
                    yield _Split(m2, a2, tuple(left), tuple(right))
                continue
            # the pinnacle closing this gap goes left or right of n
            rank = a2 + 1
            if rank > 2 * (len(left) + 1):
                left.append(rank)
                yield from walk(stage + 1, m2, a2 + 1, c2, left, right)
                left.pop()
            rank = c2 + 1
            if rank > 2 * (len(right) + 1):
                right.append(rank)
                yield from walk(stage + 1, m2, a2, c2 + 1, left, right)
                right.pop()

    yield from walk(0, 1, 0, 0, [], [])


def _quadratic_at_max(key: Key, cache: CountCache) -> int:
    hit = cache.get(key)
    if hit is not None:
        return hit
    n = key[-1]
    at_max = lambda k: _quadratic_at_max(k, cache)  # noqa: E731
    total = 0
    for split in _quadratic_splits(key):
        right_size = n - 1 - split.left_size
        total += (split.multiplicity
                  * _reduced(split.left, split.left_size, at_max)
                  * _reduced(split.right, right_size, at_max))
    return cache.put(key, total)


def quadratic_count(S: Iterable[int], n: int, cache: CountCache | None = None) -> int:
    key = _key(S)
    if not _in_range(key, n):
        return 0
    cache = CountCache() if cache is None else cache
    return _reduced(key, n, lambda k: _quadratic_at_max(k, cache))


def quadratic_summand(S: Iterable[int], n: int, A: Iterable[int], cache: CountCache | None = None) -> int:
    """The term p_{std_A(S)}(|A|) * p_{std_{A^c}(S)}(n-1-|A|) for one set A."""
    key = _key(S)
    if not key or key[-1] != n:
        raise ValueError("the quadratic recurrence needs max S = n")
    A = set(A)
    if not A or not A < set(range(1, n)):
        raise ValueError("A must be a nonempty proper subset of [n-1]")
    rest = set(range(1, n)) - A
    cache = CountCache() if cache is None else cache
    return (quadratic_count(standardize(A, key), len(A), cache)
            * quadratic_count(standardize(rest, key), len(rest), cache))


def quadratic_nonzero_summands(S: Iterable[int]) -> int:
    """How many of the 2^(n-1) - 2 sets A give a nonzero term, n = max S."""
    key = _key(S)
    if not key or not is_admissible(key):
        return 0
    return sum(split.multiplicity for split in _quadratic_splits(key))


# -- linear recurrence ------------------------------------------------------------

def _linear_at_max(key: Key, cache: CountCache) -> int:
    hit = cache.get(key)
    if hit is not None:
        return hit
    m, d, rest = key[-1], len(key), key[:-1]
    at_max = lambda k: _linear_at_max(k, cache)  # noqa: E731
    # insert m into a gap not touching the ends or an existing peak
    total = (m - 2 * d) * _reduced(rest, m - 1, at_max)
    # or next to a pinnacle j, which m then replaces
    taken = set(rest)
    for j in range(1, m):
        if j in taken:
            continue
        T = tuple(sorted(rest + (j,)))
        if is_admissible(T):
            total += 2 * _reduced(T, m - 1, at_max)
    return cache.put(key, total)


def linear_count(S: Iterable[int], n: int, cache: CountCache | None = None) -> int:
    key = _key(S)
    if not _in_range(key, n):
        return 0
    cache = CountCache() if cache is None else cache
    return _reduced(key, n, lambda k: _linear_at_max(k, cache))


# -- closed forms ---------------------------------------------------------------------

def closed_form_single(l: int, n: int) -> int:
    """p_{l}(n) = 2^(n-2) (2^(l-2) - 1)."""
    if not 3 <= l <= n:
        raise ValueError(f"need 3 <= l <= n, got l={l}, n={n}")
    return 2 ** (n - 2) * (2 ** (l - 2) - 1)


def closed_form_double(l: int, m: int, n: int) -> int:
    """p_{l,m}(n) = 2^(n+m-l-5) (3^(l-1) - 2^l + 1) - 2^(n-3) (2^(l-2) - 1)."""
    if not 3 <= l < m <= n:
        raise ValueError(f"need 3 <= l < m <= n, got l={l}, m={m}, n={n}")
    return 2 ** (n + m - l - 5) * (3 ** (l - 1) - 2 ** l + 1) - 2 ** (n - 3) * (2 ** (l - 2) - 1)


class StirlingTable:
    """Stirling numbers of the second kind, grown row by row on demand."""

    def __init__(self) -> None:
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("Stirling numbers need n, k >= 0")
        if k > n:
            return 0
        if n >= len(self._rows):
            with self._lock:
                while len(self._rows) <= n:
                    prev = self._rows[-1]
                    i = len(self._rows)
                    row = [0] * (i + 1)
                    for j in range(1, i + 1):
                        row[j] = j * (prev[j] if j < i else 0) + prev[j - 1]
                    self._rows.append(row)
        return self._rows[n][k]


stirling2 = StirlingTable()


def max_count(n: int, d: int) -> int:
    """p_S(n) for S = [n-d+1, n]: d! (d+1)! 2^(n-2d-1) S(n-d, d+1)."""
    if d < 0 or 2 * d >= n:
        raise ValueError(f"need 0 <= 2d < n, got n={n}, d={d}")
    return factorial(d) * factorial(d + 1) * 2 ** (n - 2 * d - 1) * stirling2(n - d, d + 1)


def min_count(n: int, d: int) -> int:
    """p_S(n) for S = M_d = {3, 5, ..., 2d+1}: 2^(n-d-1)."""
    if d < 0 or 2 * d >= n:
        raise ValueError(f"need 0 <= 2d < n, got n={n}, d={d}")
    return 2 ** (n - d - 1)


def closed_form(S: Iterable[int], n: int) -> int:
    """p_S(n) from whichever closed form covers S; NoClosedFormError otherwise."""
    key = _key(S)
    if not _in_range(key, n):
        return 0
    d = len(key)
    if d == 0:
        return empty_count(n)
    if d == 1:
        return closed_form_single(key[0], n)
    if d == 2:
        return closed_form_double(key[0], key[1], n)
    m = key[-1]
    if key == PinnacleSet.minimal(d).elements:
        return min_count(n, d)
    if key == tuple(range(m - d + 1, m + 1)):
        return 2 ** (n - m) * max_count(m, d)
    raise NoClosedFormError(f"no closed form for S={PinnacleSet(key)}")


def check_bounds(S: Iterable[int], n: int, cache: CountCache | None = None) -> tuple[bool, bool]:
    """Whether 2^(n-d-1) <= p_S(n) and p_S(n) <= max_count(n, d) hold."""
    key = _key(S)
    d = len(key)
    if not is_admissible(key):
        raise InadmissibleError(f"{PinnacleSet(key)} is not admissible")
    if key and key[-1] > n:
        raise ValueError(f"{PinnacleSet(key)} is not a subset of [{n}]")
    if 2 * d >= n:
        raise ValueError(f"bounds need 2|S| < n, got |S|={d}, n={n}")
    p = linear_count(key, n, cache)
    return min_count(n, d) <= p, p <= max_count(n, d)


# -- injection from M_d ----------------------------------------------------------

def _valley_values(d: int, target: PinnacleSet, n: int) -> dict[int, int]:
    # The non-peak letters 1, 2, 4, ..., 2d of the block, from the top down,
    # each take the largest free value not above themselves or the previous
    # choice. Letters already outside S keep their value.
    free = sorted(set(range(1, n + 1)) - target, reverse=True)
    out, ceiling = {}, n + 1
    for v in sorted({1} | set(range(2, 2 * d + 1, 2)), reverse=True):
        ceiling = min(ceiling - 1, v)
        out[v] = next(f for f in free if f <= ceiling)
        ceiling = out[v]
    return out


def inject_minimal(w: Sequence[int], S: Iterable[int]) -> Permutation:
    """Send w with pinnacle set M_d to a permutation with pinnacle set S.

    w = u w' v with w' the block of values 1..2d+1. In the block the peak
    2k+1 becomes s_k and the other letters are relabelled downward-greedily
    (unchanged whenever they avoid S); the letters of u and v are relabelled
    order-preservingly by the values left over. For fixed S the map is
    injective.
    """
    w = Permutation(w)
    n = len(w)
    target = PinnacleSet(S)
    d = target.d
    if pinnacle_set(w) != PinnacleSet.minimal(d):
        raise ValueError(f"w must have pinnacle set {PinnacleSet.minimal(d)}")
    if not target.is_admissible():
        raise InadmissibleError(f"{target} is not admissible")
    if 2 * d >= n or (target and target.m > n):
        raise ValueError(f"need 2|S| < n and S inside [{n}]")
    block = _valley_values(d, target, n)
    block.update({2 * k + 1: s for k, s in enumerate(target.elements, start=1)})
    outside_old = range(2 * d + 2, n + 1)
    outside_new = sorted(set(range(1, n + 1)) - set(block.values()))
    block.update(zip(outside_old, outside_new))
    return Permutation(block[v] for v in w)


# -- the maximizing size d(n) -------------------------------------------------------

class MaxD(NamedTuple):
    d: int
    value: int
    tie: bool


def maximizing_d(n: int) -> MaxD:
    """The d in [1, ceil(n/2) - 1] maximizing max_count(n, d); smallest d on ties."""
    if n < 4:
        raise ValueError("d(n) is defined for n >= 4")
    best = MaxD(0, -1, False)
    for d in range(1, (n + 1) // 2):
        value = max_count(n, d)
        if value > best.value:
            best = MaxD(d, value, False)
        elif value == best.value:
            best = best._replace(tie=True)
    return best


def d_max(n: int) -> int:
    return maximizing_d(n).d


def plateau_starts(n_max: int) -> list[tuple[int, int]]:
    """All n <= n_max with d(n) = d(n+1) = d(n+2) = d(n+3)."""
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    ds = {n: d_max(n) for n in range(4, n_max + 4)}
    return [(n, ds[n]) for n in range(4, n_max + 1)
            if ds[n] == ds[n + 1] == ds[n + 2] == ds[n + 3]]


# -- q transform and dispatch -----------------------------------------------------------

def q_transform(S: Iterable[int], n: int, method: str = "linear", cache: CountCache | None = None) -> int:
    """Sum over subsets I of S of 2^|I| p_I(n)."""
    key = _key(S)
    if key and key[-1] > n:
        raise ValueError(f"{PinnacleSet(key)} is not a subset of [{n}]")
    cache = CountCache() if cache is None else cache
    return sum(2 ** r * count(I, n, method=method, cache=cache)
               for r in range(len(key) + 1)
               for I in itertools.combinations(key, r))


def count(
    S: Iterable[int],
    n: int,
    method: str = "auto",
    cache: CountCache | None = None,
    *,
    strict: bool = False,
    brute_limit: int = BRUTE_FORCE_LIMIT,
    jobs: int = 1,
) -> int:
    """p_S(n) by the chosen engine.

    ``auto`` uses a closed form when one applies and the linear recurrence
    otherwise. With ``strict``, an inadmissible S or one reaching past n
    raises instead of counting 0.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    key = _key(S)
    if strict:
        if not is_admissible(key):
            raise InadmissibleError(f"{PinnacleSet(key)} is not admissible")
        if key and key[-1] > n:
            raise ValueError(f"{PinnacleSet(key)} is not a subset of [{n}]")
    if method == "brute":
        return brute_force_count(key, n, limit=brute_limit, jobs=jobs)
    if method == "quadratic":
        return quadratic_count(key, n, cache)
    if method == "linear":
        return linear_count(key, n, cache)
    if method == "closed":
        return closed_form(key, n)
    try:
        return closed_form(key, n)
    except NoClosedFormError:
        return linear_count(key, n, cache)
