"""Admissible pinnacle sets: testing, canonical witnesses, enumeration and counts."""
from __future__ import annotations

import threading
from math import comb
from typing import Iterable, Iterator

from .perm_core import Permutation, PinnacleSet

__all__ = [
    "InadmissibleError",
    "PinnacleSet",
    "is_admissible",
    "min_ambient_n",
    "canonical_permutation",
    "enumerate_admissible",
    "admissible_subsets",
    "count_admissible",
    "count_admissible_with_max",
    "count_admissible_upto",
    "admissible_count_table",
    "catalan",
]


class InadmissibleError(ValueError):
    pass


def _as_set(S: Iterable[int]) -> PinnacleSet:
    return S if isinstance(S, PinnacleSet) else PinnacleSet(S)


def is_admissible(S: Iterable[int]) -> bool:
    """True iff the k-th smallest element exceeds 2k for every k."""
    return _as_set(S).violation() is None


def _require_admissible(S: PinnacleSet) -> None:
    k = S.violation()
    if k is not None:
        s = S.elements[k - 1]
        raise InadmissibleError(f"{S} is not admissible: s_{k} = {s} <= {2 * k}")


def min_ambient_n(S: Iterable[int]) -> int:
    S = _as_set(S)
    _require_admissible(S)
    return S.m if S else 1


def canonical_permutation(S: Iterable[int]) -> Permutation:
    """The witness w_S in S_m: pinnacles at even positions 2, 4, ..., 2d, the
    remaining values of [m] in increasing order everywhere else."""
    S = _as_set(S)
    if not S:
        raise InadmissibleError("the canonical permutation is defined for nonempty sets only")
    _require_admissible(S)
    s = S.elements
    d, m = len(s), s[-1]
    t = [v for v in range(1, m + 1) if v not in S]
    word = []
    for i in range(1, m + 1):
        if i <= 2 * d:
            word.append(s[i // 2 - 1] if i % 2 == 0 else t[(i + 1) // 2 - 1])
        else:
            word.append(t[i - d - 1])
    return Permutation(word)


def enumerate_admissible(m: int, d: int) -> list[PinnacleSet]:
    """All admissible sets with maximum m and size d, in lexicographic order."""
    if d < 1 or m <= 2 * d:
        return []
    out: list[PinnacleSet] = []

    def extend(prefix: list[int]) -> None:
        k = len(prefix) + 1
        if k == d:
            out.append(PinnacleSet(prefix + [m]))
            return
        lo = max(prefix[-1] + 1 if prefix else 1, 2 * k + 1)
        # leave room for the larger elements below m
        for s in range(lo, m - (d - k) + 1):
            prefix.append(s)
            extend(prefix)
            prefix.pop()

    extend([])
    return out


def admissible_subsets(n: int) -> Iterator[PinnacleSet]:
    """Every admissible S within [n] (the empty set first), ordered by size,
    then maximum, then lexicographically."""
    yield PinnacleSet()
    for d in range(1, (n - 1) // 2 + 1):
        for m in range(2 * d + 1, n + 1):
            yield from enumerate_admissible(m, d)


class _AdmissibleTable:
    # rows[m][d] = p(m; d); prefix[m][d] = sum of rows[k][d] for k < m
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.rows: list[list[int]] = [[1]]
        self.prefix: list[list[int]] = [[0]]

    def _grow(self, m: int) -> None:
        with self._lock:
            while len(self.rows) <= m:
                k = len(self.rows)
                prev_row, prev_pre = self.rows[k - 1], self.prefix[k - 1]
                width = k // 2 + 1
                pre = [(prev_pre[d] if d < len(prev_pre) else 0)
                       + (prev_row[d] if d < len(prev_row) else 0) for d in range(width)]
                row = [0] * width
                for d in range(1, width):
                    if k > 2 * d:
                        row[d] = pre[d - 1]
                self.prefix.append(pre)
                self.rows.append(row)

    def get(self, m: int, d: int) -> int:
        if m < 0 or d < 0:
            return 0
        if len(self.rows) <= m:
            self._grow(m)
        row = self.rows[m]
        return row[d] if d < len(row) else 0


_TABLE = _AdmissibleTable()


def count_admissible(m: int, d: int) -> int:
    """p(m; d) from the full-sum recurrence, with p(0; 0) = 1."""
    return _TABLE.get(m, d)


def count_admissible_with_max(m: int) -> int:
    if m < 3:
        return 0
    return comb(m - 2, m // 2)


def count_admissible_upto(n: int) -> int:
    """Number of admissible S within [n], the empty set included."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return comb(n - 1, (n - 1) // 2)


def admissible_count_table(max_m: int) -> list[list[int]]:
    """Rows m = 0..max_m of p(m; d) for d = 0..max_d, padded with zeros."""
    max_d = max(0, (max_m - 1) // 2)
    return [[count_admissible(m, d) for d in range(max_d + 1)] for m in range(max_m + 1)]


def catalan(d: int) -> int:
    return comb(2 * d, d) // (d + 1)
