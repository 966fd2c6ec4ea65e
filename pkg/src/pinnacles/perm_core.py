"""Permutations in one-line notation and their descent/peak/pinnacle statistics.

Positions are 1-based everywhere they are reported, so ``peak_set(w)`` for
``w = 315264`` is ``{3, 5}`` and ``pinnacle_set(w)`` is ``{5, 6}``.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "PinnacleSet",
    "SizeLimitError",
    "descent_set",
    "peak_set",
    "pinnacle_set",
    "standardize",
    "enumerate_permutations",
    "format_set",
    "ENUMERATION_LIMIT",
]

ENUMERATION_LIMIT = 12


class SizeLimitError(ValueError):
    """Raised when an exhaustive enumeration would exceed its configured size guard."""


class Permutation(tuple):
    """A permutation of [n] written as the word w(1) w(2) ... w(n).

    Indexing is ordinary (0-based) tuple indexing; use :meth:`at` for the
    1-based value w(i).
    """

    def __new__(cls, word: Iterable[int] = ()):
        word = tuple(int(v) for v in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word!r} is not a permutation of [1..{len(word)}]")
        return super().__new__(cls, word)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"315264"``, ``"3,1,5,2,6,4"`` or a JSON array like ``"[3,1,5]"``."""
        text = text.strip()
        if text.startswith("["):
            try:
                values = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ValueError(f"malformed permutation literal {text!r}") from exc
        elif "," in text:
            values = [v for v in text.replace(" ", "").split(",") if v]
        else:
            values = list(text)
        try:
            return cls(int(v) for v in values)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed permutation literal {text!r}: {exc}") from None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self)

    def at(self, i: int) -> int:
        """The value w(i), 1-based."""
        if not 1 <= i <= len(self):
            raise IndexError(i)
        return self[i - 1]

    def to_json(self) -> list[int]:
        return list(self)

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(str(v) for v in self)
        return json.dumps(list(self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


class PinnacleSet(frozenset):
    """A finite set of positive integers viewed as a (candidate) pinnacle set.

    Compares equal to plain sets with the same elements. ``d`` is the size and
    ``m`` the maximum (``None`` for the empty set).
    """

    def __new__(cls, elements: Iterable[int] = ()):
        elements = [int(e) for e in elements]
        if any(e < 1 for e in elements):
            raise ValueError(f"pinnacle set elements must be positive: {sorted(elements)}")
        return super().__new__(cls, elements)

    @classmethod
    def parse(cls, text: str) -> "PinnacleSet":
        """Parse ``"{3,5,7}"``, ``"3,5,7"``, ``"[3,5,7]"`` or ``"{}"``; whitespace is ignored."""
        body = "".join(text.split())
        if body[:1] in "{[" and body[-1:] in "}]":
            body = body[1:-1]
        if not body:
            return cls()
        try:
            values = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed set literal {text!r}") from None
        if len(set(values)) != len(values):
            raise ValueError(f"repeated element in set literal {text!r}")
        return cls(values)

    @classmethod
    def minimal(cls, d: int) -> "PinnacleSet":
        """M_d = {3, 5, ..., 2d+1}, the smallest admissible set of size d."""
        return cls(2 * k + 1 for k in range(1, d + 1))

    @classmethod
    def top(cls, n: int, d: int) -> "PinnacleSet":
        """The d largest elements of [n]."""
        return cls(range(n - d + 1, n + 1))

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    @property
    def d(self) -> int:
        return len(self)

    @property
    def m(self) -> int | None:
        return max(self) if self else None

    def violation(self) -> int | None:
        """Smallest k with s_k <= 2k, or None when the set is admissible."""
        for k, s in enumerate(self.elements, start=1):
            if s <= 2 * k:
                return k
        return None

    def is_admissible(self) -> bool:
        return self.violation() is None

    def __str__(self) -> str:
        return format_set(self)

    def __repr__(self) -> str:
        return f"PinnacleSet({format_set(self)})"


def format_set(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def descent_set(w: Sequence[int]) -> set[int]:
    return {i for i in range(1, len(w)) if w[i - 1] > w[i]}


def peak_set(w: Sequence[int]) -> set[int]:
    return {i for i in range(2, len(w)) if w[i - 2] < w[i - 1] > w[i]}


def pinnacle_set(w: Sequence[int]) -> PinnacleSet:
    return PinnacleSet(w[i - 1] for i in peak_set(w))


def pinnacle_key(w: Sequence[int]) -> tuple[int, ...]:
    # hot path for the brute-force oracle; avoids building sets
    return tuple(sorted(w[i] for i in range(1, len(w) - 1) if w[i - 1] < w[i] > w[i + 1]))


def standardize(X: Iterable[int], T: Iterable[int]) -> set[int]:
    """Ranks within X of the elements of T that lie in X.

    >>> sorted(standardize({3, 5, 6, 7, 8}, {4, 7, 9}))
    [4]
    """
    T = set(T)
    return {i for i, x in enumerate(sorted(set(X)), start=1) if x in T}


def enumerate_permutations(
    n: int, limit: int = ENUMERATION_LIMIT, prefix: Sequence[int] = ()
) -> Iterator[Permutation]:
    """All permutations of [n] in lexicographic order.

    With ``prefix``, only the permutations starting with that word are
    produced (still lexicographic), so disjoint prefixes partition the stream.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise SizeLimitError(f"refusing to enumerate S_{n}: limit is n <= {limit}")
    prefix = tuple(prefix)
    if len(set(prefix)) != len(prefix) or any(not 1 <= v <= n for v in prefix):
        raise ValueError(f"invalid prefix {prefix!r} for n={n}")
    rest = [v for v in range(1, n + 1) if v not in prefix]
    for tail in itertools.permutations(rest):
        yield tuple.__new__(Permutation, prefix + tail)
