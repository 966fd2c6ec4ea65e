"""Diagonal lattice paths, their markings, and the bijection with admissible pinnacle sets.

Steps are +1 (up) and -1 (down). The steps of a path with x steps carry the
labels 2, ..., x+1 from left to right. A step is *marked* when it is a
down-step lying weakly above the axis (it starts at height >= 1) or an up-step
lying strictly below it (it starts at height <= -2). Read right to left, marked
steps are exactly those moving away from the line y = -1/2, which makes every
step of a path recoverable from its right end and the set of marked labels.

Two conventions are supported:

* fixed-maximum paths: x steps from (0, 0) to (x, eps_x), eps_x = 1 for odd x
  and 2 for even x. The marked labels together with x+2 form an admissible set
  with maximum x+2 (:func:`pinnacle_set_of_path`, :func:`path_of_pinnacle_set`).
* whole-subset paths: n-1 steps from (0, 0) to (n-1, 0) for odd n or (n-1, 1)
  for even n. The marked labels alone range over every admissible subset of
  [n], the empty set included (:func:`subset_of_path`, :func:`path_of_subset`).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .admissible import InadmissibleError, is_admissible
from .perm_core import Permutation, PinnacleSet

__all__ = [
    "LatticePath",
    "MarkedPath",
    "InvalidPathError",
    "endpoint_height",
    "validate_endpoint",
    "step_counts",
    "negative_regions",
    "mark",
    "pinnacle_set_of_path",
    "unmarked_set",
    "path_of_pinnacle_set",
    "construction_trace",
    "zigzag_permutation_of_path",
    "enumerate_paths",
    "subset_of_path",
    "path_of_subset",
    "enumerate_subset_paths",
]

UP, DOWN = 1, -1


class InvalidPathError(ValueError):
    pass


@dataclass(frozen=True)
class LatticePath:
    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        steps = tuple(int(s) for s in self.steps)
        if any(s not in (UP, DOWN) for s in steps):
            raise InvalidPathError(f"steps must be +1 or -1, got {self.steps!r}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text: str) -> "LatticePath":
        """Accept ``"UUDUD"`` or a JSON array of +1/-1."""
        text = text.strip()
        if text.startswith("["):
            try:
                return cls(tuple(json.loads(text)))
            except (json.JSONDecodeError, TypeError) as exc:
                raise InvalidPathError(f"malformed path literal {text!r}") from exc
        letters = {"U": UP, "D": DOWN}
        try:
            return cls(tuple(letters[c] for c in text.upper() if not c.isspace()))
        except KeyError:
            raise InvalidPathError(f"malformed path literal {text!r}") from None

    @classmethod
    def from_points(cls, heights: Sequence[int]) -> "LatticePath":
        """Build a path from its successive heights, starting with the first point."""
        return cls(tuple(b - a for a, b in zip(heights, heights[1:])))

    @property
    def x(self) -> int:
        return len(self.steps)

    @property
    def heights(self) -> tuple[int, ...]:
        """Heights after each step; the start height 0 is not included."""
        return tuple(itertools.accumulate(self.steps))

    @property
    def end(self) -> int:
        return sum(self.steps)

    def points(self) -> list[tuple[int, int]]:
        return [(0, 0)] + [(i + 1, h) for i, h in enumerate(self.heights)]

    def __str__(self) -> str:
        return "".join("U" if s == UP else "D" for s in self.steps)

    def to_json(self) -> list[int]:
        return list(self.steps)


@dataclass(frozen=True)
class MarkedPath:
    path: LatticePath
    marked: frozenset[int]

    @property
    def labels(self) -> range:
        return range(2, self.path.x + 2)


def endpoint_height(x: int) -> int:
    return 1 if x % 2 else 2


def validate_endpoint(P: LatticePath) -> bool:
    return P.x >= 1 and P.end == endpoint_height(P.x)


def _require_valid(P: LatticePath) -> None:
    if not validate_endpoint(P):
        raise InvalidPathError(
            f"path {P} ends at ({P.x},{P.end}); expected ({P.x},{endpoint_height(P.x)})")


def step_counts(P: LatticePath) -> tuple[int, int]:
    _require_valid(P)
    up = P.steps.count(UP)
    return up, P.x - up


def negative_regions(P: LatticePath) -> int:
    """Number of down-steps leaving the x-axis."""
    count, h = 0, 0
    for s in P.steps:
        if s == DOWN and h == 0:
            count += 1
        h += s
    return count


def _marked_labels(steps: Sequence[int]) -> list[int]:
    out, h = [], 0
    for label, s in enumerate(steps, start=2):
        if (s == DOWN and h >= 1) or (s == UP and h <= -2):
            out.append(label)
        h += s
    return out


def mark(P: LatticePath) -> MarkedPath:
    return MarkedPath(P, frozenset(_marked_labels(P.steps)))


def pinnacle_set_of_path(P: LatticePath) -> PinnacleSet:
    """M(P): the marked labels together with x+2."""
    _require_valid(P)
    return PinnacleSet(_marked_labels(P.steps) + [P.x + 2])


def unmarked_set(P: LatticePath) -> frozenset[int]:
    """U(P) = [1, x+2] minus M(P)."""
    M = pinnacle_set_of_path(P)
    return frozenset(v for v in range(1, P.x + 3) if v not in M)


def construction_trace(S: Iterable[int]) -> list[tuple[PinnacleSet, tuple[int, int]]]:
    """The right-to-left construction of the path for S, one (S_i, (x_i, y_i)) per step.

    The first entry is (S, (m-2, eps_m)); the last point is (0, 0).
    """
    S = PinnacleSet(S)
    if not S:
        raise InadmissibleError("the empty set has no maximum and no path")
    if not is_admissible(S):
        raise InadmissibleError(f"{S} is not admissible")
    m = S.m
    x, y = m - 2, endpoint_height(m)
    trace = [(S, (x, y))]
    current = set(S)
    current.discard(m)
    for i in range(1, m - 1):
        # S_i is the set still to place when label m - i is read
        S_i = PinnacleSet(current)
        hit = bool(current) and max(current) == m - i
        if hit:
            current.discard(m - i)
        # leftward, elements of S move away from y = -1/2 and the others toward it
        away = (y >= 0) == hit
        y = y + 1 if away else y - 1
        x -= 1
        trace.append((S_i, (x, y)))
    return trace


def path_of_pinnacle_set(S: Iterable[int]) -> LatticePath:
    trace = construction_trace(S)
    heights = [pt[1] for _, pt in reversed(trace)]
    if heights[0] != 0:
        raise AssertionError(f"path for {PinnacleSet(S)} does not start on the axis")
    return LatticePath.from_points(heights)


def zigzag_permutation_of_path(P: LatticePath) -> Permutation:
    """u_1 m_1 u_2 m_2 ... followed by the unused u's in increasing order."""
    M = pinnacle_set_of_path(P).elements
    U = sorted(unmarked_set(P))
    word = []
    for i, m in enumerate(M):
        word += [U[i], m]
    word += U[len(M):]
    return Permutation(word)


def _paths(x: int, downs: int) -> Iterator[LatticePath]:
    for where in itertools.combinations(range(x), downs):
        steps = [UP] * x
        for i in where:
            steps[i] = DOWN
        yield LatticePath(tuple(steps))


def enumerate_paths(x: int) -> Iterator[LatticePath]:
    """Every path from (0,0) to (x, eps_x)."""
    if x < 1:
        return
    yield from _paths(x, (x - endpoint_height(x)) // 2)


def _subset_end(n: int) -> int:
    return 0 if n % 2 else 1


def subset_of_path(P: LatticePath) -> PinnacleSet:
    """Marked labels of a whole-subset path with n-1 steps; a subset of [n]."""
    n = P.x + 1
    if P.end != _subset_end(n):
        raise InvalidPathError(f"path {P} ends at height {P.end}; expected {_subset_end(n)}")
    return PinnacleSet(_marked_labels(P.steps))


def path_of_subset(S: Iterable[int], n: int) -> LatticePath:
    """Inverse of :func:`subset_of_path`: the whole-subset path with n-1 steps for S."""
    S = PinnacleSet(S)
    if not is_admissible(S) or (S and S.m > n):
        raise InadmissibleError(f"{S} is not an admissible subset of [{n}]")
    # read right to left, each step's left point is forced by its label
    y = _subset_end(n)
    heights = [y]
    for label in range(n, 1, -1):
        y = y + 1 if (y >= 0) == (label in S) else y - 1
        heights.append(y)
    if y != 0:
        raise AssertionError(f"path for {S} in [{n}] does not start on the axis")
    return LatticePath.from_points(heights[::-1])


def enumerate_subset_paths(n: int) -> Iterator[LatticePath]:
    """Every path with n-1 steps ending at height 0 (n odd) or 1 (n even)."""
    if n < 1:
        return
    yield from _paths(n - 1, (n - 1 - _subset_end(n)) // 2)
