"""Self-checks that cross the independent routes against each other.

Each suite yields :class:`Check` records; a failing check carries the first
offending witness (S, n) or path.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterator

from . import admissible as adm
from . import counting as cnt
from . import lattice as lat
from . import perm_core as pc
from .cache import CountCache
from .perm_core import PinnacleSet

__all__ = ["Check", "SUITES", "DEFAULTS", "run_suites"]

DEFAULTS = {"n_max": 8, "m_max": 12, "jobs": 1, "seed": 0}


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.witness}]" if self.witness and not self.passed else ""
        return f"{status} {self.suite}: {self.name}{tail}"


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[Check] = []

    def expect(self, name: str, failures: Iterator[str] | list[str]) -> None:
        first = next(iter(failures), None)
        self.checks.append(Check(self.suite, name, first is None, first or ""))

    def equal(self, name: str, got, want) -> None:
        ok = got == want
        self.checks.append(Check(self.suite, name, ok, "" if ok else f"got {got!r}, want {want!r}"))


def _perm_suite(c: _Collector, n_max: int, seed: int, **_) -> None:
    def peak_identity():
        for n in range(0, min(n_max, 8) + 1):
            for w in pc.enumerate_permutations(n):
                des = pc.descent_set(w)
                pk = pc.peak_set(w)
                if pk != {i for i in des if i > 1 and i - 1 not in des}:
                    yield str(w)
                if len(pc.pinnacle_set(w)) != len(pk) or 2 * len(pk) >= max(n, 1):
                    if n > 0:
                        yield str(w)

    c.expect("peaks from descents; |Pin| = |Pk| <= (n-1)/2", peak_identity())
    c.equal("enumeration sizes", [sum(1 for _ in pc.enumerate_permutations(n)) for n in range(7)],
            [factorial(n) for n in range(7)])
    c.equal("standardize", [pc.standardize({1, 2, 4}, {4, 7, 9}), pc.standardize({3, 5, 6, 7, 8}, {4, 7, 9})],
            [{3}, {4}])
    rng = random.Random(seed)

    def random_words():
        for _ in range(2000):
            n = rng.randint(0, 50)
            w = list(range(1, n + 1))
            rng.shuffle(w)
            if 2 * len(pc.pinnacle_set(w)) > max(n - 1, 0):
                yield pc.format_set(w)

    c.expect("peak bound on random permutations", random_words())


def _admissible_suite(c: _Collector, n_max: int, m_max: int, jobs: int, **_) -> None:
    c.expect("p(m;d) = #enumerated sets", (
        f"m={m},d={d}" for m in range(m_max + 1) for d in range(1, m_max)
        if adm.count_admissible(m, d) != len(adm.enumerate_admissible(m, d))))
    c.expect("row sums = binom(m-2, floor(m/2))", (
        f"m={m}" for m in range(3, 21)
        if sum(adm.count_admissible(m, d) for d in range(1, m)) != adm.count_admissible_with_max(m)))
    c.equal("Catalan boundary", [adm.count_admissible(2 * d + 1, d) for d in range(1, 13)],
            [adm.catalan(d) for d in range(1, 13)])
    c.expect("subsets of [n] = binom(n-1, floor((n-1)/2))", (
        f"n={n}" for n in range(1, m_max + 1)
        if sum(1 for _ in adm.admissible_subsets(n)) != adm.count_admissible_upto(n)))
    c.expect("table rows", (f"m={m}" for m, row in enumerate(adm.admissible_count_table(m_max))
                            if any(row[d] != adm.count_admissible(m, d) for d in range(len(row)))))

    def witnesses():
        for m in range(3, m_max + 1):
            for d in range(1, m):
                for S in adm.enumerate_admissible(m, d):
                    if not adm.is_admissible(S) or pc.pinnacle_set(adm.canonical_permutation(S)) != S:
                        yield str(S)
                    if adm.min_ambient_n(S) != m:
                        yield str(S)

    c.expect("canonical witnesses", witnesses())
    top = min(n_max, 9)
    seen = set(cnt.pinnacle_distribution(top, jobs=jobs))

    def against_oracle():
        for r in range(0, top + 1):
            for S in itertools.combinations(range(1, top + 1), r):
                if adm.is_admissible(S) != (S in seen):
                    yield pc.format_set(S)

    c.expect(f"admissible iff realized in S_{top}", against_oracle())


def _bijection_suite(c: _Collector, m_max: int, **_) -> None:
    def roundtrip_sets():
        for m in range(3, m_max + 1):
            for d in range(1, m):
                for S in adm.enumerate_admissible(m, d):
                    P = lat.path_of_pinnacle_set(S)
                    if lat.pinnacle_set_of_path(P) != S:
                        yield str(S)
                    if len(S) != (m + 1) // 2 - 1 - lat.negative_regions(P):
                        yield f"neg {S}"

    c.expect(f"sets -> paths -> sets, max <= {m_max}", roundtrip_sets())
    x_max = max(m_max - 2, 1)

    def roundtrip_paths():
        for x in range(1, x_max + 1):
            for P in lat.enumerate_paths(x):
                S = lat.pinnacle_set_of_path(P)
                if lat.path_of_pinnacle_set(S) != P or not adm.is_admissible(S):
                    yield str(P)
                up, down = lat.step_counts(P)
                if (up, down) != (x // 2 + 1, (x + 1) // 2 - 1):
                    yield f"steps {P}"
                marked = lat.mark(P).marked
                if len(marked) != down - lat.negative_regions(P):
                    yield f"marks {P}"
                M, U = S.elements, sorted(lat.unmarked_set(P))
                if not len(M) < len(U) or any(M[i] <= U[i + 1] for i in range(len(M))):
                    yield f"labels {P}"
                if pc.pinnacle_set(lat.zigzag_permutation_of_path(P)) != S:
                    yield f"zigzag {P}"
                if not lat.validate_endpoint(P):
                    yield f"endpoint {P}"

    c.expect(f"paths -> sets -> paths, <= {x_max} steps", roundtrip_paths())
    c.expect("path counts = binom(m-2, floor(m/2))", (
        f"m={m}" for m in range(3, m_max + 1)
        if sum(1 for _ in lat.enumerate_paths(m - 2)) != comb(m - 2, m // 2)))
    c.expect("paths staying above the axis = Catalan", (
        f"d={d}" for d in range(1, (m_max - 1) // 2 + 1)
        if sum(1 for P in lat.enumerate_paths(2 * d - 1) if lat.negative_regions(P) == 0)
        != adm.catalan(d)))

    def whole_subsets():
        for n in range(1, m_max + 1):
            sets = set()
            for P in lat.enumerate_subset_paths(n):
                S = lat.subset_of_path(P)
                sets.add(S)
                if lat.path_of_subset(S, n) != P:
                    yield f"n={n} {P}"
            if sets != set(adm.admissible_subsets(n)):
                yield f"n={n}"

    c.expect("whole-subset paths <-> admissible subsets of [n]", whole_subsets())
    c.equal("worked trace for {4,7,9}", [(Si.elements, pt) for Si, pt in lat.construction_trace({4, 7, 9})],
            [((4, 7, 9), (7, 1)), ((4, 7), (6, 0)), ((4, 7), (5, 1)), ((4,), (4, 0)),
             ((4,), (3, -1)), ((4,), (2, -2)), ((), (1, -1)), ((), (0, 0))])
    c.equal("endpoint heights", [lat.endpoint_height(x) for x in range(1, 5)], [1, 2, 1, 2])


def _engines_suite(c: _Collector, n_max: int, jobs: int, **_) -> None:
    quad, lin = CountCache(), CountCache()

    def agree():
        for n in range(0, n_max + 1):
            dist = cnt.pinnacle_distribution(n, jobs=jobs)
            for S in adm.admissible_subsets(max(n, 1)):
                b = cnt.brute_force_count(S, n)
                q = cnt.quadratic_count(S, n, quad)
                li = cnt.linear_count(S, n, lin)
                if not b == q == li == dist.get(S.elements, 0):
                    yield f"S={S} n={n}: brute={b} quadratic={q} linear={li}"
                try:
                    closed = cnt.closed_form(S, n)
                except cnt.NoClosedFormError:
                    continue
                if closed != b:
                    yield f"closed S={S} n={n}"

    c.expect(f"brute = quadratic = linear = closed, n <= {n_max}", agree())

    def reduction():
        for n in range(2, n_max + 1):
            for S in adm.admissible_subsets(n - 1):
                factor, t = cnt.reduce(S, n, n - 1)
                if S and cnt.linear_count(S, n, lin) != factor * cnt.linear_count(S, t, lin):
                    yield f"S={S} n={n}"
            if cnt.empty_count(n) != 2 ** (n - 1):
                yield f"empty n={n}"

    c.expect("p_S(n) = 2 p_S(n-1) when max S < n", reduction())

    def closed_forms():
        for n in range(3, n_max + 1):
            for l in range(3, n + 1):
                if cnt.closed_form_single(l, n) != cnt.brute_force_count({l}, n):
                    yield f"single l={l} n={n}"
                for m in range(l + 1, n + 1):
                    if cnt.closed_form_double(l, m, n) != cnt.brute_force_count({l, m}, n):
                        yield f"double l={l} m={m} n={n}"
            for d in range(1, (n + 1) // 2):
                if cnt.max_count(n, d) != cnt.brute_force_count(PinnacleSet.top(n, d), n):
                    yield f"max n={n} d={d}"
                if cnt.min_count(n, d) != cnt.brute_force_count(PinnacleSet.minimal(d), n):
                    yield f"min n={n} d={d}"

    c.expect("closed forms against brute force", closed_forms())
    c.equal("quadratic summand for A={1,2,4}", cnt.quadratic_summand({4, 7, 9}, 9, {1, 2, 4}), 48)
    c.equal("nonzero quadratic summands for {4,7,9}", cnt.quadratic_nonzero_summands({4, 7, 9}),
            sum(1 for r in range(1, 8) for A in itertools.combinations(range(1, 9), r)
                if cnt.quadratic_summand({4, 7, 9}, 9, A, quad)))
    c.equal("dispatcher", [cnt.count({3, 5, 6}, 8), cnt.count({6, 7}, 7), cnt.count({4, 6}, 7, "quadratic")],
            [0, 1200, 144])
    c.equal("Stirling S(5,3) by enumeration", cnt.stirling2(5, 3),
            sum(1 for f in itertools.product(range(3), repeat=5) if set(f) == {0, 1, 2}) // 6)


def _sums_suite(c: _Collector, n_max: int, **_) -> None:
    cache = CountCache()
    c.expect(f"sum of p_S(n) = n!, n <= {n_max}", (
        f"n={n}" for n in range(1, n_max + 1)
        if sum(cnt.count(S, n, cache=cache) for S in adm.admissible_subsets(n)) != factorial(n)))

    def odd_degenerate():
        for n in range(3, n_max + 1, 2):
            d = (n - 1) // 2
            for S in itertools.combinations(range(1, n), d):
                if cnt.linear_count(S, n, cache):
                    yield f"S={pc.format_set(S)} n={n}"

    c.expect("odd n, |S| = (n-1)/2, n not in S gives 0", odd_degenerate())


def _lifting_suite(c: _Collector, n_max: int, jobs: int, **_) -> None:
    # inserting n into a permutation of [n-1]: either a new peak away from the
    # d existing ones, or next to a pinnacle j that n displaces
    def lifting():
        for n in range(2, min(n_max, 9) + 1):
            lower = cnt.pinnacle_distribution(n - 1, jobs=jobs)
            upper = cnt.pinnacle_distribution(n, jobs=jobs)
            for S in adm.admissible_subsets(n - 1):
                lifted = tuple(sorted(S | {n}))
                if not adm.is_admissible(lifted):
                    continue
                d = len(S)
                want = (n - 2 - 2 * d) * lower.get(S.elements, 0) + 2 * sum(
                    lower.get(tuple(sorted(S | {j})), 0) for j in range(1, n) if j not in S)
                if upper.get(lifted, 0) != want:
                    yield f"S={S} n={n}"

    c.expect("p_{S+n}(n) from permutations of [n-1] (brute force)", lifting())


def _bounds_suite(c: _Collector, n_max: int, **_) -> None:
    top = max(n_max, 10)
    cache = CountCache()

    def bounds():
        for n in range(3, top + 1):
            for S in adm.admissible_subsets(n):
                d = len(S)
                if 2 * d >= n:
                    continue
                lo_ok, hi_ok = cnt.check_bounds(S, n, cache)
                if not (lo_ok and hi_ok):
                    yield f"S={S} n={n}"
                p = cnt.linear_count(S, n, cache)
                if (p == cnt.min_count(n, d)) != (S == PinnacleSet.minimal(d)):
                    yield f"lower equality S={S} n={n}"
                if (p == cnt.max_count(n, d)) != (S == PinnacleSet.top(n, d)):
                    yield f"upper equality S={S} n={n}"

    c.expect(f"two-sided bounds, sharp only at the extremal sets, n <= {top}", bounds())


def _injection_suite(c: _Collector, n_max: int, **_) -> None:
    top = min(n_max, 8)

    def injective():
        for n in range(3, top + 1):
            for d in range(1, (n + 1) // 2):
                sources = [w for w in pc.enumerate_permutations(n)
                           if pc.pinnacle_set(w) == PinnacleSet.minimal(d)]
                for m in range(2 * d + 1, n + 1):
                    for S in adm.enumerate_admissible(m, d):
                        images = {cnt.inject_minimal(w, S) for w in sources}
                        if len(images) != len(sources) or any(pc.pinnacle_set(v) != S for v in images):
                            yield f"S={S} n={n}"

    c.expect(f"injection from M_d into each class, n <= {top}", injective())
    c.equal("worked injection", str(cnt.inject_minimal(pc.Permutation.parse("813254679"), {5, 8})),
            "715284369")


def _q_suite(c: _Collector, n_max: int, **_) -> None:
    top = min(max(n_max, 3), 9)
    cache = CountCache()

    def identities():
        for n in range(1, top + 1):
            if cnt.q_transform(set(), n, cache=cache) != 2 ** (n - 1):
                yield f"empty n={n}"
            for l in range(3, n + 1):
                if cnt.q_transform({l}, n, cache=cache) != 2 ** (n + l - 3):
                    yield f"l={l} n={n}"
                for m in range(l + 1, n + 1):
                    if cnt.q_transform({l, m}, n, cache=cache) != 2 ** (n + m - l - 3) * (3 ** (l - 1) + 1):
                        yield f"l={l} m={m} n={n}"

    c.expect(f"q-transform identities, n <= {top}", identities())


def _extremal_suite(c: _Collector, **_) -> None:
    c.equal("d(n) for 4 <= n <= 22", [cnt.d_max(n) for n in range(4, 23)],
            [1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 6, 6, 6])
    c.expect("no ties in d(n), n <= 100", (f"n={n}" for n in range(4, 101) if cnt.maximizing_d(n).tie))
    c.equal("plateau starts up to 200", cnt.plateau_starts(200),
            [(13, 4), (38, 12), (63, 20), (85, 27), (110, 35), (135, 43), (160, 51), (185, 59)])
    c.expect("Stirling recurrence", (
        f"n={n} k={k}" for n in range(1, 30) for k in range(1, n + 1)
        if cnt.stirling2(n, k) != k * cnt.stirling2(n - 1, k) + cnt.stirling2(n - 1, k - 1)))


SUITES: dict[str, Callable[..., None]] = {
    "perm": _perm_suite,
    "admissible": _admissible_suite,
    "bijection": _bijection_suite,
    "engines": _engines_suite,
    "sums": _sums_suite,
    "lifting": _lifting_suite,
    "bounds": _bounds_suite,
    "injection": _injection_suite,
    "q": _q_suite,
    "extremal": _extremal_suite,
}


def run_suites(names: list[str] | None = None, **options) -> list[Check]:
    opts = {**DEFAULTS, **{k: v for k, v in options.items() if v is not None}}
    if opts["n_max"] > cnt.BRUTE_FORCE_LIMIT:
        raise pc.SizeLimitError(f"--n-max {opts['n_max']} exceeds the brute-force guard {cnt.BRUTE_FORCE_LIMIT}")
    checks: list[Check] = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        collector = _Collector(name)
        SUITES[name](collector, **opts)
        checks.extend(collector.checks)
    return checks
