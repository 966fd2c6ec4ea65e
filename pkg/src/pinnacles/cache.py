"""Memo table for p_S(n) keyed at the reduced size n = max S.

Snapshot files are line oriented::

    # pinnacles count cache v1
    S=;n=1;p=1
    S=3;n=3;p=2
    S=3,5;n=5;p=4

Lines are sorted by (n, S). Loading checks that every key is canonical and
that a count is positive exactly when its set is admissible.
"""
from __future__ import annotations

import os
import re
import threading
from pathlib import Path
from typing import Callable, Iterator

from .admissible import is_admissible

__all__ = ["CountCache", "CacheFormatError", "CACHE_ENV_VAR", "SNAPSHOT_HEADER"]

CACHE_ENV_VAR = "PINNACLES_CACHE"
SNAPSHOT_VERSION = 1
SNAPSHOT_HEADER = f"# pinnacles count cache v{SNAPSHOT_VERSION}"
_LINE = re.compile(r"^S=([0-9]+(?:,[0-9]+)*)?;n=([0-9]+);p=([0-9]+)$")

Key = tuple[int, ...]


class CacheFormatError(ValueError):
    pass


def canonical_n(key: Key) -> int:
    return key[-1] if key else 1


class CountCache:
    """Thread-safe map from a sorted pinnacle tuple to p_S(max S).

    Reads are lock-free; writes are serialized and idempotent, so two threads
    racing to fill the same key store the same value.
    """

    def __init__(self) -> None:
        self._data: dict[Key, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Key) -> int | None:
        value = self._data.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: Key, value: int) -> int:
        if value < 0:
            raise ValueError(f"negative count for {key}: {value}")
        with self._lock:
            old = self._data.setdefault(key, value)
        if old != value:
            raise ValueError(f"conflicting cache entries for S={key}: {old} != {value}")
        return value

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: Key) -> bool:
        return key in self._data

    def items(self) -> Iterator[tuple[Key, int]]:
        yield from sorted(self._data.items(), key=lambda kv: (canonical_n(kv[0]), kv[0]))

    def stats(self) -> dict[str, int]:
        return {"entries": len(self), "hits": self.hits, "misses": self.misses}

    def dumps(self) -> str:
        lines = [SNAPSHOT_HEADER]
        for key, value in self.items():
            lines.append(f"S={','.join(map(str, key))};n={canonical_n(key)};p={value}")
        return "\n".join(lines) + "\n"

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(self.dumps())
        os.replace(tmp, path)

    def loads(self, text: str, verify: Callable[[Key], int] | None = None) -> int:
        """Merge a snapshot into this cache; returns the number of entries read.

        ``verify``, when given, recomputes each value and must agree with it.
        """
        lines = text.splitlines()
        if not lines or lines[0].strip() != SNAPSHOT_HEADER:
            raise CacheFormatError(f"missing or unsupported header, expected {SNAPSHOT_HEADER!r}")
        count = 0
        for lineno, line in enumerate(lines[1:], start=2):
            line = line.strip()
            if not line:
                continue
            match = _LINE.match(line)
            if not match:
                raise CacheFormatError(f"line {lineno}: cannot parse {line!r}")
            key = tuple(int(v) for v in match.group(1).split(",")) if match.group(1) else ()
            n, value = int(match.group(2)), int(match.group(3))
            if list(key) != sorted(set(key)) or any(v < 1 for v in key):
                raise CacheFormatError(f"line {lineno}: set is not strictly increasing")
            if n != canonical_n(key):
                raise CacheFormatError(f"line {lineno}: n={n} is not max S")
            if (value > 0) != is_admissible(key):
                raise CacheFormatError(f"line {lineno}: p={value} contradicts admissibility of S")
            if verify is not None and verify(key) != value:
                raise CacheFormatError(f"line {lineno}: stored p={value} does not match recomputation")
            try:
                self.put(key, value)
            except ValueError as exc:
                raise CacheFormatError(f"line {lineno}: {exc}") from None
            count += 1
        return count

    @classmethod
    def load(cls, path: str | os.PathLike, verify: Callable[[Key], int] | None = None) -> "CountCache":
        cache = cls()
        cache.loads(Path(path).read_text(), verify=verify)
        return cache
