"""Chunked enumeration of Z_q^n, shared by every brute-force sum."""

from __future__ import annotations

import numpy as np

CHUNK = 1 << 16


class SizeGuardError(RuntimeError):
    """An exhaustive enumeration would exceed its configured size limit."""


def guard(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise SizeGuardError(f"{what}: {count} exceeds limit {limit}")


def vectors(q: int, n: int, chunk: int = CHUNK):
    """Yield all of Z_q^n in lexicographic order, as int arrays of shape (rows, n)."""
    total = q ** n
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    place = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield (idx[:, None] // place[None, :]) % q


def all_vectors(q: int, n: int) -> np.ndarray:
    return np.concatenate(list(vectors(q, n)), axis=0)
