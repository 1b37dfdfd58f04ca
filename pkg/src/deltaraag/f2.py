"""Bit-packed linear algebra over F2.

Vectors are Python ints (bit ``j`` = coordinate ``j``). Elimination runs in
the backend kernel selected by ``deltaraag._backend``, except for very
sparse wide inputs: the compiled kernel works on dense word arrays, and
there Python's own ints are faster.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend, _pycore

__all__ = ["F2Matrix", "rref", "rank", "nullspace", "solve", "in_span", "bits"]


# below this fraction of set bits per row, dense elimination loses
SPARSE_DENSITY = 1 / 256
_SAMPLE = 32


def _kernels(rows: list[int]):
    if _backend.kernels is _pycore or len(rows) < 64:
        return _backend.kernels
    sample = rows[:: max(1, len(rows) // _SAMPLE)]
    width = max(r.bit_length() for r in sample) or 1
    ones = sum(r.bit_count() for r in sample)
    if ones < SPARSE_DENSITY * width * len(sample):
        return _pycore
    return _backend.kernels


def rref(rows: Iterable[int]) -> tuple[list[int], list[int]]:
    rows = list(rows)
    return _kernels(rows).rref(rows)


def rank(rows: Iterable[int]) -> int:
    rows = list(rows)
    return _kernels(rows).rank(rows)


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of ``{v : popcount(r & v) even for every row r}``."""
    pivots, red = rref(rows)
    piv = set(pivots)
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = 1 << f
        for p, r in zip(pivots, red):
            if r >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def solve(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> tuple[int, list[int]] | None:
    """One solution of ``A x = b`` plus a kernel basis, or None if inconsistent."""
    aug = [(r << 1) | (b & 1) for r, b in zip(rows, rhs)]
    pivots, red = rref(aug)
    if pivots and pivots[0] == 0:
        return None
    x = 0
    for p, r in zip(pivots, red):
        if r & 1:
            x |= 1 << (p - 1)
    return x, nullspace(rows, ncols)


def in_span(vec: int, rows: Iterable[int]) -> bool:
    rows = list(rows)
    return rank(rows + [vec]) == rank(rows)


@dataclass(frozen=True)
class F2Matrix:
    """Dense matrix over F2 stored as row bitmasks."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "F2Matrix":
        nc = len(entries[0]) if entries else 0
        return cls(len(entries), nc, tuple(sum((x & 1) << j for j, x in enumerate(r)) for r in entries))

    def rank(self) -> int:
        return rank(self.rows)

    def nullspace(self) -> list[int]:
        return nullspace(self.rows, self.ncols)

    def solve(self, rhs: Sequence[int]):
        return solve(self.rows, rhs, self.ncols)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1
