"""Exact integer polynomials and truncated power series.

Everything is plain Python ints. A series is carried as an ``IntSeries``
holding coefficients ``a_0..a_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

__all__ = [
    "IntSeries",
    "SeriesError",
    "RealizabilityWitness",
    "gocha_series",
    "poincare_series",
    "lie_dims_from_gocha",
    "series_from_lie_dims",
    "realizability_check",
    "realizability_brute",
    "calibrate_sum_mode",
    "resolve_sum_mode",
    "SUM_MODES",
]

SUM_MODES = ("d", "d+1")


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class IntSeries:
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs: Sequence[int], N: int) -> "IntSeries":
        c = list(coeffs[: N + 1]) + [0] * max(0, N + 1 - len(coeffs))
        return cls(tuple(int(x) for x in c))

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: "IntSeries"):
        if other.N != self.N:
            raise SeriesError(f"truncation mismatch: {self.N} vs {other.N}")

    def __add__(self, other: "IntSeries") -> "IntSeries":
        self._check(other)
        return IntSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        self._check(other)
        N = self.N
        out = [0] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return IntSeries(tuple(out))

    def inverse(self) -> "IntSeries":
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise SeriesError(f"series with constant term {a0} is not a unit over Z")
        N = self.N
        b = [0] * (N + 1)
        b[0] = a0
        for n in range(1, N + 1):
            s = sum(self.coeffs[k] * b[n - k] for k in range(1, n + 1))
            b[n] = -s * a0
        return IntSeries(tuple(b))

    def __truediv__(self, other: "IntSeries") -> "IntSeries":
        return self * other.inverse()

    def at_minus_t(self) -> "IntSeries":
        return IntSeries(tuple(-a if k % 2 else a for k, a in enumerate(self.coeffs)))

    def tolist(self) -> list[int]:
        return list(self.coeffs)


def gocha_series(clique_poly: Sequence[int], N: int) -> IntSeries:
    """``(1 + t) / Gamma(-t)`` to order ``N``."""
    num = IntSeries.of([1, 1], N)
    den = IntSeries.of(clique_poly, N).at_minus_t()
    return num / den


def poincare_series(clique_poly: Sequence[int], N: int) -> IntSeries:
    """``Gamma(t) / (1 - t)`` to order ``N``."""
    return IntSeries.of(clique_poly, N) / IntSeries.of([1, -1], N)


def _mul_power_1_plus_tn(c: list[int], n: int, ell: int, N: int) -> list[int]:
    """Multiply by ``(1 + t^n)^ell`` for any integer ``ell``."""
    if ell == 0:
        return c
    if ell > 0:
        factor = {n * j: comb(ell, j) for j in range(ell + 1) if n * j <= N}
    else:
        m = -ell
        factor = {n * j: (-1) ** j * comb(m + j - 1, j) for j in range(N // n + 1)}
    out = [0] * (N + 1)
    for i, a in enumerate(c):
        if a:
            for k, f in factor.items():
                if i + k > N:
                    continue
                out[i + k] += a * f
    return out


def lie_dims_from_gocha(s: IntSeries | Sequence[int], N: int | None = None) -> list[int]:
    """Unique ``l_1..l_N`` with ``prod (1 + t^n)^{l_n} == s`` mod ``t^{N+1}``."""
    c = list(s)
    if N is None:
        N = len(c) - 1
    c = (c + [0] * (N + 1))[: N + 1]
    if c[0] != 1:
        raise SeriesError(f"constant term must be 1, got {c[0]}")
    dims = []
    for n in range(1, N + 1):
        ell = c[n]
        if ell < 0:
            raise SeriesError(f"not a product of (1+t^n) factors: degree {n} would need dimension {ell}")
        dims.append(ell)
        c = _mul_power_1_plus_tn(c, n, -ell, N)
    return dims


def series_from_lie_dims(dims: Sequence[int], N: int) -> IntSeries:
    c = [1] + [0] * N
    for n, ell in enumerate(dims[:N], start=1):
        c = _mul_power_1_plus_tn(c, n, ell, N)
    return IntSeries(tuple(c))


# -- realizability ----------------------------------------------------------


@dataclass(frozen=True)
class RealizabilityWitness:
    s: int
    a: tuple[int, ...]

    def polynomial(self) -> list[int]:
        """Rebuild ``(1+t)^{s-1} + t * sum a_i (1+t)^i``."""
        deg = self.s
        out = [0] * (deg + 1)
        for k in range(self.s):
            out[k] += comb(self.s - 1, k)
        for i, ai in enumerate(self.a):
            for k in range(i + 1):
                out[k + 1] += ai * comb(i, k)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def to_dict(self) -> dict:
        return {"s": self.s, "a": list(self.a)}


def _sum_target(d: int, mode: str) -> int:
    if mode == "d":
        return d
    if mode == "d+1":
        return d + 1
    raise ValueError(f"unknown sum mode {mode!r}")


def _shift_coeffs(q: Sequence[int]) -> list[int]:
    """Coefficients in ``u`` of ``q(u - 1)``."""
    out = [0] * len(q)
    for k, c in enumerate(q):
        if c:
            for i in range(k + 1):
                out[i] += c * comb(k, i) * (-1) ** (k - i)
    return out


def realizability_check(clique_poly: Sequence[int], sum_mode: str = "d+1") -> RealizabilityWitness | None:
    """Smallest-``s`` solution of the clique-polynomial decomposition, or None.

    For a fixed ``s`` the ``a_i`` are forced: they are the coefficients of
    ``(Gamma - (1+t)^{s-1}) / t`` rewritten in powers of ``1+t``. So the
    search over ``s`` is exhaustive and each candidate is solved exactly.
    """
    p = list(clique_poly)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    d = p[1] if len(p) > 1 else 0
    target = _sum_target(d, sum_mode)
    for s in range(1, d + 2):
        diff = p + [0] * max(0, s - len(p))
        for k in range(s):
            diff[k] -= comb(s - 1, k)
        if diff[0] != 0:
            continue
        q = diff[1:]
        while q and q[-1] == 0:
            q.pop()
        if len(q) > s:
            continue
        a = _shift_coeffs(q) + [0] * (s - len(q))
        if any(x < 0 for x in a) or a[s - 1] < 1:
            continue
        if sum(a) + s != target:
            continue
        return RealizabilityWitness(s, tuple(a))
    return None


def realizability_brute(clique_poly: Sequence[int], sum_mode: str = "d+1") -> RealizabilityWitness | None:
    """Enumerate every ``(s, a)`` allowed by the sum constraint; slow oracle."""
    p = list(clique_poly)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    d = p[1] if len(p) > 1 else 0
    target = _sum_target(d, sum_mode)

    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in comps(total - first, parts - 1):
                yield (first,) + rest

    for s in range(1, d + 2):
        rem = target - s
        if rem < 1:
            continue
        for a in comps(rem, s):
            if a[-1] < 1:
                continue
            w = RealizabilityWitness(s, a)
            if w.polynomial() == p:
                return w
    return None


@lru_cache(maxsize=None)
def calibrate_sum_mode(n_max: int = 7) -> dict:
    """Pick the sum constraint that fits the recognizer on all small graphs.

    A mode is consistent if every accepted nonempty graph up to ``n_max``
    vertices has a witness and C4 has none. The empty graph is left out:
    no ``s >= 1`` reproduces the constant polynomial.
    """
    from .graphs import all_graphs, clique_polynomial, cycle
    from .recognition import is_in_GrP

    stats = {m: {"accepted_with_witness": 0, "accepted_without_witness": 0} for m in SUM_MODES}
    disagreements = []
    failures: dict[str, list] = {m: [] for m in SUM_MODES}
    accepted = 0
    for g in all_graphs(n_max):
        if g.n == 0 or not is_in_GrP(g).accepted:
            continue
        accepted += 1
        p = clique_polynomial(g)
        found = {}
        for m in SUM_MODES:
            w = realizability_check(p, m)
            found[m] = w
            if w is None:
                stats[m]["accepted_without_witness"] += 1
                if len(failures[m]) < 5:
                    failures[m].append({"vertices": g.n, "edges": [list(e) for e in g.sorted_edges()]})
            else:
                stats[m]["accepted_with_witness"] += 1
        if (found["d"] is None) != (found["d+1"] is None):
            disagreements.append(
                {
                    "graph": {"vertices": g.n, "edges": [list(e) for e in g.sorted_edges()]},
                    "clique_polynomial": p,
                    "d": None if found["d"] is None else found["d"].to_dict(),
                    "d+1": None if found["d+1"] is None else found["d+1"].to_dict(),
                }
            )
    c4 = clique_polynomial(cycle(4))
    consistent = [
        m
        for m in SUM_MODES
        if stats[m]["accepted_without_witness"] == 0 and realizability_check(c4, m) is None
    ]
    return {
        "n_max": n_max,
        "accepted_graphs": accepted,
        "excluded": "empty graph (no witness in either mode)",
        "stats": stats,
        "sample_failures": failures,
        "c4_witness": {m: realizability_check(c4, m) is not None for m in SUM_MODES},
        "consistent_modes": consistent,
        "selected": consistent[0] if len(consistent) == 1 else None,
        "disagreement_count": len(disagreements),
        "disagreements": disagreements,
    }


def resolve_sum_mode(mode: str) -> str:
    if mode in SUM_MODES:
        return mode
    if mode == "auto":
        sel = calibrate_sum_mode()["selected"]
        if sel is None:
            raise SeriesError("calibration did not single out a sum mode")
        return sel
    raise ValueError(f"unknown sum mode {mode!r}")
