"""Upper unitriangular matrices over F2.

A matrix of size ``n <= 64`` is a tuple of row bitmasks; bit ``j`` of row
``i`` is entry ``(i, j)``, both 0-based. Public helpers that talk about
``delta(i, j)`` use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import _backend, f2
from .words import Word

__all__ = [
    "UnipotentMatrix",
    "MatrixError",
    "identity",
    "delta",
    "superdiagonal",
    "verify_morphism",
    "evaluate",
    "LemmquadSolution",
    "solve_lemmquad",
    "MAX_SIZE",
]

MAX_SIZE = 64


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class UnipotentMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_SIZE:
            raise MatrixError(f"size must be in 1..{MAX_SIZE}, got {self.n}")
        if len(self.rows) != self.n:
            raise MatrixError("row count does not match size")
        for i, r in enumerate(self.rows):
            if r >> self.n or (r & ((1 << (i + 1)) - 1)) != 1 << i:
                raise MatrixError(f"row {i + 1} is not unitriangular")

    @classmethod
    def from_strict(cls, n: int, entries: dict) -> "UnipotentMatrix":
        """Build ``I + sum delta(i, j)`` from 1-based ``{(i, j): bit}``."""
        rows = [1 << i for i in range(n)]
        for (i, j), bit in entries.items():
            if bit & 1:
                if not 1 <= i < j <= n:
                    raise MatrixError(f"entry ({i},{j}) is not strictly upper in size {n}")
                rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        """1-based entry."""
        return self.rows[i - 1] >> (j - 1) & 1

    def _same(self, other: "UnipotentMatrix"):
        if other.n != self.n:
            raise MatrixError(f"size mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        self._same(other)
        return UnipotentMatrix(self.n, _backend.umul(self.rows, other.rows))

    def nilpotent_part(self) -> tuple[int, ...]:
        return tuple(r ^ (1 << i) for i, r in enumerate(self.rows))

    def inverse(self) -> "UnipotentMatrix":
        # (I + N)^-1 = I + N + N^2 + ... ; N^n = 0
        N = self.nilpotent_part()
        acc = list(identity(self.n).rows)
        power = N
        while any(power):
            acc = [a ^ p for a, p in zip(acc, power)]
            power = _backend.umul(power, N)
        return UnipotentMatrix(self.n, tuple(acc))

    def commutator(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def superdiagonal(self) -> list[int]:
        return [self.entry(i, i + 1) for i in range(1, self.n)]

    def to_strings(self) -> list[str]:
        return ["".join(str(r >> j & 1) for j in range(self.n)) for r in self.rows]

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "UnipotentMatrix":
        n = len(rows)
        out = []
        for i, s in enumerate(rows):
            if len(s) != n or set(s) - {"0", "1"}:
                raise MatrixError(f"row {i + 1} must be a length-{n} bit string")
            out.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
        return cls(n, tuple(out))

    def __str__(self):
        return "\n".join(self.to_strings())


def identity(n: int) -> UnipotentMatrix:
    return UnipotentMatrix(n, tuple(1 << i for i in range(n)))


def delta(n: int, *pairs: tuple[int, int]) -> UnipotentMatrix:
    """``I + delta(i1, j1) + ...`` with 1-based pairs."""
    return UnipotentMatrix.from_strict(n, {p: 1 for p in pairs})


def superdiagonal(bits: Sequence[int]) -> UnipotentMatrix:
    """``I + sum bits[i] delta(i+1, i+2)``, size ``len(bits) + 1``."""
    n = len(bits) + 1
    return UnipotentMatrix.from_strict(n, {(i + 1, i + 2): b for i, b in enumerate(bits)})


def evaluate(w: Word, images: Sequence[UnipotentMatrix]) -> UnipotentMatrix:
    if not images:
        raise MatrixError("no generator images")
    n = images[0].n
    inv_cache: dict = {}
    acc = identity(n)
    for g, e in w:
        if not 0 <= g < len(images):
            raise MatrixError(f"no image for generator {g}")
        if e == 1:
            m = images[g]
        else:
            if g not in inv_cache:
                inv_cache[g] = images[g].inverse()
            m = inv_cache[g]
        acc = acc * m
    return acc


def verify_morphism(relators: Sequence[Word], images: Sequence[UnipotentMatrix]) -> dict:
    """``{"ok": True}`` or the first relator whose image is not the identity."""
    sizes = {m.n for m in images}
    if len(sizes) > 1:
        raise MatrixError(f"images have different sizes: {sorted(sizes)}")
    for k, r in enumerate(relators):
        v = evaluate(r, images)
        if not v.is_identity():
            return {"ok": False, "relator_index": k, "relator": list(map(list, r)), "value": v.to_strings()}
    return {"ok": True}


# -- the A/B solver ---------------------------------------------------------


@dataclass(frozen=True)
class LemmquadSolution:
    n: int
    A1: UnipotentMatrix
    A2: UnipotentMatrix
    B1: UnipotentMatrix
    B2: UnipotentMatrix

    def check(self) -> dict:
        out = {}
        for tag, A, B in (("1", self.A1, self.B1), ("2", self.A2, self.B2)):
            Ai = A.inverse()
            out[f"B{tag}^2=I"] = (B * B).is_identity()
            out[f"B{tag}^-1 A{tag} B{tag}=A{tag}^-1"] = B.inverse() * A * B == Ai
            out[f"[A{tag},B{tag}]=A{tag}^-2"] = A.commutator(B) == Ai * Ai
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A1": self.A1.to_strings(),
            "A2": self.A2.to_strings(),
            "B1": self.B1.to_strings(),
            "B2": self.B2.to_strings(),
            "checks": self.check(),
        }


def _solve_B(size: int, A: UnipotentMatrix, first: Sequence[int], limit: int = 1 << 20) -> UnipotentMatrix | None:
    """Find ``B = I + N`` with ``N^2 = 0`` and ``A N + N A^-1 = A + A^-1``.

    Those two conditions are ``B^2 = I`` and ``B^-1 A B = A^-1``. ``first``
    fixes the superdiagonal. Entries of both conditions on diagonal ``k + 1``
    depend only on diagonals up to ``k`` of ``N``, and affinely on diagonal
    ``k`` once ``k >= 2``. So diagonal ``k`` is drawn from the solutions of an
    affine system, and the search backtracks if a later diagonal has none.
    """
    arows = A.rows
    airows = A.inverse().rows
    target = tuple(x ^ y for x, y in zip(arows, airows))
    N = [0] * size
    for i, b in enumerate(first):
        if b & 1:
            N[i] |= 1 << (i + 1)
    steps = [0]

    def defects(k: int) -> int:
        """Bitmask of violated equations on diagonal ``k``."""
        lin = [x ^ y ^ t for x, y, t in zip(_backend.umul(arows, N), _backend.umul(N, airows), target)]
        sq = _backend.umul(N, N)
        out = 0
        for i in range(size - k):
            out |= (lin[i] >> (i + k) & 1) << (2 * i)
            out |= (sq[i] >> (i + k) & 1) << (2 * i + 1)
        return out

    def set_diag(m: int, x: int):
        for t in range(size - m):
            bit = 1 << (t + m)
            N[t] = (N[t] | bit) if x >> t & 1 else (N[t] & ~bit)

    def search(m: int) -> bool:
        steps[0] += 1
        if steps[0] > limit:
            raise RuntimeError("lemmquad search limit exceeded")
        if m >= size:
            return True
        nun = size - m
        if m + 1 >= size:
            candidates = [0]
        else:
            set_diag(m, 0)
            base = defects(m + 1)
            cols = []
            for t in range(nun):
                set_diag(m, 1 << t)
                cols.append(defects(m + 1) ^ base)
            neq = 2 * (size - m - 1)
            rows = [sum((cols[t] >> e & 1) << t for t in range(nun)) for e in range(neq)]
            sol = f2.solve(rows, [base >> e & 1 for e in range(neq)], nun)
            if sol is None:
                set_diag(m, 0)
                return False
            x0, ker = sol
            candidates = []
            for combo in product((0, 1), repeat=len(ker)):
                x = x0
                for bit, kv in zip(combo, ker):
                    if bit:
                        x ^= kv
                candidates.append(x)
        for x in candidates:
            set_diag(m, x)
            if search(m + 1):
                return True
        set_diag(m, 0)
        return False

    # diagonal 2 is already determined by the fixed superdiagonal
    if size > 2 and defects(2):
        return None
    if not search(2):
        return None
    return UnipotentMatrix(size, tuple(r | (1 << i) for i, r in enumerate(N)))


def solve_lemmquad(n: int) -> LemmquadSolution:
    """Matrices in U_{n+1}: A1 = A2 with all-ones superdiagonal, B1, B2 involutions
    inverting them by conjugation, with superdiagonals 1,0,1,... and 0,1,0,....
    """
    if n <= 2:
        raise MatrixError(f"n must be greater than 2, got {n}")
    size = n + 1
    if size > MAX_SIZE:
        raise MatrixError(f"n must be at most {MAX_SIZE - 1}")
    A = superdiagonal([1] * n)
    pat1 = [1 - (i % 2) for i in range(n)]
    pat2 = [i % 2 for i in range(n)]
    B1 = _solve_B(size, A, pat1)
    B2 = _solve_B(size, A, pat2)
    for tag, B in (("B1", B1), ("B2", B2)):
        if B is None:
            raise RuntimeError(f"no {tag} exists for n={n}: search exhausted")
    sol = LemmquadSolution(n, A, A, B1, B2)
    bad = [k for k, v in sol.check().items() if not v]
    if bad:
        raise RuntimeError(f"solver produced an invalid solution for n={n}: {bad}")
    return sol
