"""Characters, cup products, Massey lifts and unipotent detection.

Three target groups are supported:

* ``c4-delta``: the twisted group on the square graph 1-2-3-4-1 with
  trivial twist, generators x0..x4, characters ``(chi0, psi1..psi4)``;
* ``c4-raag``: the plain RAAG on the same graph, generators x1..x4,
  characters ``(psi1..psi4)``;
* ``sap``: the free product of ``k`` copies of Z/2, generators y1..yk.

A character is a tuple of bits indexed like the target's generators.
Generator images are lists indexed by generator number; for targets
without an ``x0`` slot 0 holds an unused identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

from .graphs import cycle
from .quadratic import H2Basis, QuadraticPresentation, build_E_gamma, build_Ez, h2_basis, quadratic_dual
from .unipotent import UnipotentMatrix, _solve_B, evaluate, identity, solve_lemmquad, superdiagonal, verify_morphism
from .words import Word, commutator, format_word, trivial_z, zpres_relators

__all__ = [
    "Target",
    "get_target",
    "CupTable",
    "MasseyError",
    "cup",
    "classify_vanishing_pair",
    "vanishing_pairs",
    "strong_massey_solve",
    "MasseyResult",
    "is_valid_sequence",
    "magnus_expand",
    "magnus_degree",
    "ku_witness_sap",
    "ku_witness_c4",
    "KUWitness",
    "project_c4",
    "reduce_G0",
    "C4_ORDER",
    "random_valid_sequence",
    "check_massey",
]

C4_ORDER = (0, 1, 3, 2, 4)


class MasseyError(ValueError):
    pass


# -- cup products -------------------------------------------------------------


@dataclass(frozen=True)
class CupTable:
    """Cup products H1 x H1 -> H2 read off the degree-2 part of the dual."""

    dual: QuadraticPresentation
    basis: H2Basis

    @property
    def dim1(self) -> int:
        return self.dual.d

    def cup(self, a: Sequence[int], b: Sequence[int]) -> int:
        if len(a) != self.dim1 or len(b) != self.dim1:
            raise MasseyError(f"characters must have {self.dim1} coordinates")
        v = 0
        for i, ai in enumerate(a):
            if ai & 1:
                for j, bj in enumerate(b):
                    if bj & 1:
                        v ^= self.basis.reduce_map[(i, j)]
        return v

    def coords(self, v: int) -> list[int]:
        return [v >> k & 1 for k in range(self.basis.dim)]


@dataclass(frozen=True)
class Target:
    name: str
    generators: tuple[int, ...]  # generator numbers carrying a character coordinate
    names: tuple[str, ...]
    relators: tuple[Word, ...]
    table: CupTable
    k: int = 0

    @property
    def nslots(self) -> int:
        return max(self.generators) + 1

    def character(self, bits: Sequence[int]) -> tuple[int, ...]:
        t = tuple(int(b) & 1 for b in bits)
        if len(t) != len(self.generators):
            raise MasseyError(f"{self.name} characters have {len(self.generators)} coordinates, got {len(t)}")
        return t

    def value(self, alpha: Sequence[int], gen: int) -> int:
        return alpha[self.generators.index(gen)]


@lru_cache(maxsize=None)
def _c4_delta() -> Target:
    g = cycle(4)
    z = trivial_z(4)
    dual = quadratic_dual(build_Ez(g, z))
    table = CupTable(dual, h2_basis(dual, list(C4_ORDER)))
    return Target("c4-delta", (0, 1, 2, 3, 4), ("x0", "x1", "x2", "x3", "x4"), tuple(zpres_relators(g, z)), table)


@lru_cache(maxsize=None)
def _c4_raag() -> Target:
    g = cycle(4)
    dual = quadratic_dual(build_E_gamma(g))
    table = CupTable(dual, h2_basis(dual, [0, 2, 1, 3]))
    rels = tuple(commutator(((u, 1),), ((v, 1),)) for u, v in g.sorted_edges())
    return Target("c4-raag", (1, 2, 3, 4), ("x1", "x2", "x3", "x4"), rels, table)


@lru_cache(maxsize=None)
def _sap(k: int) -> Target:
    if k < 1:
        raise MasseyError("sap needs k >= 1")
    names = tuple(f"Y{i}" for i in range(1, k + 1))
    pres = QuadraticPresentation(names, tuple(frozenset({(i, i)}) for i in range(k)))
    dual = quadratic_dual(pres)
    table = CupTable(dual, h2_basis(dual))
    rels = tuple(((j, 1), (j, 1)) for j in range(1, k + 1))
    return Target("sap", tuple(range(1, k + 1)), tuple(f"y{j}" for j in range(1, k + 1)), rels, table, k)


def get_target(name: str, k: int = 3) -> Target:
    if name in ("c4-delta", "c4delta", "c4-delta-raag"):
        return _c4_delta()
    if name in ("c4-raag", "c4raag"):
        return _c4_raag()
    if name == "sap":
        return _sap(k)
    raise MasseyError(f"unknown target {name!r}; expected c4-delta, c4-raag or sap")


def cup(target: Target, a: Sequence[int], b: Sequence[int]) -> int:
    return target.table.cup(target.character(a), target.character(b))


def _in_span(alpha: Sequence[int], target: Target, gens: Sequence[int]) -> bool:
    return all(alpha[i] == 0 for i, g in enumerate(target.generators) if g not in gens)


def classify_vanishing_pair(target: Target, a: Sequence[int], b: Sequence[int]) -> str:
    """Which alternative a nonzero pair with vanishing cup falls into."""
    a, b = target.character(a), target.character(b)
    if not any(a) or not any(b):
        raise MasseyError("characters must be nonzero")
    if cup(target, a, b):
        raise MasseyError("cup product does not vanish")
    if target.name == "c4-delta":
        chi0 = (1, 0, 0, 0, 0)
        in13 = [_in_span(x, target, (0, 1, 3)) for x in (a, b)]
        in24 = [_in_span(x, target, (0, 2, 4)) for x in (a, b)]
        if all(in13) and chi0 not in (a, b):
            return "G13"
        if all(in24) and chi0 not in (a, b):
            return "G24"
        if not any(in13) and not any(in24) and tuple(x ^ y for x, y in zip(a, chi0)) == b:
            return "shift"
    elif target.name == "c4-raag":
        in13 = [_in_span(x, target, (1, 3)) for x in (a, b)]
        in24 = [_in_span(x, target, (2, 4)) for x in (a, b)]
        if all(in13):
            return "F13"
        if all(in24):
            return "F24"
        if a == b and not any(in13) and not any(in24):
            return "equal"
    else:
        raise MasseyError("classification is defined for c4-delta and c4-raag")
    raise MasseyError(f"vanishing pair {a}, {b} fits no alternative")


def vanishing_pairs(target: Target) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    chars = [c for c in product((0, 1), repeat=len(target.generators)) if any(c)]
    return [(a, b) for a in chars for b in chars if cup(target, a, b) == 0]


def is_valid_sequence(target: Target, alphas: Sequence[Sequence[int]]) -> bool:
    return all(cup(target, alphas[i], alphas[i + 1]) == 0 for i in range(len(alphas) - 1))


# -- strong Massey lifts -----------------------------------------------------------


@dataclass
class MasseyResult:
    target: str
    alphas: list[tuple[int, ...]]
    images: list[UnipotentMatrix]
    blocks: list[dict] = field(default_factory=list)
    verification: dict = field(default_factory=dict)

    def to_json(self, target: Target) -> dict:
        return {
            "target": self.target,
            "n": len(self.alphas),
            "alphas": [list(a) for a in self.alphas],
            "blocks": self.blocks,
            "images": {target.names[i]: self.images[g].to_strings() for i, g in enumerate(target.generators)},
            "verification": self.verification,
        }


def _sap_lift(alphas: Sequence[Sequence[int]], k: int) -> list[UnipotentMatrix]:
    """rho(y_j) = I + sum_i alpha_i(y_j) delta(i, i+1); index 0 unused."""
    n = len(alphas)
    imgs = [identity(n + 1)]
    for j in range(k):
        imgs.append(superdiagonal([a[j] for a in alphas]))
    return imgs


def _lift_block(target: Target, alphas: list[tuple[int, ...]]) -> tuple[list[UnipotentMatrix], str]:
    n = len(alphas)
    size = n + 1
    I = identity(size)
    if n == 1:
        # a single character is already a homomorphism to U_2 = Z/2
        imgs = [I] * target.nslots
        for i, g in enumerate(target.generators):
            imgs[g] = superdiagonal([alphas[0][i]])
        return imgs, "character"
    if target.name == "sap":
        return _sap_lift(alphas, target.k), "sap"
    label = classify_vanishing_pair(target, alphas[0], alphas[1])
    for i in range(1, n - 1):
        other = classify_vanishing_pair(target, alphas[i], alphas[i + 1])
        if other != label:
            raise MasseyError(f"bug sentinel: mixed alternatives {label} and {other} in one block")
    if target.name == "c4-delta":
        if label in ("G13", "G24"):
            # x0 = y1, x_u = y1 y2, x_v = y1 y3 for the two vertices (u, v) of the subgroup
            u, v = (1, 3) if label == "G13" else (2, 4)
            ys = [(a[0], a[0] ^ a[u], a[0] ^ a[v]) for a in alphas]
            Y = _sap_lift(ys, 3)
            imgs = [I] * 5
            imgs[0] = Y[1]
            imgs[u] = Y[1] * Y[2]
            imgs[v] = Y[1] * Y[3]
            return imgs, "a" if label == "G13" else "b"
        # alternating shift by chi0
        pattern = [a[0] for a in alphas]
        B = _b_matrix(n, pattern)
        A = superdiagonal([1] * n)
        imgs = [B] + [A if alphas[0][j] else I for j in range(1, 5)]
        return imgs, "c"
    # c4-raag
    if label in ("F13", "F24"):
        imgs = [I] * 5
        for j in (1, 3) if label == "F13" else (2, 4):
            imgs[j] = superdiagonal([a[j - 1] for a in alphas])
        return imgs, label
    A = superdiagonal([1] * n)
    imgs = [I] + [A if alphas[0][j - 1] else I for j in range(1, 5)]
    return imgs, "equal"


@lru_cache(maxsize=None)
def _lemmquad_cached(n: int):
    return solve_lemmquad(n)


@lru_cache(maxsize=None)
def _b_small(size: int, pattern: tuple[int, ...]) -> UnipotentMatrix:
    B = _solve_B(size, superdiagonal([1] * (size - 1)), pattern)
    if B is None:
        raise MasseyError(f"no involution with superdiagonal {pattern}")
    return B


def _b_matrix(n: int, pattern: Sequence[int]) -> UnipotentMatrix:
    if n > 2:
        sol = _lemmquad_cached(n)
        B = sol.B1 if pattern[0] == 1 else sol.B2
    else:
        B = _b_small(n + 1, tuple(pattern))
    if B.superdiagonal() != list(pattern):
        raise MasseyError(f"bug sentinel: B superdiagonal {B.superdiagonal()} does not match {list(pattern)}")
    return B


def _embed(size: int, offset: int, m: UnipotentMatrix) -> tuple[int, ...]:
    rows = [1 << i for i in range(size)]
    for i, r in enumerate(m.rows):
        rows[offset + i] = r << offset
    return tuple(rows)


def strong_massey_solve(target: Target, alphas: Sequence[Sequence[int]], verify: bool = True) -> MasseyResult:
    """Generator images in U_{n+1} with superdiagonal ``(alpha_1(g), ..., alpha_n(g))``."""
    alphas = [target.character(a) for a in alphas]
    n = len(alphas)
    if n == 0:
        raise MasseyError("need at least one character")
    for i in range(n - 1):
        if cup(target, alphas[i], alphas[i + 1]):
            raise MasseyError(f"cup of characters {i + 1} and {i + 2} does not vanish")
    size = n + 1
    rows = [list(identity(size).rows) for _ in range(target.nslots)]
    blocks = []
    i = 0
    while i < n:
        if not any(alphas[i]):
            i += 1
            continue
        j = i
        while j < n and any(alphas[j]):
            j += 1
        imgs, label = _lift_block(target, alphas[i:j])
        blocks.append({"start": i + 1, "end": j, "case": label})
        for g in range(target.nslots):
            emb = _embed(size, i, imgs[g])
            for r in range(i, j + 1):
                rows[g][r] = emb[r]
        i = j
    images = [UnipotentMatrix(size, tuple(r)) for r in rows]
    res = MasseyResult(target.name, alphas, images, blocks)
    if verify:
        res.verification = check_massey(target, alphas, images)
        if not res.verification["ok"]:
            raise MasseyError(f"bug sentinel: lift failed verification: {res.verification}")
    return res


def check_massey(target: Target, alphas: Sequence[Sequence[int]], images: Sequence[UnipotentMatrix]) -> dict:
    morph = verify_morphism(target.relators, images)
    bad = []
    for idx, g in enumerate(target.generators):
        want = [a[idx] for a in alphas]
        if images[g].superdiagonal() != want:
            bad.append({"generator": target.names[idx], "superdiagonal": images[g].superdiagonal(), "expected": want})
    return {"ok": morph["ok"] and not bad, "morphism": morph, "superdiagonal_mismatches": bad}


# -- Magnus expansion and unipotent witnesses -------------------------------------


def reduce_G0(w: Sequence[tuple[int, int]]) -> Word:
    """Word problem in a free product of copies of Z/2.

    Every generator is an involution, so exponents are dropped and equal
    neighbours cancel.
    """
    out: list[tuple[int, int]] = []
    for g, _ in w:
        if out and out[-1][0] == g:
            out.pop()
        else:
            out.append((g, 1))
    return tuple(out)


def magnus_expand(k: int, w: Sequence[tuple[int, int]], N: int) -> frozenset:
    """Words W (tuples of generator numbers) with coefficient 1 in prod (1 + Y_i), degree <= N."""
    series = {()}
    for g, _ in w:
        if not 1 <= g <= k:
            raise MasseyError(f"generator y{g} outside 1..{k}")
        grown = set(series)
        for word in series:
            if len(word) < N and (not word or word[-1] != g):
                grown ^= {word + (g,)}
        series = grown
    return frozenset(series)


def magnus_degree(k: int, w: Sequence[tuple[int, int]], N: int) -> int | None:
    """Lowest positive degree with a nonzero coefficient, or None up to N."""
    s = magnus_expand(k, w, N)
    degs = [len(x) for x in s if x]
    return min(degs) if degs else None


@dataclass
class KUWitness:
    n: int
    word: tuple[int, ...]
    images: list[UnipotentMatrix]
    value: UnipotentMatrix
    certificate: dict
    route: str = "sap"

    def to_json(self, names: Sequence[str]) -> dict:
        return {
            "route": self.route,
            "n": self.n,
            "W": "".join(f"Y{i}" for i in self.word),
            "images": {names[i]: m.to_strings() for i, m in enumerate(self.images) if names[i]},
            "value": self.value.to_strings(),
            "certificate": self.certificate,
        }


def ku_witness_sap(k: int, g: Sequence[tuple[int, int]], N: int) -> KUWitness:
    """Representation into U_n that does not kill ``g``.

    ``W`` is the lexicographically least word of lowest degree in the Magnus
    expansion; ``n = deg W + 1``.
    """
    s = magnus_expand(k, g, N)
    low = [x for x in s if x]
    if not low:
        if not reduce_G0(g):
            raise MasseyError("g is trivial")
        raise MasseyError(f"Magnus degree of g exceeds {N}; use a larger truncation")
    m = min(len(x) for x in low)
    W = min(x for x in low if len(x) == m)
    n = m + 1
    imgs = [identity(n)]
    for i in range(1, k + 1):
        imgs.append(superdiagonal([1 if W[j] == i else 0 for j in range(m)]))
    value = evaluate(tuple(g), imgs)
    target = _sap(k)
    cert = {
        "relators": verify_morphism(target.relators, imgs),
        "value_is_identity": value.is_identity(),
        "corner_entry": value.entry(1, n),
        "value_is_I_plus_corner": value.rows == tuple((1 << i) | ((1 << (n - 1)) if i == 0 else 0) for i in range(n)),
    }
    return KUWitness(n, W, imgs, value, cert)


_PROJ = {
    "G13": {0: [1], 1: [1, 2], 3: [1, 3], 2: [], 4: []},
    "G24": {0: [1], 2: [1, 2], 4: [1, 3], 1: [], 3: []},
}


def project_c4(w: Sequence[tuple[int, int]], which: str) -> Word:
    """Image in y1, y2, y3 under killing x2, x4 (``G13``) or x1, x3 (``G24``)."""
    m = _PROJ[which]
    out: list[tuple[int, int]] = []
    for g, e in w:
        img = [(y, 1) for y in m[g]]
        # involutions: the inverse of y1 y2 is y2 y1
        out.extend(img if e == 1 else img[::-1])
    return tuple(out)


def ku_witness_c4(g: Sequence[tuple[int, int]], N: int) -> KUWitness:
    """Detect ``g`` through one of the two retractions onto three-fold free products of Z/2.

    G13 is tried first; G24 is used when G13 kills ``g`` or sees it only
    beyond degree ``N``.

    If both images are trivial, ``g`` lies in the kernel of both, which is
    the trivial group, so ``g = 1`` and an error is raised.
    """
    target = _c4_delta()
    too_deep = None
    for which in ("G13", "G24"):
        h = project_c4(g, which)
        if not reduce_G0(h):
            continue
        try:
            inner = ku_witness_sap(3, h, N)
        except MasseyError as exc:
            too_deep = exc
            continue
        Y = inner.images
        n = inner.n
        I = identity(n)
        imgs = [I] * 5
        imgs[0] = Y[1]
        u, v = (1, 3) if which == "G13" else (2, 4)
        imgs[u] = Y[1] * Y[2]
        imgs[v] = Y[1] * Y[3]
        value = evaluate(tuple(g), imgs)
        cert = {
            "projection": which,
            "projected_word": format_word(reduce_G0(h), "y"),
            "relators": verify_morphism(target.relators, imgs),
            "value_is_identity": value.is_identity(),
        }
        return KUWitness(n, inner.word, imgs, value, cert, route=which)
    if too_deep is not None:
        raise too_deep
    raise MasseyError("g is trivial: both retractions kill it")


def random_valid_sequence(target: Target, n: int, rng: random.Random) -> list[tuple[int, ...]]:
    """Random walk on the vanishing-cup graph, zero character included."""
    chars = list(product((0, 1), repeat=len(target.generators)))
    seq = [rng.choice(chars)]
    while len(seq) < n:
        opts = [c for c in chars if cup(target, seq[-1], c) == 0]
        seq.append(rng.choice(opts))
    return seq
