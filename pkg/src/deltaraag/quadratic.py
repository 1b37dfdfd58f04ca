"""Quadratic algebras over F2.

A presentation has ``d`` degree-one generators and a space of degree-two
relations. A relation is a set of monomials ``(a, b)`` (generator
indices) summed over F2; as a bit vector, monomial ``(a, b)`` is bit
``a * d + b``. In characteristic 2 a commutator is ``[A, B] = AB + BA``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import f2
from .graphs import Graph
from .words import ZVector, epsilon, validate_delta_action

__all__ = [
    "QuadraticPresentation",
    "PresentationError",
    "build_Ez",
    "build_E_gamma",
    "free_presentation",
    "parse_presentation",
    "presentation_document",
    "default_order",
    "parse_order",
    "RewritingSystem",
    "PBWResult",
    "pbw_check",
    "critical_reductions",
    "rewriting_system",
    "hilbert_series",
    "hilbert_series_dense",
    "quadratic_dual",
    "H2Basis",
    "h2_basis",
    "HILBERT_MAX_DEFAULT",
]

HILBERT_MAX_DEFAULT = 8
# quotient-space columns allowed in one degree of the incremental Hilbert series
HILBERT_COLUMN_BUDGET = 2_000_000


class PresentationError(ValueError):
    pass


Monomial = tuple[int, int]


@dataclass(frozen=True)
class QuadraticPresentation:
    generators: tuple[str, ...]
    relations: tuple[frozenset, ...]
    kind: str = "generic"  # "Ez", "EGamma", "generic" or "dual-<kind>"; drives dual names

    def __post_init__(self):
        d = len(self.generators)
        if len(set(self.generators)) != d:
            raise PresentationError("generator names must be distinct")
        kept = []
        span: list[int] = []
        for k, rel in enumerate(self.relations):
            rel = frozenset(rel)
            for a, b in rel:
                if not (0 <= a < d and 0 <= b < d):
                    raise PresentationError(f"relation {k} uses a generator index outside 0..{d - 1}")
            v = _vec(rel, d)
            if v == 0:
                continue
            # dependent relations are dropped, the first independent ones are kept as given
            if f2.rank(span + [v]) > len(span):
                span.append(v)
                kept.append(rel)
        object.__setattr__(self, "relations", tuple(kept))

    @property
    def d(self) -> int:
        return len(self.generators)

    @cached_property
    def vectors(self) -> tuple[int, ...]:
        return tuple(_vec(r, self.d) for r in self.relations)

    def same_span(self, other: "QuadraticPresentation") -> bool:
        if other.d != self.d:
            return False
        a, b = list(self.vectors), list(other.vectors)
        r = f2.rank(a)
        return r == f2.rank(b) == f2.rank(a + b)

    def format_relation(self, rel: Iterable[Monomial], sep: str = "") -> str:
        names = self.generators
        terms = sorted(rel)
        return " + ".join(sep.join((names[a], names[b])) for a, b in terms) or "0"


def _vec(rel: Iterable[Monomial], d: int) -> int:
    v = 0
    for a, b in rel:
        v ^= 1 << (a * d + b)
    return v


def _rel(v: int, d: int) -> frozenset:
    return frozenset((j // d, j % d) for j in f2.bits(v))


def _xor(*parts: Iterable[Monomial]) -> frozenset:
    acc: set = set()
    for p in parts:
        acc ^= set(p)
    return frozenset(acc)


def _comm(a: int, b: int) -> frozenset:
    return _xor([(a, b)], [(b, a)])


def build_Ez(g: Graph, z: ZVector, check: bool = True) -> QuadraticPresentation:
    """Graded algebra of a twisted group: generators X0..Xd."""
    if len(z) != g.n:
        raise PresentationError(f"z has {len(z)} entries, graph has {g.n} vertices")
    if check:
        rep = validate_delta_action(g, z)
        if not rep["valid"]:
            raise PresentationError(f"twist vector does not define an involutive action: {rep['violations'][0]}")
    eps = epsilon(z, g.n)
    rels = [frozenset({(0, 0)})]
    for u, v in g.sorted_edges():
        rels.append(_comm(u, v))
    for k in g.vertices:
        twist = [_comm(k, j + 1) for j, bit in enumerate(eps[k - 1]) if bit]
        rels.append(_xor(_comm(0, k), *twist, [(k, k)]))
    return QuadraticPresentation(tuple(f"X{i}" for i in range(g.n + 1)), tuple(rels), "Ez")


def build_E_gamma(g: Graph) -> QuadraticPresentation:
    """Graded algebra of the plain RAAG: generators X1..Xd, edge commutators."""
    rels = tuple(_comm(u - 1, v - 1) for u, v in g.sorted_edges())
    return QuadraticPresentation(tuple(f"X{i}" for i in g.vertices), rels, "EGamma")


def free_presentation(names: Sequence[str]) -> QuadraticPresentation:
    return QuadraticPresentation(tuple(names), ())


def parse_presentation(doc) -> QuadraticPresentation:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise PresentationError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("generators"), list) or not isinstance(doc.get("relations"), list):
        raise PresentationError("presentation needs lists 'generators' and 'relations'")
    names = doc["generators"]
    if not all(isinstance(n, str) for n in names):
        raise PresentationError("generator names must be strings")
    idx = {n: i for i, n in enumerate(names)}
    rels = []
    for k, rel in enumerate(doc["relations"]):
        if not isinstance(rel, list):
            raise PresentationError(f"relations[{k}] must be a list of monomials")
        mons = []
        for t, mono in enumerate(rel):
            if not (isinstance(mono, list) and len(mono) == 2 and all(m in idx for m in mono)):
                raise PresentationError(f"relations[{k}][{t}] must be a pair of generator names, got {mono!r}")
            mons.append((idx[mono[0]], idx[mono[1]]))
        rels.append(_xor(*[[m] for m in mons]))
    return QuadraticPresentation(tuple(names), tuple(rels), doc.get("kind", "generic"))


def presentation_document(p: QuadraticPresentation) -> dict:
    names = p.generators
    return {
        "generators": list(names),
        "relations": [[[names[a], names[b]] for a, b in sorted(r)] for r in p.relations],
    }


# -- monomial orders --------------------------------------------------------


def default_order(p: QuadraticPresentation, g: Graph | None = None) -> list[int]:
    """Generator indices, largest first.

    For the labelled square graph 1-2-3-4-1 with an ``Ez`` presentation
    the order is X0 > X1 > X3 > X2 > X4; otherwise the declared order.
    """
    if g is not None and p.kind == "Ez" and g.n == 4 and g.edges == frozenset({(1, 2), (2, 3), (3, 4), (1, 4)}):
        return [0, 1, 3, 2, 4]
    return list(range(p.d))


def parse_order(text: str | Sequence[str], p: QuadraticPresentation) -> list[int]:
    """Accept ``"x0,x1,x3"`` style lists, case-insensitive, largest first."""
    items = [s.strip() for s in text.split(",")] if isinstance(text, str) else list(text)
    lookup = {n.lower(): i for i, n in enumerate(p.generators)}
    order = []
    for s in items:
        key = s.lower()
        if key not in lookup:
            raise PresentationError(f"unknown generator {s!r} in order")
        order.append(lookup[key])
    if sorted(order) != list(range(p.d)):
        raise PresentationError("order must list every generator exactly once")
    return order


def _rank_of(order: Sequence[int]) -> list[int]:
    """``rk[g]`` is larger for larger generators."""
    d = len(order)
    rk = [0] * d
    for pos, gen in enumerate(order):
        rk[gen] = d - 1 - pos
    return rk


# -- rewriting --------------------------------------------------------------


@dataclass(frozen=True)
class RewritingSystem:
    d: int
    order: tuple[int, ...]
    rules: dict  # head monomial -> frozenset of tail monomials

    @property
    def heads(self) -> frozenset:
        return frozenset(self.rules)

    def key(self, w: Sequence[int]) -> tuple:
        rk = _rank_of(self.order)
        return (len(w), tuple(rk[x] for x in w))

    def critical_monomials(self) -> list[tuple[int, int, int]]:
        out = [(a, b, c) for (a, b) in self.rules for (b2, c) in self.rules if b2 == b]
        return sorted(set(out), key=self.key, reverse=True)

    def step(self, w: tuple[int, ...], pos: int) -> frozenset:
        """Rewrite the degree-2 factor of ``w`` starting at ``pos``."""
        pre, post = w[:pos], w[pos + 2 :]
        return frozenset(pre + t + post for t in self.rules[w[pos : pos + 2]])

    def reduce(self, poly: Iterable[tuple[int, ...]], limit: int = 100_000) -> frozenset:
        """Normal form: rewrite the largest reducible word at its leftmost head."""
        cur = set(poly)
        for _ in range(limit):
            target = None
            for w in sorted(cur, key=self.key, reverse=True):
                for i in range(len(w) - 1):
                    if w[i : i + 2] in self.rules:
                        target = (w, i)
                        break
                if target:
                    break
            if target is None:
                return frozenset(cur)
            w, i = target
            cur.remove(w)
            cur ^= set(self.step(w, i))
        raise RuntimeError("rewriting did not terminate within the step limit")

    def count_normal_words(self, N: int) -> list[int]:
        """Number of words of each length avoiding every head as a factor."""
        counts = [1]
        if N == 0:
            return counts
        ends = [1] * self.d
        counts.append(self.d)
        for _ in range(2, N + 1):
            nxt = [0] * self.d
            for a in range(self.d):
                if ends[a]:
                    for b in range(self.d):
                        if (a, b) not in self.rules:
                            nxt[b] += ends[a]
            ends = nxt
            counts.append(sum(ends))
        return counts


def rewriting_system(p: QuadraticPresentation, order: Sequence[int]) -> RewritingSystem:
    d = p.d
    order = tuple(order)
    if sorted(order) != list(range(d)):
        raise PresentationError("order must cover every generator exactly once")
    rk = _rank_of(order)
    # column for monomial (a, b): larger monomial -> higher bit
    col = {(a, b): rk[a] * d + rk[b] for a in range(d) for b in range(d)}
    mono = {c: m for m, c in col.items()}
    rows = []
    for r in p.relations:
        v = 0
        for m in r:
            v ^= 1 << col[m]
        rows.append(v)
    pivots, red = f2.rref(rows)
    rules = {}
    for pv, row in zip(pivots, red):
        tail = frozenset(mono[c] for c in f2.bits(row ^ (1 << pv)))
        rules[mono[pv]] = tail
    return RewritingSystem(d, order, rules)


@dataclass(frozen=True)
class PBWResult:
    confluent: bool
    system: RewritingSystem
    critical: tuple
    counterexample: dict | None

    def to_json(self, names: Sequence[str]) -> dict:
        def fmt(poly):
            return sorted(("".join(names[x] for x in w) for w in poly), reverse=True)

        out = {
            "confluent": self.confluent,
            "order": [names[g] for g in self.system.order],
            "leading_monomials": sorted(
                ("".join((names[a], names[b])) for a, b in self.system.rules),
            ),
            "critical_monomials": len(self.critical),
        }
        if self.counterexample:
            ce = self.counterexample
            out["counterexample"] = {
                "monomial": "".join(names[x] for x in ce["monomial"]),
                "left": fmt(ce["left"]),
                "right": fmt(ce["right"]),
            }
        return out


def critical_reductions(rs: RewritingSystem, w: tuple[int, int, int]) -> tuple[frozenset, frozenset]:
    """Reduce ``abc`` starting with ``ab`` and starting with ``bc``."""
    left = rs.reduce(rs.step(w, 0))
    right = rs.reduce(rs.step(w, 1))
    return left, right


def pbw_check(p: QuadraticPresentation, order: Sequence[int] | None = None) -> PBWResult:
    order = list(range(p.d)) if order is None else list(order)
    rs = rewriting_system(p, order)
    crit = rs.critical_monomials()
    for w in crit:
        left, right = critical_reductions(rs, w)
        if left != right:
            return PBWResult(False, rs, tuple(crit), {"monomial": w, "left": left, "right": right})
    return PBWResult(True, rs, tuple(crit), None)


# -- Hilbert series ---------------------------------------------------------


def hilbert_series(
    p: QuadraticPresentation,
    N: int,
    column_budget: int = HILBERT_COLUMN_BUDGET,
    partial: bool = False,
) -> list[int]:
    """Dimensions of the degree-n components for n <= N.

    Degree n is computed as ``A_{n-1} (x) V`` modulo the image of
    ``A_{n-2} (x) R``, which is the same space as the full tensor power
    modulo the two-sided ideal, without ever building the full power.
    With ``partial=True`` a degree over ``column_budget`` ends the
    computation early instead of raising.
    """
    d = p.d
    dims = [1]
    if N == 0:
        return dims
    # proj[n][c] = reduced expression (bitmask over the A_n basis) of column c of A_{n-1} (x) V
    proj_prev: list[int] = [1 << g for g in range(d)]  # A_1 = V, columns 0*d+g
    dims.append(d)
    dim_prev2, dim_prev = 1, d
    rels = [sorted(r) for r in p.relations]
    for n in range(2, N + 1):
        ncols = dim_prev * d
        if ncols > column_budget:
            if partial:
                return dims
            raise MemoryError(
                f"degree {n} needs {ncols} columns, over the budget of {column_budget}; lower N"
            )
        rows = []
        for w in range(dim_prev2):
            for r in rels:
                v = 0
                for a, b in r:
                    for j in f2.bits(proj_prev[w * d + a]):
                        v ^= 1 << (j * d + b)
                if v:
                    rows.append(v)
        pivots, red = f2.rref(rows)
        piv = set(pivots)
        new_index = {}
        for c in range(ncols):
            if c not in piv:
                new_index[c] = len(new_index)
        proj = [0] * ncols
        for c, k in new_index.items():
            proj[c] = 1 << k
        for pv, row in zip(pivots, red):
            v = 0
            for c in f2.bits(row ^ (1 << pv)):
                v |= 1 << new_index[c]
            proj[pv] = v
        dims.append(len(new_index))
        _proj_prev2, proj_prev = proj_prev, proj
        dim_prev2, dim_prev = dim_prev, len(new_index)
    return dims


def hilbert_series_dense(p: QuadraticPresentation, N: int) -> list[int]:
    """Oracle: rank of all ``u r v`` inside the full degree-n tensor power."""
    d = p.d
    dims = [1]
    for n in range(1, N + 1):
        if n < 2:
            dims.append(d**n)
            continue
        # u r v with |v| = k, digits most significant first
        full = []
        for k in range(0, n - 1):
            sh = d**k
            for u in range(d ** (n - 2 - k)):
                for rel in p.relations:
                    for tail in range(sh):
                        v = 0
                        for a, b in rel:
                            v ^= 1 << (((u * d + a) * d + b) * sh + tail)
                        full.append(v)
        dims.append(d**n - f2.rank(full))
    return dims


# -- quadratic dual ---------------------------------------------------------


def _dual_names(p: QuadraticPresentation) -> tuple[str, ...]:
    if p.kind == "Ez":
        return ("chi0",) + tuple(f"psi{i}" for i in range(1, p.d))
    if p.kind == "EGamma":
        return tuple(f"psi{n[1:]}" for n in p.generators)
    if p.kind == "dual-Ez":
        return tuple(f"X{i}" for i in range(p.d))
    if p.kind == "dual-EGamma":
        return tuple(f"X{n[3:]}" for n in p.generators)
    if p.kind.startswith("dual-"):
        return tuple(n[:-1] for n in p.generators)
    return tuple(n + "*" for n in p.generators)


def _dual_kind(kind: str) -> str:
    return kind[5:] if kind.startswith("dual-") else "dual-" + kind


def quadratic_dual(p: QuadraticPresentation) -> QuadraticPresentation:
    """Relations: annihilator of the relation space under the monomial pairing."""
    d = p.d
    ann = f2.nullspace(list(p.vectors), d * d)
    pivots, red = f2.rref(ann)
    rels = tuple(_rel(r, d) for r in red)
    return QuadraticPresentation(_dual_names(p), rels, _dual_kind(p.kind))


@dataclass(frozen=True)
class H2Basis:
    """Monomial transversal of the degree-2 part of a quadratic algebra."""

    presentation: QuadraticPresentation
    monomials: tuple[Monomial, ...]
    reduce_map: dict  # monomial -> bitmask over ``monomials`` indices

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def names(self, sep: str = "") -> list[str]:
        g = self.presentation.generators
        return [sep.join((g[a], g[b])) for a, b in self.monomials]

    def coords(self, poly: Iterable[Monomial]) -> int:
        v = 0
        for m in poly:
            v ^= self.reduce_map[m]
        return v


def h2_basis(dual: QuadraticPresentation, order: Sequence[int] | None = None) -> H2Basis:
    """Basis monomials are the non-leading ones when each relation leads
    with its smallest monomial; listed largest first.
    """
    d = dual.d
    order = list(range(d)) if order is None else list(order)
    rk = _rank_of(order)
    top = d * d - 1
    # smaller monomial -> higher bit, so the rref pivot is the smallest monomial
    col = {(a, b): top - (rk[a] * d + rk[b]) for a in range(d) for b in range(d)}
    mono = {c: m for m, c in col.items()}
    rows = []
    for r in dual.relations:
        v = 0
        for m in r:
            v ^= 1 << col[m]
        rows.append(v)
    pivots, red = f2.rref(rows)
    piv = set(pivots)
    basis_cols = sorted(c for c in range(d * d) if c not in piv)
    basis = tuple(mono[c] for c in basis_cols)
    index = {c: i for i, c in enumerate(basis_cols)}
    rmap = {}
    for c in basis_cols:
        rmap[mono[c]] = 1 << index[c]
    for pv, row in zip(pivots, red):
        v = 0
        for c in f2.bits(row ^ (1 << pv)):
            v |= 1 << index[c]
        rmap[mono[pv]] = v
    return H2Basis(dual, basis, rmap)
