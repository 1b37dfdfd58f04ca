"""Group words, RAAG normal forms and twist vectors.

A word is a tuple of ``(generator, exponent)`` letters with exponent
``+1`` or ``-1``. Generator 0 is ``x0``, the order-2 generator of the
semidirect factor; it is never a graph vertex.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph

Letter = tuple[int, int]
Word = tuple[Letter, ...]

__all__ = [
    "Word",
    "WordError",
    "parse_word",
    "format_word",
    "word",
    "inverse",
    "commutator",
    "free_reduce",
    "normal_form",
    "ZVector",
    "parse_z",
    "trivial_z",
    "epsilon",
    "validate_delta_action",
    "zpres_relators",
]


class WordError(ValueError):
    pass


_TOKEN = re.compile(r"^([a-zA-Z]+)(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, prefix: str = "x") -> Word:
    """Parse ``"x5*x3^-1"``; ``"1"`` or ``""`` is the identity.

    Integer powers ``x2^3`` expand to repeated letters.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    out: list[Letter] = []
    for pos, tok in enumerate(t.strip() for t in text.split("*")):
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1) != prefix:
            raise WordError(f"bad token {tok!r} at position {pos} in {text!r}")
        g = int(m.group(2))
        p = int(m.group(3)) if m.group(3) is not None else 1
        if p == 0:
            continue
        out.extend([(g, 1 if p > 0 else -1)] * abs(p))
    return tuple(out)


def format_word(w: Sequence[Letter], prefix: str = "x") -> str:
    if not w:
        return "1"
    return "*".join(f"{prefix}{g}" if e == 1 else f"{prefix}{g}^-1" for g, e in w)


def word(*letters: int) -> Word:
    """Shorthand: ``word(1, -2)`` is ``x1 * x2^-1``."""
    return tuple((abs(k), 1 if k > 0 else -1) for k in letters)


def inverse(w: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def commutator(a: Sequence[Letter], b: Sequence[Letter]) -> Word:
    """``[a, b] = a^-1 b^-1 a b``."""
    return inverse(a) + inverse(b) + tuple(a) + tuple(b)


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def _commutes(g: Graph, a: int, b: int) -> bool:
    return a != b and g.has_edge(a, b)


def normal_form(g: Graph, w: Iterable[Letter]) -> Word:
    """Unique representative of ``w`` in the RAAG on ``g``.

    First cancel ``x^e ... x^-e`` pairs separated only by letters that
    commute with ``x``; then take the lexicographically least ordering of
    the reduced word's trace, with ``x_k < x_k^-1 < x_{k+1}``.
    """
    reduced: list[Letter] = []
    for gen, e in w:
        if not 1 <= gen <= g.n:
            raise WordError(f"generator x{gen} is not a vertex of the graph (1..{g.n})")
        k = len(reduced) - 1
        hit = -1
        while k >= 0:
            h, f = reduced[k]
            if h == gen:
                if f == -e:
                    hit = k
                break
            if not _commutes(g, gen, h):
                break
            k -= 1
        if hit >= 0:
            del reduced[hit]
        else:
            reduced.append((gen, e))

    out: list[Letter] = []
    rest = reduced
    while rest:
        best = None
        for i, (h, f) in enumerate(rest):
            if all(_commutes(g, h, rest[j][0]) for j in range(i)):
                key = (h, 0 if f == 1 else 1)
                if best is None or key < best[0]:
                    best = (key, i)
        i = best[1]
        out.append(rest[i])
        rest = rest[:i] + rest[i + 1 :]
    return tuple(out)


@dataclass(frozen=True)
class ZVector:
    """Twist words ``z_1..z_d``, one per vertex."""

    words: tuple[Word, ...]

    def __len__(self):
        return len(self.words)


def trivial_z(d: int) -> ZVector:
    return ZVector(tuple(() for _ in range(d)))


def parse_z(doc, d: int | None = None) -> ZVector:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise WordError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("z"), list):
        raise WordError("z document must be an object with a list 'z'")
    items = doc["z"]
    if d is not None and len(items) != d:
        raise WordError(f"z has {len(items)} entries, graph has {d} vertices")
    ws = []
    for k, s in enumerate(items):
        if not isinstance(s, str):
            raise WordError(f"z[{k}] must be a string")
        try:
            w = parse_word(s)
        except WordError as exc:
            raise WordError(f"z[{k}]: {exc}") from None
        for gen, _ in w:
            if gen == 0 or (d is not None and gen > d):
                raise WordError(f"z[{k}] uses x{gen}, outside 1..{d}")
        ws.append(w)
    return ZVector(tuple(ws))


def epsilon(z: ZVector, d: int | None = None) -> list[tuple[int, ...]]:
    """Exponent-sum vectors of the twist words, mod 2."""
    d = len(z) if d is None else d
    out = []
    for w in z.words:
        v = [0] * d
        for gen, _ in w:
            v[gen - 1] ^= 1
        out.append(tuple(v))
    return out


def _phi_letter(z: ZVector, gen: int, e: int) -> Word:
    zi = z.words[gen - 1]
    img = inverse(zi) + ((gen, -1),) + zi
    return img if e == 1 else inverse(img)


def _phi(z: ZVector, w: Iterable[Letter]) -> Word:
    out: Word = ()
    for gen, e in w:
        out += _phi_letter(z, gen, e)
    return out


def validate_delta_action(g: Graph, z: ZVector) -> dict:
    """Check that ``x_i -> z_i^-1 x_i^-1 z_i`` is an order-2 automorphism.

    Returns ``{"valid": bool, "violations": [...]}``.
    """
    if len(z) != g.n:
        raise WordError(f"z has {len(z)} entries, graph has {g.n} vertices")
    bad = []
    for u, v in g.sorted_edges():
        c = commutator(_phi(z, ((u, 1),)), _phi(z, ((v, 1),)))
        nf = normal_form(g, c)
        if nf:
            bad.append({"kind": "edge", "edge": [u, v], "normal_form": format_word(nf), "expected": "1"})
    for i in g.vertices:
        nf = normal_form(g, _phi(z, _phi(z, ((i, 1),))))
        if nf != ((i, 1),):
            bad.append({"kind": "involution", "generator": i, "normal_form": format_word(nf), "expected": f"x{i}"})
    return {"valid": not bad, "violations": bad}


def zpres_relators(g: Graph, z: ZVector) -> list[Word]:
    """Relators over x0..xd: edge commutators, twisted inversions, x0^2."""
    rels: list[Word] = []
    for u, v in g.sorted_edges():
        rels.append(commutator(((u, 1),), ((v, 1),)))
    for i in g.vertices:
        xi = ((i, 1),)
        rels.append(commutator(((0, 1),), inverse(xi)) + xi + xi + commutator(xi, z.words[i - 1]))
    rels.append(((0, 1), (0, 1)))
    return rels
