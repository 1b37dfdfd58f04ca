"""Finite simple graphs with 1-based vertices.

Edges are stored as sorted pairs ``(i, j)`` with ``i < j``. Internally a
graph also keeps 0-based neighbour bitmasks, which is what the clique and
canonical-form code actually walks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import _backend

__all__ = [
    "Graph",
    "GraphError",
    "parse_graph",
    "graph_document",
    "complete",
    "edgeless",
    "path",
    "cycle",
    "clique_polynomial",
    "dominating_clique",
    "components",
    "induced",
    "remove_vertices",
    "compose",
    "join",
    "disjoint_union",
    "pattern_free",
    "canonical_form",
    "canonical_graph",
    "relabel",
    "all_graphs",
    "is_connected",
]

CANON_MAX = 10


class GraphError(ValueError):
    """Malformed graph input."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise GraphError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        norm = set()
        for k, e in enumerate(self.edges):
            i, j = e
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge {k} endpoint out of range 1..{self.n}: {[i, j]}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """0-based neighbour masks."""
        a = [0] * self.n
        for i, j in self.edges:
            a[i - 1] |= 1 << (j - 1)
            a[j - 1] |= 1 << (i - 1)
        return tuple(a)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbours(self, v: int) -> list[int]:
        m = self.adj[v - 1]
        return [u + 1 for u in range(self.n) if m >> u & 1]

    def degree(self, v: int) -> int:
        return bin(self.adj[v - 1]).count("1")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def parse_graph(doc) -> Graph:
    """Build a Graph from a JSON text or an already-decoded dict."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    if "vertices" not in doc or "edges" not in doc:
        raise GraphError("graph document needs 'vertices' and 'edges'")
    n = doc["vertices"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise GraphError(f"'vertices' must be a nonnegative integer, got {n!r}")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    pairs = []
    for k, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise GraphError(f"edges[{k}] must be a pair of integers, got {e!r}")
        i, j = e
        if i == j:
            raise GraphError(f"edges[{k}] is a self-loop at vertex {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphError(f"edges[{k}] endpoint out of range 1..{n}: {e!r}")
        pairs.append((i, j))
    return Graph.from_edges(n, pairs)


def graph_document(g: Graph) -> dict:
    return {"vertices": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def edgeless(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def _from_masks(adj: Sequence[int]) -> Graph:
    n = len(adj)
    return Graph.from_edges(n, ((i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1))


# -- cliques -------------------------------------------------------------


def clique_polynomial(g: Graph) -> list[int]:
    """Counts of complete subgraphs by size, every clique counted."""
    counts = [1]
    adj = g.adj

    def extend(size: int, cand: int):
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if len(counts) <= size + 1:
                counts.append(0)
            counts[size + 1] += 1
            # only later vertices, so each clique is built once in increasing order
            extend(size + 1, cand & adj[v])

    extend(0, (1 << g.n) - 1)
    return counts


def dominating_clique(g: Graph) -> frozenset[int]:
    full = (1 << g.n) - 1
    return frozenset(v + 1 for v in range(g.n) if g.adj[v] | (1 << v) == full)


# -- structure -------------------------------------------------------------


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph, relabelled 1..k in increasing order of old label.

    The second value maps new label ``i`` to old label ``vmap[i-1]``.
    """
    vmap = tuple(sorted(set(vertices)))
    pos = {v: i + 1 for i, v in enumerate(vmap)}
    edges = [(pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos]
    return Graph.from_edges(len(vmap), edges), vmap


def remove_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    drop = set(vertices)
    return induced(g, (v for v in g.vertices if v not in drop))


def _component_masks(g: Graph) -> list[int]:
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = g.adj[low.bit_length() - 1] & ~comp
            comp |= nb
            frontier |= nb
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return len(_component_masks(g)) == 1


def components(g: Graph) -> tuple[list[tuple[Graph, tuple[int, ...]]], int, int]:
    """Connected components in order of their smallest vertex.

    Returns ``(parts, m, m0)`` where ``m`` counts components with at least
    two vertices and ``m0`` counts isolated vertices.
    """
    parts = []
    m = m0 = 0
    for mask in _component_masks(g):
        verts = [v + 1 for v in range(g.n) if mask >> v & 1]
        parts.append(induced(g, verts))
        if len(verts) == 1:
            m0 += 1
        else:
            m += 1
    return parts, m, m0


def compose(parts: Sequence[Graph], mode: str) -> Graph:
    """Disjoint union or join, relabelling consecutively in the given order."""
    if mode not in ("join", "disjoint_union"):
        raise ValueError(f"unknown compose mode {mode!r}")
    edges = []
    offsets = []
    off = 0
    for p in parts:
        offsets.append(off)
        edges.extend((i + off, j + off) for i, j in p.edges)
        off += p.n
    if mode == "join":
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                for i in parts[a].vertices:
                    for j in parts[b].vertices:
                        edges.append((i + offsets[a], j + offsets[b]))
    return Graph.from_edges(off, edges)


def join(*parts: Graph) -> Graph:
    return compose(parts, "join")


def disjoint_union(*parts: Graph) -> Graph:
    return compose(parts, "disjoint_union")


# -- 4-vertex patterns -----------------------------------------------------

_PATTERNS = {
    # sorted degree sequence and edge count identify both patterns among 4-vertex graphs
    "C4": ((2, 2, 2, 2), 4),
    "P4": ((1, 1, 2, 2), 3),
}


def pattern_free(g: Graph, pattern: str) -> tuple[bool, tuple[int, ...] | None]:
    """Check that no 4 vertices induce the pattern; return a witness if they do."""
    if pattern not in _PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}; expected C4 or P4")
    want_deg, want_e = _PATTERNS[pattern]
    adj = g.adj
    for quad in combinations(range(g.n), 4):
        mask = sum(1 << v for v in quad)
        degs = sorted(bin(adj[v] & mask).count("1") for v in quad)
        if tuple(degs) == want_deg and sum(degs) == 2 * want_e:
            return False, tuple(v + 1 for v in quad)
    return True, None


# -- canonical labelling ----------------------------------------------------


def _cells(g: Graph) -> list[list[int]]:
    adj = g.adj
    deg = [bin(a).count("1") for a in adj]
    key = {}
    for v in range(g.n):
        nd = sorted(deg[u] for u in range(g.n) if adj[v] >> u & 1)
        key[v] = (deg[v], tuple(nd))
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(key[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_form(g: Graph) -> tuple[tuple[int, int], tuple[int, ...]]:
    """Return ``(key, perm)``.

    ``key = (n, code)`` is an isomorphism invariant that determines the
    graph; ``perm[p]`` is the 0-based vertex placed at position ``p``.
    The code is the least adjacency code over labellings that respect the
    degree-based colour cells.
    """
    if g.n > CANON_MAX:
        raise GraphError(f"canonical form supports at most {CANON_MAX} vertices, got {g.n}")
    code, perm = _backend.canon_search(g.n, list(g.adj), _cells(g))
    return (g.n, code), perm


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """New vertex ``p+1`` is old 0-based vertex ``perm[p]``."""
    pos = {old + 1: new + 1 for new, old in enumerate(perm)}
    return Graph.from_edges(g.n, ((pos[i], pos[j]) for i, j in g.edges))


def canonical_graph(g: Graph) -> Graph:
    _, perm = canonical_form(g)
    return relabel(g, perm)


def all_graphs(n_max: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, n = 0..n_max.

    Classes on n vertices come from adding a vertex with every possible
    neighbourhood to each class on n-1 vertices, then deduplicating.
    """
    layer = {canonical_form(Graph(0))[0]: Graph(0)}
    yield Graph(0)
    for n in range(1, n_max + 1):
        nxt: dict = {}
        for g in layer.values():
            base = list(g.adj)
            for nb in range(1 << (n - 1)):
                adj = [a | ((nb >> v & 1) << (n - 1)) for v, a in enumerate(base)]
                adj.append(nb)
                h = _from_masks(adj)
                key, perm = canonical_form(h)
                if key not in nxt:
                    nxt[key] = relabel(h, perm)
        for key in sorted(nxt):
            yield nxt[key]
        layer = nxt
