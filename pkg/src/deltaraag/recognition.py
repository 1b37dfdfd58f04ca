"""Recognition of the graph class closed under cones and padded coproducts.

A graph is accepted when it can be built from the empty graph by

* cone: ``K_u`` joined with a member, ``u >= 1``;
* coproduct: disjoint union of ``k >= 2`` members plus ``k - 1`` isolated
  vertices.

``is_in_GrP`` peels a graph back down deterministically and returns the
decomposition tree. ``enumerate_GrP`` builds the class forward and serves
as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graphs import (
    Graph,
    GraphError,
    canonical_form,
    canonical_graph,
    complete,
    components,
    compose,
    dominating_clique,
    edgeless,
    remove_vertices,
)

__all__ = [
    "Base",
    "Cone",
    "Coproduct",
    "Tree",
    "Recognition",
    "is_in_GrP",
    "reconstruct",
    "tree_to_json",
    "enumerate_GrP",
    "ENUM_MAX",
]

ENUM_MAX = 8


@dataclass(frozen=True)
class Base:
    pass


@dataclass(frozen=True)
class Cone:
    u: int
    child: "Tree"


@dataclass(frozen=True)
class Coproduct:
    children: tuple["Tree", ...]


Tree = Union[Base, Cone, Coproduct]


@dataclass(frozen=True)
class Recognition:
    accepted: bool
    tree: Tree | None = None
    reason: str | None = None
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "in_GrP": self.accepted,
            "witness": tree_to_json(self.tree) if self.tree is not None else None,
            "reason": self.reason,
            "witness_vertices": list(self.witness) if self.witness is not None else None,
        }


class _Reject(Exception):
    def __init__(self, reason: str, vertices):
        super().__init__(reason)
        self.reason = reason
        self.vertices = tuple(sorted(vertices))


def _recognize(g: Graph, labels: tuple[int, ...]) -> Tree:
    if g.n == 0:
        return Base()
    parts, m, m0 = components(g)
    if len(parts) == 1:
        dom = dominating_clique(g)
        if not dom:
            raise _Reject("connected, no dominating vertex", labels)
        rest, vmap = remove_vertices(g, dom)
        if rest.n == 0:
            return Cone(len(dom), Base())
        rest_labels = tuple(labels[v - 1] for v in vmap)
        if len(components(rest)[0]) == 1:
            raise _Reject("residue still connected", rest_labels)
        return Cone(len(dom), _recognize(rest, rest_labels))
    if m0 < m - 1:
        raise _Reject(
            "isolated-vertex deficit: coproduct closure adds one isolated vertex per extra factor",
            labels,
        )
    kids = []
    for sub, vmap in parts:
        if sub.n >= 2:
            kids.append(_recognize(sub, tuple(labels[v - 1] for v in vmap)))
    kids.extend(Base() for _ in range(m0 - m + 1))
    return Coproduct(tuple(kids))


def is_in_GrP(g: Graph) -> Recognition:
    try:
        tree = _recognize(g, tuple(g.vertices))
    except _Reject as r:
        return Recognition(False, None, r.reason, r.vertices)
    return Recognition(True, tree)


def reconstruct(tree: Tree) -> Graph:
    if isinstance(tree, Base):
        return Graph(0)
    if isinstance(tree, Cone):
        return compose([complete(tree.u), reconstruct(tree.child)], "join")
    kids = [reconstruct(c) for c in tree.children]
    return compose(kids + [edgeless(len(kids) - 1)], "disjoint_union")


def tree_to_json(tree: Tree) -> dict:
    if isinstance(tree, Base):
        return {"node": "base"}
    if isinstance(tree, Cone):
        return {"node": "cone", "u": tree.u, "child": tree_to_json(tree.child)}
    return {"node": "coproduct", "children": [tree_to_json(c) for c in tree.children]}


def _multisets(items: list, start: int, budget: int, k: int, acc: list, out: list):
    """Multisets of graphs whose padded union fits in ``budget`` vertices."""
    if k >= 2:
        out.append(list(acc))
    for i in range(start, len(items)):
        g = items[i]
        cost = g.n + (1 if k >= 1 else 0)
        if cost > budget:
            continue
        acc.append(g)
        _multisets(items, i, budget - cost, k + 1, acc, out)
        acc.pop()


def enumerate_GrP(n_max: int) -> frozenset[Graph]:
    """Least fixed point of the two closure rules, as canonical graphs."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_max > ENUM_MAX:
        raise GraphError(f"enumeration supports n_max <= {ENUM_MAX}, got {n_max}")
    members: dict = {canonical_form(Graph(0))[0]: Graph(0)}
    while True:
        items = sorted(members.values(), key=lambda h: (h.n, sorted(h.edges)))
        new: dict = {}

        def add(h: Graph):
            key, _ = canonical_form(h)
            if key not in members and key not in new:
                new[key] = canonical_graph(h)

        for h in items:
            for u in range(1, n_max - h.n + 1):
                add(compose([complete(u), h], "join"))
        combos: list = []
        _multisets(items, 0, n_max, 0, [], combos)
        for combo in combos:
            add(compose(combo + [edgeless(len(combo) - 1)], "disjoint_union"))
        if not new:
            break
        members.update(new)
    return frozenset(members.values())
