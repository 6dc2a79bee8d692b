"""Graphviz text for specialization orders, adjacency relations and extension posets."""

from __future__ import annotations

import json

from .boolean_core import Algebra, bits
from .finite_space import TopPair
from .precontact import AtomRelation


def _q(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def _render(name: str, nodes: list[tuple[str, str]], edges: list[tuple[str, str]]) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for node, attrs in nodes:
        lines.append(f"  {_q(node)}{attrs};")
    for a, b in edges:
        lines.append(f"  {_q(a)} -> {_q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def specialization_dot(P: TopPair) -> str:
    """Covering edges ``x -> y`` of specialization: ``y`` lies in the closure of ``x``.

    Subspace points are drawn as boxes.
    """
    X = P.space
    cl = X.point_closures
    nodes = [(p, " [shape=box]" if P.x0 >> i & 1 else "") for i, p in enumerate(X.points)]
    edges = []
    for x in range(X.n):
        above = cl[x] & ~(1 << x)
        for y in bits(above):
            # keep y only if no z strictly between x and y
            if not any(cl[z] >> y & 1 for z in bits(above & ~(1 << y))):
                edges.append((X.points[x], X.points[y]))
    return _render("specialization", nodes, sorted(edges))


def adjacency_dot(A: Algebra, rel: AtomRelation) -> str:
    nodes = [(a, "") for a in A.atoms]
    edges = sorted(rel.named_pairs())
    return _render("adjacency", nodes, edges)


def poset_dot(labels: list[str], hasse: list[tuple[int, int]]) -> str:
    nodes = [(label, "") for label in labels]
    edges = sorted((labels[i], labels[j]) for i, j in hasse)
    return _render("extensions", nodes, edges)
