"""JSON input documents and their emitters.

Three kinds are understood: ``algebra`` (atoms plus a contact core or an
element table), ``adjacency`` (cells with a relation, or a grid shorthand)
and ``space-pair`` (points, closed base, subspace, optional relation).
Emitters sort every set-valued field so output is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .boolean_core import Algebra, bits, shortlex
from .errors import InputError, WorkbenchError
from .finite_space import FiniteSpace, TopPair, generate
from .precontact import (
    PrecontactRel, RelationTable, adjacency_contact, from_table, grid_cells, precontact_from_pairs,
)

KINDS = ("algebra", "adjacency", "space-pair")


@dataclass
class Document:
    kind: str
    algebra: Algebra | None = None
    relation: PrecontactRel | None = None
    table: RelationTable | None = None
    pair: TopPair | None = None
    r: frozenset[tuple[int, int]] | None = None
    structure: str | None = None

    @property
    def bare(self) -> bool:
        return self.kind != "space-pair" and self.relation is None and self.table is None


def _list(doc: dict, key: str, locus: str | None = None) -> list:
    value = doc.get(key)
    if not isinstance(value, list):
        raise InputError(f"expected a list", locus or key)
    return value


def _names(items: Any, locus: str) -> list[str]:
    if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
        raise InputError("expected a list of names", locus)
    return items


def _pairs(items: Any, locus: str) -> list[tuple[str, str]]:
    if not isinstance(items, list):
        raise InputError("expected a list of pairs", locus)
    out = []
    for k, p in enumerate(items):
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise InputError("expected a pair of names", f"{locus}[{k}]")
        out.append((p[0], p[1]))
    return out


def _check_names(known: set[str], names: list[str], locus: str) -> None:
    for name in names:
        if name not in known:
            raise InputError(f"unknown name {name!r}", locus)


def parse_obj(doc: Any) -> Document:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"kind must be one of {list(KINDS)}", "kind")
    try:
        if kind == "algebra":
            return _parse_algebra(doc)
        if kind == "adjacency":
            return _parse_adjacency(doc)
        return _parse_pair(doc)
    except InputError:
        raise
    except WorkbenchError as exc:
        raise InputError(str(exc)) from None


def parse_text(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return parse_obj(doc)


def _parse_algebra(doc: dict) -> Document:
    atoms = _names(doc.get("atoms"), "atoms")
    A = Algebra(tuple(atoms))
    known = set(atoms)
    if "contact" in doc and "table" in doc:
        raise InputError("give either contact or table, not both", "contact")
    if "contact" in doc:
        pairs = _pairs(doc["contact"], "contact")
        for k, (a, b) in enumerate(pairs):
            _check_names(known, [a, b], f"contact[{k}]")
        return Document("algebra", A, precontact_from_pairs(A, pairs))
    if "table" in doc:
        rows = doc["table"]
        if not isinstance(rows, list):
            raise InputError("expected a list of element pairs", "table")
        pairs = []
        for k, row in enumerate(rows):
            if not (isinstance(row, list) and len(row) == 2):
                raise InputError("expected a pair of atom lists", f"table[{k}]")
            a = _names(row[0], f"table[{k}][0]")
            b = _names(row[1], f"table[{k}][1]")
            _check_names(known, a + b, f"table[{k}]")
            pairs.append((A.mask(a), A.mask(b)))
        T = RelationTable.from_pairs(A, pairs)
        try:
            rel = from_table(T)
        except WorkbenchError:
            rel = None
        return Document("algebra", A, rel, T)
    return Document("algebra", A)


def _parse_adjacency(doc: dict) -> Document:
    if "grid" in doc:
        grid = doc["grid"]
        if not (isinstance(grid, list) and len(grid) == 2 and all(isinstance(v, int) and v >= 0 for v in grid)):
            raise InputError("grid must be [rows, cols]", "grid")
        hood = doc.get("neighborhood", "von-neumann")
        if hood not in ("von-neumann", "moore"):
            raise InputError("neighborhood must be von-neumann or moore", "neighborhood")
        cells, R = grid_cells(grid[0], grid[1], hood)
    else:
        cells = _names(doc.get("cells"), "cells")
        R = _pairs(doc.get("r", []), "r")
        for k, (a, b) in enumerate(R):
            _check_names(set(cells), [a, b], f"r[{k}]")
    C = adjacency_contact(cells, R)
    return Document("adjacency", C.algebra, C)


def _parse_pair(doc: dict) -> Document:
    points = _names(doc.get("points"), "points")
    base = _list(doc, "closed_base")
    for k, member in enumerate(base):
        _names(member, f"closed_base[{k}]")
    X = generate(points, base)
    x0_names = _names(doc.get("x0", points), "x0")
    _check_names(set(points), x0_names, "x0")
    P = TopPair(X, X.mask(x0_names))
    r = None
    if "r" in doc:
        pairs = _pairs(doc["r"], "r")
        idx = []
        for k, (a, b) in enumerate(pairs):
            _check_names(set(x0_names), [a, b], f"r[{k}]")
            idx.append((X.index(a), X.index(b)))
        r = frozenset(idx)
    structure = doc.get("structure")
    if structure is None:
        structure = "2pcs" if r is not None else "2cs"
    if structure not in ("2pcs", "2cs", "stone2"):
        raise InputError("structure must be 2pcs, 2cs or stone2", "structure")
    if structure == "2pcs" and r is None:
        raise InputError("a 2pcs document needs a relation", "r")
    return Document("space-pair", pair=P, r=r, structure=structure)


# --- emitters -----------------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def algebra_doc(A: Algebra, C: PrecontactRel | None) -> dict:
    doc: dict[str, Any] = {"kind": "algebra", "atoms": list(A.atoms)}
    if C is not None:
        doc["contact"] = [list(p) for p in C.core.named_pairs()]
    return doc


def space_doc(P: TopPair, base: list[int], r: frozenset[tuple[int, int]] | None, structure: str) -> dict:
    """A space-pair document; base members and point lists follow the point order."""
    X = P.space
    members = sorted(set(base), key=shortlex)
    doc: dict[str, Any] = {
        "kind": "space-pair",
        "structure": structure,
        "points": list(X.points),
        "closed_base": [X.names(F) for F in members],
        "x0": X.names(P.x0),
    }
    if r is not None:
        doc["r"] = [[X.points[x], X.points[y]] for x, y in sorted(r)]
    return doc


def points_doc(kind: str, labels: list[str]) -> dict:
    return {"kind": kind, "count": len(labels), "points": labels}


def x0_points(P: TopPair) -> list[int]:
    return list(bits(P.x0))
