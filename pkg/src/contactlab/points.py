"""Ultrafilters, grills and clans, plus the canonical adjacency space.

Points are kept as atom sets (see :class:`PointSet`).  Families of elements
are accepted as input and normalised; a family is given as an iterable of
element masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .boolean_core import Algebra, Element, PointSet, bits, popcount, shortlex, ultrafilters
from .errors import InputError
from .precontact import AtomRelation, PrecontactRel, rflat
from .report import Report

__all__ = [
    "PointSet", "Verdict", "normalize_family", "is_grill", "is_clan", "is_ultrafilter",
    "clans", "grills", "cliques", "clans_by_exhaustion", "CanonicalAdjacency",
    "canonical_adjacency", "grill_lemma_witness", "contact_characterizations",
]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    axiom: str | None = None
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _as_set(family: Iterable[int | Element]) -> set[int]:
    return {e.mask if isinstance(e, Element) else int(e) for e in family}


def _grill_axioms(A: Algebra, fam: set[int]) -> Verdict:
    L = A.label
    if not fam:
        return Verdict(False, "nonempty", {})
    if 0 in fam:
        return Verdict(False, "Clan1", {"a": L(0)})
    for a in sorted(fam):
        for i in range(A.n):
            b = a | 1 << i
            if b not in fam:
                return Verdict(False, "Clan2", {"a": L(a), "b": L(b)})
    outside = [a for a in range(A.size) if a not in fam]
    for a in outside:
        for b in outside:
            if a | b in fam:
                return Verdict(False, "Clan3", {"a": L(a), "b": L(b)})
    return Verdict(True)


def is_grill(A: Algebra, family: Iterable[int | Element]) -> Verdict:
    return _grill_axioms(A, _as_set(family))


def is_clan(A: Algebra, family: Iterable[int | Element], C: PrecontactRel) -> Verdict:
    fam = _as_set(family)
    v = _grill_axioms(A, fam)
    if not v:
        return v
    members = sorted(fam)
    for a in members:
        for b in members:
            if not (C.holds_mask(a, b) or C.holds_mask(b, a) or a & b):
                return Verdict(False, "Clan4", {"a": A.label(a), "b": A.label(b)})
    return Verdict(True)


def is_ultrafilter(A: Algebra, family: Iterable[int | Element]) -> Verdict:
    fam = _as_set(family)
    L = A.label
    if 0 in fam:
        return Verdict(False, "proper", {"a": L(0)})
    for a in sorted(fam):
        for i in range(A.n):
            if a | 1 << i not in fam:
                return Verdict(False, "upward-closed", {"a": L(a), "b": L(a | 1 << i)})
        for b in sorted(fam):
            if a & b not in fam:
                return Verdict(False, "meet-closed", {"a": L(a), "b": L(b)})
    for a in range(A.size):
        if a not in fam and A.top & ~a not in fam:
            return Verdict(False, "prime", {"a": L(a)})
    if not fam:
        return Verdict(False, "nonempty", {})
    return Verdict(True)


def normalize_family(A: Algebra, family: Iterable[int | Element], kind: str = "grill") -> PointSet:
    """Convert an explicit grill-type family into its atom-set form.

    Rejects families that are not nonempty, 0-free, up-closed and prime.
    """
    fam = _as_set(family)
    v = _grill_axioms(A, fam)
    if not v:
        raise InputError(f"family is not up-closed and prime: {v.axiom} fails at {v.witness}")
    mask = 0
    for i in range(A.n):
        if 1 << i in fam:
            mask |= 1 << i
    return PointSet(A, mask, kind)


def cliques(rel: AtomRelation) -> list[int]:
    """Every nonempty clique of a symmetric relation, as atom masks.

    Branch and bound in atom index order: a partial clique is extended only
    by higher-indexed atoms adjacent to all its members.
    """
    n = rel.algebra.n
    adj = [rel.rows[i] & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def extend(clique: int, candidates: int) -> None:
        for i in bits(candidates):
            grown = clique | 1 << i
            out.append(grown)
            higher = candidates & ~((1 << (i + 1)) - 1)
            extend(grown, higher & adj[i])

    extend(0, rel.algebra.top)
    out.sort(key=shortlex)
    return out


def clans(A: Algebra, C: PrecontactRel) -> list[PointSet]:
    if C.algebra != A:
        raise InputError("relation belongs to a different algebra")
    return [PointSet(A, m, "clan") for m in cliques(rflat(C.core))]


def grills(A: Algebra) -> list[PointSet]:
    masks = sorted(range(1, A.size), key=shortlex)
    return [PointSet(A, m, "grill") for m in masks]


@lru_cache(maxsize=None)
def _grill_families(n: int) -> tuple[int, ...]:
    """All element families satisfying Clan1-Clan3, found by exhausting 2^(2^n) subsets.

    A family is an int whose bit ``a`` marks membership of element ``a``.
    """
    A = Algebra(tuple(f"a{i}" for i in range(n)))
    size = A.size
    found = []
    for fam in range(1 << size):
        if fam & 1:
            continue
        members = {a for a in range(size) if fam >> a & 1}
        if _grill_axioms(A, members):
            found.append(fam)
    return tuple(found)


def clans_by_exhaustion(A: Algebra, C: PrecontactRel) -> list[PointSet]:
    """Oracle: filter every element family through Clan1-Clan4 literally."""
    out = []
    for fam in _grill_families(A.n):
        members = [a for a in range(A.size) if fam >> a & 1]
        if is_clan(A, members, C):
            out.append(normalize_family(A, members, "clan"))
    out.sort(key=lambda p: shortlex(p.mask))
    return out


@dataclass(frozen=True)
class CanonicalAdjacency:
    algebra: Algebra
    points: tuple[PointSet, ...]
    relation: AtomRelation

    def related(self, u: PointSet, v: PointSet) -> bool:
        i = next(bits(u.mask))
        j = next(bits(v.mask))
        return (i, j) in self.relation


def canonical_adjacency(A: Algebra, C: PrecontactRel) -> CanonicalAdjacency:
    """Ultrafilters related when every member of one contacts every member of the other."""
    us = ultrafilters(A)
    fams = [u.family() for u in us]
    pairs = []
    for i, fu in enumerate(fams):
        for j, fv in enumerate(fams):
            if all(C.holds_mask(a, b) for a in fu for b in fv):
                pairs.append((i, j))
    return CanonicalAdjacency(A, tuple(us), AtomRelation.from_pairs(A, pairs))


def grill_lemma_witness(f: Element, G: PointSet) -> PointSet:
    """An ultrafilter between the principal filter of ``f`` and the grill ``G``."""
    if f.algebra != G.algebra:
        raise InputError("filter and grill live in different algebras")
    if f.mask not in G:
        raise InputError(f"filter generated by {f} is not contained in grill {G.label}")
    i = next(bits(f.mask & G.mask))
    return PointSet(G.algebra, 1 << i, "ultrafilter")


def contact_characterizations(A: Algebra, C: PrecontactRel) -> Report:
    """Contact via related ultrafilters, via the flattened relation, and via shared clans."""
    rep = Report("contact-characterizations")
    adj = canonical_adjacency(A, C)
    flat = rflat(adj.relation)
    sharp_rows = rflat(C.core)
    cls = clans(A, C)
    L = A.label

    def sharp_holds(a: int, b: int) -> bool:
        return C.holds_mask(a, b) or C.holds_mask(b, a) or bool(a & b)

    def via(rel: AtomRelation, a: int, b: int) -> bool:
        return any((i, j) in rel for i in bits(a) for j in bits(b))

    w_a = w_b = w_c = None
    for a in range(A.size):
        for b in range(A.size):
            if w_a is None and C.holds_mask(a, b) != via(adj.relation, a, b):
                w_a = {"a": L(a), "b": L(b)}
            if w_b is None and sharp_holds(a, b) != via(flat, a, b):
                w_b = {"a": L(a), "b": L(b)}
            shared = any(a in g and b in g for g in cls)
            if w_c is None and sharp_holds(a, b) != shared:
                w_c = {"a": L(a), "b": L(b)}
    rep.add("contact-via-ultrafilters", w_a is None, w_a)
    rep.add("sharp-via-flattened-ultrafilters", w_b is None, w_b)
    rep.add("sharp-via-shared-clan", w_c is None, w_c)
    rep.add("flattened-adjacency-is-sharp-core", flat == sharp_rows,
            None if flat == sharp_rows else {"adjacency": flat.label(), "sharp": sharp_rows.label()})
    return rep
