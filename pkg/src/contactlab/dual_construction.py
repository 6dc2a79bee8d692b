"""Canonical spaces of precontact algebras and canonical algebras of spaces.

The canonical 2-precontact space of ``(B, C)`` has the clans of ``C`` as
points, the ultrafilters as the dense subspace, and the closed base
``g(a) = {clans containing a}``.  Going back, a 2-precontact space yields the
algebra ``RC(X, X0)`` with the relation induced by ``R`` on ``X0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .boolean_core import Algebra, PointSet, bits, popcount
from .errors import AxiomViolation, CapExceededError, InputError
from .finite_space import (
    FiniteSpace, RegionAlgebra, TopPair, de_vries_identity, gamma, generate, grill_code,
    is_closed_base, is_connected, is_T0, rc_pair, regular_closed,
)
from .points import canonical_adjacency, clans, grills
from .precontact import (
    AXIOMS, AtomRelation, PrecontactRel, RelationTable, check_axioms, from_table, rflat, rho_l,
)
from .report import Check, Report
from .search import SearchResult, find_homeomorphism

ISO_ATOM_CAP = 8
ISO_POINT_CAP = 10


@dataclass(frozen=True, eq=False)
class TwoPCS:
    """A topological pair with a relation on the subspace points."""

    pair: TopPair
    relation: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        rel = frozenset((int(x), int(y)) for x, y in self.relation)
        for x, y in rel:
            if not (self.pair.x0 >> x & 1 and self.pair.x0 >> y & 1):
                raise InputError("relation pairs must lie in the subspace")
        object.__setattr__(self, "relation", rel)

    @property
    def space(self) -> FiniteSpace:
        return self.pair.space

    @property
    def x0(self) -> int:
        return self.pair.x0


class TwoCS(TopPair):
    """A topological pair meant to satisfy the 2-contact axioms (checked, not assumed)."""


class StoneTwoSpace(TopPair):
    """A topological pair meant to satisfy the Stone 2-space axioms."""


def _points_from_clans(A: Algebra, cls: list[PointSet]) -> tuple[FiniteSpace, int]:
    labels = [c.label for c in cls]
    base = []
    for a in range(A.size):
        base.append(sum(1 << k for k, c in enumerate(cls) if c.mask & a))
    X = generate(labels, base)
    x0 = sum(1 << k for k, c in enumerate(cls) if popcount(c.mask) == 1)
    return X, x0


def g_map(A: Algebra, P: TopPair) -> list[int]:
    """``g(a)``: the canonical points whose abstract point contains ``a``."""
    if P.clans is None:
        raise InputError("pair does not come from a canonical construction")
    return [sum(1 << k for k, c in enumerate(P.clans) if c.mask & a) for a in range(A.size)]


def canonical_2pcs(A: Algebra, C: PrecontactRel) -> TwoPCS:
    cls = clans(A, C)
    X, x0 = _points_from_clans(A, cls)
    pos = {c.mask: k for k, c in enumerate(cls)}
    adj = canonical_adjacency(A, C)
    rel = frozenset((pos[1 << i], pos[1 << j]) for i, j in adj.relation.pairs)
    return TwoPCS(TopPair(X, x0, tuple(cls)), rel)


def _require_contact(C: PrecontactRel) -> None:
    rep = check_axioms(C, ("Cref", "Csym"))
    bad = rep.first_failure()
    if bad:
        raise AxiomViolation(bad[1].name, bad[1].witness)


def canonical_2cs(A: Algebra, C: PrecontactRel) -> TwoCS:
    _require_contact(C)
    cls = clans(A, C)
    X, x0 = _points_from_clans(A, cls)
    return TwoCS(X, x0, tuple(cls))


def canonical_stone2(A: Algebra) -> StoneTwoSpace:
    cls = clans(A, rho_l(A))
    X, x0 = _points_from_clans(A, cls)
    return StoneTwoSpace(X, x0, tuple(PointSet(A, g.mask, "grill") for g in cls))


def relation_on(S: TwoPCS, F: int, G: int) -> bool:
    x0 = S.x0
    return any((x, y) in S.relation for x in bits(F & x0) for y in bits(G & x0))


def canonical_algebra_of_2pcs(S: TwoPCS) -> tuple[RegionAlgebra, PrecontactRel]:
    """``(RC(X, X0), C_S)``; raises if the induced table breaks C0 or C+."""
    B = rc_pair(S.pair)
    C = from_table(B.table(lambda F, G: relation_on(S, F, G)))
    return B, C


def pair_algebra(P: TopPair) -> tuple[RegionAlgebra, PrecontactRel]:
    """``(RC(X, X0), C_(X,X0))`` with the overlap contact."""
    B = rc_pair(P)
    return B, B.overlap_contact()


# --- axiom suites -------------------------------------------------------------------

def _axiom_t0_dense(P: TopPair, name: str) -> Check:
    X = P.space
    if X.closure(P.x0) != X.full:
        return Check(name, False, {"reason": "subspace not dense",
                                   "outside_closure": X.names(X.full & ~X.closure(P.x0))})
    seen: dict[int, int] = {}
    for i, c in enumerate(X.point_closures):
        if c in seen:
            return Check(name, False, {"reason": "not T0", "points": X.names(1 << seen[c] | 1 << i)})
        seen[c] = i
    return Check(name, True)


def _axiom_stone(P: TopPair, name: str, detail: str | None = None) -> Check:
    X = P.space
    for x in bits(P.x0):
        extra = X.point_closures[x] & P.x0 & ~(1 << x)
        if extra:
            return Check(name, False, {"reason": "subspace not discrete", "point": X.points[x],
                                       "closure_meets": X.names(extra)}, detail)
    return Check(name, True, None, detail)


def _axiom_base(P: TopPair, name: str) -> Check:
    X = P.space
    base = rc_pair(P).members
    if is_closed_base(X, base):
        return Check(name, True)
    gen = generate(X.points, base)
    for i, (a, b) in enumerate(zip(gen.point_closures, X.point_closures)):
        if a != b:
            return Check(name, False, {"point": X.points[i], "closure": X.names(b),
                                       "base_closure": X.names(a)})
    return Check(name, False, {"reason": "base members are not closed"})


def _realization(P: TopPair, co: RegionAlgebra, targets: Iterable[int], name: str) -> Check:
    realized = set()
    for x in range(P.space.n):
        code = grill_code(co, gamma(x, P))
        if code is not None:
            realized.add(code)
    for code in targets:
        if code not in realized:
            return Check(name, False, {"unrealized": [co.atom_names[k] for k in bits(code)]})
    return Check(name, True)


def _relation_table(S: TwoPCS, co: RegionAlgebra) -> PrecontactRel:
    return from_table(co.table(lambda F, G: relation_on(S, F, G)))


def check_pcs(S: TwoPCS) -> Report:
    P = S.pair
    X = P.space
    rep = Report("pcs-axioms")
    rep.checks.append(_axiom_t0_dense(P, "PCS1"))
    rep.checks.append(_axiom_stone(
        P, "PCS2", "finite-trivial closedness: every relation on a finite discrete space is closed"))
    rep.checks.append(_axiom_base(P, "PCS3"))
    co = P.co_algebra()
    C_R = _relation_table(S, co)
    flat = rflat(C_R.core)
    witness = None
    for F in co.members:
        for G in co.members:
            if X.closure(F) & X.closure(G):
                a, b = co.to_mask(F), co.to_mask(G)
                if not any((i, j) in flat for i in bits(a) for j in bits(b)):
                    witness = {"F": X.names(F), "G": X.names(G)}
                    break
        if witness:
            break
    rep.add("PCS4", witness is None, witness)
    rep.checks.append(_realization(P, co, [c.mask for c in clans(co.algebra, C_R)], "PCS5"))
    return rep


def check_cs(P: TopPair) -> Report:
    rep = Report("cs-axioms")
    rep.checks.append(_axiom_t0_dense(P, "CS1"))
    rep.checks.append(_axiom_stone(P, "CS2", "finite-trivial: a finite Stone space is discrete"))
    rep.checks.append(_axiom_base(P, "CS3"))
    co = P.co_algebra()
    X = P.space
    delta = from_table(co.table(lambda F, G: bool(X.closure(F) & X.closure(G))))
    rep.checks.append(_realization(P, co, [c.mask for c in clans(co.algebra, delta)], "CS4"))
    return rep


def check_s2s(P: TopPair) -> Report:
    rep = Report("s2s-axioms")
    rep.checks.append(_axiom_t0_dense(P, "CS1"))
    rep.checks.append(_axiom_stone(P, "CS2", "finite-trivial: a finite Stone space is discrete"))
    rep.checks.append(_axiom_base(P, "CS3"))
    co = P.co_algebra()
    rep.checks.append(_realization(P, co, [g.mask for g in grills(co.algebra)], "S2S4"))
    return rep


def derived_relation_of_2cs(P: TopPair) -> frozenset[tuple[int, int]]:
    """Relate x, y in X0 when closures of every clopen around x and around y meet."""
    X = P.space
    cl = {F: X.closure(F) for F in P.clopens}
    around = {x: [F for F in P.clopens if F >> x & 1] for x in bits(P.x0)}
    rel = set()
    for x in bits(P.x0):
        for y in bits(P.x0):
            if all(cl[F] & cl[G] for F in around[x] for G in around[y]):
                rel.add((x, y))
    return frozenset(rel)


def pcs_relations_by_exhaustion(P: TopPair, cap: int = 4) -> list[frozenset[tuple[int, int]]]:
    """Every reflexive symmetric relation on X0 that makes the pair a 2-precontact space."""
    pts = list(bits(P.x0))
    if len(pts) > cap:
        raise CapExceededError("relation exhaustion", len(pts), cap)
    off = list(itertools.combinations(pts, 2))
    out = []
    for code in range(1 << len(off)):
        rel = {(x, x) for x in pts}
        for k, (x, y) in enumerate(off):
            if code >> k & 1:
                rel |= {(x, y), (y, x)}
        if check_pcs(TwoPCS(P, frozenset(rel))).ok:
            out.append(frozenset(rel))
    return out


# --- isomorphism testers -------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    witness: tuple[int, ...] | None
    nodes: int
    exhausted: bool

    def __bool__(self) -> bool:
        return self.isomorphic


def _atom_profile(C: PrecontactRel, i: int) -> tuple:
    rows = C.core.rows
    indeg = sum(1 for r in rows if r >> i & 1)
    return bool(rows[i] >> i & 1), popcount(rows[i]), indeg


def is_pca_isomorphic(A1: Algebra, C1: PrecontactRel, A2: Algebra, C2: PrecontactRel) -> IsoResult:
    """Search atom bijections preserving the contact core both ways.

    Under C0 and C+ a Boolean isomorphism preserves contact exactly when its
    atom bijection preserves the cores.
    """
    if max(A1.n, A2.n) > ISO_ATOM_CAP:
        raise CapExceededError("algebra isomorphism search", max(A1.n, A2.n), ISO_ATOM_CAP)
    if A1.n != A2.n:
        return IsoResult(False, None, 0, True)
    n = A1.n
    prof2 = [_atom_profile(C2, j) for j in range(n)]
    cand = [sum(1 << j for j in range(n) if prof2[j] == _atom_profile(C1, i)) for i in range(n)]
    r1, r2 = C1.core.rows, C2.core.rows
    assign = [-1] * n
    nodes = 0

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if i == n:
            return True
        for j in bits(cand[i] & ~used):
            ok = True
            for k in range(i):
                if (r1[i] >> k & 1) != (r2[j] >> assign[k] & 1) or \
                   (r1[k] >> i & 1) != (r2[assign[k]] >> j & 1):
                    ok = False
                    break
            if ok and (r1[i] >> i & 1) == (r2[j] >> j & 1):
                assign[i] = j
                if rec(i + 1, used | 1 << j):
                    return True
                assign[i] = -1
        return False

    found = rec(0, 0)
    return IsoResult(found, tuple(assign) if found else None, nodes, not found)


def _pair_iso(P1: TopPair, P2: TopPair, pair_ok=None) -> IsoResult:
    X, Y = P1.space, P2.space
    if max(X.n, Y.n) > ISO_POINT_CAP:
        raise CapExceededError("space isomorphism search", max(X.n, Y.n), ISO_POINT_CAP)
    if X.n != Y.n or popcount(P1.x0) != popcount(P2.x0):
        return IsoResult(False, None, 0, True)
    allowed = {x: (P2.x0 if P1.x0 >> x & 1 else Y.full & ~P2.x0) for x in range(X.n)}
    res: SearchResult = find_homeomorphism(X, Y, allowed=allowed, pair_ok=pair_ok, cap=ISO_POINT_CAP)
    return IsoResult(res.found is not None, res.found, res.nodes, res.exhausted)


def is_pcs_isomorphic(S1: TwoPCS, S2: TwoPCS) -> IsoResult:
    x0 = S1.x0

    def pair_ok(x: int, fx: int, y: int, fy: int) -> bool:
        if x0 >> x & 1 and x0 >> y & 1:
            return ((x, y) in S1.relation) == ((fx, fy) in S2.relation)
        return True

    return _pair_iso(S1.pair, S2.pair, pair_ok)


def is_cs_isomorphic(P1: TopPair, P2: TopPair) -> IsoResult:
    return _pair_iso(P1, P2)


def is_s2s_isomorphic(P1: TopPair, P2: TopPair) -> IsoResult:
    return _pair_iso(P1, P2)


# --- consolidated verification ----------------------------------------------------------

def _iso_onto(A: Algebra, B: RegionAlgebra, g: list[int]) -> Check:
    """``g`` is a bijection from the elements of ``A`` onto ``B`` preserving all operations."""
    name = "g-boolean-isomorphism"
    if sorted(g) != sorted(B.members):
        return Check(name, False, {"reason": "not a bijection onto the region algebra"})
    L = A.label
    if g[0] != 0 or g[A.top] != B.space.full:
        return Check(name, False, {"reason": "bounds not preserved"})
    for a in range(A.size):
        if g[A.top & ~a] != B.complement(g[a]):
            return Check(name, False, {"op": "complement", "a": L(a)})
        for b in range(A.size):
            if g[a | b] != B.join(g[a], g[b]):
                return Check(name, False, {"op": "join", "a": L(a), "b": L(b)})
            if g[a & b] != B.meet(g[a], g[b]):
                return Check(name, False, {"op": "meet", "a": L(a), "b": L(b)})
    return Check(name, True)


def verify_theorem(A: Algebra, C: PrecontactRel) -> Report:
    """Representation checks for one precontact algebra against its canonical space."""
    rep = Report("representation")
    S = canonical_2pcs(A, C)
    P = S.pair
    X = P.space
    if A.n == 0:
        rep.notes.append("degenerate algebra: empty carrier, non-representable; checks are vacuous")
    rep.add_section(check_pcs(S))
    g = g_map(A, P)
    B, C_S = canonical_algebra_of_2pcs(S)
    rep.checks.append(_iso_onto(A, B, g))
    L = A.label
    T = C.table()
    sharp_T = T.sharp()
    w_pca = w_ca = None
    for a in range(A.size):
        for b in range(A.size):
            if w_pca is None and T(a, b) != relation_on(S, g[a], g[b]):
                w_pca = {"a": L(a), "b": L(b)}
            if w_ca is None and sharp_T(a, b) != bool(g[a] & g[b]):
                w_ca = {"a": L(a), "b": L(b)}
    rep.add("g-preserves-precontact", w_pca is None, w_pca)
    rep.add("g-maps-sharp-onto-overlap-contact", w_ca is None, w_ca)
    rcx = regular_closed(X)
    same = set(rcx.members) == set(B.members)
    rep.add("completeness-clause", same, None if same else {"rc_x": len(rcx.members), "rc_pair": len(B.members)},
            "finite shadow: every finite Boolean algebra is complete, so RC(X) = RC(X, X0) must hold")
    # Stone map onto CO(X0) with the relation induced by R on ultrafilters
    stone = [g[a] & P.x0 for a in range(A.size)]
    co = set(P.clopens)
    w_s = None
    if sorted(stone) != sorted(co):
        w_s = {"reason": "stone map is not onto CO(X0)"}
    else:
        for a in range(A.size):
            for b in range(A.size):
                if stone[a | b] != stone[a] | stone[b] or stone[A.top & ~a] != P.x0 & ~stone[a] \
                        or T(a, b) != relation_on(S, stone[a], stone[b]):
                    w_s = {"a": L(a), "b": L(b)}
                    break
            if w_s:
                break
    rep.add("stone-map-precontact-isomorphism", w_s is None, w_s)
    rel = AtomRelation.from_pairs(A, [(next(bits(P.clans[x].mask)), next(bits(P.clans[y].mask)))
                                      for x, y in S.relation])
    axioms = check_axioms(T, ("Cref", "Csym", "Ctr", "Ccon"))
    pairs = [("Cref", "reflexive", rel.is_reflexive()), ("Csym", "symmetric", rel.is_symmetric()),
             ("Ctr", "transitive", rel.is_transitive())]
    for axiom, prop, holds in pairs:
        agree = bool(axioms[axiom]) == holds
        rep.add(f"{axiom}-iff-{prop}", agree, None if agree else {"axiom": bool(axioms[axiom]), prop: holds})
    agree = bool(axioms["Ccon"]) == is_connected(X)
    rep.add("Ccon-iff-space-connected", agree, None if agree else
            {"axiom": bool(axioms["Ccon"]), "connected": is_connected(X)})
    w11 = None
    flat = rflat(rel)
    for F in P.clopens:
        for G in P.clopens:
            meet = bool(X.closure(F) & X.closure(G))
            sharp_rel = any((next(bits(P.clans[x].mask)), next(bits(P.clans[y].mask))) in flat
                            for x in bits(F) for y in bits(G))
            if meet != sharp_rel:
                w11 = {"F": X.names(F), "G": X.names(G)}
                break
        if w11:
            break
    rep.add("closures-meet-iff-sharp-contact", w11 is None, w11)
    rep.checks.append(de_vries_identity(X))
    iso = is_pca_isomorphic(A, C, B.algebra, C_S) if A.n <= ISO_ATOM_CAP else None
    if iso is not None:
        rep.add("round-trip-pca-isomorphic", iso.isomorphic)
    return rep


def space_round_trip(S: TwoPCS) -> Report:
    """Space to algebra to space: the trace map ``x -> sigma_x`` must be a PCS-isomorphism."""
    rep = Report("space-round-trip")
    pcs = check_pcs(S)
    rep.add_section(pcs)
    if not pcs.ok:
        return rep
    B, C_S = canonical_algebra_of_2pcs(S)
    S2 = canonical_2pcs(B.algebra, C_S)
    pos = {c.mask: k for k, c in enumerate(S2.pair.clans)}
    X = S.space
    f = []
    for x in range(X.n):
        code = grill_code(B, [F for F in B.members if F >> x & 1])
        if code is None or code not in pos:
            rep.add("trace-map-defined", False, {"point": X.points[x]})
            return rep
        f.append(pos[code])
    rep.add("trace-map-defined", True)
    from .finite_space import SpaceMap, is_homeomorphism

    fm = SpaceMap(X, S2.space, tuple(f))
    rep.add("trace-map-homeomorphism", is_homeomorphism(fm))
    rep.add("trace-map-preserves-subspace", fm.image(S.x0) == S2.x0)
    rel_ok = all(((x, y) in S.relation) == ((f[x], f[y]) in S2.relation)
                 for x in bits(S.x0) for y in bits(S.x0))
    rep.add("trace-map-preserves-relation", rel_ok)
    return rep
