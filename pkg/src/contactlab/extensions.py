"""C-semiregular extensions of finite discrete spaces and their orders.

An extension of a discrete space ``Y`` is built from a contact relation on
``CO(Y)``, the powerset of ``Y``: its points are the clans and ``y`` sits
inside as the ultrafilter at ``y``.  The orders compare extensions through
continuous maps (projective) or embeddings (injective) that respect the
copies of ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boolean_core import Algebra, BoolHom, bits
from .dual_construction import canonical_2cs
from .duality import Da_morphism, Da_object
from .errors import CapExceededError, InputError, WorkbenchError
from .finite_space import (
    FiniteSpace, SpaceMap, TopPair, is_C_semiregular, is_continuous, is_dense, is_discrete,
    is_embedding, is_extremally_connected, u_points,
)
from .precontact import (
    PrecontactRel, RelationTable, enumerate_contact_relations, from_table, rho_l, rho_s,
)
from .report import Report
from .search import find_homeomorphism, search_maps

POSET_CAP = 4


def algebra_of(Y: FiniteSpace) -> Algebra:
    """``CO(Y)`` for a discrete ``Y``, with one atom per point."""
    if not is_discrete(Y):
        raise InputError("extensions are built over finite discrete spaces")
    return Algebra(Y.points)


@dataclass(frozen=True, eq=False)
class ExtensionRecord:
    base: FiniteSpace
    relation: PrecontactRel
    space: FiniteSpace
    embedding: tuple[int, ...]
    pair: TopPair = field(repr=False)

    @property
    def embedding_map(self) -> SpaceMap:
        return SpaceMap(self.base, self.space, self.embedding)

    @property
    def label(self) -> str:
        return relation_label(self.relation)


def relation_label(C: PrecontactRel) -> str:
    """``C{p~q,...}`` listing the off-diagonal pairs ``p < q`` of a contact core."""
    A = C.algebra
    pairs = [f"{A.atoms[i]}~{A.atoms[j]}" for i, j in C.core.pairs if i < j]
    return "C{" + ",".join(pairs) + "}"


def recovered_relation(E: ExtensionRecord) -> PrecontactRel:
    """``F C G`` iff the closures of the embedded copies of ``F`` and ``G`` meet."""
    A = E.relation.algebra
    c = E.embedding_map
    X = E.space
    return from_table(RelationTable.from_predicate(
        A, lambda a, b: bool(X.closure(c.image(a)) & X.closure(c.image(b)))))


def build_extension(Y: FiniteSpace, C: PrecontactRel) -> ExtensionRecord:
    A = algebra_of(Y)
    if C.algebra != A:
        raise InputError("relation must live on the powerset of the base space")
    P = canonical_2cs(A, C)
    pos = {c.mask: k for k, c in enumerate(P.clans)}
    emb = tuple(pos[1 << y] for y in range(Y.n))
    return ExtensionRecord(Y, C, P.space, emb, P)


def check_extension(E: ExtensionRecord) -> Report:
    rep = Report("extension")
    c = E.embedding_map
    rep.add("dense-embedding", is_embedding(c) and is_dense(E.space, c.image(E.base.full)))
    rep.checks.append(is_C_semiregular(E.space))
    same = recovered_relation(E).core == E.relation.core
    rep.add("relation-recovered", same, None if same else {"recovered": recovered_relation(E).core.label()})
    return rep


@dataclass
class OrderVerdict:
    """``le``: projective order, ``le_in``: injective order.

    A true verdict carries a rechecked witness map; a false one means the
    search space was exhausted.
    """

    le: bool
    le_in: bool
    le_witness: tuple[int, ...] | None
    le_in_witness: tuple[int, ...] | None
    nodes: int


def extension_order(E1: ExtensionRecord, E2: ExtensionRecord) -> OrderVerdict:
    """Decide ``E1 <= E2`` and ``E1 <=_in E2`` by exhaustive witness search.

    ``E1 <= E2``: a continuous ``f: cY2 -> cY1`` with ``f o c2 = c1``.
    ``E1 <=_in E2``: an embedding ``f: cY1 -> cY2`` with ``f o c1 = c2``.
    Witnesses are rechecked independently of the search.
    """
    if E1.base != E2.base:
        raise InputError("extensions of different spaces are not comparable")
    c1, c2 = E1.embedding, E2.embedding
    proj = search_maps(E2.space, E1.space, forced={c2[y]: c1[y] for y in range(E1.base.n)})
    inj = search_maps(E1.space, E2.space, forced={c1[y]: c2[y] for y in range(E1.base.n)}, embedding=True)
    w_le, w_in = proj.found, inj.found
    ys = range(E1.base.n)
    if w_le is not None:
        f = SpaceMap(E2.space, E1.space, w_le)
        if not (is_continuous(f) and all(f(c2[y]) == c1[y] for y in ys)):
            raise WorkbenchError("projective witness failed its recheck")
    elif not proj.exhausted:
        raise WorkbenchError("projective search stopped without a verdict")
    if w_in is not None:
        f = SpaceMap(E1.space, E2.space, w_in)
        if not (is_embedding(f) and all(f(c1[y]) == c2[y] for y in ys)):
            raise WorkbenchError("injective witness failed its recheck")
    elif not inj.exhausted:
        raise WorkbenchError("injective search stopped without a verdict")
    return OrderVerdict(w_le is not None, w_in is not None, w_le, w_in, proj.nodes + inj.nodes)


def are_equivalent(E1: ExtensionRecord, E2: ExtensionRecord) -> tuple[int, ...] | None:
    """A homeomorphism ``h: cY1 -> cY2`` with ``h o c1 = c2``, or None after exhaustion."""
    if E1.base != E2.base:
        return None
    forced = {E1.embedding[y]: E2.embedding[y] for y in range(E1.base.n)}
    return find_homeomorphism(E1.space, E2.space, forced=forced, cap=None).found


def relabelled(E: ExtensionRecord) -> ExtensionRecord:
    """An equivalent representative: the same extension with its points listed in reverse."""
    X = E.space
    n = X.n
    rev = [n - 1 - i for i in range(n)]
    closures = []
    for i in range(n):
        old = rev[i]
        closures.append(sum(1 << rev[j] for j in bits(X.point_closures[old])))
    space = FiniteSpace(tuple(X.points[rev[i]] for i in range(n)), tuple(closures))
    emb = tuple(rev[e] for e in E.embedding)
    x0 = sum(1 << rev[i] for i in bits(E.pair.x0))
    return ExtensionRecord(E.base, E.relation, space, emb, TopPair(space, x0))


@dataclass
class ExtensionPoset:
    base: FiniteSpace
    records: list[ExtensionRecord]
    le: list[list[bool]]
    le_in: list[list[bool]]
    witnesses: dict[tuple[int, int], tuple[int, ...]]

    def hasse(self) -> list[tuple[int, int]]:
        """Covering pairs ``(i, j)`` of the injective order, ``i`` below ``j``."""
        n = len(self.records)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.le_in[i][j]:
                    continue
                if not any(k not in (i, j) and self.le_in[i][k] and self.le_in[k][j] for k in range(n)):
                    out.append((i, j))
        return out


def extension_poset(Y: FiniteSpace) -> ExtensionPoset:
    if Y.n > POSET_CAP:
        raise CapExceededError("extension poset", Y.n, POSET_CAP)
    A = algebra_of(Y)
    records = [build_extension(Y, C) for C in enumerate_contact_relations(A)]
    n = len(records)
    le = [[False] * n for _ in range(n)]
    le_in = [[False] * n for _ in range(n)]
    witnesses = {}
    for i in range(n):
        for j in range(n):
            v = extension_order(records[i], records[j])
            le[i][j], le_in[i][j] = v.le, v.le_in
            if v.le_in_witness is not None:
                witnesses[(i, j)] = v.le_in_witness
    return ExtensionPoset(Y, records, le, le_in, witnesses)


def verify_extension_poset(poset: ExtensionPoset) -> Report:
    rep = Report("extension-poset")
    recs = poset.records
    n = len(recs)
    A = algebra_of(poset.base)
    k = A.n
    rep.add("size", n == 2 ** (k * (k - 1) // 2), {"records": n} if n != 2 ** (k * (k - 1) // 2) else None)
    ext = rep.add_section(Report("records"))
    for E in recs:
        r = check_extension(E)
        ext.add(relation_label(E.relation), r.ok, None if r.ok else {"failure": r.first_failure()[0]})
    w_in = w_le = None
    for i in range(n):
        for j in range(n):
            sub = recs[i].relation.core.issubset(recs[j].relation.core)
            sup = recs[j].relation.core.issubset(recs[i].relation.core)
            if w_in is None and poset.le_in[i][j] != sub:
                w_in = {"lower": relation_label(recs[i].relation), "upper": relation_label(recs[j].relation)}
            if w_le is None and poset.le[i][j] != sup:
                w_le = {"lower": relation_label(recs[i].relation), "upper": relation_label(recs[j].relation)}
    rep.add("injective-order-matches-inclusion", w_in is None, w_in)
    rep.add("projective-order-matches-reverse-inclusion", w_le is None, w_le)
    anti = all(not (poset.le_in[i][j] and poset.le_in[j][i]) or i == j for i in range(n) for j in range(n))
    rep.add("injective-order-antisymmetric", anti)
    small = [i for i in range(n) if all(poset.le_in[i][j] for j in range(n))]
    large = [j for j in range(n) if all(poset.le_in[i][j] for i in range(n))]
    rho_s_i = next(i for i, E in enumerate(recs) if E.relation.core == rho_s(A).core)
    rho_l_i = next(i for i, E in enumerate(recs) if E.relation.core == rho_l(A).core)
    rep.add("smallest-is-sparse-relation", small == [rho_s_i])
    rep.add("largest-is-full-relation", large == [rho_l_i])
    Y = poset.base
    base_ext = ExtensionRecord(Y, rho_s(A), Y, tuple(range(Y.n)), TopPair(Y, Y.full))
    rep.add("smallest-equivalent-to-identity-extension", are_equivalent(recs[rho_s_i], base_ext) is not None)
    gamma = recs[rho_l_i]
    rep.checks.append(is_extremally_connected(gamma.space))
    gamma_da = Da_object(A)
    rep.add("largest-is-grill-space", gamma.space == gamma_da.space)
    w_eq = None
    for i, E in enumerate(recs):
        other = relabelled(E)
        if are_equivalent(E, other) is None:
            w_eq = {"record": relation_label(E.relation), "reason": "relabelled copy not equivalent"}
            break
        for j, F in enumerate(recs):
            v1, v2 = extension_order(other, F), extension_order(F, other)
            if (v1.le_in, v1.le, v2.le_in, v2.le) != (poset.le_in[i][j], poset.le[i][j],
                                                      poset.le_in[j][i], poset.le[j][i]):
                w_eq = {"record": relation_label(E.relation), "against": relation_label(F.relation)}
                break
        if w_eq:
            break
    rep.add("representatives-order-indistinguishable", w_eq is None, w_eq)
    w_ec = None
    for i, E in enumerate(recs):
        if is_extremally_connected(E.space).passed and are_equivalent(E, gamma) is None:
            w_ec = {"record": relation_label(E.relation)}
    rep.add("extremally-connected-implies-largest", w_ec is None, w_ec)
    rep.notes.append(f"hasse edges: {len(poset.hasse())}")
    return rep


# --- map extension --------------------------------------------------------------------------

@dataclass
class GammaMap:
    source: FiniteSpace
    target: FiniteSpace
    f: tuple[int, ...]
    extended: tuple[int, ...]
    source_embedding: tuple[int, ...]
    target_embedding: tuple[int, ...]


def gamma_space(X: FiniteSpace) -> TopPair:
    return Da_object(algebra_of(X))


def gamma_embedding(X: FiniteSpace) -> tuple[int, ...]:
    P = gamma_space(X)
    pos = {c.mask: k for k, c in enumerate(P.clans)}
    return tuple(pos[1 << x] for x in range(X.n))


def gamma_extend_map(X: FiniteSpace, Y: FiniteSpace, f: tuple[int, ...]) -> GammaMap:
    """``gamma f``: the dual of ``G -> f^-1(G)`` between the powerset algebras."""
    A, B = algebra_of(X), algebra_of(Y)
    fm = SpaceMap(X, Y, tuple(f))
    phi = BoolHom(B, A, fm.mapping)
    g = Da_morphism(phi)
    return GammaMap(X, Y, fm.mapping, g.mapping, gamma_embedding(X), gamma_embedding(Y))


def check_gamma_map(m: GammaMap) -> Report:
    rep = Report("gamma-map")
    gx, gy = gamma_space(m.source).space, gamma_space(m.target).space
    rep.add("continuous", is_continuous(SpaceMap(gx, gy, m.extended)))
    bad = [x for x in range(m.source.n) if m.extended[m.source_embedding[x]] != m.target_embedding[m.f[x]]]
    rep.add("square-commutes", not bad, {"point": m.source.points[bad[0]]} if bad else None)
    return rep


def extend_into(E: ExtensionRecord, Z: FiniteSpace, f: tuple[int, ...]) -> tuple[int, ...] | None:
    """A continuous ``F: cX -> Z`` with ``F o c = f``, when ``f`` lands in the u-points of ``Z``."""
    up = u_points(Z)
    if any(not up >> v & 1 for v in f):
        raise InputError("map must land in u-points of the target")
    forced = {E.embedding[x]: f[x] for x in range(E.base.n)}
    return search_maps(E.space, Z, forced=forced).found

