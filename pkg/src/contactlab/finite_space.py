"""Finite topological spaces, regular closed algebras and point-trace families.

A finite space is generated from a closed base.  Since every finite
topology is Alexandrov, it is stored losslessly by the closure of each
point; closed sets are exactly the unions of point closures and are
enumerated on demand.  Point sets are int bitmasks over the point list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .boolean_core import Algebra, bits, popcount
from .errors import InputError, WorkbenchError
from .precontact import PrecontactRel, RelationTable, from_table
from .report import Check, Report


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    points: tuple[str, ...]
    point_closures: tuple[int, ...]
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        cls = tuple(self.point_closures)
        if len(pts) != len(cls):
            raise InputError("one closure per point is required")
        index: dict[str, int] = {}
        for i, p in enumerate(pts):
            if p in index:
                raise InputError(f"duplicate point {p!r}")
            index[p] = i
        full = (1 << len(pts)) - 1
        for i, c in enumerate(cls):
            if not c >> i & 1 or c & ~full:
                raise InputError(f"closure of point {pts[i]!r} is malformed")
            for j in bits(c):
                if cls[j] & ~c:
                    raise InputError("point closures are not transitive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "point_closures", cls)
        object.__setattr__(self, "_index", index)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FiniteSpace) and self.points == other.points
                and self.point_closures == other.point_closures)

    def __hash__(self) -> int:
        return hash((self.points, self.point_closures))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown point {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.index(name)
        return out

    def names(self, mask: int) -> list[str]:
        return [self.points[i] for i in bits(mask)]

    def closure(self, S: int) -> int:
        out = 0
        for i in bits(S):
            out |= self.point_closures[i]
        return out

    def interior(self, S: int) -> int:
        return self.full & ~self.closure(self.full & ~S)

    def is_closed(self, S: int) -> bool:
        return self.closure(S) == S

    def is_open(self, S: int) -> bool:
        return self.is_closed(self.full & ~S)

    def up(self, i: int) -> int:
        """Points whose closure contains point ``i`` (the smallest open set at ``i``)."""
        return sum(1 << j for j in range(self.n) if self.point_closures[j] >> i & 1)

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for K in frontier:
                for c in self.point_closures:
                    U = K | c
                    if U not in seen:
                        seen.add(U)
                        nxt.append(U)
            frontier = nxt
        return tuple(sorted(seen))

    @cached_property
    def open_sets(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~K for K in self.closed_sets))

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Connected components: classes of the symmetric closure of specialization."""
        remaining = self.full
        comps = []
        while remaining:
            low = remaining & -remaining
            comp = low
            frontier = low
            while frontier:
                nxt = 0
                for i in bits(frontier):
                    nxt |= self.point_closures[i] | self.up(i)
                frontier = nxt & ~comp
                comp |= nxt
            comps.append(comp)
            remaining &= ~comp
        return tuple(comps)

    def clopen_sets(self) -> list[int]:
        comps = self.components
        out = []
        for code in range(1 << len(comps)):
            out.append(sum(c for k, c in enumerate(comps) if code >> k & 1))
        return sorted(out)

    def subspace(self, S: int) -> "FiniteSpace":
        idx = list(bits(S))
        pos = {p: k for k, p in enumerate(idx)}
        cls = []
        for p in idx:
            c = 0
            for q in bits(self.point_closures[p] & S):
                c |= 1 << pos[q]
            cls.append(c)
        return FiniteSpace(tuple(self.points[p] for p in idx), tuple(cls))

    def set_label(self, S: int) -> list[str]:
        return self.names(S)


def generate(points: Sequence[str], closed_base: Iterable[Iterable[str] | int]) -> FiniteSpace:
    """The topology whose closed sets are intersections of unions of base members."""
    pts = tuple(points)
    index = {}
    for i, p in enumerate(pts):
        if p in index:
            raise InputError(f"duplicate point {p!r}")
        index[p] = i
    full = (1 << len(pts)) - 1
    base = []
    for k, member in enumerate(closed_base):
        if isinstance(member, int):
            if member & ~full:
                raise InputError(f"closed base member {k} mentions unknown points")
            base.append(member)
            continue
        m = 0
        for name in member:
            if name not in index:
                raise InputError(f"closed base member {k} mentions unknown point {name!r}",
                                 f"closed_base[{k}]")
            m |= 1 << index[name]
        base.append(m)
    closures = []
    for i in range(len(pts)):
        c = full
        for m in base:
            if m >> i & 1:
                c &= m
        closures.append(c)
    return FiniteSpace(pts, tuple(closures))


def discrete(points: Sequence[str]) -> FiniteSpace:
    return FiniteSpace(tuple(points), tuple(1 << i for i in range(len(points))))


def indiscrete(points: Sequence[str]) -> FiniteSpace:
    full = (1 << len(points)) - 1
    return FiniteSpace(tuple(points), tuple(full for _ in points))


# --- regular closed algebras ------------------------------------------------

@dataclass(frozen=True, eq=False)
class RegionAlgebra:
    """A finite Boolean algebra of point sets of a space.

    ``kind`` is ``"regular"`` for algebras of regular closed sets (join is
    union, meet is cl(int(.)), complement is cl(X minus .)) and ``"clopen"``
    for clopen algebras of the subspace ``top`` (set operations relative to
    ``top``).
    """

    space: FiniteSpace
    top: int
    members: tuple[int, ...]
    kind: str
    name_hint: int = 0

    def join(self, F: int, G: int) -> int:
        return F | G

    def meet(self, F: int, G: int) -> int:
        if self.kind == "regular":
            return self.space.closure(self.space.interior(F & G))
        return F & G

    def complement(self, F: int) -> int:
        if self.kind == "regular":
            return self.space.closure(self.space.full & ~F)
        return self.top & ~F

    @property
    def zero(self) -> int:
        return 0

    def __contains__(self, F: int) -> bool:
        return F in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        nonzero = [F for F in self.members if F]
        minimal = [F for F in nonzero if not any(G != F and G & ~F == 0 for G in nonzero)]
        return tuple(sorted(minimal, key=lambda F: tuple(bits(F))))

    @cached_property
    def atom_names(self) -> tuple[str, ...]:
        sp = self.space
        hinted = ["+".join(sp.names(F & self.name_hint)) for F in self.atoms]
        if self.name_hint and all(hinted) and len(set(hinted)) == len(hinted):
            return tuple(hinted)
        return tuple("+".join(sp.names(F)) for F in self.atoms)

    @cached_property
    def algebra(self) -> Algebra:
        return Algebra(self.atom_names)

    def to_mask(self, F: int) -> int:
        """Atom-set code of a member: the atoms lying below it."""
        out = 0
        for k, a in enumerate(self.atoms):
            if a & ~F == 0:
                out |= 1 << k
        return out

    def from_mask(self, code: int) -> int:
        F = 0
        for k in bits(code):
            F |= self.atoms[k]
        return F

    def table(self, pred: Callable[[int, int], bool]) -> RelationTable:
        """Element-level table of ``pred`` evaluated on actual point sets."""
        return RelationTable.from_predicate(
            self.algebra, lambda a, b: pred(self.from_mask(a), self.from_mask(b)))

    def overlap_contact(self) -> PrecontactRel:
        """The standard contact: two regions touch when they share a point."""
        return from_table(self.table(lambda F, G: bool(F & G)))

    def boolean_check(self) -> Report:
        """Verify the member family is a Boolean algebra isomorphic to its atom powerset."""
        rep = Report(f"boolean-structure-{self.kind}")
        n = len(self.atoms)
        codes = {F: self.to_mask(F) for F in self.members}
        bij = sorted(codes.values()) == list(range(1 << n)) and len(self.members) == 1 << n
        rep.add("atom-coding-bijective", bij,
                None if bij else {"members": len(self.members), "atoms": n})
        roundtrip = all(self.from_mask(c) == F for F, c in codes.items())
        rep.add("members-are-joins-of-atoms", roundtrip)
        witness = None
        for F in self.members:
            cF = codes[F]
            comp = self.complement(F)
            if comp not in self or codes[comp] != ((1 << n) - 1) & ~cF:
                witness = {"op": "complement", "F": self.space.names(F)}
                break
            for G in self.members:
                for op, expect in (("join", cF | codes[G]), ("meet", cF & codes[G])):
                    H = self.join(F, G) if op == "join" else self.meet(F, G)
                    if H not in self or codes[H] != expect:
                        witness = {"op": op, "F": self.space.names(F), "G": self.space.names(G)}
                        break
                if witness:
                    break
            if witness:
                break
        rep.add("operations-match-atom-coding", witness is None, witness)
        return rep


def regular_closed(X: FiniteSpace, name_hint: int = 0) -> RegionAlgebra:
    members = sorted({X.closure(U) for U in X.open_sets})
    return RegionAlgebra(X, X.full, tuple(members), "regular", name_hint)


def is_regular_closed(X: FiniteSpace, F: int) -> bool:
    return X.closure(X.interior(F)) == F


# --- topological pairs ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TopPair:
    """A space with a distinguished subspace ``x0`` (bitmask of points).

    Canonical constructions also record, in ``clans``, the atom set of the
    abstract point behind each space point.
    """

    space: FiniteSpace
    x0: int
    clans: tuple | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.x0 & ~self.space.full:
            raise InputError("subspace mentions points outside the space")

    @cached_property
    def sub(self) -> FiniteSpace:
        return self.space.subspace(self.x0)

    def lift(self, sub_mask: int) -> int:
        """Map a point set of the subspace back to a point set of the space."""
        idx = list(bits(self.x0))
        return sum(1 << idx[k] for k in bits(sub_mask))

    def lower(self, mask: int) -> int:
        idx = list(bits(self.x0))
        return sum(1 << k for k, p in enumerate(idx) if mask >> p & 1)

    @cached_property
    def clopens(self) -> tuple[int, ...]:
        """CO(X0) as point sets of X."""
        return tuple(sorted(self.lift(c) for c in self.sub.clopen_sets()))

    def co_algebra(self) -> RegionAlgebra:
        return RegionAlgebra(self.space, self.x0, self.clopens, "clopen", self.x0)

    def trace(self, x: int) -> int:
        """Points y of X0 with x in cl(y); Gamma_{x,X0} is the family of clopens meeting it."""
        return sum(1 << y for y in bits(self.x0) if self.space.point_closures[y] >> x & 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TopPair) and self.space == other.space and self.x0 == other.x0

    def __hash__(self) -> int:
        return hash((self.space, self.x0))


def rc_pair(P: TopPair) -> RegionAlgebra:
    X = P.space
    members = sorted({X.closure(A) for A in P.clopens})
    return RegionAlgebra(X, X.full, tuple(members), "regular", P.x0)


def restriction_iso(P: TopPair) -> dict[int, int]:
    """r(F) = F meet X0, from RC(X) to RC(X0), both as point sets of X."""
    return {F: F & P.x0 for F in regular_closed(P.space).members}


def extension_iso(P: TopPair) -> dict[int, int]:
    """e(G) = cl_X(G), from RC(X0) to RC(X)."""
    sub = P.sub
    return {P.lift(G): P.space.closure(P.lift(G)) for G in regular_closed(sub).members}


def restriction_extension_report(P: TopPair) -> Report:
    rep = Report("restriction-extension")
    X = P.space
    rcx = regular_closed(X)
    rcx0 = regular_closed(P.sub)
    rc0 = {P.lift(G) for G in rcx0.members}
    r = restriction_iso(P)
    e = extension_iso(P)
    rep.add("x0-dense", X.closure(P.x0) == X.full)
    rep.add("r-lands-in-rc-x0", all(v in rc0 for v in r.values()))
    rep.add("e-lands-in-rc-x", all(v in rcx for v in e.values()))
    rep.add("e-after-r-identity", all(e.get(r[F]) == F for F in r))
    rep.add("r-after-e-identity", all(r.get(e[G]) == G for G in e))
    witness = None
    for F in rcx.members:
        for G in rcx.members:
            lhs = r[rcx.meet(F, G)]
            rhs = P.lift(rcx0.meet(P.lower(r[F]), P.lower(r[G])))
            if lhs != rhs or r[F | G] != r[F] | r[G]:
                witness = {"F": X.names(F), "G": X.names(G)}
                break
        if witness:
            break
        if r[rcx.complement(F)] != P.lift(rcx0.complement(P.lower(r[F]))):
            witness = {"F": X.names(F), "op": "complement"}
            break
    rep.add("r-boolean-hom", witness is None, witness)
    return rep


# --- predicates -------------------------------------------------------------------

def is_T0(X: FiniteSpace) -> bool:
    return len(set(X.point_closures)) == X.n


def is_connected(X: FiniteSpace) -> bool:
    return len(X.components) <= 1


def is_dense(X: FiniteSpace, S: int) -> bool:
    return X.closure(S) == X.full


def is_discrete(X: FiniteSpace) -> bool:
    return all(c == 1 << i for i, c in enumerate(X.point_closures))


def is_closed_base(X: FiniteSpace, family: Iterable[int]) -> bool:
    """Every closed set is an intersection of finite unions of members.

    For a union-closed family this is the usual closed-base condition.
    """
    fam = list(family)
    if not all(X.is_closed(F) for F in fam):
        return False
    generated = generate(X.points, fam)
    return generated.point_closures == X.point_closures


def is_semiregular(X: FiniteSpace) -> bool:
    return is_closed_base(X, regular_closed(X).members)


def is_extremally_disconnected(X: FiniteSpace) -> bool:
    return all(X.is_open(X.closure(U)) for U in X.open_sets)


FINITE_TRIVIAL = "finite-trivial"


def is_compact(X: FiniteSpace) -> Check:
    return Check("compact", True, detail=FINITE_TRIVIAL + ": every finite space is compact")


def is_hausdorff(X: FiniteSpace) -> Check:
    return Check("hausdorff", is_discrete(X), detail=FINITE_TRIVIAL + ": finite Hausdorff means discrete")


# --- maps -----------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(self.mapping)
        if len(m) != self.source.n or any(not 0 <= v < self.target.n for v in m):
            raise InputError("space map must send every source point to a target point")
        object.__setattr__(self, "mapping", m)

    def image(self, S: int) -> int:
        out = 0
        for i in bits(S):
            out |= 1 << self.mapping[i]
        return out

    def preimage(self, T: int) -> int:
        return sum(1 << i for i, v in enumerate(self.mapping) if T >> v & 1)

    def __call__(self, i: int) -> int:
        return self.mapping[i]


def is_continuous(f: SpaceMap) -> bool:
    """Preimages of closed sets are closed (checked on point closures, which generate them)."""
    return all(f.source.is_closed(f.preimage(c)) for c in f.target.point_closures)


def is_open_map(f: SpaceMap) -> bool:
    return is_continuous(f) and all(f.target.is_open(f.image(U)) for U in f.source.open_sets)


def is_injective(f: SpaceMap) -> bool:
    return len(set(f.mapping)) == len(f.mapping)


def is_homeomorphism(f: SpaceMap) -> bool:
    if f.source.n != f.target.n or not is_injective(f) or not is_continuous(f):
        return False
    inv = [0] * f.target.n
    for i, v in enumerate(f.mapping):
        inv[v] = i
    return is_continuous(SpaceMap(f.target, f.source, tuple(inv)))


def is_embedding(f: SpaceMap) -> bool:
    """Injective, continuous, and a homeomorphism onto the image subspace."""
    if not is_injective(f) or not is_continuous(f):
        return False
    img = f.image(f.source.full)
    T = f.target
    for K in f.source.closed_sets:
        # K must be the trace on the image of a closed set of the target
        if T.closure(f.image(K)) & img != f.image(K):
            return False
    return True


def compose_maps(second: SpaceMap, first: SpaceMap) -> SpaceMap:
    return SpaceMap(first.source, second.target, tuple(second.mapping[v] for v in first.mapping))


def identity_map(X: FiniteSpace) -> SpaceMap:
    return SpaceMap(X, X, tuple(range(X.n)))


# --- point traces ---------------------------------------------------------------

def sigma(x: int, B: RegionAlgebra) -> list[int]:
    return [F for F in B.members if F >> x & 1]


def nu(x: int, B: RegionAlgebra) -> list[int]:
    return [F for F in B.members if B.space.interior(F) >> x & 1]


def gamma(x: int, P: TopPair) -> list[int]:
    return [F for F in P.clopens if P.space.closure(F) >> x & 1]


def u(x: int, X: FiniteSpace) -> list[int]:
    """Clopen sets of X containing x."""
    return [F for F in X.clopen_sets() if F >> x & 1]


def family_code(B: RegionAlgebra, family: Iterable[int]) -> list[int]:
    return [B.to_mask(F) for F in family]


def grill_code(B: RegionAlgebra, family: Iterable[int]) -> int | None:
    """Atom set generating ``family`` when it is a grill of ``B``, else None."""
    from .points import is_grill

    fam = list(family)
    if not is_grill(B.algebra, family_code(B, fam)):
        return None
    members = set(fam)
    return sum(1 << k for k, a in enumerate(B.atoms) if a in members)


def u_points(X: FiniteSpace) -> int:
    """Points where closures of any two open sets meet only inside cl(U and V)."""
    opens = X.open_sets
    cl = {U: X.closure(U) for U in opens}
    out = 0
    for x in range(X.n):
        good = True
        for U in opens:
            if not cl[U] >> x & 1:
                continue
            for V in opens:
                if cl[V] >> x & 1 and not cl[U & V] >> x & 1:
                    good = False
                    break
            if not good:
                break
        if good:
            out |= 1 << x
    return out


def u_points_via_sigma(X: FiniteSpace) -> int:
    """Points whose sigma family is an ultrafilter of RC(X)."""
    from .points import is_ultrafilter

    B = regular_closed(X)
    out = 0
    for x in range(X.n):
        if is_ultrafilter(B.algebra, family_code(B, sigma(x, B))):
            out |= 1 << x
    return out


def de_vries_identity(X: FiniteSpace) -> Check:
    """int(cl U meet cl V) equals int(cl(U meet V)) for all open U, V."""
    opens = X.open_sets
    cl = {U: X.closure(U) for U in opens}
    for i, U in enumerate(opens):
        for V in opens[i:]:
            # opens are closed under meets, so cl(U & V) is already tabulated
            lhs = X.interior(cl[U] & cl[V])
            rhs = X.interior(cl[U & V])
            if lhs != rhs:
                return Check("de-vries-identity", False, {"U": X.names(U), "V": X.names(V)})
    return Check("de-vries-identity", True)


def sigma_codes(B: RegionAlgebra) -> dict[int, int]:
    """Atom-set code of sigma_x for every point whose sigma family is a grill."""
    out = {}
    for x in range(B.space.n):
        code = grill_code(B, sigma(x, B))
        if code is not None:
            out[x] = code
    return out


def _realized(B: RegionAlgebra, targets: Iterable[int], name: str) -> Check:
    traces = set(sigma_codes(B).values())
    for code in targets:
        if code not in traces:
            return Check(name, False, {"unrealized": B.algebra.names(code)})
    return Check(name, True)


def is_C_semiregular(X: FiniteSpace) -> Check:
    from .points import clans

    name = "C-semiregular"
    if not is_T0(X):
        return Check(name, False, {"reason": "not T0"})
    if not is_semiregular(X):
        return Check(name, False, {"reason": "not semiregular"})
    B = regular_closed(X)
    C = B.overlap_contact()
    return _realized(B, [g.mask for g in clans(B.algebra, C)], name)


def is_extremally_connected(X: FiniteSpace) -> Check:
    from .points import grills

    name = "extremally-connected"
    if not is_T0(X):
        return Check(name, False, {"reason": "not T0"})
    if not is_semiregular(X):
        return Check(name, False, {"reason": "not semiregular"})
    B = regular_closed(X)
    return _realized(B, [g.mask for g in grills(B.algebra)], name)


def delta_pair(P: TopPair) -> PrecontactRel:
    """Contact on CO(X0): two clopens touch when their closures in X meet."""
    X = P.space
    B = P.co_algebra()
    return from_table(B.table(lambda F, G: bool(X.closure(F) & X.closure(G))))
