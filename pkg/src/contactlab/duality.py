"""Connected Stone duality between Boolean algebras and Stone 2-spaces.

``Da`` sends an algebra to its canonical Stone 2-space (grills over
ultrafilters) and a hom to grill preimage.  ``Dt`` sends a Stone 2-space to
``RC(X, X0)`` and a 2-map ``f`` to ``cl_Y(G) -> cl_X(X0 & f^-1(G))``.
Everything here is verified on the concrete finite universe of small
algebras, and each functor is computed from its literal definition so that
the laws are checked against independent routes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .boolean_core import Algebra, BoolHom, all_homs, bits, check_hom_table, compose, identity
from .dual_construction import canonical_stone2, check_s2s
from .errors import AxiomViolation, InputError
from .finite_space import (
    FiniteSpace, RegionAlgebra, SpaceMap, TopPair, compose_maps, grill_code, identity_map,
    is_continuous, is_extremally_connected, is_extremally_disconnected, is_homeomorphism,
    is_open_map, rc_pair, sigma, u_points,
)
from .points import normalize_family
from .report import Report
from .search import search_maps


@dataclass(frozen=True)
class TwoMap:
    """A continuous map of pairs sending the source subspace into the target subspace."""

    source: TopPair
    target: TopPair
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        f = SpaceMap(self.source.space, self.target.space, tuple(self.mapping))
        object.__setattr__(self, "mapping", f.mapping)
        if not is_continuous(f):
            raise AxiomViolation("continuity", {"map": list(f.mapping)}, "not a continuous map")
        stray = f.image(self.source.x0) & ~self.target.x0
        if stray:
            raise AxiomViolation("subspace", {"outside": self.target.space.names(stray)},
                                 "image of the subspace leaves the target subspace")

    @property
    def space_map(self) -> SpaceMap:
        return SpaceMap(self.source.space, self.target.space, self.mapping)


def compose_two(second: TwoMap, first: TwoMap) -> TwoMap:
    return TwoMap(first.source, second.target, compose_maps(second.space_map, first.space_map).mapping)


def identity_two(P: TopPair) -> TwoMap:
    return TwoMap(P, P, identity_map(P.space).mapping)


# --- objects ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def Da_object(A: Algebra) -> TopPair:
    return canonical_stone2(A)


@lru_cache(maxsize=None)
def _region(P: TopPair) -> RegionAlgebra:
    return rc_pair(P)


def Dt_object(P: TopPair) -> Algebra:
    return _region(P).algebra


# --- morphisms ----------------------------------------------------------------------

def _hom_from_table(source: Algebra, target: Algebra, table: Sequence[int]) -> BoolHom:
    """Read the dual point map off an element table and confirm it reproduces the table."""
    rep = check_hom_table(source, target, table, "table")
    bad = rep.first_failure()
    if bad:
        raise AxiomViolation(bad[1].name, bad[1].witness or {}, "table is not a Boolean homomorphism")
    pm = []
    for k in range(target.n):
        owners = [j for j in range(source.n) if table[1 << j] >> k & 1]
        pm.append(owners[0])
    phi = BoolHom(source, target, tuple(pm))
    if phi.table() != list(table):
        raise AxiomViolation("point-map", {}, "point map does not reproduce the table")
    return phi


def dt_table(f: TwoMap, *, drop_x0: bool = False) -> list[int]:
    """Element table of ``Dt(f)``: ``cl_Y(G) -> cl_X(X0 & f^-1(G))`` for ``G`` clopen in ``Y0``.

    ``drop_x0`` omits the intersection with ``X0``; it exists only as a control.
    """
    BX, BY = _region(f.source), _region(f.target)
    X = f.source.space
    fm = f.space_map
    table = []
    for code in range(BY.algebra.size):
        G = BY.from_mask(code) & f.target.x0
        pre = fm.preimage(G)
        if not drop_x0:
            pre &= f.source.x0
        image = X.closure(pre)
        if image not in BX:
            raise AxiomViolation("region", {"image": X.names(image)}, "image is not in RC(X, X0)")
        table.append(BX.to_mask(image))
    return table


def Dt_morphism(f: TwoMap, *, drop_x0: bool = False) -> BoolHom:
    return _hom_from_table(Dt_object(f.target), Dt_object(f.source), dt_table(f, drop_x0=drop_x0))


def Da_morphism(phi: BoolHom) -> TwoMap:
    """``Da(phi)``: ``Da(B) -> Da(A)``, a grill of ``B`` to its preimage under ``phi``.

    The preimage is taken family-wise and normalised back to an atom set;
    the basis law ``f^-1(g_A(a)) = g_B(phi(a))`` is then confirmed.
    """
    A, B = phi.source, phi.target
    PA, PB = Da_object(A), Da_object(B)
    pos = {c.mask: k for k, c in enumerate(PA.clans)}
    table = phi.table()
    mapping = []
    for grill in PB.clans:
        fam = set(grill.family())
        pre = [a for a in range(A.size) if table[a] in fam]
        mapping.append(pos[normalize_family(A, pre).mask])
    f = TwoMap(PB, PA, tuple(mapping))
    fm = f.space_map
    gA, gB = natural_g_table(A), natural_g_table(B)
    for a in range(A.size):
        if fm.preimage(gA[a]) != gB[table[a]]:
            raise AxiomViolation("basis-preimage", {"a": A.label(a)})
    return f


def g_sets(A: Algebra) -> list[int]:
    """``g_A(a)`` as a point set of ``Da(A)``, for every element ``a``."""
    P = Da_object(A)
    return [sum(1 << k for k, c in enumerate(P.clans) if c.mask & a) for a in range(A.size)]


def natural_g_table(A: Algebra) -> list[int]:
    return g_sets(A)


def natural_g(A: Algebra) -> BoolHom:
    """``g_A``: ``A -> Dt(Da(A))``, read as a hom on atom codes of ``RC(X, X0)``."""
    B = _region(Da_object(A))
    table = []
    for F in g_sets(A):
        if F not in B:
            raise AxiomViolation("g-region", {"set": Da_object(A).space.names(F)})
        table.append(B.to_mask(F))
    return _hom_from_table(A, B.algebra, table)


def natural_t(P: TopPair) -> TwoMap:
    """``t_P``: ``x -> sigma_x`` over ``RC(X, X0)``, as a map ``P -> Da(Dt(P))``."""
    B = _region(P)
    Q = Da_object(B.algebra)
    pos = {c.mask: k for k, c in enumerate(Q.clans)}
    mapping = []
    for x in range(P.space.n):
        code = grill_code(B, sigma(x, B))
        if code is None or code not in pos:
            raise AxiomViolation("t-grill", {"point": P.space.points[x]})
        mapping.append(pos[code])
    return TwoMap(P, Q, tuple(mapping))


def two_maps(P: TopPair, Q: TopPair) -> list[tuple[int, ...]]:
    """Every 2-map ``P -> Q``, by exhaustive search."""
    allowed = {x: Q.x0 for x in bits(P.x0)}
    return search_maps(P.space, Q.space, allowed=allowed, limit=None).maps


# --- verification ---------------------------------------------------------------------

def standard_algebras(max_atoms: int = 3) -> list[Algebra]:
    names = "pqrstuvw"
    return [Algebra(tuple(names[:n])) for n in range(max_atoms + 1)]


DtFn = Callable[[TwoMap], BoolHom]


def _hom_eq(a: BoolHom, b: BoolHom) -> bool:
    return a.source == b.source and a.target == b.target and a.table() == b.table()


def verify_duality(algebras: Iterable[Algebra] | None = None, *, max_atoms: int = 3,
                   dt_morphism: DtFn | None = None) -> Report:
    """Functor laws, naturality of ``t`` and ``g``, and invertibility of both, on a finite universe.

    ``dt_morphism`` replaces ``Dt_morphism`` (used to run corrupted controls).
    """
    start = time.perf_counter()
    Dt = dt_morphism or Dt_morphism
    algs = list(algebras) if algebras is not None else standard_algebras(max_atoms)
    rep = Report("duality")
    homs = {(i, j): all_homs(A, B) for i, A in enumerate(algs) for j, B in enumerate(algs)}
    da = {key: [Da_morphism(phi) for phi in hs] for key, hs in homs.items()}

    objects = rep.add_section(Report("objects"))
    for A in algs:
        P = Da_object(A)
        s2s = check_s2s(P)
        objects.add(f"Da({A.n})-is-stone-2-space", s2s.ok, None if s2s.ok else {"failure": s2s.first_failure()[0]})
        t = natural_t(P)
        iso = is_homeomorphism(t.space_map) and t.space_map.image(P.x0) == t.target.x0
        objects.add(f"t-iso-at-Da({A.n})", iso)
        g = natural_g(A)
        g_iso = g.source.n == g.target.n and sorted(g.point_map) == list(range(A.n))
        objects.add(f"g-iso-at-{A.n}", g_iso)

    functor = rep.add_section(Report("functor-laws"))
    w_id = None
    for A in algs:
        P = Da_object(A)
        if Da_morphism(identity(A)).mapping != identity_two(P).mapping:
            w_id = {"functor": "Da", "atoms": A.n}
        if not _hom_eq(Dt(identity_two(P)), identity(Dt_object(P))):
            w_id = {"functor": "Dt", "atoms": A.n}
    functor.add("identities", w_id is None, w_id)
    w_da = w_dt = None
    count = 0
    for (i, j), phis in homs.items():
        for k in range(len(algs)):
            for a, phi in enumerate(phis):
                for b, psi in enumerate(homs[(j, k)]):
                    count += 1
                    f_phi, f_psi = da[(i, j)][a], da[(j, k)][b]
                    lhs = Da_morphism(compose(psi, phi)).mapping
                    rhs = compose_two(f_phi, f_psi).mapping
                    if w_da is None and lhs != rhs:
                        w_da = {"phi": list(phi.point_map), "psi": list(psi.point_map)}
                    # Dt on the composite 2-map f_phi o f_psi : Da(C) -> Da(A)
                    if w_dt is None and not _hom_eq(Dt(compose_two(f_phi, f_psi)),
                                                    compose(Dt(f_psi), Dt(f_phi))):
                        w_dt = {"phi": list(phi.point_map), "psi": list(psi.point_map)}
    functor.add("Da-composition", w_da is None, w_da)
    functor.add("Dt-composition", w_dt is None, w_dt)
    functor.notes.append(f"composable pairs checked: {count}")

    nat = rep.add_section(Report("naturality"))
    w_t = w_g = None
    squares = 0
    for (i, j), phis in homs.items():
        A, B = algs[i], algs[j]
        gA, gB = natural_g(A), natural_g(B)
        for n_phi, phi in enumerate(phis):
            squares += 1
            # g: Dt(Da(phi)) o g_A = g_B o phi
            lhs = compose(Dt(da[(i, j)][n_phi]), gA)
            rhs = compose(gB, phi)
            if w_g is None and not _hom_eq(lhs, rhs):
                w_g = {"source_atoms": A.n, "target_atoms": B.n, "point_map": list(phi.point_map)}
    # t: Da(Dt(f)) o t_P = t_Q o f, over the duals f = Da(phi) of every hom
    for (i, j), maps in da.items():
        P, Q = Da_object(algs[j]), Da_object(algs[i])
        tP, tQ = natural_t(P), natural_t(Q)
        for f in maps:
            squares += 1
            lhs = compose_two(Da_morphism(Dt(f)), tP).mapping
            rhs = compose_two(tQ, f).mapping
            if w_t is None and lhs != rhs:
                w_t = {"source_atoms": algs[j].n, "target_atoms": algs[i].n, "map": list(f.mapping)}
    nat.add("t-square", w_t is None, w_t)
    nat.add("g-square", w_g is None, w_g)
    nat.notes.append(f"squares checked: {squares}")
    rep.elapsed = time.perf_counter() - start
    return rep


def two_map_census(algebras: Iterable[Algebra] | None = None, *, max_atoms: int = 3) -> Report:
    """Compare all 2-maps between canonical Stone 2-spaces with the duals of homs.

    For each ordered pair of objects it records how many 2-maps exist, how
    many come from homs, and whether the ``t`` square commutes on every
    2-map.  The checks fail wherever there are 2-maps that are not duals.
    """
    algs = list(algebras) if algebras is not None else standard_algebras(max_atoms)
    rep = Report("two-map-census")
    for A in algs:
        for B in algs:
            P, Q = Da_object(B), Da_object(A)
            maps = two_maps(P, Q)
            duals = sorted(Da_morphism(phi).mapping for phi in all_homs(A, B))
            tP, tQ = natural_t(P), natural_t(Q)
            broken = []
            for m in maps:
                f = TwoMap(P, Q, m)
                if compose_two(Da_morphism(Dt_morphism(f)), tP).mapping != compose_two(tQ, f).mapping:
                    broken.append(list(m))
            name = f"Da({B.n})-to-Da({A.n})"
            witness = None
            if sorted(maps) != duals or broken:
                witness = {"two_maps": len(maps), "dual_homs": len(duals),
                           "t_square_failures": len(broken),
                           "first_failure": broken[0] if broken else None}
            rep.add(name, witness is None, witness)
    return rep


# --- negative controls -----------------------------------------------------------------

def dt_drop_x0(f: TwoMap) -> BoolHom:
    """Corrupted ``Dt`` without the subspace intersection (indistinguishable on Stone 2-spaces)."""
    return Dt_morphism(f, drop_x0=True)


def dt_twisted(f: TwoMap) -> BoolHom:
    """Corrupted ``Dt`` that swaps the first two atoms of the target algebra when it can."""
    phi = Dt_morphism(f)
    if phi.target.n < 2:
        return phi
    pm = list(phi.point_map)
    pm[0], pm[1] = pm[1], pm[0]
    return BoolHom(phi.source, phi.target, tuple(pm))


# --- extremally connected spaces -----------------------------------------------------------

def E1(X: FiniteSpace) -> TopPair:
    return TopPair(X, u_points(X))


def E2(P: TopPair) -> FiniteSpace:
    return P.space


def is_ecc_morphism(f: SpaceMap) -> bool:
    """Continuous and sending u-points to u-points."""
    return is_continuous(f) and f.image(u_points(f.source)) & ~u_points(f.target) == 0


def Da_c(A: Algebra) -> FiniteSpace:
    return E2(Da_object(A))


def Dt_c(X: FiniteSpace) -> Algebra:
    return Dt_object(E1(X))


def ecc_functors(max_atoms: int = 3) -> Report:
    """Round trips of the u-point functors and the restricted duality, on the standard universe."""
    rep = Report("ecc")
    algs = standard_algebras(max_atoms)
    for A in algs:
        P = Da_object(A)
        X = Da_c(A)
        sec = rep.add_section(Report(f"atoms-{A.n}"))
        sec.checks.append(is_extremally_connected(X))
        sec.add("E1-recovers-subspace", E1(X) == P)
        sec.add("E2-after-E1-identity", E2(E1(X)) == X)
        sec.add("subspace-extremally-disconnected", is_extremally_disconnected(E1(X).sub))
        sec.add("E1-is-stone-2-space", check_s2s(E1(X)).ok)
        sec.add("Dt_c-size", Dt_c(X).n == A.n)
    mor = rep.add_section(Report("morphisms"))
    w = w_open = None
    extra = 0
    for A in algs:
        for B in algs:
            X, Y = Da_c(B), Da_c(A)
            maps = search_maps(X, Y, limit=None).maps
            ecc = {m for m in maps if is_ecc_morphism(SpaceMap(X, Y, m))}
            duals = {Da_morphism(phi).mapping for phi in all_homs(A, B)}
            if w is None and not duals <= ecc:
                w = {"source_atoms": B.n, "target_atoms": A.n, "missing": sorted(map(list, duals - ecc))}
            extra += len(ecc - duals)
            for m in maps:
                fm = SpaceMap(X, Y, m)
                if w_open is None and is_open_map(fm) and m not in ecc:
                    w_open = {"map": list(m)}
    mor.add("dual-homs-are-ecc-morphisms", w is None, w)
    mor.notes.append(f"ECC morphisms that are not duals of homs: {extra}")
    mor.add("open-maps-are-ecc-morphisms", w_open is None, w_open)
    return rep


def require_two_map(source: TopPair, target: TopPair, mapping: Sequence[int]) -> TwoMap:
    try:
        return TwoMap(source, target, tuple(mapping))
    except AxiomViolation:
        raise
    except InputError as exc:
        raise InputError(f"not a map of pairs: {exc}") from None
