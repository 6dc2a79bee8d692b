"""Precontact and contact relations on finite Boolean algebras.

A relation that satisfies C0 and C+ is determined by which atom pairs are
in contact, so :class:`PrecontactRel` stores only that atom-level core.
Arbitrary candidate relations given element by element live in
:class:`RelationTable`; axiom checking always runs on a table.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .boolean_core import Algebra, Element, bits, make_algebra
from .errors import AlgebraMismatchError, AxiomViolation, CapExceededError, InputError
from .report import Report

DEFAULT_CONTACT_CAP = 5
DEFAULT_PRECONTACT_CAP = 4
CAP_ENV = "WORKBENCH_CAP"


@dataclass(frozen=True)
class AtomRelation:
    """A binary relation on the atoms of an algebra, one bitmask row per atom."""

    algebra: Algebra
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if len(rows) != self.algebra.n:
            raise InputError("relation needs exactly one row per atom")
        for r in rows:
            if r & ~self.algebra.top:
                raise InputError("relation row mentions atoms outside the algebra")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_pairs(cls, algebra: Algebra, pairs: Iterable[tuple[int | str, int | str]]) -> "AtomRelation":
        rows = [0] * algebra.n
        for p, q in pairs:
            i = algebra.index(p) if isinstance(p, str) else p
            j = algebra.index(q) if isinstance(q, str) else q
            if not (0 <= i < algebra.n and 0 <= j < algebra.n):
                raise InputError(f"pair ({p!r}, {q!r}) lies outside the atom set")
            rows[i] |= 1 << j
        return cls(algebra, tuple(rows))

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in bits(row)]

    def named_pairs(self) -> list[tuple[str, str]]:
        a = self.algebra.atoms
        return [(a[i], a[j]) for i, j in self.pairs]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return bool(self.rows[i] >> j & 1)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def issubset(self, other: "AtomRelation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def converse(self) -> "AtomRelation":
        return AtomRelation.from_pairs(self.algebra, [(j, i) for i, j in self.pairs])

    def is_reflexive(self) -> bool:
        return all(r >> i & 1 for i, r in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return all((j, i) in self for i, j in self.pairs)

    def is_transitive(self) -> bool:
        for i, row in enumerate(self.rows):
            reach = 0
            for j in bits(row):
                reach |= self.rows[j]
            if reach & ~row:
                return False
        return True

    def is_connected(self) -> bool:
        """Any two distinct atoms are joined by a path in R or its converse."""
        n = self.algebra.n
        if n <= 1:
            return True
        undirected = [0] * n
        for i, j in self.pairs:
            undirected[i] |= 1 << j
            undirected[j] |= 1 << i
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= undirected[i]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.algebra.top

    def label(self) -> str:
        return "{" + ",".join(f"{p}~{q}" for p, q in self.named_pairs()) + "}"


def _closure_rows(rows: Sequence[int]) -> list[int]:
    reach = list(rows)
    changed = True
    while changed:
        changed = False
        for i in range(len(reach)):
            acc = reach[i]
            for j in bits(reach[i]):
                acc |= reach[j]
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    return reach


def has_directed_path_between_all(rel: AtomRelation) -> bool:
    """The literal directed reading: a path one way or the other for each pair.

    Kept for comparison only; it is strictly stronger than C-connectedness.
    """
    reach = _closure_rows(rel.rows)
    n = rel.algebra.n
    return all(reach[i] >> j & 1 or reach[j] >> i & 1
               for i in range(n) for j in range(n) if i != j)


@dataclass(frozen=True)
class PrecontactRel:
    """A precontact relation stored by its atom core."""

    core: AtomRelation

    @property
    def algebra(self) -> Algebra:
        return self.core.algebra

    def reach(self, a: int) -> int:
        out = 0
        for i in bits(a):
            out |= self.core.rows[i]
        return out

    def holds_mask(self, a: int, b: int) -> bool:
        return bool(self.reach(a) & b)

    def table(self) -> "RelationTable":
        A = self.algebra
        reach = [self.reach(a) for a in range(A.size)]
        rows = []
        for a in range(A.size):
            row = 0
            for b in range(A.size):
                if reach[a] & b:
                    row |= 1 << b
            rows.append(row)
        return RelationTable(A, tuple(rows))

    def label(self) -> str:
        return self.core.label()


@dataclass(frozen=True)
class RelationTable:
    """An arbitrary element-level relation: ``rows[a]`` has bit ``b`` when aCb."""

    algebra: Algebra
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.algebra.size:
            raise InputError("relation table needs one row per element")

    @classmethod
    def from_pairs(cls, algebra: Algebra, pairs: Iterable[tuple[int, int]]) -> "RelationTable":
        rows = [0] * algebra.size
        for a, b in pairs:
            if not (0 <= a <= algebra.top and 0 <= b <= algebra.top):
                raise InputError(f"element pair ({a}, {b}) outside the algebra")
            rows[a] |= 1 << b
        return cls(algebra, tuple(rows))

    @classmethod
    def from_predicate(cls, algebra: Algebra, pred: Callable[[int, int], bool]) -> "RelationTable":
        rows = []
        for a in range(algebra.size):
            row = 0
            for b in range(algebra.size):
                if pred(a, b):
                    row |= 1 << b
            rows.append(row)
        return cls(algebra, tuple(rows))

    def __call__(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self.rows) for b in bits(row)]

    def sharp(self) -> "RelationTable":
        return RelationTable.from_predicate(
            self.algebra, lambda a, b: self(a, b) or self(b, a) or bool(a & b))


def holds(C: PrecontactRel, a: Element, b: Element) -> bool:
    if a.algebra != C.algebra or b.algebra != C.algebra:
        raise AlgebraMismatchError("elements are not in the relation's algebra")
    return C.holds_mask(a.mask, b.mask)


def way_below(C: PrecontactRel, a: Element, b: Element) -> bool:
    """Non-tangential inclusion: ``a`` is not in contact with the complement of ``b``."""
    return not holds(C, a, ~b)


def _way_below_rows(T: RelationTable) -> list[int]:
    """``out[a]`` has bit ``c`` when a << c, i.e. not aC(c*)."""
    A = T.algebra
    top = A.top
    out = []
    for a in range(A.size):
        row = 0
        for c in range(A.size):
            if not T(a, top & ~c):
                row |= 1 << c
        out.append(row)
    return out


def check_c0(T: RelationTable) -> dict | None:
    A = T.algebra
    for a in range(A.size):
        for b in range(A.size):
            if T(a, b) and (a == 0 or b == 0):
                return {"a": A.label(a), "b": A.label(b)}
    return None


def check_cplus(T: RelationTable) -> dict | None:
    A = T.algebra
    for a in range(A.size):
        for b in range(A.size):
            for c in range(A.size):
                if T(a, b | c) != (T(a, b) or T(a, c)):
                    return {"a": A.label(a), "b": A.label(b), "c": A.label(c), "side": "right"}
                if T(a | b, c) != (T(a, c) or T(b, c)):
                    return {"a": A.label(a), "b": A.label(b), "c": A.label(c), "side": "left"}
    return None


def check_cref(T: RelationTable) -> dict | None:
    A = T.algebra
    for a in range(1, A.size):
        if not T(a, a):
            return {"a": A.label(a)}
    return None


def check_csym(T: RelationTable) -> dict | None:
    A = T.algebra
    for a, b in T.pairs():
        if not T(b, a):
            return {"a": A.label(a), "b": A.label(b)}
    return None


def _check_interpolation(T: RelationTable) -> dict | None:
    A = T.algebra
    wb = _way_below_rows(T)
    for a in range(A.size):
        for c in bits(wb[a]):
            if not any(wb[b] >> c & 1 for b in bits(wb[a])):
                return {"a": A.label(a), "c": A.label(c)}
    return None


def check_ctr(T: RelationTable) -> dict | None:
    return _check_interpolation(T)


def check_ctr_sharp(T: RelationTable) -> dict | None:
    return _check_interpolation(T.sharp())


def check_ccon(T: RelationTable) -> dict | None:
    A = T.algebra
    for a in range(1, A.top):
        b = A.top & ~a
        if not (T(a, b) or T(b, a)):
            return {"a": A.label(a)}
    return None


def check_c6(T: RelationTable) -> dict | None:
    A = T.algebra
    for a in range(A.size):
        if a == A.top:
            continue
        if not any(not T(b, a) for b in range(1, A.size)):
            return {"a": A.label(a)}
    return None


AXIOMS: dict[str, Callable[[RelationTable], dict | None]] = {
    "C0": check_c0,
    "C+": check_cplus,
    "Cref": check_cref,
    "Csym": check_csym,
    "Ctr": check_ctr,
    "Ccon": check_ccon,
    "Ctr#": check_ctr_sharp,
    "C6": check_c6,
}

AXIOM_SETS = {
    "precontact": ("C0", "C+"),
    "contact": ("C0", "C+", "Cref", "Csym"),
    "all": tuple(AXIOMS),
}


def check_axioms(T: RelationTable | PrecontactRel, names: Sequence[str] = tuple(AXIOMS)) -> Report:
    """Per-axiom verdicts, each failure carrying the lexicographically first witness."""
    if isinstance(T, PrecontactRel):
        T = T.table()
    rep = Report("axioms")
    for name in names:
        witness = AXIOMS[name](T)
        rep.add(name, witness is None, witness)
    return rep


def from_table(T: RelationTable) -> PrecontactRel:
    for axiom in ("C0", "C+"):
        witness = AXIOMS[axiom](T)
        if witness is not None:
            raise AxiomViolation(axiom, witness)
    A = T.algebra
    core = AtomRelation.from_pairs(
        A, [(i, j) for i in range(A.n) for j in range(A.n) if T(1 << i, 1 << j)])
    rel = PrecontactRel(core)
    if rel.table() != T:
        # unreachable when C0 and C+ hold; kept as a guard on the normal form
        raise AxiomViolation("C+", {}, "atom core does not reproduce the table")
    return rel


def rflat(R: AtomRelation) -> AtomRelation:
    """Reflexive-symmetric closure."""
    rows = list(R.rows)
    for i, j in R.pairs:
        rows[j] |= 1 << i
    for i in range(len(rows)):
        rows[i] |= 1 << i
    return AtomRelation(R.algebra, tuple(rows))


def sharp(C: PrecontactRel) -> PrecontactRel:
    return PrecontactRel(rflat(C.core))


def rho_s(A: Algebra) -> PrecontactRel:
    return PrecontactRel(AtomRelation(A, tuple(1 << i for i in range(A.n))))


def rho_l(A: Algebra) -> PrecontactRel:
    return PrecontactRel(AtomRelation(A, tuple(A.top for _ in range(A.n))))


def precontact_from_pairs(A: Algebra, pairs: Iterable[tuple[int | str, int | str]]) -> PrecontactRel:
    return PrecontactRel(AtomRelation.from_pairs(A, pairs))


def adjacency_contact(cells: Sequence[str], R: Iterable[tuple[str, str]]) -> PrecontactRel:
    """The relation C_R on the powerset of ``cells``; cells become atoms."""
    A = make_algebra(cells)
    pairs = []
    for x, y in R:
        if x not in A.atoms or y not in A.atoms:
            raise InputError(f"adjacency pair ({x!r}, {y!r}) mentions an unknown cell")
        pairs.append((x, y))
    return precontact_from_pairs(A, pairs)


def grid_cells(rows: int, cols: int, neighborhood: str = "von-neumann") -> tuple[list[str], list[tuple[str, str]]]:
    """Cells ``r{i}c{j}`` with a reflexive symmetric adjacency."""
    if rows < 0 or cols < 0:
        raise InputError("grid dimensions must be nonnegative")
    if neighborhood == "von-neumann":
        steps = [(0, 1), (1, 0)]
    elif neighborhood == "moore":
        steps = [(0, 1), (1, 0), (1, 1), (1, -1)]
    else:
        raise InputError(f"unknown neighborhood {neighborhood!r}", "neighborhood")
    cells = [f"r{i}c{j}" for i in range(rows) for j in range(cols)]
    R = [(c, c) for c in cells]
    for i in range(rows):
        for j in range(cols):
            for di, dj in steps:
                k, l = i + di, j + dj
                if 0 <= k < rows and 0 <= l < cols:
                    R.append((f"r{i}c{j}", f"r{k}c{l}"))
                    R.append((f"r{k}c{l}", f"r{i}c{j}"))
    return cells, R


def enumeration_cap(kind: str) -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is not None and raw.strip():
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_CONTACT_CAP if kind == "contact" else DEFAULT_PRECONTACT_CAP


def _require_cap(A: Algebra, kind: str) -> None:
    cap = enumeration_cap(kind)
    if A.n > cap:
        raise CapExceededError(f"{kind} relation enumeration (cap {cap}, env {CAP_ENV})", A.n, cap)


def enumerate_precontact_relations(A: Algebra) -> Iterator[PrecontactRel]:
    """All 2^(n^2) atom relations; pair (i, j) is bit i*n+j of the counter."""
    _require_cap(A, "precontact")
    return _enum_precontact(A)


def _enum_precontact(A: Algebra) -> Iterator[PrecontactRel]:
    n = A.n
    for code in range(1 << (n * n)):
        rows = tuple((code >> (i * n)) & ((1 << n) - 1) for i in range(n))
        yield PrecontactRel(AtomRelation(A, rows))


def off_diagonal_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def enumerate_contact_relations(A: Algebra) -> Iterator[PrecontactRel]:
    """All reflexive symmetric atom relations, by subset of off-diagonal pairs."""
    _require_cap(A, "contact")
    return _enum_contact(A)


def _enum_contact(A: Algebra) -> Iterator[PrecontactRel]:
    pairs = off_diagonal_pairs(A.n)
    for code in range(1 << len(pairs)):
        rows = [1 << i for i in range(A.n)]
        for k, (i, j) in enumerate(pairs):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield PrecontactRel(AtomRelation(A, tuple(rows)))


def _ll_axioms(T: RelationTable) -> dict[str, dict | None]:
    """The five order-style axioms for the derived non-tangential inclusion.

    Witnesses are the first found when scanning in increasing mask order.
    """
    A = T.algebra
    top = A.top
    wb = _way_below_rows(T)
    L = A.label
    out: dict[str, dict | None] = {}
    out["<<2"] = None if wb[0] & 1 else {"a": L(0), "b": L(0)}
    out["<<2'"] = None if wb[top] >> top & 1 else {"a": L(top), "b": L(top)}

    def first_ll3() -> dict | None:
        # a <= b << c <= t must give a << t
        for b in range(A.size):
            for c in bits(wb[b]):
                for a in range(A.size):
                    if a & ~b:
                        continue
                    for t in range(A.size):
                        if c & ~t == 0 and not wb[a] >> t & 1:
                            return {"a": L(a), "b": L(b), "c": L(c), "t": L(t)}
        return None

    def first_ll4() -> dict | None:
        for a in range(A.size):
            for b in bits(wb[a]):
                for c in bits(wb[a]):
                    if not wb[a] >> (b & c) & 1:
                        return {"a": L(a), "b": L(b), "c": L(c)}
        return None

    def first_ll4p() -> dict | None:
        for c in range(A.size):
            left = [a for a in range(A.size) if wb[a] >> c & 1]
            for a in left:
                for b in left:
                    if not wb[a | b] >> c & 1:
                        return {"a": L(a), "b": L(b), "c": L(c)}
        return None

    out["<<3"] = first_ll3()
    out["<<4"] = first_ll4()
    out["<<4'"] = first_ll4p()
    return out


def ll_axiom_equivalence(T: RelationTable | PrecontactRel) -> Report:
    """Check that C0+C+ holds exactly when the derived << satisfies its five axioms.

    The single verdict is the agreement of the two sides; each side's own
    outcome is recorded in the notes.
    """
    if isinstance(T, PrecontactRel):
        T = T.table()
    contact = {name: AXIOMS[name](T) for name in ("C0", "C+")}
    order = _ll_axioms(T)
    contact_ok = all(w is None for w in contact.values())
    order_ok = all(w is None for w in order.values())
    rep = Report("ll-equivalence")
    witness = None
    if contact_ok != order_ok:
        witness = {"contact_side": {k: w for k, w in contact.items() if w},
                   "order_side": {k: w for k, w in order.items() if w}}
    rep.add("equivalence", contact_ok == order_ok, witness)
    for side, results in (("contact", contact), ("order", order)):
        for name, w in results.items():
            rep.notes.append(f"{side} {name}: {'pass' if w is None else 'fail ' + str(w)}")
    rep.notes.append(f"contact side {'passes' if contact_ok else 'fails'}, "
                     f"order side {'passes' if order_ok else 'fails'}")
    return rep
