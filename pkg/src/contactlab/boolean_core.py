"""Finite Boolean algebras presented by their atoms.

An element is stored as an int bitmask over the atom list: bit ``i`` is set
when atom ``i`` lies below the element.  Joins, meets and complements are
therefore single bitwise operations, and equality is integer equality.

Homomorphisms are encoded dually.  A hom ``phi: A -> B`` carries a total
``point_map`` from the atoms of ``B`` to the atoms of ``A`` and acts by
preimage: ``phi(a) = {k : point_map[k] in a}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AlgebraMismatchError, DuplicateAtomError, InputError, WorkbenchError
from .report import Report


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def shortlex(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: smaller sets first, then lexicographic by index."""
    return popcount(mask), tuple(bits(mask))


@dataclass(frozen=True)
class Algebra:
    """The powerset algebra over an ordered tuple of atom names."""

    atoms: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        index: dict[str, int] = {}
        for i, name in enumerate(atoms):
            if not isinstance(name, str):
                raise InputError(f"atom identifier must be a string, got {name!r}")
            if name in index:
                raise DuplicateAtomError(name)
            index[name] = i
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def top(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown atom {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.index(name)
        return out

    def names(self, mask: int) -> list[str]:
        return [self.atoms[i] for i in bits(mask)]

    def label(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def element(self, value: int | Iterable[str]) -> "Element":
        if isinstance(value, int):
            if value < 0 or value > self.top:
                raise InputError(f"mask {value} outside algebra of {self.n} atoms")
            return Element(self, value)
        return Element(self, self.mask(value))

    def elements(self) -> list["Element"]:
        return [Element(self, m) for m in range(self.size)]

    @property
    def zero(self) -> "Element":
        return Element(self, 0)

    @property
    def one(self) -> "Element":
        return Element(self, self.top)


def make_algebra(atoms: Sequence[str]) -> Algebra:
    return Algebra(tuple(atoms))


@dataclass(frozen=True)
class Element:
    algebra: Algebra
    mask: int

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.algebra != self.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def __or__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, self.mask | other.mask)

    def __and__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, self.mask & other.mask)

    def __invert__(self) -> "Element":
        return Element(self.algebra, self.algebra.top & ~self.mask)

    def __le__(self, other: "Element") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    @property
    def atom_set(self) -> frozenset[str]:
        return frozenset(self.algebra.names(self.mask))

    def __str__(self) -> str:
        return self.algebra.label(self.mask)


def join(a: Element, b: Element) -> Element:
    return a | b


def meet(a: Element, b: Element) -> Element:
    return a & b


def complement(a: Element) -> Element:
    return ~a


def leq(a: Element, b: Element) -> bool:
    return a <= b


def join_all(algebra: Algebra, elements: Iterable[Element]) -> Element:
    """Arbitrary join; in a finite algebra this is the union of atom sets."""
    out = 0
    for e in elements:
        if e.algebra != algebra:
            raise AlgebraMismatchError("join over mixed algebras")
        out |= e.mask
    return Element(algebra, out)


POINT_KINDS = ("ultrafilter", "grill", "clan")


@dataclass(frozen=True)
class PointSet:
    """An abstract point, stored as the nonempty atom set it is generated by.

    It denotes the family ``{a : a meets atom_set}``.
    """

    algebra: Algebra
    mask: int
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in POINT_KINDS:
            raise InputError(f"unknown point kind {self.kind!r}")
        if self.mask == 0 or self.mask & ~self.algebra.top:
            raise InputError(f"point atom set {self.mask} is empty or out of range")
        if self.kind == "ultrafilter" and popcount(self.mask) != 1:
            raise InputError("an ultrafilter is generated by exactly one atom")

    def __contains__(self, element: Element | int) -> bool:
        m = element.mask if isinstance(element, Element) else element
        return bool(m & self.mask)

    def family(self) -> list[int]:
        return [a for a in range(self.algebra.size) if a & self.mask]

    @property
    def label(self) -> str:
        return self.algebra.label(self.mask)

    @property
    def names(self) -> list[str]:
        return self.algebra.names(self.mask)


def ultrafilters(algebra: Algebra) -> list[PointSet]:
    return [PointSet(algebra, 1 << i, "ultrafilter") for i in range(algebra.n)]


def stone_map(algebra: Algebra, a: Element) -> list[PointSet]:
    if a.algebra != algebra:
        raise AlgebraMismatchError("element is not in the given algebra")
    return [u for u in ultrafilters(algebra) if a.mask in u]


@dataclass(frozen=True)
class BoolHom:
    """A Boolean homomorphism ``source -> target`` given by its dual point map."""

    source: Algebra
    target: Algebra
    point_map: tuple[int, ...]

    def __post_init__(self) -> None:
        pm = tuple(self.point_map)
        if len(pm) != self.target.n:
            raise InputError(
                f"point map must be total on the {self.target.n} target atoms, got {len(pm)} entries")
        for k, v in enumerate(pm):
            if not isinstance(v, int) or not 0 <= v < self.source.n:
                raise InputError(f"point map sends target atom {k} to invalid source atom {v!r}")
        object.__setattr__(self, "point_map", pm)

    @classmethod
    def from_mapping(cls, source: Algebra, target: Algebra, mapping: Mapping[str, str]) -> "BoolHom":
        missing = [t for t in target.atoms if t not in mapping]
        if missing:
            raise InputError(f"point map is partial: no image for {missing}")
        extra = [k for k in mapping if k not in target.atoms]
        if extra:
            raise InputError(f"point map mentions unknown target atoms {extra}")
        return cls(source, target, tuple(source.index(mapping[t]) for t in target.atoms))

    def __call__(self, mask: int) -> int:
        out = 0
        for k, i in enumerate(self.point_map):
            if mask >> i & 1:
                out |= 1 << k
        return out

    def table(self) -> list[int]:
        return [self(a) for a in range(self.source.size)]


def hom_apply(phi: BoolHom, a: Element) -> Element:
    if a.algebra != phi.source:
        raise AlgebraMismatchError("element is not in the source algebra of the hom")
    return Element(phi.target, phi(a.mask))


def check_hom_table(source: Algebra, target: Algebra, table: Sequence[int], title: str = "hom") -> Report:
    """Verify that an element table ``source -> target`` preserves 0, 1, +, . and *."""
    rep = Report(title)
    rep.add("zero", table[0] == 0, None if table[0] == 0 else {"image": target.label(table[0])})
    rep.add("one", table[source.top] == target.top,
            None if table[source.top] == target.top else {"image": target.label(table[source.top])})
    for name, op_s, op_t in (("join", lambda x, y: x | y, lambda x, y: x | y),
                             ("meet", lambda x, y: x & y, lambda x, y: x & y)):
        witness = None
        for a in range(source.size):
            for b in range(source.size):
                if table[op_s(a, b)] != op_t(table[a], table[b]):
                    witness = {"a": source.label(a), "b": source.label(b)}
                    break
            if witness:
                break
        rep.add(name, witness is None, witness)
    witness = None
    for a in range(source.size):
        if table[source.top & ~a] != target.top & ~table[a]:
            witness = {"a": source.label(a)}
            break
    rep.add("complement", witness is None, witness)
    return rep


def hom_check(phi: BoolHom) -> Report:
    return check_hom_table(phi.source, phi.target, phi.table(), "hom-check")


def identity(algebra: Algebra) -> BoolHom:
    return BoolHom(algebra, algebra, tuple(range(algebra.n)))


def compose(second: BoolHom, first: BoolHom) -> BoolHom:
    """``second o first``: apply ``first`` then ``second``."""
    if first.target != second.source:
        raise AlgebraMismatchError("homs are not composable")
    pm = tuple(first.point_map[j] for j in second.point_map)
    return BoolHom(first.source, second.target, pm)


def all_homs(source: Algebra, target: Algebra) -> list[BoolHom]:
    """Every hom ``source -> target``, in lexicographic point-map order."""
    if source.n == 0 and target.n > 0:
        return []
    return [BoolHom(source, target, pm)
            for pm in itertools.product(range(source.n), repeat=target.n)]


def is_isomorphism(phi: BoolHom) -> bool:
    return phi.source.n == phi.target.n and sorted(phi.point_map) == list(range(phi.source.n))


def inverse(phi: BoolHom) -> BoolHom:
    if not is_isomorphism(phi):
        raise WorkbenchError("hom is not invertible")
    pm = [0] * phi.source.n
    for k, i in enumerate(phi.point_map):
        pm[i] = k
    return BoolHom(phi.target, phi.source, tuple(pm))
