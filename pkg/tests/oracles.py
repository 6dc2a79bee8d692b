"""Slow reference implementations that share no code with the package.

Everything here works on frozensets of names and follows the textbook
definitions literally, so it can be used to cross-check the bitmask code.
"""

from __future__ import annotations

import itertools
from typing import Iterable

Set = frozenset


def subsets(items: Iterable) -> list[frozenset]:
    items = list(items)
    return [Set(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)]


def element_relation(atoms, pairs) -> set[tuple[frozenset, frozenset]]:
    """Element-level relation generated by atom pairs: aCb iff some x in a, y in b are paired."""
    pairs = set(pairs)
    els = subsets(atoms)
    return {(a, b) for a in els for b in els if any((x, y) in pairs for x in a for y in b)}


def is_precontact(atoms, rel) -> bool:
    els = subsets(atoms)
    for a in els:
        for b in els:
            if (a, b) in rel and (not a or not b):
                return False
            for c in els:
                if ((a, b | c) in rel) != ((a, b) in rel or (a, c) in rel):
                    return False
                if ((a | b, c) in rel) != ((a, c) in rel or (b, c) in rel):
                    return False
    return True


def is_contact(atoms, rel) -> bool:
    els = subsets(atoms)
    return (is_precontact(atoms, rel)
            and all((a, a) in rel for a in els if a)
            and all((b, a) in rel for a, b in rel))


def grill_families(atoms) -> list[frozenset]:
    """Every family of elements that is nonempty, 0-free, up-closed and prime."""
    els = subsets(atoms)
    top = Set(atoms)
    nonzero = [e for e in els if e]
    out = []
    for k in range(1, len(nonzero) + 1):
        for fam in itertools.combinations(nonzero, k):
            fam = Set(fam)
            if any(b not in fam for a in fam for b in els if a <= b):
                continue
            if any((a | b) in fam and a not in fam and b not in fam for a in els for b in els):
                continue
            out.append(fam)
    assert all(top in f for f in out)
    return out


def clans(atoms, rel) -> list[frozenset]:
    """Grills whose members pairwise touch in the derived contact."""
    def sharp(a, b):
        return (a, b) in rel or (b, a) in rel or bool(a & b)
    return [f for f in grill_families(atoms) if all(sharp(a, b) for a in f for b in f)]


def generator_atoms(family) -> frozenset:
    """Atoms that lie in the family as singletons."""
    return Set(x for a in family if len(a) == 1 for x in a)


class Space:
    """A finite space given by its family of closed sets."""

    def __init__(self, points, closed_base):
        self.points = Set(points)
        closed = {Set(), self.points}
        closed.update(Set(b) for b in closed_base)
        changed = True
        while changed:
            changed = False
            for a, b in itertools.product(list(closed), repeat=2):
                for c in (a | b, a & b):
                    if c not in closed:
                        closed.add(c)
                        changed = True
        self.closed = closed
        self.open = {self.points - c for c in closed}

    def closure(self, s) -> frozenset:
        return Set.intersection(*[c for c in self.closed if Set(s) <= c])

    def interior(self, s) -> frozenset:
        return self.points - self.closure(self.points - Set(s))


def continuous(X: Space, Y: Space, f: dict) -> bool:
    return all(Set(x for x in X.points if f[x] in c) in X.closed for c in Y.closed)


def two_maps(X: Space, x0, Y: Space, y0) -> list[dict]:
    """All continuous maps X -> Y sending x0 into y0, by brute force over all functions."""
    xs = sorted(X.points)
    choices = [sorted(y0) if x in x0 else sorted(Y.points) for x in xs]
    out = []
    for images in itertools.product(*choices):
        f = dict(zip(xs, images))
        if continuous(X, Y, f):
            out.append(f)
    return out


def u_points(X: Space) -> frozenset:
    return Set(x for x in X.points
               if all(x in X.closure(U & V)
                      for U in X.open for V in X.open
                      if x in X.closure(U) and x in X.closure(V)))


def maps_extending(X: Space, Y: Space, forced: dict, *, embedding: bool = False) -> list[dict]:
    """Continuous maps X -> Y agreeing with ``forced``; optionally only embeddings."""
    free = sorted(x for x in X.points if x not in forced)
    ys = sorted(Y.points)
    out = []
    for images in itertools.product(ys, repeat=len(free)):
        f = dict(forced)
        f.update(zip(free, images))
        if not continuous(X, Y, f):
            continue
        if embedding:
            if len(set(f.values())) != len(f):
                continue
            image = Set(f.values())
            traces = {c & image for c in Y.closed}
            if {Set(f[x] for x in c) for c in X.closed} != traces:
                continue
        out.append(f)
    return out
