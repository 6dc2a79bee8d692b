"""Backtracking search for continuous maps between finite spaces.

Continuity of a map between finite spaces is monotonicity of the
specialization preorder, so every partial assignment can be pruned as soon
as two assigned points violate it.  The search is exhaustive: a ``None``
result is a proof that no map with the requested properties exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import CapExceededError
from .finite_space import FiniteSpace

PairCheck = Callable[[int, int, int, int], bool]


@dataclass
class SearchResult:
    maps: list[tuple[int, ...]] = field(default_factory=list)
    nodes: int = 0
    exhausted: bool = False

    @property
    def found(self) -> tuple[int, ...] | None:
        return self.maps[0] if self.maps else None


def _profile(X: FiniteSpace, i: int) -> tuple[int, int]:
    return bin(X.point_closures[i]).count("1"), bin(X.up(i)).count("1")


def search_maps(
    source: FiniteSpace,
    target: FiniteSpace,
    *,
    forced: Mapping[int, int] | None = None,
    allowed: Mapping[int, int] | None = None,
    injective: bool = False,
    embedding: bool = False,
    bijective: bool = False,
    pair_ok: PairCheck | None = None,
    limit: int | None = 1,
    cap: int | None = None,
) -> SearchResult:
    """Find continuous maps ``source -> target`` with optional constraints.

    ``forced`` fixes images of some points; ``allowed`` restricts the image
    of a point to a bitmask of target points; ``embedding`` demands that the
    specialization order be reflected as well as preserved; ``bijective``
    turns on degree-profile pruning.  ``pair_ok(x, fx, y, fy)`` is an extra
    compatibility test applied to every pair of assigned points.
    """
    if cap is not None and max(source.n, target.n) > cap:
        raise CapExceededError("map search", max(source.n, target.n), cap)
    forced = dict(forced or {})
    allowed = dict(allowed or {})
    if bijective:
        injective = True
        if source.n != target.n:
            return SearchResult(exhausted=True)
    if embedding:
        injective = True
    n = source.n
    full_t = target.full
    cand = []
    for x in range(n):
        mask = allowed.get(x, full_t)
        if x in forced:
            mask &= 1 << forced[x]
        if bijective:
            px = _profile(source, x)
            mask &= sum(1 << y for y in range(target.n) if _profile(target, y) == px)
        cand.append(mask)
    # forced points first, then points with fewest candidates
    order = sorted(range(n), key=lambda x: (x not in forced, bin(cand[x]).count("1"), x))
    scl = source.point_closures
    tcl = target.point_closures
    result = SearchResult()
    assign = [-1] * n
    used = 0

    def consistent(x: int, fx: int) -> bool:
        for y in order:
            fy = assign[y]
            if fy < 0:
                continue
            # continuity both ways round the pair
            if scl[x] >> y & 1 and not tcl[fx] >> fy & 1:
                return False
            if scl[y] >> x & 1 and not tcl[fy] >> fx & 1:
                return False
            if embedding:
                if tcl[fx] >> fy & 1 and not scl[x] >> y & 1:
                    return False
                if tcl[fy] >> fx & 1 and not scl[y] >> x & 1:
                    return False
            if pair_ok is not None and not (pair_ok(x, fx, y, fy) and pair_ok(y, fy, x, fx)):
                return False
        if scl[x] >> x & 1 and not tcl[fx] >> fx & 1:
            return False
        if pair_ok is not None and not pair_ok(x, fx, x, fx):
            return False
        return True

    def rec(k: int) -> bool:
        nonlocal used
        result.nodes += 1
        if k == n:
            result.maps.append(tuple(assign))
            return limit is not None and len(result.maps) >= limit
        x = order[k]
        options = cand[x]
        if injective:
            options &= ~used
        while options:
            low = options & -options
            options ^= low
            fx = low.bit_length() - 1
            if not consistent(x, fx):
                continue
            assign[x] = fx
            used |= low
            stop = rec(k + 1)
            assign[x] = -1
            used &= ~low
            if stop:
                return True
        return False

    stopped = rec(0)
    result.exhausted = not stopped
    return result


def find_homeomorphism(X: FiniteSpace, Y: FiniteSpace, *, forced=None, allowed=None,
                       pair_ok: PairCheck | None = None, cap: int | None = 10) -> SearchResult:
    return search_maps(X, Y, forced=forced, allowed=allowed, bijective=True, embedding=True,
                       pair_ok=pair_ok, cap=cap)
