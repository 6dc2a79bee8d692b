import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from contactlab.errors import InputError
from contactlab.precontact import AXIOM_SETS, check_axioms
from contactlab.finite_space import (
    SpaceMap, TopPair, compose_maps, de_vries_identity, discrete, generate, identity_map, indiscrete,
    is_compact, is_connected, is_continuous, is_embedding, is_extremally_connected,
    is_extremally_disconnected, is_hausdorff, is_open_map, is_homeomorphism, is_regular_closed, is_semiregular, is_T0,
    regular_closed, restriction_extension_report, u_points, u_points_via_sigma,
)

POINTS = "abcde"


@st.composite
def spaces(draw, max_points: int = 5):
    n = draw(st.integers(min_value=1, max_value=max_points))
    full = (1 << n) - 1
    base = draw(st.lists(st.integers(min_value=0, max_value=full), max_size=6))
    return generate(POINTS[:n], base), base


def _oracle(X, base):
    return oracles.Space(X.points, [X.names(b) for b in base])


def _sets(X, masks):
    return {frozenset(X.names(m)) for m in masks}


@given(spaces())
def test_closed_and_open_sets_match_oracle(Xb):
    X, base = Xb
    O = _oracle(X, base)
    assert _sets(X, X.closed_sets) == O.closed
    assert _sets(X, X.open_sets) == O.open


@given(spaces(), st.data())
def test_kuratowski_axioms(Xb, data):
    X, _ = Xb
    S = data.draw(st.integers(0, X.full))
    T = data.draw(st.integers(0, X.full))
    assert X.closure(0) == 0
    assert S & ~X.closure(S) == 0
    assert X.closure(X.closure(S)) == X.closure(S)
    assert X.closure(S | T) == X.closure(S) | X.closure(T)
    assert X.interior(S) & ~S == 0
    assert frozenset(X.names(X.closure(S))) == _oracle(X, Xb[1]).closure(X.names(S))


@given(spaces())
def test_regular_closed_sets_form_a_boolean_algebra(Xb):
    X, _ = Xb
    B = regular_closed(X)
    assert all(is_regular_closed(X, F) for F in B.members)
    assert B.boolean_check().ok
    assert len(B.members) == 2 ** len(B.atoms)


@settings(max_examples=60)
@given(spaces(max_points=4))
def test_u_points_three_ways(Xb):
    X, base = Xb
    O = _oracle(X, base)
    expected = X.mask(oracles.u_points(O))
    assert u_points(X) == expected
    assert u_points_via_sigma(X) == expected


@given(spaces())
def test_de_vries_identity(Xb):
    assert de_vries_identity(Xb[0]).passed


@given(spaces(max_points=4), st.data())
def test_continuity_matches_oracle(Xb, data):
    X, base = Xb
    Y, ybase = data.draw(spaces(max_points=3))
    f = tuple(data.draw(st.integers(0, Y.n - 1)) for _ in range(X.n))
    named = {X.points[i]: Y.points[v] for i, v in enumerate(f)}
    assert is_continuous(SpaceMap(X, Y, f)) == oracles.continuous(_oracle(X, base), _oracle(Y, ybase), named)


def test_sierpinski_space():
    S = generate(["open", "closed"], [["closed"]])
    assert S.closed_sets == (0, 0b10, 0b11)
    assert is_T0(S) and is_connected(S)
    assert not is_hausdorff(S).passed and is_compact(S).passed
    assert u_points(S) == 0b11


def test_components_and_connectedness():
    X = generate("abc", [["a"], ["b", "c"]])
    assert not is_connected(X)
    assert sorted(X.components) == [0b001, 0b110]
    assert is_connected(indiscrete("ab")) and not is_T0(indiscrete("ab"))


def test_homeomorphism_and_embedding():
    S = generate(["x", "y"], [["y"]])
    D = discrete(["x", "y"])
    swap = SpaceMap(D, D, (1, 0))
    assert is_homeomorphism(swap)
    assert is_continuous(SpaceMap(D, S, (0, 1))) and not is_homeomorphism(SpaceMap(D, S, (0, 1)))
    assert not is_embedding(SpaceMap(D, S, (0, 1)))
    P = generate("abc", [["c"], ["a", "c"], ["b", "c"]])
    assert is_embedding(SpaceMap(discrete(["u"]), P, (0,)))
    assert compose_maps(swap, swap) == identity_map(D)


def test_extremal_properties_of_grill_space():
    # closed base of the three-point space of grills on two atoms
    X = generate(["p", "q", "pq"], [["p", "pq"], ["q", "pq"]])
    assert is_semiregular(X)
    assert is_extremally_connected(X).passed
    assert not is_extremally_disconnected(X)
    assert is_extremally_disconnected(discrete("ab"))


def test_restriction_extension_isomorphism():
    X = generate(["p", "q", "pq"], [["p", "pq"], ["q", "pq"]])
    P = TopPair(X, 0b011)
    assert restriction_extension_report(P).ok
    assert P.clopens == (0, 0b001, 0b010, 0b011)


def test_malformed_inputs():
    with pytest.raises(InputError):
        generate(["a", "a"], [])
    with pytest.raises(InputError):
        generate(["a"], [["b"]])
    with pytest.raises(InputError):
        TopPair(discrete(["a"]), 0b10)
    with pytest.raises(InputError):
        SpaceMap(discrete(["a"]), discrete(["b"]), (1,))


@settings(max_examples=150)
@given(spaces(max_points=5))
def test_extremally_disconnected_iff_all_points_are_u_points(Xb):
    X, _ = Xb
    assert is_extremally_disconnected(X) == (u_points(X) == X.full)


@settings(max_examples=80, deadline=None)
@given(spaces(max_points=4), spaces(max_points=4))
def test_open_maps_preserve_u_points(Xb, Yb):
    X, Y = Xb[0], Yb[0]
    up_x, up_y = u_points(X), u_points(Y)
    for f in itertools.product(range(Y.n), repeat=X.n):
        m = SpaceMap(X, Y, f)
        if is_open_map(m):
            assert m.image(up_x) & ~up_y == 0


@settings(max_examples=80)
@given(spaces(max_points=5), st.data())
def test_u_points_of_dense_subspace(Xb, data):
    X, _ = Xb
    S = data.draw(st.integers(1, X.full))
    if X.closure(S) != X.full:
        return
    P = TopPair(X, S)
    up_sub = P.lift(u_points(P.sub))
    assert u_points(X) & S == up_sub


@given(spaces())
def test_overlap_contact_on_regular_closed_sets(Xb):
    X, _ = Xb
    B = regular_closed(X)
    assert check_axioms(B.overlap_contact(), AXIOM_SETS["contact"]).ok
