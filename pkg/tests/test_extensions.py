import itertools

import pytest

import oracles
from contactlab.boolean_core import Algebra
from contactlab.errors import InputError
from contactlab.extensions import (
    are_equivalent, build_extension, check_extension, check_gamma_map, extend_into,
    extension_order, extension_poset, gamma_embedding, gamma_extend_map, gamma_space, recovered_relation,
    relabelled, relation_label, verify_extension_poset,
)
from contactlab.finite_space import (
    SpaceMap, discrete, generate, is_continuous, is_extremally_connected, u_points,
)
from contactlab.precontact import enumerate_contact_relations, rho_l, rho_s


def _oracle_space(X):
    return oracles.Space(X.points, [X.names(K) for K in X.closed_sets])


def _oracle_order(E1, E2):
    """Brute-force both orders on named points."""
    X1, X2 = _oracle_space(E1.space), _oracle_space(E2.space)
    name1 = lambda y: E1.space.points[E1.embedding[y]]
    name2 = lambda y: E2.space.points[E2.embedding[y]]
    ys = range(E1.base.n)
    le = bool(oracles.maps_extending(X2, X1, {name2(y): name1(y) for y in ys}))
    le_in = bool(oracles.maps_extending(X1, X2, {name1(y): name2(y) for y in ys}, embedding=True))
    return le, le_in


@pytest.mark.parametrize("n", [2, 3])
def test_orders_match_brute_force(n):
    Y = discrete("abc"[:n])
    poset = extension_poset(Y)
    for i, j in itertools.product(range(len(poset.records)), repeat=2):
        le, le_in = _oracle_order(poset.records[i], poset.records[j])
        assert (poset.le[i][j], poset.le_in[i][j]) == (le, le_in)


def test_witnesses_are_embeddings_fixing_the_base():
    poset = extension_poset(discrete("abc"))
    assert len(poset.witnesses) == sum(map(sum, poset.le_in))
    for (i, j), w in poset.witnesses.items():
        E1, E2 = poset.records[i], poset.records[j]
        f = SpaceMap(E1.space, E2.space, w)
        assert is_continuous(f)
        assert all(w[E1.embedding[y]] == E2.embedding[y] for y in range(3))


def test_poset_report():
    for n in (1, 2, 3):
        rep = verify_extension_poset(extension_poset(discrete("abc"[:n])))
        assert rep.ok, rep.first_failure()


def test_hasse_diagram_of_three_points_is_a_cube():
    poset = extension_poset(discrete("abc"))
    edges = poset.hasse()
    assert len(edges) == 12
    for i, j in edges:
        a, b = poset.records[i].relation.core, poset.records[j].relation.core
        assert a.issubset(b) and len(b) - len(a) == 2


def test_single_extension_checks():
    Y = discrete("ab")
    rels = list(enumerate_contact_relations(Algebra(("a", "b"))))
    for C in rels:
        E = build_extension(Y, C)
        assert check_extension(E).ok
        assert recovered_relation(E).core == C.core
        assert are_equivalent(E, relabelled(E)) is not None
    assert [relation_label(C) for C in rels] == ["C{}", "C{a~b}"]


def test_extensions_need_discrete_base():
    with pytest.raises(InputError):
        extension_poset(generate("ab", [["a"]]))


def test_largest_extension_is_extremally_connected():
    Y = discrete("abc")
    gamma = build_extension(Y, rho_l(Algebra(tuple("abc"))))
    assert is_extremally_connected(gamma.space).passed
    assert gamma.space == gamma_space(Y).space


@pytest.mark.parametrize("m,n", [(1, 1), (1, 3), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_gamma_maps(m, n):
    X, Y = discrete("abc"[:m]), discrete("xyz"[:n])
    for f in itertools.product(range(n), repeat=m):
        g = gamma_extend_map(X, Y, f)
        assert check_gamma_map(g).ok
        assert all(g.extended[gamma_embedding(X)[x]] == gamma_embedding(Y)[f[x]] for x in range(m))


def test_gamma_map_is_unique_continuous_extension():
    # oracle: brute-force every continuous extension of f to the grill spaces
    X, Y = discrete("ab"), discrete("xy")
    GX, GY = gamma_space(X).space, gamma_space(Y).space
    for f in itertools.product(range(2), repeat=2):
        forced = {GX.points[gamma_embedding(X)[x]]: GY.points[gamma_embedding(Y)[f[x]]] for x in range(2)}
        found = oracles.maps_extending(_oracle_space(GX), _oracle_space(GY), forced)
        g = gamma_extend_map(X, Y, f)
        assert {GX.points[i]: GY.points[v] for i, v in enumerate(g.extended)} in found


def test_extend_into_u_points():
    Y = discrete("ab")
    E = build_extension(Y, rho_l(Algebra(("a", "b"))))
    Z = gamma_space(discrete("xy")).space
    assert u_points(Z) == 0b011  # the ultrafilter copy only
    F = extend_into(E, Z, (0, 1))
    assert F is not None and F[E.embedding[0]] == 0 and F[E.embedding[1]] == 1
    with pytest.raises(InputError):
        extend_into(E, Z, (2, 2))
