import random

import pytest
from hypothesis import given

import oracles
from contactlab.boolean_core import Algebra, Element, PointSet
from contactlab.errors import InputError
from contactlab.points import (
    canonical_adjacency, clans, clans_by_exhaustion, cliques, contact_characterizations,
    grill_lemma_witness, grills, is_clan, is_grill, is_ultrafilter, normalize_family,
)
from contactlab.precontact import (
    AtomRelation, PrecontactRel, enumerate_precontact_relations, rflat, rho_l, rho_s, sharp,
)
from strategies import algebra_of_size, precontact


def _oracle_clans(A, C):
    rel = oracles.element_relation(A.atoms, C.core.named_pairs())
    return sorted(A.mask(oracles.generator_atoms(f)) for f in oracles.clans(A.atoms, rel))


def test_clans_match_literal_oracle_on_three_atoms():
    A = algebra_of_size(3)
    for C in list(enumerate_precontact_relations(A))[::5]:
        assert sorted(p.mask for p in clans(A, C)) == _oracle_clans(A, C)


def test_grill_counts():
    for n in range(1, 5):
        A = algebra_of_size(n)
        assert len(grills(A)) == 2 ** n - 1
    assert len(oracles.grill_families("pqr")) == 7


def test_named_clan_counts():
    A = algebra_of_size(3)
    C = PrecontactRel(AtomRelation.from_pairs(A, [("p", "q"), ("q", "r")]))
    assert [c.label for c in clans(A, C)] == ["{p}", "{q}", "{r}", "{p,q}", "{q,r}"]
    assert len(_oracle_clans(A, C)) == 5
    for n in range(1, 5):
        B = algebra_of_size(n)
        assert len(clans(B, rho_s(B))) == n
        assert len(clans(B, rho_l(B))) == 2 ** n - 1


def test_cliques_branch_and_bound():
    A = algebra_of_size(4)
    R = AtomRelation.from_pairs(A, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
    assert cliques(R) == [1, 2, 4, 8, 3, 5, 6, 7]


@given(precontact(max_atoms=3))
def test_clique_clans_equal_exhaustive_clans(AC):
    A, C = AC
    assert clans(A, C) == clans_by_exhaustion(A, C)


def test_random_four_atom_clans_match_exhaustion():
    rng = random.Random(11)
    A = algebra_of_size(4)
    for _ in range(10):
        C = PrecontactRel(AtomRelation(A, tuple(rng.randrange(16) for _ in range(4))))
        assert clans(A, C) == clans_by_exhaustion(A, C)


def test_family_verdicts():
    A = algebra_of_size(2)
    assert is_ultrafilter(A, [1, 3])
    assert not is_ultrafilter(A, [1, 2, 3])
    assert is_grill(A, [1, 2, 3])
    v = is_grill(A, [1])
    assert not v and v.axiom == "Clan2"
    C = rho_s(A)
    bad = is_clan(A, [1, 2, 3], C)
    assert not bad and bad.axiom == "Clan4"
    assert is_clan(A, [1, 2, 3], rho_l(A))


def test_normalize_family():
    A = algebra_of_size(3)
    p = normalize_family(A, [Element(A, m) for m in range(1, 8) if m & 0b011])
    assert p == PointSet(A, 0b011, "grill")
    with pytest.raises(InputError):
        normalize_family(A, [1])


def test_grill_lemma():
    A = algebra_of_size(3)
    G = PointSet(A, 0b110, "grill")
    u = grill_lemma_witness(A.element(["q", "r"]), G)
    assert u.mask == 0b010
    with pytest.raises(InputError):
        grill_lemma_witness(A.element(["p"]), G)


@given(precontact(max_atoms=3))
def test_contact_characterizations(AC):
    A, C = AC
    assert contact_characterizations(A, C).ok


def test_canonical_adjacency_recovers_core():
    A = algebra_of_size(3)
    for C in list(enumerate_precontact_relations(A))[::9]:
        adj = canonical_adjacency(A, C)
        assert adj.relation == C.core
        u, v = adj.points[0], adj.points[1]
        assert adj.related(u, v) == ((0, 1) in C.core)


@given(precontact(max_atoms=4))
def test_ultrafilters_are_clans(AC):
    A, C = AC
    masks = {c.mask for c in clans(A, C)}
    assert all(1 << i in masks for i in range(A.n))


@given(precontact(max_atoms=4))
def test_clans_only_see_the_sharp_relation(AC):
    A, C = AC
    assert clans(A, C) == clans(A, sharp(C))


@given(precontact(max_atoms=4))
def test_clans_are_unions_of_pairwise_related_ultrafilters(AC):
    A, C = AC
    flat = rflat(canonical_adjacency(A, C).relation)
    expected = [m for m in range(1, A.size)
                if all((i, j) in flat for i in range(A.n) for j in range(A.n) if m >> i & m >> j & 1)]
    assert sorted(c.mask for c in clans(A, C)) == sorted(expected)
