import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from contactlab.boolean_core import Algebra
from contactlab.errors import AxiomViolation, CapExceededError
from contactlab.precontact import (
    AXIOM_SETS, AtomRelation, PrecontactRel, RelationTable, adjacency_contact, check_axioms,
    enumerate_contact_relations, enumerate_precontact_relations, from_table, grid_cells,
    has_directed_path_between_all, holds, ll_axiom_equivalence, precontact_from_pairs, rflat, rho_l,
    rho_s, sharp, way_below,
)
from strategies import algebra_of_size, contact, precontact


def _named(A, C):
    return oracles.element_relation(A.atoms, C.core.named_pairs())


def _to_oracle(A, T):
    return {(frozenset(A.names(a)), frozenset(A.names(b))) for a, b in T.pairs()}


def test_two_atom_tables_are_exactly_the_atom_generated_ones():
    # Oracle: all 2^16 element relations on B2, filtered by the literal axioms.
    A = algebra_of_size(2)
    els = range(A.size)
    pairs = [(a, b) for a in els for b in els if a and b]
    found = set()
    for code in range(1 << len(pairs)):
        T = RelationTable.from_pairs(A, [p for k, p in enumerate(pairs) if code >> k & 1])
        if check_axioms(T, AXIOM_SETS["precontact"]).ok:
            found.add(T.rows)
    assert len(found) == 16
    assert found == {C.table().rows for C in enumerate_precontact_relations(A)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_axiom_verdicts_agree_with_literal_oracle(n):
    A = algebra_of_size(n)
    for C in itertools.islice(enumerate_precontact_relations(A), 0, None, 7 if n == 3 else 1):
        rel = _named(A, C)
        rep = check_axioms(C, AXIOM_SETS["contact"])
        assert rep.ok == oracles.is_contact(A.atoms, rel)
        assert _to_oracle(A, C.table()) == rel


def test_broken_table_gives_first_witness():
    A = algebra_of_size(2)
    T = RelationTable.from_pairs(A, [(0, 1)])
    rep = check_axioms(T, ("C0",))
    assert rep.first_failure()[1].witness == {"a": "{}", "b": "{p}"}
    with pytest.raises(AxiomViolation):
        from_table(T)


def test_cplus_failure_detected():
    A = algebra_of_size(2)
    T = RelationTable.from_pairs(A, [(1, 3)])
    assert not check_axioms(T, ("C+",)).ok


@given(precontact())
def test_table_round_trip(AC):
    A, C = AC
    assert from_table(C.table()) == C


@given(precontact(max_atoms=3))
def test_sharp_is_reflexive_symmetric_closure(AC):
    A, C = AC
    S = sharp(C)
    T = C.table()
    for a in range(A.size):
        for b in range(A.size):
            expected = T(a, b) or T(b, a) or bool(a & b)
            assert S.holds_mask(a, b) == expected
    assert check_axioms(S, AXIOM_SETS["contact"]).ok


@given(precontact(max_atoms=3))
def test_way_below_is_complement_of_contact(AC):
    A, C = AC
    for a in A.elements():
        for b in A.elements():
            assert way_below(C, a, b) == (not holds(C, a, ~b))


@settings(max_examples=60)
@given(precontact(max_atoms=3))
def test_ll_equivalence_on_precontact_relations(AC):
    A, C = AC
    assert ll_axiom_equivalence(C).ok


def test_ll_equivalence_on_non_precontact_tables():
    A = algebra_of_size(2)
    for rows in [(1, 0, 0, 0), (0, 0b1000, 0, 0), (0, 0b0010, 0b0100, 0)]:
        T = RelationTable(A, rows)
        assert ll_axiom_equivalence(T).ok


def test_special_relations():
    A = algebra_of_size(3)
    assert rho_s(A).core.pairs == [(0, 0), (1, 1), (2, 2)]
    assert len(rho_l(A).core) == 9
    assert check_axioms(rho_l(A), ("Ccon", "Ctr")).ok
    # the smallest relation is transitive but disconnected once there are two atoms
    rep = check_axioms(rho_s(A), ("Ctr", "Ccon"))
    assert rep.checks[0].passed and not rep.checks[1].passed


def test_transitivity_axiom_on_a_chain():
    A = algebra_of_size(3)
    chain = precontact_from_pairs(A, [("p", "p"), ("q", "q"), ("r", "r"), ("p", "q"), ("q", "p"),
                                      ("q", "r"), ("r", "q")])
    assert chain.core.is_symmetric() and not chain.core.is_transitive()
    assert not check_axioms(chain, ("Ctr",)).ok


def test_connectedness_reading():
    # two arrows into a common atom: connected, though no directed path joins p and q
    A = algebra_of_size(3)
    R = AtomRelation.from_pairs(A, [("p", "r"), ("q", "r")])
    assert R.is_connected()
    assert not has_directed_path_between_all(R)
    assert check_axioms(PrecontactRel(R), ("Ccon",)).ok


def test_contact_counts_match_filtered_relations():
    for n, expected in [(2, 2), (3, 8), (4, 64)]:
        A = algebra_of_size(n)
        brute = sum(1 for rows in itertools.product(range(A.size), repeat=n)
                    if AtomRelation(A, rows).is_reflexive() and AtomRelation(A, rows).is_symmetric())
        listed = list(enumerate_contact_relations(A))
        assert brute == len(listed) == expected
        assert len({C.core for C in listed}) == expected


def test_enumeration_caps(monkeypatch):
    with pytest.raises(CapExceededError):
        list(enumerate_precontact_relations(algebra_of_size(5)))
    monkeypatch.setenv("WORKBENCH_CAP", "1")
    with pytest.raises(CapExceededError):
        list(enumerate_contact_relations(algebra_of_size(2)))


def test_grid_adjacency():
    cells, R = grid_cells(2, 2)
    C = adjacency_contact(cells, R)
    assert check_axioms(C, AXIOM_SETS["contact"]).ok
    assert ("r0c0", "r1c1") not in C.core.named_pairs()
    cells, R = grid_cells(2, 2, "moore")
    assert ("r0c0", "r1c1") in adjacency_contact(cells, R).core.named_pairs()


@given(contact(max_atoms=4))
def test_rflat_is_idempotent_on_contact(AC):
    A, C = AC
    assert rflat(C.core) == C.core


def test_table_round_trip_exhaustive_three_atoms():
    A = algebra_of_size(3)
    for C in enumerate_precontact_relations(A):
        T = C.table()
        assert from_table(T).table() == T


@given(precontact(max_atoms=4))
def test_sharp_is_idempotent(AC):
    A, C = AC
    assert sharp(sharp(C)) == sharp(C)


@given(contact(max_atoms=4))
def test_contact_relations_lie_between_extremes(AC):
    A, C = AC
    assert rho_s(A).core.issubset(C.core) and C.core.issubset(rho_l(A).core)


def test_adjacency_relations_exhaustive_three_cells():
    cells = ["a", "b", "c"]
    A = Algebra(tuple(cells))
    for code in range(1 << 9):
        R = [(cells[k // 3], cells[k % 3]) for k in range(9) if code >> k & 1]
        C = adjacency_contact(cells, R)
        rel = AtomRelation.from_pairs(A, R)
        is_contact = check_axioms(C, AXIOM_SETS["contact"]).ok
        assert is_contact == (rel.is_reflexive() and rel.is_symmetric())
        if is_contact:
            assert sharp(C) == C == PrecontactRel(rflat(rel))
        assert check_axioms(C, ("Ctr",)).ok == rel.is_transitive()
        assert check_axioms(C, ("Ccon",)).ok == rel.is_connected()
