from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncstone.core import (Congruence, adjoin_zero, brute_force_congruences, characters, character_generator,
                          congruences, congruences_by_idempotent_classes, from_function, generate_congruence,
                          idempotents, is_congruence, min_group_congruence, natural_order, quotient,
                          restrict_to, verify_inverse_semigroup)
from ncstone.errors import InverseNotUnique, NoInverse, NotAssociative, TooLarge, ValidationError
from ncstone.families import (brandt, chain, partial_bijection_semigroup, partial_bijections,
                              semigroup_corpus, symmetric_inverse_monoid, trivial_semigroup)
from ncstone.groups import cyclic_group, direct_product, symmetric_group

pb3 = partial_bijections(3)
gens_strategy = st.lists(st.sampled_from(pb3[1:]), min_size=1, max_size=2)


def _semigroup_from(gens):
    return partial_bijection_semigroup(gens)


# --- validation ---------------------------------------------------------------


def test_rejects_non_associative():
    # x*y = 1 - x on {0, 1} is not associative
    with pytest.raises(NotAssociative):
        verify_inverse_semigroup([[1, 1], [0, 0]])


def test_rejects_missing_inverse():
    # null semigroup: a*a = 0, so a has no inverse
    with pytest.raises(NoInverse):
        verify_inverse_semigroup([[0, 0], [0, 0]], names=["0", "a"])


def test_rejects_left_zero_band():
    # xy = x: every element is an inverse of every other
    with pytest.raises(InverseNotUnique):
        verify_inverse_semigroup([[0, 0], [1, 1]])


def test_rejects_bad_shape_and_names():
    with pytest.raises(ValidationError):
        verify_inverse_semigroup([[0, 0], [0]])
    with pytest.raises(ValidationError):
        verify_inverse_semigroup([[0, 5], [0, 0]])
    with pytest.raises(ValidationError):
        verify_inverse_semigroup([[0]], names=["a", "b"])
    with pytest.raises(ValidationError):
        verify_inverse_semigroup([])


def test_inverse_hint_checked(b2):
    with pytest.raises(NoInverse):
        verify_inverse_semigroup(b2.table, inv_hint=list(range(len(b2))))


def test_zero_detection():
    assert brandt(2).zero == brandt(2).index("0")
    assert cyclic_group(3).zero is None
    assert trivial_semigroup().zero is None       # one element: the trivial group
    assert chain(3).zero == chain(3).index("c0")


def test_adjoin_zero():
    G = cyclic_group(2)
    G0, added = adjoin_zero(G)
    assert added and len(G0) == 3 and G0.zero == 2
    same, added2 = adjoin_zero(G0)
    assert same is G0 and not added2


def test_symmetric_inverse_monoid_sizes():
    # sum_k C(n,k)^2 k!
    assert [len(symmetric_inverse_monoid(n)) for n in (1, 2, 3)] == [2, 7, 34]


# --- axioms over generated semigroups ----------------------------------------------


@settings(max_examples=40, deadline=None)
@given(gens_strategy)
def test_inverse_semigroup_axioms(gens):
    S = _semigroup_from(gens)
    n = len(S)
    T, inv = S.table, S.inv
    for s in range(n):
        assert T[T[s][inv[s]]][s] == s
        assert T[T[inv[s]][s]][inv[s]] == inv[s]
        assert inv[inv[s]] == s
    E = S.idempotent_indices
    for e, f in itertools.product(E, repeat=2):
        assert T[e][f] == T[f][e]


@settings(max_examples=40, deadline=None)
@given(gens_strategy)
def test_natural_order_is_partial_order(gens):
    S = _semigroup_from(gens)
    R = natural_order(S)
    n = len(S)
    assert R[np.arange(n), np.arange(n)].all()
    assert not (R & R.T & ~np.eye(n, dtype=bool)).any()
    # transitive: R^2 implies R
    R2 = (R.astype(int) @ R.astype(int)) > 0
    assert not (R2 & ~R).any()
    # compatible with multiplication
    for s, t in zip(*np.nonzero(R)):
        for u in range(n):
            assert R[S.table[s][u], S.table[t][u]]


@settings(max_examples=40, deadline=None)
@given(gens_strategy)
def test_characters_are_principal_filters(gens):
    S = _semigroup_from(gens)
    E = idempotents(S)
    chis = characters(E)
    expected = len(E) - (1 if S.zero is not None else 0)
    assert len(chis) == expected
    for chi in chis:
        q = character_generator(E, chi)
        assert chi.ones == frozenset(e for e in E if E.leq(q, e))


def test_character_zero_policy():
    E = idempotents(brandt(2))
    assert len(characters(E, "allow-trivial")) == len(characters(E)) + 1
    with pytest.raises(ValueError):
        characters(E, "bogus")


# --- congruences ------------------------------------------------------------------


@pytest.mark.parametrize("S", semigroup_corpus(6, random_count=8), ids=lambda S: S.name)
def test_congruences_match_partition_brute_force(S):
    got = [c.labels for c in congruences(S)]
    want = [c.labels for c in brute_force_congruences(S)]
    assert got == want


@pytest.mark.parametrize("S", semigroup_corpus(8), ids=lambda S: S.name)
def test_idempotent_class_restriction_matches_full_lattice(S):
    E = S.idempotent_indices
    for k in (1, 2, 3):
        want = [c.labels for c in congruences(S) if len({c.labels[e] for e in E}) <= k]
        got = [c.labels for c in congruences_by_idempotent_classes(S, k)]
        assert got == want


@settings(max_examples=30, deadline=None)
@given(gens_strategy, st.data())
def test_generated_congruence_is_least(gens, data):
    S = _semigroup_from(gens)
    n = len(S)
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    c = generate_congruence(S, [(a, b)])
    assert is_congruence(S, c.labels)
    assert c.related(a, b)
    if n <= 8:
        for other in brute_force_congruences(S):
            if other.related(a, b):
                assert c.refines(other)


def test_congruence_cap():
    with pytest.raises(TooLarge):
        congruences(symmetric_inverse_monoid(3))


def test_congruence_helpers():
    c = Congruence.from_labels([5, 5, 2, 5])
    assert c.labels == (0, 0, 1, 0)
    assert c.num_classes == 2
    assert c.classes == ((0, 1, 3), (2,))
    assert Congruence((0, 1, 2, 3)).refines(c)
    assert not c.refines(Congruence((0, 1, 2, 3)))


def test_quotient_by_rees_congruence(b2):
    # collapse everything: the one-element quotient
    c = generate_congruence(b2, [(0, 1)])
    assert c.num_classes == 1
    assert len(quotient(b2, c)) == 1


# --- minimum group congruence ------------------------------------------------------


def test_min_group_congruence_of_group_is_identity():
    G = symmetric_group(3)
    cong, Q = min_group_congruence(G)
    assert cong.num_classes == 6 and Q.is_group()


def test_min_group_congruence_with_zero_is_trivial(b2):
    cong, Q = min_group_congruence(b2)
    assert len(Q) == 1


def test_min_group_congruence_of_clifford_semigroup():
    S = direct_product(cyclic_group(3), chain(2), name="C3xchain2")
    cong, Q = min_group_congruence(S)
    assert len(Q) == 3 and Q.is_group()


@pytest.mark.parametrize("S", semigroup_corpus(8), ids=lambda S: S.name)
def test_min_group_congruence_is_least_group_congruence(S):
    cong, Q = min_group_congruence(S)
    # oracle: among all congruences with a group quotient, the finest one
    group_congs = [c for c in congruences(S) if quotient(S, c).is_group()]
    assert all(cong.refines(c) for c in group_congs)
    assert cong.labels in {c.labels for c in group_congs}


# --- constructors ------------------------------------------------------------------


def test_from_function_and_restrict():
    S = from_function([0, 1, 2], lambda a, b: (a + b) % 3, name="Z3")
    assert S.is_group() and S.identity == 0
    I2 = symmetric_inverse_monoid(2)
    T, emb = restrict_to(I2, [I2.index("0"), I2.index("(1>1)")])
    assert len(T) == 2 and T.zero is not None
    with pytest.raises(ValidationError):
        restrict_to(brandt(2), [brandt(2).index("e12")])


def test_prod_and_leq(i2):
    S = i2
    for s in range(len(S)):
        assert S.leq(S.support(s), S.support(s))
        assert S.prod(s, S.inv[s], s) == s
        assert S.leq(S.zero, s)
