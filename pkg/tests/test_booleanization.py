from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncstone.bis import bis_isomorphic, verify_bis
from ncstone.booleanization import (FormalSum, SumContext, booleanize, extend_hom, formal_sums, germ_groupoid,
                                    sums_equivalent)
from ncstone.core import adjoin_zero
from ncstone.errors import NotAHomomorphism, TooLarge
from ncstone.families import (brandt, chain, partial_bijection_semigroup, partial_bijections, semigroup_corpus,
                              semilattice, symmetric_inverse_monoid, trivial_semigroup)
from ncstone.groupoid import bisections, dual_groupoid, group_groupoid, groupoid_isomorphism, pair_groupoid
from ncstone.groups import cyclic_group, symmetric_group
from ncstone.morphisms import is_homomorphism, search_morphisms

CORPUS = semigroup_corpus(8)


def _small_sum_corpus():
    out = []
    for S in CORPUS:
        ctx = SumContext(S)
        if len(ctx.R) <= 8:
            out.append(S)
    return out


# --- sizes (frozen from the germ-groupoid oracle) -------------------------------------


@pytest.mark.parametrize("S,size", [
    (trivial_semigroup(), 2),
    (cyclic_group(2), 3),
    (symmetric_group(3), 7),
    (brandt(2), 7),
    (chain(3), 4),
    (semilattice([(), (1,), (2,), (1, 2)]), 8),
    (symmetric_inverse_monoid(2), 21),
])
def test_booleanization_sizes(S, size):
    assert len(booleanize(S).bis) == size


def test_group_booleanizes_to_group_with_zero():
    for G in (cyclic_group(3), symmetric_group(3)):
        B = booleanize(G).bis
        G0, _ = adjoin_zero(G)
        assert bis_isomorphic(B, verify_bis(G0)) is not None


def test_boolean_input_is_not_fixed():
    # I2 is already Boolean, but B(I2) also splits the identity into germs
    I2 = symmetric_inverse_monoid(2)
    assert len(booleanize(I2).bis) == 21 != len(I2)


# --- the equivalence on formal sums ------------------------------------------------------


@pytest.mark.parametrize("S", _small_sum_corpus(), ids=lambda S: S.name)
def test_equivalence_matches_canonical_form(S):
    ctx = SumContext(S)
    sums = list(formal_sums(S, ctx=ctx))
    canon = [ctx.canon(x) for x in sums]
    for i, j in itertools.combinations(range(len(sums)), 2):
        assert sums_equivalent(ctx, sums[i], sums[j]) == (canon[i] == canon[j])


@pytest.mark.parametrize("S", [S for S in CORPUS if len(SumContext(S).R) > 8], ids=lambda S: S.name)
def test_equivalence_matches_canonical_form_sampled(S):
    ctx = SumContext(S)
    sums = list(formal_sums(S, ctx=ctx))
    rng = random.Random(len(sums))
    by_class = {}
    for x in sums:
        by_class.setdefault(ctx.canon(x), []).append(x)
    # every class is hit, and the canonical forms are exactly the elements of B(S)
    bz = booleanize(S, ctx)
    assert set(by_class) == set(bz.germs)
    for _ in range(3000):
        x, y = rng.choice(sums), rng.choice(sums)
        assert sums_equivalent(ctx, x, y) == (ctx.canon(x) == ctx.canon(y))
    for members in by_class.values():
        x = members[0]
        for y in rng.sample(members, min(5, len(members))):
            assert sums_equivalent(ctx, x, y)


@pytest.mark.parametrize("S", _small_sum_corpus(), ids=lambda S: S.name)
def test_operations_are_well_defined(S):
    bz = booleanize(S)
    ctx, T = bz.context, bz.bis.semigroup
    sums = list(formal_sums(S, ctx=ctx))
    rng = random.Random(0)
    for _ in range(400):
        x, y = rng.choice(sums), rng.choice(sums)
        cx, cy = bz.class_of(x), bz.class_of(y)
        assert bz.class_of(ctx.product(x, y)) == T.table[cx][cy]
        assert bz.class_of(ctx.star(x)) == T.inv[cx]


def test_formal_sum_cap():
    with pytest.raises(TooLarge):
        next(formal_sums(symmetric_inverse_monoid(3)))


def test_formal_sum_normalizes_term_order():
    assert FormalSum.of([(2, 1), (1, 3)]).terms == ((1, 3), (2, 1))
    assert len(FormalSum.of([])) == 0


# --- structure of B(S) --------------------------------------------------------------------


@pytest.mark.parametrize("S", CORPUS, ids=lambda S: S.name)
def test_dual_of_booleanization_is_germ_groupoid(S):
    bz = booleanize(S)
    assert groupoid_isomorphism(dual_groupoid(bz.bis), germ_groupoid(S)) is not None


@pytest.mark.parametrize("S", CORPUS, ids=lambda S: S.name)
def test_embedding_is_injective_homomorphism(S):
    bz = booleanize(S)
    emb = bz.embedding
    nonzero = [s for s in range(len(S)) if s != S.zero]
    assert len({emb[s] for s in nonzero}) == len(nonzero)
    assert bz.bis.zero not in {emb[s] for s in nonzero}
    assert is_homomorphism(S, bz.bis.semigroup, emb)
    # every element is an orthogonal join of images of S
    for b in range(len(bz.bis)):
        assert bz.class_of(bz.sum_of(b)) == b


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(partial_bijections(3)[1:]), min_size=1, max_size=2))
def test_booleanization_of_random_partial_bijections(gens):
    S = partial_bijection_semigroup(gens)
    if len(S) > 10:
        return
    bz = booleanize(S)
    assert groupoid_isomorphism(dual_groupoid(bz.bis), germ_groupoid(S)) is not None


def test_booleanization_of_brandt_is_pair_groupoid(b2):
    B = booleanize(b2).bis
    assert bis_isomorphic(B, bisections(pair_groupoid(2))) is not None
    assert bis_isomorphic(B, verify_bis(symmetric_inverse_monoid(2))) is not None


# --- universal property -------------------------------------------------------------------


def test_extend_hom_brandt_into_i2(b2, i2):
    bz = booleanize(b2)
    target = verify_bis(i2)
    homs = list(search_morphisms(b2, i2))
    assert len(homs) == 3
    for phi in homs:
        m = extend_hom(bz, phi, target, check_all_sums=True)
        assert all(m(bz.embedding[s]) == phi[s] for s in range(len(b2)))


def test_extend_hom_group_into_gamma():
    G = cyclic_group(2)
    bz = booleanize(G)
    target = bisections(group_groupoid(cyclic_group(2)))
    G0, _ = adjoin_zero(G)
    count = 0
    for phi0 in search_morphisms(G0, target.semigroup):
        phi = phi0[:len(G)]
        extend_hom(bz, phi, target)
        count += 1
    # zero map, identity and the trivial map to the unit
    assert count == 3


def test_extend_hom_rejects_non_homomorphism(b2, i2):
    bz = booleanize(b2)
    target = verify_bis(i2)
    bad = [target.unit] * len(b2)
    with pytest.raises(NotAHomomorphism):
        extend_hom(bz, bad, target)
