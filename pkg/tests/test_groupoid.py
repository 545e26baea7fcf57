from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncstone.bis import additive_ideals, is_zero_simplifying
from ncstone.errors import BadComposition, BadInverse, BadUnits, NotInvariant, TooLarge, ValidationError
from ncstone.groupoid import (bis_image, bis_inverse, bis_orthogonal, bis_product, bis_support, bis_units,
                              bisections, btone, disjoint_union, dual_groupoid, duality_roundtrip,
                              duality_roundtrip_groupoid, enumerate_bisections, exhaustive_groupoids,
                              factor_through_restriction, gamma_size, group_groupoid, groupoid_isomorphism,
                              is_bisection, is_effective, is_invariant, is_minimal, isotropy, orbit_types,
                              orbits, pair_groupoid, random_groupoid, relabel, restrict, restriction_hom,
                              subgroupoid, subgroupoid_from_subsemigroup, transitive_groupoid, verify_groupoid)
from ncstone.groups import cyclic_group, group_isomorphism, symmetric_group


def _pair_oracle(n):
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def _iso_bruteforce(G, H):
    """Backtracking over arrow bijections preserving units, endpoints and composition."""
    na = len(G.arrows)
    if na != len(H.arrows) or len(G.units) != len(H.units):
        return False
    f = [-1] * na
    used = set()

    def ok(g):
        for h in range(na):
            if f[h] < 0:
                continue
            for a, b in ((g, h), (h, g)):
                k = G.compose_table[a][b]
                k2 = H.compose_table[f[a]][f[b]]
                if (k < 0) != (k2 < 0):
                    return False
                if k >= 0 and f[k] >= 0 and f[k] != k2:
                    return False
        return (g in G.is_unit_arrow) == (f[g] in H.is_unit_arrow)

    def rec(g):
        if g == na:
            return True
        for v in range(na):
            if v in used:
                continue
            f[g] = v
            used.add(v)
            if ok(g) and rec(g + 1):
                return True
            used.discard(v)
            f[g] = -1
        return False

    return rec(0)


# --- validation ------------------------------------------------------------------


def test_verify_groupoid_errors():
    # two units with no identity for the second
    with pytest.raises(BadUnits):
        verify_groupoid(["x", "y"], ["x"], [0], [0], {}, [0])
    # arrow x->y whose composite with its "inverse" is left undefined
    with pytest.raises(BadComposition):
        verify_groupoid(["x", "y"], ["x", "y", "g", "h"], [0, 1, 0, 1], [0, 1, 1, 0], {}, [0, 1])
    # a loop g with g g = g at a unit: no inverse beyond the unit
    with pytest.raises((BadInverse, BadComposition, BadUnits)):
        verify_groupoid(["x"], ["x", "g"], [0, 0], [0, 0], {(1, 1): 1}, [0])


def test_empty_groupoid():
    G = exhaustive_groupoids()[0]
    assert not G.units and not G.arrows
    m = is_minimal(G)
    assert not m.value and m.degenerate
    assert len(bisections(G)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pair_groupoid_gamma_matches_closed_form(n):
    G = pair_groupoid(n)
    assert gamma_size(G) == _pair_oracle(n)
    if n <= 3:
        assert len(bisections(G)) == _pair_oracle(n)


def test_btone_gamma_sizes():
    assert len(bisections(btone(1))) == 14
    assert gamma_size(btone(2)) == 68
    assert gamma_size(btone(3)) == 2 * _pair_oracle(4)


def test_group_groupoid_gamma_is_group_with_zero():
    for G in (cyclic_group(4), symmetric_group(3)):
        assert len(bisections(group_groupoid(G))) == len(G) + 1


def test_gamma_of_union_is_product():
    a, b = pair_groupoid(2), group_groupoid(cyclic_group(3), unit_name="z")
    assert gamma_size(disjoint_union(a, b)) == gamma_size(a) * gamma_size(b)


def test_gamma_cap():
    with pytest.raises(TooLarge):
        bisections(btone(3))


# groups of each order up to isomorphism
GROUPS_PER_ORDER = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}


def _count_groupoids(max_units, max_arrows):
    """Multisets of (orbit size k, isotropy class) with sum k <= max_units and sum k^2 |H| <= max_arrows."""
    kinds = [(k, order) for k in range(1, max_units + 1) for order, c in GROUPS_PER_ORDER.items()
             for _ in range(c) if k * k * order <= max_arrows]

    def rec(i, units, arrows):
        if i == len(kinds):
            return 1
        k, order = kinds[i]
        total = 0
        m = 0
        while units + m * k <= max_units and arrows + m * k * k * order <= max_arrows:
            total += rec(i + 1, units + m * k, arrows + m * k * k * order)
            m += 1
        return total

    return rec(0, 0, 0)


def test_exhaustive_corpus_is_complete_and_distinct():
    gs = exhaustive_groupoids(3, 8)
    assert len(gs) == _count_groupoids(3, 8) == 66
    assert len(orbit_types(3, 8)) == 16
    for G in gs:
        assert len(G.units) <= 3 and len(G.arrows) <= 8
    for G, H in itertools.combinations(gs, 2):
        assert groupoid_isomorphism(G, H) is None


# --- random groupoids ----------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_random_groupoid_axioms_and_gamma(seed):
    G = random_groupoid(seed)
    assert 1 <= len(G.units) <= 4 and len(G.arrows) <= 10
    for g in range(len(G.arrows)):
        gi = G.inverse[g]
        assert G.compose_table[g][gi] == G.unit_arrow[G.r[g]]
        assert G.compose_table[gi][g] == G.unit_arrow[G.d[g]]
    # unit arrows carry the unit names
    for x, u in enumerate(G.unit_arrow):
        assert G.arrows[u] == G.units[x]
    assert gamma_size(G) == len(enumerate_bisections(G))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_relabelled_groupoids_are_isomorphic(seed):
    G = random_groupoid(seed, max_arrows=6)
    rng = random.Random(seed)
    up, ap = list(range(len(G.units))), list(range(len(G.arrows)))
    rng.shuffle(up)
    rng.shuffle(ap)
    H = relabel(G, up, ap)
    assert groupoid_isomorphism(G, H) is not None
    assert _iso_bruteforce(G, H)


def test_isomorphism_matches_bruteforce_on_small_corpus():
    gs = [G for G in exhaustive_groupoids(3, 6) if len(G.arrows) <= 5]
    for G, H in itertools.combinations_with_replacement(gs, 2):
        assert (groupoid_isomorphism(G, H) is not None) == _iso_bruteforce(G, H)


# --- structure --------------------------------------------------------------------


def test_orbits_isotropy_and_flags():
    G = disjoint_union(pair_groupoid(2), group_groupoid(symmetric_group(3), unit_name="s"))
    assert sorted(map(len, orbits(G))) == [1, 2]
    s = G.units.index("s")
    assert group_isomorphism(isotropy(G, s), symmetric_group(3)) is not None
    assert not is_minimal(G).value
    assert not is_effective(G)
    assert is_effective(pair_groupoid(3))
    assert is_invariant(G, [s]) and not is_invariant(G, [0])


def test_transitive_groupoid_structure():
    G = transitive_groupoid(2, cyclic_group(2))
    assert len(G.arrows) == 8 and len(orbits(G)) == 1
    assert len(isotropy(G, 0)) == 2


# --- bisection calculus vs the table -------------------------------------------------------


@pytest.mark.parametrize("G", [pair_groupoid(2), btone(1), group_groupoid(cyclic_group(3)),
                               transitive_groupoid(2, cyclic_group(2))], ids=lambda G: G.name or "G")
def test_bisection_calculus_matches_gamma_table(G):
    B = bisections(G)
    S = B.semigroup
    for i, U in enumerate(B.sets):
        assert is_bisection(G, U)
        assert B.sets[S.inv[i]] == bis_inverse(G, U)
        assert B.sets[S.support(i)] == bis_support(G, U)
        assert B.sets[S.image(i)] == bis_image(G, U)
        for j, V in enumerate(B.sets):
            assert B.sets[S.table[i][j]] == bis_product(G, U, V)
            assert B.orthogonal(i, j) == bis_orthogonal(G, U, V)
    assert B.element(bis_units(G, range(len(G.units)))) == B.unit


# --- duality -------------------------------------------------------------------------------------


@pytest.mark.parametrize("G", exhaustive_groupoids(3, 8), ids=lambda G: G.name)
def test_duality_roundtrips_exhaustive(G):
    cert = duality_roundtrip_groupoid(G)
    assert len(cert.iso.arrow_map) == len(G.arrows)
    cert2 = duality_roundtrip(cert.gamma)
    assert cert2.iso.is_bijective()


def test_dual_of_symmetric_inverse_monoid():
    from ncstone.bis import verify_bis
    from ncstone.families import symmetric_inverse_monoid
    H = dual_groupoid(verify_bis(symmetric_inverse_monoid(3)))
    assert groupoid_isomorphism(H, pair_groupoid(3)) is not None


# --- restriction and ideals -------------------------------------------------------------------


@pytest.mark.parametrize("G", [btone(1), disjoint_union(pair_groupoid(2), group_groupoid(cyclic_group(2), "g"))],
                         ids=lambda G: G.name)
def test_restriction_hom_kernel_is_ideal(G):
    B = bisections(G)
    ideals = {I.subset for I in additive_ideals(B)}
    for o in orbits(G):
        rest = sorted(set(range(len(G.units))) - o)
        res, H = restriction_hom(G, rest, gamma=B)
        assert res.kernel() in ideals
        assert res.is_surjective()
    with pytest.raises(NotInvariant):
        restriction_hom(G, [0])


def test_factor_through_restriction_identity():
    G = btone(1)
    B = bisections(G)
    A = [G.units.index("0"), G.units.index("1")]
    res, H = restriction_hom(G, A, gamma=B)
    _, emb = restrict(G, A, with_embedding=True)
    psi = factor_through_restriction(res, emb, res)
    assert psi.is_bijective()


def test_minimal_iff_zero_simplifying_small():
    for G in exhaustive_groupoids(2, 6):
        assert is_minimal(G).value == is_zero_simplifying(bisections(G)).value


def test_subgroupoid_from_subsemigroup():
    G = pair_groupoid(2)
    B = bisections(G)
    swap = next(i for i, U in enumerate(B.sets) if len(U) == 2 and all(g not in G.is_unit_arrow for g in U))
    one = B.unit
    res = subgroupoid_from_subsemigroup(B, [B.zero, swap, one])
    assert len(res.groupoid.arrows) == 4
    assert not res.full
    full = subgroupoid_from_subsemigroup(B, range(len(B)))
    assert full.full
    with pytest.raises(ValidationError):
        subgroupoid(G, [0, 2])
