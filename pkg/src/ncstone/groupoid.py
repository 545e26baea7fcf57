"""Finite discrete groupoids and both directions of the duality.

Unit spaces are finite and discrete, so every subset of arrows is compact
open, closures and interiors are trivial and "dense orbit" means "the orbit
is everything".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .bis import BisMorphism, BooleanInverseSemigroup, verify_bis, verify_bis_morphism
from .core import InverseSemigroup, verify_inverse_semigroup
from .errors import (AtomCompositionFailure, BadComposition, BadInverse, BadUnits, NotInvariant,
                     TooLarge, ValidationError)
from .groups import group_isomorphism

GAMMA_ARROW_CAP = 16


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    units: tuple[str, ...]
    arrows: tuple[str, ...]
    d: tuple[int, ...]
    r: tuple[int, ...]
    compose_table: tuple[tuple[int, ...], ...]   # -1 where d(g) != r(h)
    inverse: tuple[int, ...]
    unit_arrow: tuple[int, ...]
    name: str = ""
    arrow_elements: tuple[int, ...] | None = None  # set for dual groupoids

    def __repr__(self) -> str:
        return f"<FiniteGroupoid {self.name or 'G'} units={len(self.units)} arrows={len(self.arrows)}>"

    def compose(self, g: int, h: int) -> int:
        k = self.compose_table[g][h]
        if k < 0:
            raise ValidationError(f"{self.arrows[g]}{self.arrows[h]} undefined")
        return k

    @cached_property
    def is_unit_arrow(self) -> frozenset[int]:
        return frozenset(self.unit_arrow)

    @cached_property
    def arrow_of_element(self) -> dict[int, int]:
        if self.arrow_elements is None:
            return {}
        return {b: g for g, b in enumerate(self.arrow_elements)}

    @cached_property
    def arrows_from(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.units]
        for g, x in enumerate(self.d):
            out[x].append(g)
        return tuple(tuple(v) for v in out)


# ---------------------------------------------------------------------------
# validation and constructors


def verify_groupoid(
    units: Sequence[str],
    arrows: Sequence[str],
    d: Sequence[int],
    r: Sequence[int],
    compose: Mapping[tuple[int, int], int] | Sequence[Sequence[int]],
    unit_arrow: Sequence[int],
    name: str = "",
    arrow_elements: Sequence[int] | None = None,
) -> FiniteGroupoid:
    nu, na = len(units), len(arrows)
    units, arrows = tuple(units), tuple(arrows)
    if len(set(units)) != nu or len(set(arrows)) != na:
        raise ValidationError("duplicate unit or arrow names")
    d, r, unit_arrow = tuple(d), tuple(r), tuple(unit_arrow)
    if len(unit_arrow) != nu or len(set(unit_arrow)) != nu:
        raise BadUnits("every unit needs its own identity arrow")
    table = [[-1] * na for _ in range(na)]
    if isinstance(compose, Mapping):
        for (g, h), k in compose.items():
            table[g][h] = k
    else:
        for g in range(na):
            for h in range(na):
                table[g][h] = compose[g][h]
    for x, u in enumerate(unit_arrow):
        if d[u] != x or r[u] != x:
            raise BadUnits(f"identity arrow of {units[x]} is not a loop at it", witness=units[x])
    # identities compose implicitly
    for g in range(na):
        if table[unit_arrow[r[g]]][g] < 0:
            table[unit_arrow[r[g]]][g] = g
        if table[g][unit_arrow[d[g]]] < 0:
            table[g][unit_arrow[d[g]]] = g
    for g in range(na):
        for h in range(na):
            k = table[g][h]
            if (d[g] == r[h]) != (k >= 0):
                raise BadComposition(
                    f"{arrows[g]}{arrows[h]} must be {'defined' if d[g] == r[h] else 'undefined'}",
                    witness=(arrows[g], arrows[h]))
            if k >= 0 and (d[k] != d[h] or r[k] != r[g]):
                raise BadComposition(f"{arrows[g]}{arrows[h]} has wrong endpoints", witness=(arrows[g], arrows[h]))
    for x, u in enumerate(unit_arrow):
        for g in range(na):
            if r[g] == x and table[u][g] != g:
                raise BadUnits(f"{arrows[u]} is not a left identity", witness=(arrows[u], arrows[g]))
            if d[g] == x and table[g][u] != g:
                raise BadUnits(f"{arrows[u]} is not a right identity", witness=(arrows[u], arrows[g]))
    for g in range(na):
        for h in range(na):
            gh = table[g][h]
            if gh < 0:
                continue
            for k in range(na):
                hk = table[h][k]
                if hk < 0:
                    continue
                if table[gh][k] != table[g][hk]:
                    raise BadComposition("not associative", witness=(arrows[g], arrows[h], arrows[k]))
    inverse = []
    for g in range(na):
        cands = [h for h in range(na)
                 if d[h] == r[g] and r[h] == d[g]
                 and table[g][h] == unit_arrow[r[g]] and table[h][g] == unit_arrow[d[g]]]
        if len(cands) != 1:
            raise BadInverse(f"{arrows[g]} has {len(cands)} inverses", witness=arrows[g])
        inverse.append(cands[0])
    return FiniteGroupoid(units, arrows, d, r, tuple(tuple(row) for row in table), tuple(inverse),
                          unit_arrow, name, tuple(arrow_elements) if arrow_elements is not None else None)


def transitive_groupoid(k: int, H: InverseSemigroup, unit_names: Sequence[str] | None = None,
                        name: str = "") -> FiniteGroupoid:
    """One orbit of ``k`` units with isotropy H (the groupoid H x pair(k))."""
    if unit_names is None:
        unit_names = [str(i) for i in range(k)]
    e = H.idempotent_indices[0]
    arrows = [(z, h, y) for y in range(k) for z in range(k) for h in range(len(H))]
    pos = {a: i for i, a in enumerate(arrows)}
    trivial_group = len(H) == 1

    def aname(z, h, y):
        if z == y and h == e:
            return unit_names[y]
        base = f"{unit_names[z]}<{unit_names[y]}" if z != y else unit_names[y]
        return base if trivial_group else f"{base}/{H.names[h]}"

    compose = {}
    for (z, h, y) in arrows:
        for (y2, h2, w) in arrows:
            if y2 == y:
                compose[(pos[(z, h, y)], pos[(y2, h2, w)])] = pos[(z, H.table[h][h2], w)]
    return verify_groupoid(
        list(unit_names), [aname(*a) for a in arrows],
        [a[2] for a in arrows], [a[0] for a in arrows], compose,
        [pos[(x, e, x)] for x in range(k)], name=name)


def pair_groupoid(n: int, unit_names: Sequence[str] | None = None) -> FiniteGroupoid:
    from .groups import cyclic_group
    return transitive_groupoid(n, cyclic_group(1), unit_names, name=f"pair({n})")


def group_groupoid(G: InverseSemigroup, unit_name: str = "*") -> FiniteGroupoid:
    return transitive_groupoid(1, G, [unit_name], name=f"group({G.name or len(G)})")


def disjoint_union(*parts: FiniteGroupoid, name: str = "") -> FiniteGroupoid:
    units, arrows, d, r, unit_arrow = [], [], [], [], []
    compose = {}
    uoff = aoff = 0
    multi = len(parts) > 1
    for i, G in enumerate(parts):
        pre = f"{i}." if multi and _name_clash(parts) else ""
        units += [pre + u for u in G.units]
        arrows += [pre + a for a in G.arrows]
        d += [uoff + x for x in G.d]
        r += [uoff + x for x in G.r]
        unit_arrow += [aoff + g for g in G.unit_arrow]
        for g in range(len(G.arrows)):
            for h in range(len(G.arrows)):
                k = G.compose_table[g][h]
                if k >= 0:
                    compose[(aoff + g, aoff + h)] = aoff + k
        uoff += len(G.units)
        aoff += len(G.arrows)
    return verify_groupoid(units, arrows, d, r, compose, unit_arrow,
                           name=name or "+".join(G.name or "G" for G in parts))


def _name_clash(parts) -> bool:
    seen_u, seen_a = set(), set()
    for G in parts:
        if seen_u & set(G.units) or seen_a & set(G.arrows):
            return True
        seen_u |= set(G.units)
        seen_a |= set(G.arrows)
    return False


def btone(n: int) -> FiniteGroupoid:
    """Pair groupoid on {0..n} plus the isolated unit inf."""
    if n < 0:
        raise ValueError("n must be >= 0")
    from .groups import cyclic_group
    fin = transitive_groupoid(n + 1, cyclic_group(1), [str(i) for i in range(n + 1)])
    inf = transitive_groupoid(1, cyclic_group(1), ["inf"])
    return disjoint_union(fin, inf, name=f"bt({n})")


def relabel(G: FiniteGroupoid, unit_perm: Sequence[int], arrow_perm: Sequence[int], name: str = "") -> FiniteGroupoid:
    """Copy of G whose unit i is old unit ``unit_perm[i]`` and arrow j old arrow ``arrow_perm[j]``."""
    unew = {old: i for i, old in enumerate(unit_perm)}
    anew = {old: j for j, old in enumerate(arrow_perm)}
    compose = {}
    for g in range(len(G.arrows)):
        for h in range(len(G.arrows)):
            k = G.compose_table[g][h]
            if k >= 0:
                compose[(anew[g], anew[h])] = anew[k]
    return verify_groupoid(
        [G.units[u] for u in unit_perm], [G.arrows[a] for a in arrow_perm],
        [unew[G.d[a]] for a in arrow_perm], [unew[G.r[a]] for a in arrow_perm], compose,
        [anew[G.unit_arrow[u]] for u in unit_perm], name=name or G.name)


# ---------------------------------------------------------------------------
# structure


def restrict(G: FiniteGroupoid, A: Iterable[int], with_embedding: bool = False):
    """G|_A; with ``with_embedding`` also return the arrow indices in G."""
    A = sorted(set(A))
    upos = {x: i for i, x in enumerate(A)}
    keep = [g for g in range(len(G.arrows)) if G.d[g] in upos and G.r[g] in upos]
    apos = {g: i for i, g in enumerate(keep)}
    compose = {}
    for g in keep:
        for h in keep:
            k = G.compose_table[g][h]
            if k >= 0:
                compose[(apos[g], apos[h])] = apos[k]
    H = verify_groupoid(
        [G.units[x] for x in A], [G.arrows[g] for g in keep],
        [upos[G.d[g]] for g in keep], [upos[G.r[g]] for g in keep], compose,
        [apos[G.unit_arrow[x]] for x in A], name=f"{G.name}|" if G.name else "",
        arrow_elements=[G.arrow_elements[g] for g in keep] if G.arrow_elements is not None else None)
    if with_embedding:
        return H, tuple(keep)
    return H


def orbit(G: FiniteGroupoid, x: int) -> frozenset[int]:
    return frozenset(G.r[g] for g in G.arrows_from[x])


def orbits(G: FiniteGroupoid) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for x in range(len(G.units)):
        if x not in seen:
            o = orbit(G, x)
            seen |= o
            out.append(o)
    return out


def isotropy(G: FiniteGroupoid, x: int) -> InverseSemigroup:
    loops = [g for g in G.arrows_from[x] if G.r[g] == x]
    pos = {g: i for i, g in enumerate(loops)}
    table = [[pos[G.compose_table[g][h]] for h in loops] for g in loops]
    return verify_inverse_semigroup(table, names=[G.arrows[g] for g in loops],
                                    name=f"{G.name}|{G.units[x]}" if G.name else f"iso({G.units[x]})")


def isotropy_arrows(G: FiniteGroupoid, x: int) -> tuple[int, ...]:
    return tuple(g for g in G.arrows_from[x] if G.r[g] == x)


@dataclass(frozen=True)
class Flagged:
    value: bool
    degenerate: bool = False
    note: str = ""


def is_minimal(G: FiniteGroupoid) -> Flagged:
    """Dense orbit = whole unit space; the empty groupoid counts as not minimal."""
    if not G.units:
        return Flagged(False, degenerate=True, note="empty unit space")
    return Flagged(len(orbits(G)) == 1)


def is_effective(G: FiniteGroupoid) -> bool:
    return all(G.d[g] != G.r[g] for g in range(len(G.arrows)) if g not in G.is_unit_arrow)


def is_invariant(G: FiniteGroupoid, A: Iterable[int]) -> bool:
    A = set(A)
    return all(G.r[g] in A for x in A for g in G.arrows_from[x])


def orbit_space_separation(G: FiniteGroupoid) -> dict:
    """Finite discrete orbit spaces are discrete, hence T1 and T0."""
    return {"T0": True, "T1": True, "note": "finite discrete unit space: every orbit is finite and closed"}


# ---------------------------------------------------------------------------
# bisection calculus (no table needed)


def is_bisection(G: FiniteGroupoid, U: Iterable[int]) -> bool:
    U = list(U)
    return len({G.d[g] for g in U}) == len(U) == len({G.r[g] for g in U})


def bis_product(G: FiniteGroupoid, U: Iterable[int], V: Iterable[int]) -> frozenset[int]:
    by_source = {G.d[g]: g for g in U}
    out = set()
    for h in V:
        g = by_source.get(G.r[h])
        if g is not None:
            out.add(G.compose_table[g][h])
    return frozenset(out)


def bis_inverse(G: FiniteGroupoid, U: Iterable[int]) -> frozenset[int]:
    return frozenset(G.inverse[g] for g in U)


def bis_support(G: FiniteGroupoid, U: Iterable[int]) -> frozenset[int]:
    return frozenset(G.unit_arrow[G.d[g]] for g in U)


def bis_image(G: FiniteGroupoid, U: Iterable[int]) -> frozenset[int]:
    return frozenset(G.unit_arrow[G.r[g]] for g in U)


def bis_orthogonal(G: FiniteGroupoid, U, V) -> bool:
    return not bis_product(G, U, bis_inverse(G, V)) and not bis_product(G, bis_inverse(G, U), V)


def bis_units(G: FiniteGroupoid, A: Iterable[int]) -> frozenset[int]:
    """The idempotent bisection of a unit set."""
    return frozenset(G.unit_arrow[x] for x in A)


# ---------------------------------------------------------------------------
# Gamma(G)


@dataclass(frozen=True, eq=False)
class GammaBIS(BooleanInverseSemigroup):
    groupoid: FiniteGroupoid | None = None
    sets: tuple[frozenset[int], ...] = ()

    @cached_property
    def bisection_index(self) -> dict[frozenset[int], int]:
        return {U: i for i, U in enumerate(self.sets)}

    def element(self, arrows: Iterable[int]) -> int:
        return self.bisection_index[frozenset(arrows)]


def enumerate_bisections(G: FiniteGroupoid) -> list[frozenset[int]]:
    nu = len(G.units)
    out: list[frozenset[int]] = []

    def rec(x: int, chosen: list[int], used_r: set[int]):
        if x == nu:
            out.append(frozenset(chosen))
            return
        rec(x + 1, chosen, used_r)
        for g in G.arrows_from[x]:
            if G.r[g] not in used_r:
                chosen.append(g)
                used_r.add(G.r[g])
                rec(x + 1, chosen, used_r)
                used_r.discard(G.r[g])
                chosen.pop()

    rec(0, [], set())
    return sorted(out, key=lambda U: (len(U), sorted(U)))


def bisection_name(G: FiniteGroupoid, U: Iterable[int]) -> str:
    return "{" + ",".join(G.arrows[g] for g in sorted(U)) + "}"


def bisections(G: FiniteGroupoid, max_arrows: int = GAMMA_ARROW_CAP) -> GammaBIS:
    """Gamma(G): all bisections with setwise product, inverse and disjoint unions as joins."""
    if len(G.arrows) > max_arrows:
        raise TooLarge(f"{len(G.arrows)} arrows exceeds the Gamma cap {max_arrows}", witness=len(G.arrows))
    sets = enumerate_bisections(G)
    pos = {U: i for i, U in enumerate(sets)}
    table = [[pos[bis_product(G, U, V)] for V in sets] for U in sets]
    inv = [pos[bis_inverse(G, U)] for U in sets]
    names = [bisection_name(G, U) for U in sets]
    S = verify_inverse_semigroup(table, inv_hint=inv, names=names,
                                 name=f"Gamma({G.name})" if G.name else "")
    B = verify_bis(S)
    for s in range(len(sets)):
        for t in range(len(sets)):
            j = B.join_table[s][t]
            if j >= 0 and sets[j] != sets[s] | sets[t]:
                raise ValidationError("join of orthogonal bisections is not their union")
    return GammaBIS(B.semigroup, B.order, B.join_table, B.eatoms, B.emask, B.eindex,
                    groupoid=G, sets=tuple(sets))


def gamma_size(G: FiniteGroupoid) -> int:
    """|Gamma(G)| by counting bisections, without building the table."""
    nu = len(G.units)
    count = 0

    def rec(x, used_r):
        nonlocal count
        if x == nu:
            count += 1
            return
        rec(x + 1, used_r)
        for g in G.arrows_from[x]:
            if G.r[g] not in used_r:
                used_r.add(G.r[g])
                rec(x + 1, used_r)
                used_r.discard(G.r[g])

    rec(0, set())
    return count


# ---------------------------------------------------------------------------
# G(B)


def dual_groupoid(B: BooleanInverseSemigroup) -> FiniteGroupoid:
    """Arrows are the atoms of B, units the atoms of E(B)."""
    S = B.semigroup
    ats = B.atoms
    upos = {e: i for i, e in enumerate(B.eatoms)}
    apos = {a: i for i, a in enumerate(ats)}
    d, r = [], []
    for a in ats:
        sa, ia = S.support(a), S.image(a)
        if sa not in upos or ia not in upos:
            raise AtomCompositionFailure(f"support/image of atom {S.names[a]} is not an atom of E",
                                         witness=S.names[a])
        d.append(upos[sa])
        r.append(upos[ia])
    compose = {}
    for i, a in enumerate(ats):
        for j, b in enumerate(ats):
            if d[i] == r[j]:
                ab = S.table[a][b]
                if ab not in apos:
                    raise AtomCompositionFailure(f"{S.names[a]}{S.names[b]} is not an atom",
                                                 witness=(S.names[a], S.names[b]))
                compose[(i, j)] = apos[ab]
    unit_arrow = [apos[e] for e in B.eatoms]
    return verify_groupoid([S.names[e] for e in B.eatoms], [S.names[a] for a in ats], d, r, compose,
                           unit_arrow, name=f"G({S.name})" if S.name else "", arrow_elements=ats)


# ---------------------------------------------------------------------------
# isomorphisms


@dataclass(frozen=True)
class GroupoidIsomorphism:
    unit_map: tuple[int, ...]
    arrow_map: tuple[int, ...]


def verify_groupoid_isomorphism(G: FiniteGroupoid, H: FiniteGroupoid, arrow_map: Sequence[int]) -> GroupoidIsomorphism:
    na = len(G.arrows)
    f = tuple(arrow_map)
    if len(f) != na or len(H.arrows) != na or len(set(f)) != na:
        raise ValidationError("arrow map is not a bijection")
    unit_map = []
    for x in range(len(G.units)):
        u = f[G.unit_arrow[x]]
        if u not in H.is_unit_arrow:
            raise ValidationError("unit arrow not sent to a unit arrow", witness=G.units[x])
        unit_map.append(H.d[u])
    if len(set(unit_map)) != len(H.units) or len(G.units) != len(H.units):
        raise ValidationError("unit map is not a bijection")
    for g in range(na):
        if H.d[f[g]] != unit_map[G.d[g]] or H.r[f[g]] != unit_map[G.r[g]]:
            raise ValidationError("source/range not preserved", witness=G.arrows[g])
        for h in range(na):
            k = G.compose_table[g][h]
            if k >= 0 and H.compose_table[f[g]][f[h]] != f[k]:
                raise ValidationError("composition not preserved", witness=(G.arrows[g], G.arrows[h]))
    return GroupoidIsomorphism(tuple(unit_map), f)


def groupoid_isomorphism(G: FiniteGroupoid, H: FiniteGroupoid) -> GroupoidIsomorphism | None:
    """Match orbits by (size, isotropy group), then transport along transversals."""
    if len(G.units) != len(H.units) or len(G.arrows) != len(H.arrows):
        return None
    og, oh = orbits(G), orbits(H)
    if sorted(map(len, og)) != sorted(map(len, oh)):
        return None
    gdata = [(o, min(o), isotropy(G, min(o))) for o in og]
    hdata = [(o, min(o), isotropy(H, min(o))) for o in oh]

    # bipartite matching of orbits with isomorphic isotropy, by backtracking
    match: list[tuple[int, tuple[int, ...]]] = []
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(gdata):
            return True
        o, _, K = gdata[i]
        for j, (o2, _, K2) in enumerate(hdata):
            if j in used or len(o2) != len(o):
                continue
            iso = group_isomorphism(K, K2)
            if iso is None:
                continue
            used.add(j)
            match.append((j, iso))
            if rec(i + 1):
                return True
            match.pop()
            used.discard(j)
        return False

    if not rec(0):
        return None

    f = [-1] * len(G.arrows)
    for (o, x, K), (j, iso) in zip(gdata, match):
        o2, y, K2 = hdata[j]
        gl, hl = isotropy_arrows(G, x), isotropy_arrows(H, y)
        units_g, units_h = sorted(o), sorted(o2)
        umap = dict(zip(units_g, units_h))          # x -> y since both are minima
        tg = _transversal(G, x)
        th = _transversal(H, y)
        for g in range(len(G.arrows)):
            if G.d[g] not in o:
                continue
            a, b = G.d[g], G.r[g]
            # g = t_b k t_a^{-1} with k in the isotropy at x
            k = G.compose_table[G.compose_table[G.inverse[tg[b]]][g]][tg[a]]
            kk = hl[iso[gl.index(k)]]
            img = H.compose_table[H.compose_table[th[umap[b]]][kk]][H.inverse[th[umap[a]]]]
            f[g] = img
    return verify_groupoid_isomorphism(G, H, f)


def _transversal(G: FiniteGroupoid, x: int) -> dict[int, int]:
    """For every unit y in the orbit of x, one arrow x -> y."""
    out = {}
    for g in G.arrows_from[x]:
        out.setdefault(G.r[g], g)
    out[x] = G.unit_arrow[x]
    return out


# ---------------------------------------------------------------------------
# duality certificates and restriction


@dataclass(frozen=True, eq=False)
class BisDualityCertificate:
    groupoid: FiniteGroupoid
    gamma: GammaBIS
    iso: BisMorphism            # B -> Gamma(G(B)), b -> {atoms below b}


@dataclass(frozen=True, eq=False)
class GroupoidDualityCertificate:
    gamma: GammaBIS
    dual: FiniteGroupoid
    iso: GroupoidIsomorphism    # G -> G(Gamma(G)), g -> {g}


def duality_roundtrip(B: BooleanInverseSemigroup, max_arrows: int = GAMMA_ARROW_CAP) -> BisDualityCertificate:
    G = dual_groupoid(B)
    # the arrow cap guards the table size; here that size is |B| whenever duality holds
    if len(G.arrows) > max_arrows and gamma_size(G) <= len(B):
        max_arrows = len(G.arrows)
    Gam = bisections(G, max_arrows=max_arrows)
    f = []
    for b in range(len(B)):
        U = frozenset(G.arrow_of_element[a] for a in B.atoms_below[b])
        f.append(Gam.bisection_index[U])
    m = verify_bis_morphism(B, Gam, f)
    if not m.is_bijective():
        raise ValidationError("b -> atoms below b is not a bijection")
    return BisDualityCertificate(G, Gam, m)


def duality_roundtrip_groupoid(G: FiniteGroupoid, max_arrows: int = GAMMA_ARROW_CAP) -> GroupoidDualityCertificate:
    Gam = bisections(G, max_arrows=max_arrows)
    H = dual_groupoid(Gam)
    f = [H.arrow_of_element[Gam.bisection_index[frozenset([g])]] for g in range(len(G.arrows))]
    iso = verify_groupoid_isomorphism(G, H, f)
    return GroupoidDualityCertificate(Gam, H, iso)


def restriction_hom(G: FiniteGroupoid, A: Iterable[int], gamma: GammaBIS | None = None) -> tuple[BisMorphism, FiniteGroupoid]:
    """Gamma(G) -> Gamma(G|_A), U -> U intersected with G|_A."""
    A = sorted(set(A))
    if not is_invariant(G, A):
        raise NotInvariant("unit set is not invariant", witness=[G.units[x] for x in A])
    Gam = gamma if gamma is not None else bisections(G)
    H, emb = restrict(G, A, with_embedding=True)
    HG = bisections(H)
    back = {g: i for i, g in enumerate(emb)}
    f = [HG.bisection_index[frozenset(back[g] for g in U if g in back)] for U in Gam.sets]
    m = verify_bis_morphism(Gam, HG, f)
    if not m.is_surjective():
        raise ValidationError("restriction is not surjective")
    return m, H


def factor_through_restriction(res: BisMorphism, emb: Sequence[int], pi: BisMorphism) -> BisMorphism:
    """The unique psi with psi o res = pi, when pi's idempotent part factors.

    ``emb`` lists the arrows of G|_A as arrows of G.
    """
    src, mid = res.source, res.target
    for e in src.idempotents:
        for e2 in src.idempotents:
            if res(e) == res(e2) and pi(e) != pi(e2):
                raise ValidationError("idempotent part does not factor through the restriction")
    f = []
    for V in mid.sets:
        U = frozenset(emb[g] for g in V)
        f.append(pi(src.bisection_index[U]))
    psi = verify_bis_morphism(mid, pi.target, f)
    for b in range(len(src)):
        if psi(res(b)) != pi(b):
            raise ValidationError("psi o res differs from pi", witness=src.names[b])
    return psi


def subgroupoid(G: FiniteGroupoid, arrow_subset: Iterable[int]) -> tuple[FiniteGroupoid, tuple[int, ...]]:
    """The subgroupoid on a set of arrows closed under composition and inverse."""
    arrows = sorted(set(arrow_subset))
    aset = set(arrows)
    units = sorted({G.d[g] for g in arrows} | {G.r[g] for g in arrows})
    for x in units:
        if G.unit_arrow[x] not in aset:
            raise ValidationError("arrow set misses a unit", witness=G.units[x])
    for g in arrows:
        if G.inverse[g] not in aset:
            raise ValidationError("not closed under inverse", witness=G.arrows[g])
        for h in arrows:
            k = G.compose_table[g][h]
            if k >= 0 and k not in aset:
                raise ValidationError("not closed under composition", witness=(G.arrows[g], G.arrows[h]))
    upos = {x: i for i, x in enumerate(units)}
    apos = {g: i for i, g in enumerate(arrows)}
    compose = {(apos[g], apos[h]): apos[G.compose_table[g][h]]
               for g in arrows for h in arrows if G.compose_table[g][h] >= 0}
    H = verify_groupoid([G.units[x] for x in units], [G.arrows[g] for g in arrows],
                        [upos[G.d[g]] for g in arrows], [upos[G.r[g]] for g in arrows], compose,
                        [apos[G.unit_arrow[x]] for x in units], name=f"{G.name}'" if G.name else "")
    return H, tuple(arrows)


@dataclass(frozen=True, eq=False)
class SubgroupoidResult:
    groupoid: FiniteGroupoid
    arrow_embedding: tuple[int, ...]
    full: bool


def subgroupoid_from_subsemigroup(Gam: GammaBIS, C: Iterable[int]) -> SubgroupoidResult:
    """The union of the bisections in C, and whether C is all of Gamma of it."""
    from .bis import sub_bis

    C = frozenset(C)
    sub_bis(Gam, C)
    G = Gam.groupoid
    arrows = set().union(*(Gam.sets[c] for c in C)) if C else set()
    H, emb = subgroupoid(G, arrows)
    mapped = {frozenset(emb[g] for g in U) for U in enumerate_bisections(H)}
    full = mapped == {Gam.sets[c] for c in C}
    return SubgroupoidResult(H, emb, full)


# ---------------------------------------------------------------------------
# corpora


def orbit_types(max_units: int, max_arrows: int) -> list[tuple[int, InverseSemigroup]]:
    """(orbit size k, isotropy group H) with k^2 |H| <= max_arrows, one H per isomorphism class."""
    from .groups import small_groups

    out = []
    for k in range(1, max_units + 1):
        for H in small_groups(8):
            if k * k * len(H) <= max_arrows:
                out.append((k, H))
    return out


def exhaustive_groupoids(max_units: int = 3, max_arrows: int = 8) -> list[FiniteGroupoid]:
    """Every finite groupoid with at most ``max_units`` units and ``max_arrows`` arrows, up to isomorphism.

    A finite groupoid is a disjoint union of transitive ones, each determined
    by its number of units and its isotropy group; the empty groupoid is included.
    """
    types = orbit_types(max_units, max_arrows)
    out = [_empty_groupoid()]

    def rec(start: int, chosen: list[int], units: int, arrows: int):
        if chosen:
            parts = [transitive_groupoid(types[i][0], types[i][1],
                                         [f"{j}.{u}" for u in range(types[i][0])])
                     for j, i in enumerate(chosen)]
            label = "+".join(f"{types[i][0]}x{types[i][1].name}" for i in chosen)
            out.append(disjoint_union(*parts, name=label))
        for i in range(start, len(types)):
            k, H = types[i]
            if units + k <= max_units and arrows + k * k * len(H) <= max_arrows:
                chosen.append(i)
                rec(i, chosen, units + k, arrows + k * k * len(H))
                chosen.pop()

    rec(0, [], 0, 0)
    return out


def _empty_groupoid() -> FiniteGroupoid:
    return verify_groupoid([], [], [], [], {}, [], name="empty")


def random_groupoid(seed: int, max_units: int = 4, max_arrows: int = 10) -> FiniteGroupoid:
    """Seeded random groupoid: random orbit types, then unit and arrow order shuffled."""
    import random

    rng = random.Random(seed)
    types = orbit_types(max_units, max_arrows)
    chosen = []
    units = arrows = 0
    target_units = rng.randint(1, max_units)
    while units < target_units:
        fits = [t for t in types if units + t[0] <= max_units and arrows + t[0] ** 2 * len(t[1]) <= max_arrows]
        if not fits:
            break
        k, H = rng.choice(fits)
        chosen.append((k, H))
        units += k
        arrows += k * k * len(H)
    parts = [transitive_groupoid(k, H, [f"{j}.{u}" for u in range(k)]) for j, (k, H) in enumerate(chosen)]
    G = disjoint_union(*parts)
    uperm = list(range(len(G.units)))
    aperm = list(range(len(G.arrows)))
    rng.shuffle(uperm)
    rng.shuffle(aperm)
    return relabel(G, uperm, aperm, name=f"random({seed})")
