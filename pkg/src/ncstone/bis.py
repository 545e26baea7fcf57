"""Boolean inverse semigroups.

A validated :class:`BooleanInverseSemigroup` carries, besides its table, the
natural order, the orthogonal-join table and the identification of E(B)
with the power set of its atoms (``emask``).  Quotients and isomorphisms are
computed through the dual groupoid of atoms (see :mod:`ncstone.groupoid`).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import InverseSemigroup, natural_order, restrict_to
from .errors import (IdempotentsNotGBA, MissingJoin, NotIdempotent, NotOrthogonal, TooLarge,
                     ValidationError)
from .gba import BooleanRng, power_set_rng

IDEAL_ATOM_CAP = 16


@dataclass(frozen=True, eq=False)
class BooleanInverseSemigroup:
    semigroup: InverseSemigroup
    order: np.ndarray                 # order[s, t]: s <= t
    join_table: tuple[tuple[int, ...], ...]   # -1 unless orthogonal
    eatoms: tuple[int, ...]           # atoms of E(B)
    emask: dict[int, int]             # idempotent -> bitmask over eatoms
    eindex: dict[int, int]            # bitmask -> idempotent

    def __len__(self) -> int:
        return len(self.semigroup)

    def __repr__(self) -> str:
        return f"<BooleanInverseSemigroup {self.semigroup.name or 'B'} |B|={len(self)}>"

    @property
    def zero(self) -> int:
        return self.semigroup.zero

    @property
    def names(self) -> tuple[str, ...]:
        return self.semigroup.names

    @property
    def name(self) -> str:
        return self.semigroup.name

    def mul(self, a: int, b: int) -> int:
        return self.semigroup.table[a][b]

    def orthogonal(self, s: int, t: int) -> bool:
        S = self.semigroup
        z = S.zero
        return S.table[s][S.inv[t]] == z and S.table[S.inv[s]][t] == z

    def join(self, s: int, t: int) -> int:
        j = self.join_table[s][t]
        if j < 0:
            raise NotOrthogonal(f"{self.names[s]} and {self.names[t]} are not orthogonal",
                                witness=(self.names[s], self.names[t]))
        return j

    def relative_complement(self, f: int, e: int) -> int:
        """f \\ e for idempotents e <= f."""
        return self.eindex[self.emask[f] & ~self.emask[e]]

    @cached_property
    def unit(self) -> int:
        return self.eindex[(1 << len(self.eatoms)) - 1]

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        """Minimal nonzero elements of the natural order."""
        z = self.zero
        out = []
        for b in range(len(self)):
            if b == z:
                continue
            below = np.flatnonzero(self.order[:, b])
            if all(x in (z, b) for x in below):
                out.append(b)
        return tuple(out)

    @cached_property
    def atoms_below(self) -> tuple[frozenset[int], ...]:
        ats = self.atoms
        return tuple(frozenset(a for a in ats if self.order[a, b]) for b in range(len(self)))

    @cached_property
    def gba(self) -> BooleanRng:
        """E(B) as a Boolean rng, indexed by atom bitmask."""
        return power_set_rng(len(self.eatoms), [self.names[a] for a in self.eatoms])

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return self.semigroup.idempotent_indices


@dataclass(frozen=True)
class AdditiveIdeal:
    subset: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.subset

    def __len__(self) -> int:
        return len(self.subset)


@dataclass(frozen=True, eq=False)
class BisMorphism:
    source: BooleanInverseSemigroup
    target: BooleanInverseSemigroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.map) if y == self.target.zero)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == len(self.target)

    def is_bijective(self) -> bool:
        return len(set(self.map)) == len(self.target) == len(self.source)


# ---------------------------------------------------------------------------
# validation


def verify_bis(S: InverseSemigroup) -> BooleanInverseSemigroup:
    if len(S) == 1:
        # the degenerate {0}: its single element serves as zero
        S = replace(S, zero=0)
    if S.zero is None:
        raise ValidationError("a Boolean inverse semigroup needs a zero")
    z = S.zero
    T = S.table
    n = len(S)
    R = natural_order(S)
    E = S.idempotent_indices
    Eset = set(E)

    # every principal down-set of E must be Boolean: relative complements
    for e, f in itertools.product(E, repeat=2):
        if e == f or T[e][f] != e:
            continue
        ok = False
        for g in E:
            if T[g][f] != g or T[g][e] != z:
                continue
            ubs = [h for h in E if T[e][h] == e and T[g][h] == g]
            if all(T[f][h] == f for h in ubs):
                ok = True
                break
        if not ok:
            raise IdempotentsNotGBA(f"{S.names[e]} <= {S.names[f]} has no relative complement",
                                    witness=(S.names[e], S.names[f]))

    # orthogonal joins via least upper bounds in the natural order
    downsize = R.sum(axis=0)
    join = [[-1] * n for _ in range(n)]
    for s in range(n):
        for t in range(s, n):
            if T[s][S.inv[t]] != z or T[S.inv[s]][t] != z:
                continue
            ub = np.flatnonzero(R[s] & R[t])
            j = -1
            if len(ub):
                cand = int(ub[np.argmin(downsize[ub])])
                if R[cand, ub].all():
                    j = cand
            if j < 0:
                raise MissingJoin(f"orthogonal {S.names[s]}, {S.names[t]} have no join",
                                  witness=(S.names[s], S.names[t]))
            join[s][t] = join[t][s] = j

    # E(B) is the power set of its atoms
    eatoms = tuple(e for e in E if e != z and all(T[x][e] in (z, e) for x in E))
    emask = {e: sum(1 << i for i, a in enumerate(eatoms) if T[a][e] == a) for e in E}
    if len(set(emask.values())) != len(E) or len(E) != 1 << len(eatoms):
        raise IdempotentsNotGBA("idempotents are not the power set of their atoms",
                                witness=[S.names[e] for e in E])
    for e, f in itertools.product(E, repeat=2):
        if emask[T[e][f]] != emask[e] & emask[f]:
            raise IdempotentsNotGBA("meet is not intersection of atoms", witness=(S.names[e], S.names[f]))
        if join[e][f] >= 0 and emask[join[e][f]] != emask[e] | emask[f]:
            raise IdempotentsNotGBA("idempotent join is not union of atoms", witness=(S.names[e], S.names[f]))
    eindex = {m: e for e, m in emask.items()}
    assert Eset == set(eindex.values())
    return BooleanInverseSemigroup(S, R, tuple(tuple(r) for r in join), eatoms, emask, eindex)


def orthogonal_join(B: BooleanInverseSemigroup, family: Iterable[int]) -> int:
    family = list(family)
    for s, t in itertools.combinations(family, 2):
        if not B.orthogonal(s, t):
            raise NotOrthogonal(f"{B.names[s]} and {B.names[t]} are not orthogonal",
                                witness=(B.names[s], B.names[t]))
    out = B.zero
    for s in family:
        out = B.join(out, s)
    return out


def verify_bis_morphism(source: BooleanInverseSemigroup, target: BooleanInverseSemigroup,
                        f: Sequence[int]) -> BisMorphism:
    S, T = source.semigroup, target.semigroup
    f = tuple(int(x) for x in f)
    if len(f) != len(S):
        raise ValidationError("map has the wrong length")
    if f[S.zero] != T.zero:
        raise ValidationError("zero is not preserved")
    for a in range(len(S)):
        if f[S.inv[a]] != T.inv[f[a]]:
            raise ValidationError("involution is not preserved", witness=S.names[a])
        for b in range(len(S)):
            if f[S.table[a][b]] != T.table[f[a]][f[b]]:
                raise ValidationError("not multiplicative", witness=(S.names[a], S.names[b]))
            j = source.join_table[a][b]
            if j >= 0 and target.join_table[f[a]][f[b]] != f[j]:
                raise ValidationError("orthogonal join not preserved", witness=(S.names[a], S.names[b]))
    return BisMorphism(source, target, f)


def identity_morphism(B: BooleanInverseSemigroup) -> BisMorphism:
    return BisMorphism(B, B, tuple(range(len(B))))


# ---------------------------------------------------------------------------
# sub-objects


def sub_bis(B: BooleanInverseSemigroup, subset: Iterable[int], name: str = "") -> tuple[BooleanInverseSemigroup, tuple[int, ...]]:
    """Validate ``subset`` as a Boolean inverse subsemigroup closed under ambient joins."""
    sub = set(subset)
    for s in sub:
        for t in sub:
            j = B.join_table[s][t]
            if j >= 0 and j not in sub:
                raise ValidationError("not closed under ambient orthogonal joins",
                                      witness=(B.names[s], B.names[t]))
    S, emb = restrict_to(B.semigroup, sub, name=name)
    return verify_bis(S), emb


def bis_closure(B: BooleanInverseSemigroup, gens: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing ``gens`` and 0 closed under product, inverse,
    ambient orthogonal joins and relative complements of idempotents."""
    S = B.semigroup
    seen = {S.zero}
    queue = deque([S.zero])
    for g in gens:
        if g not in seen:
            seen.add(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        new = [S.inv[x]]
        for y in list(seen):
            new.append(S.table[x][y])
            new.append(S.table[y][x])
            j = B.join_table[x][y]
            if j >= 0:
                new.append(j)
            if x in B.emask and y in B.emask:
                mx, my = B.emask[x], B.emask[y]
                new.append(B.eindex[mx & ~my])
                new.append(B.eindex[my & ~mx])
        for z in new:
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


def corner(B: BooleanInverseSemigroup, p: int) -> tuple[BooleanInverseSemigroup, tuple[int, ...]]:
    """pBp as a Boolean inverse semigroup with unit p, plus its embedding."""
    S = B.semigroup
    if not S.is_idempotent(p):
        raise NotIdempotent(f"{S.names[p]} is not idempotent", witness=S.names[p])
    carrier = {S.prod(p, b, p) for b in range(len(S))}
    suffix = f"[{S.names[p]}]"
    C, emb = sub_bis(B, carrier, name=(S.name + suffix) if S.name else "")
    if len(C) > 1 and emb[C.unit] != p:
        raise ValidationError("corner unit differs from p", witness=S.names[p])
    return C, emb


# ---------------------------------------------------------------------------
# additive ideals


def is_additive_ideal(B: BooleanInverseSemigroup, subset: Iterable[int]) -> bool:
    I = set(subset)
    S = B.semigroup
    if S.zero not in I:
        return False
    for b in I:
        for x in range(len(S)):
            if S.table[x][b] not in I or S.table[b][x] not in I:
                return False
    for s in I:
        for t in I:
            j = B.join_table[s][t]
            if j >= 0 and j not in I:
                return False
    return True


def additive_ideals(B: BooleanInverseSemigroup, max_atoms: int = IDEAL_ATOM_CAP) -> list[AdditiveIdeal]:
    """All additive ideals, smallest first.

    An additive ideal is determined by the largest idempotent it contains, so
    candidates are {b : supp b <= p} for each idempotent p; each candidate is
    checked against the full ideal axioms.
    """
    k = len(B.eatoms)
    if k > max_atoms:
        raise TooLarge(f"E(B) has {k} atoms, cap is {max_atoms}", witness=k)
    S = B.semigroup
    sup = [B.emask[S.support(b)] for b in range(len(S))]
    out = []
    for mask in range(1 << k):
        cand = frozenset(b for b in range(len(S)) if sup[b] & ~mask == 0)
        if is_additive_ideal(B, cand):
            out.append(AdditiveIdeal(cand))
    return sorted(out, key=lambda I: (len(I), sorted(I.subset)))


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: object = None
    degenerate: bool = False


def is_zero_simplifying(B: BooleanInverseSemigroup) -> Verdict:
    if len(B) == 1:
        return Verdict(False, None, degenerate=True)
    ideals = additive_ideals(B)
    if len(ideals) == 2:
        return Verdict(True)
    proper = next(I for I in ideals if 1 < len(I) < len(B))
    return Verdict(False, proper)


def is_monoidal(B: BooleanInverseSemigroup) -> Verdict:
    u = B.unit
    S = B.semigroup
    ok = all(S.table[u][x] == x and S.table[x][u] == x for x in range(len(S)))
    return Verdict(ok, u if ok else None, degenerate=len(B) == 1)


def quotient_by_additive_ideal(B: BooleanInverseSemigroup, I: AdditiveIdeal) -> tuple[BooleanInverseSemigroup, BisMorphism]:
    """B / I computed on the dual groupoid: restrict to the units outside I."""
    from .groupoid import bisections, dual_groupoid, restrict

    if not is_additive_ideal(B, I.subset):
        raise ValidationError("not an additive ideal")
    G = dual_groupoid(B)
    # units of G are the atoms of E(B); those inside I span the ideal
    keep = [x for x in range(len(G.units)) if G.arrow_elements[G.unit_arrow[x]] not in I.subset]
    H, arrow_emb = restrict(G, keep, with_embedding=True)
    Q = bisections(H)
    back = {g: i for i, g in enumerate(arrow_emb)}
    atom_arrow = G.arrow_of_element
    f = []
    for b in range(len(B)):
        arrows = frozenset(back[atom_arrow[a]] for a in B.atoms_below[b] if atom_arrow[a] in back)
        f.append(Q.bisection_index[arrows])
    QB = Q
    pi = verify_bis_morphism(B, QB, f)
    if pi.kernel() != I.subset:
        raise ValidationError("kernel of quotient map differs from the ideal")
    if not pi.is_surjective():
        raise ValidationError("quotient map is not surjective")
    return QB, pi


# ---------------------------------------------------------------------------
# isomorphism


def bis_isomorphic(B: BooleanInverseSemigroup, C: BooleanInverseSemigroup) -> BisMorphism | None:
    """Explicit isomorphism or None, found on the dual groupoids and lifted."""
    from .groupoid import dual_groupoid, groupoid_isomorphism

    if len(B) != len(C) or len(B.atoms) != len(C.atoms) or len(B.eatoms) != len(C.eatoms):
        return None
    G, H = dual_groupoid(B), dual_groupoid(C)
    iso = groupoid_isomorphism(G, H)
    if iso is None:
        return None
    return lift_groupoid_isomorphism(B, C, G, H, iso.arrow_map)


def lift_groupoid_isomorphism(B, C, G, H, arrow_map) -> BisMorphism:
    """b -> join of the images of the atoms below b."""
    atom_of_c = {frozenset(C.atoms_below[c]): c for c in range(len(C))}
    f = []
    for b in range(len(B)):
        img = frozenset(H.arrow_elements[arrow_map[G.arrow_of_element[a]]] for a in B.atoms_below[b])
        f.append(atom_of_c[img])
    m = verify_bis_morphism(B, C, f)
    if not m.is_bijective():
        raise ValidationError("lifted map is not bijective")
    return m


def bis_isomorphic_bruteforce(B: BooleanInverseSemigroup, C: BooleanInverseSemigroup) -> tuple[int, ...] | None:
    """Direct search over semigroup isomorphisms.  Independent of duality; tests only."""
    from .morphisms import search_morphisms

    if len(B) != len(C):
        return None
    for f in search_morphisms(B.semigroup, C.semigroup):
        if len(set(f)) == len(C):
            return f
    return None
