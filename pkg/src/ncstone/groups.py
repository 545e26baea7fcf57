"""Finite groups, represented as inverse semigroups with a single idempotent."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

from .core import Congruence, InverseSemigroup, quotient, verify_inverse_semigroup
from .errors import ValidationError

SUBGROUP_ENUMERATION_CAP = 120


def require_group(G: InverseSemigroup) -> int:
    if not G.is_group():
        raise ValidationError(f"{G!r} is not a group")
    return G.idempotent_indices[0]


def element_order(G: InverseSemigroup, g: int) -> int:
    e = require_group(G)
    k, x = 1, g
    while x != e:
        x = G.table[x][g]
        k += 1
    return k


def is_abelian(G: InverseSemigroup) -> bool:
    n = len(G)
    return all(G.table[a][b] == G.table[b][a] for a in range(n) for b in range(a + 1, n))


def generated_subgroup(G: InverseSemigroup, gens: Iterable[int]) -> frozenset[int]:
    e = require_group(G)
    gens = list(gens)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.table[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def subgroups(G: InverseSemigroup) -> list[frozenset[int]]:
    """All subgroups, smallest first."""
    e = require_group(G)
    found = {frozenset([e])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(len(G)):
                if g in H:
                    continue
                K = generated_subgroup(G, list(H) + [g])
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def is_normal(G: InverseSemigroup, H: frozenset[int]) -> bool:
    return all(G.prod(g, h, G.inv[g]) in H for g in range(len(G)) for h in H)


def normal_subgroups(G: InverseSemigroup) -> list[frozenset[int]]:
    return [H for H in subgroups(G) if is_normal(G, H)]


def quotient_group(G: InverseSemigroup, N: frozenset[int]) -> InverseSemigroup:
    labels = [0] * len(G)
    cosets: dict[frozenset[int], int] = {}
    for g in range(len(G)):
        coset = frozenset(G.table[g][h] for h in N)
        labels[g] = cosets.setdefault(coset, len(cosets))
    return quotient(G, Congruence.from_labels(labels))


def group_quotients(G: InverseSemigroup) -> list[InverseSemigroup]:
    """One representative per isomorphism class of quotient groups."""
    out: list[InverseSemigroup] = []
    for N in normal_subgroups(G):
        Q = quotient_group(G, N)
        if not any(group_isomorphism(Q, R) is not None for R in out):
            out.append(Q)
    return out


def _generators(G: InverseSemigroup) -> list[int]:
    e = require_group(G)
    gens: list[int] = []
    H = frozenset([e])
    # prefer high-order elements: fewer generators, smaller search
    for g in sorted(range(len(G)), key=lambda x: (-element_order(G, x), x)):
        if g not in H:
            gens.append(g)
            H = generated_subgroup(G, gens)
    return gens


def group_isomorphism(G: InverseSemigroup, H: InverseSemigroup) -> tuple[int, ...] | None:
    """An isomorphism G -> H as an index map, or None."""
    if len(G) != len(H) or is_abelian(G) != is_abelian(H):
        return None
    eg, eh = require_group(G), require_group(H)
    og = sorted(element_order(G, g) for g in range(len(G)))
    oh = sorted(element_order(H, h) for h in range(len(H)))
    if og != oh:
        return None
    gens = _generators(G)
    cands = [[h for h in range(len(H)) if element_order(H, h) == element_order(G, g)] for g in gens]
    for images in itertools.product(*cands):
        phi = _extend(G, H, eg, eh, gens, images)
        if phi is not None:
            return phi
    return None


def _extend(G, H, eg, eh, gens, images) -> tuple[int, ...] | None:
    phi = {eg: eh}
    queue = deque([eg])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = G.table[x][g]
            v = H.table[phi[x]][h]
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                queue.append(y)
    if len(set(phi.values())) != len(G):
        return None
    out = tuple(phi[g] for g in range(len(G)))
    for a in range(len(G)):
        for b in range(len(G)):
            if out[G.table[a][b]] != H.table[out[a]][out[b]]:
                return None
    return out


def dedupe_groups(groups: Iterable[InverseSemigroup]) -> list[InverseSemigroup]:
    out: list[InverseSemigroup] = []
    for G in groups:
        if not any(group_isomorphism(G, R) is not None for R in out):
            out.append(G)
    return out


def same_group_classes(A: Sequence[InverseSemigroup], B: Sequence[InverseSemigroup]) -> bool:
    return (all(any(group_isomorphism(a, b) is not None for b in B) for a in A)
            and all(any(group_isomorphism(b, a) is not None for a in A) for b in B))


def describe_group(G: InverseSemigroup) -> str:
    """Short label for reports: ``trivial``, ``Cn``, ``S3`` or an order/exponent tag."""
    n = len(G)
    if n == 1:
        return "trivial"
    orders = sorted(element_order(G, g) for g in range(n))
    if orders[-1] == n:
        return f"C{n}"
    if not is_abelian(G) and n == 6:
        return "S3"
    tag = "abelian" if is_abelian(G) else "nonabelian"
    return f"order{n}-{tag}-exp{_lcm(orders)}"


def _lcm(xs):
    from math import lcm
    out = 1
    for x in xs:
        out = lcm(out, x)
    return out


# ---------------------------------------------------------------------------
# constructors


def group_from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> InverseSemigroup:
    """Permutation group generated by ``gens`` (tuples, images of 0..m-1)."""
    gens = [tuple(g) for g in gens]
    m = len(gens[0]) if gens else 1
    ident = tuple(range(m))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(g[x[k]] for k in range(m))
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    elems.sort()
    pos = {p: k for k, p in enumerate(elems)}
    table = [[pos[tuple(a[b[k]] for k in range(m))] for b in elems] for a in elems]
    names = ["e" if p == ident else "p" + "".join(str(v) for v in p) for p in elems]
    if m > 10:
        names = ["e" if p == ident else f"p{k}" for k, p in enumerate(elems)]
    return verify_inverse_semigroup(table, names=names, name=name)


def cyclic_group(n: int) -> InverseSemigroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + [f"g{k}" for k in range(1, n)]
    return verify_inverse_semigroup(table, names=names, name=f"C{n}")


def direct_product(G: InverseSemigroup, H: InverseSemigroup, name: str = "") -> InverseSemigroup:
    pairs = [(a, b) for a in range(len(G)) for b in range(len(H))]
    pos = {p: k for k, p in enumerate(pairs)}
    table = [[pos[(G.table[a][c], H.table[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    names = [f"{G.names[a]}.{H.names[b]}" for a, b in pairs]
    return verify_inverse_semigroup(table, names=names, name=name or f"{G.name}x{H.name}")


def symmetric_group(m: int) -> InverseSemigroup:
    if m <= 1:
        return cyclic_group(1)
    gens = [tuple([1, 0] + list(range(2, m))), tuple(list(range(1, m)) + [0])]
    return group_from_permutations(gens, name=f"S{m}")


def dihedral_group(n: int) -> InverseSemigroup:
    """Symmetries of an n-gon (order 2n)."""
    rot = tuple((k + 1) % n for k in range(n))
    ref = tuple((-k) % n for k in range(n))
    return group_from_permutations([rot, ref], name=f"D{2 * n}")


def quaternion_group() -> InverseSemigroup:
    # regular representation of Q8 on {±1, ±i, ±j, ±k}
    units = ["1", "i", "j", "k"]
    mult = {("1", x): (1, x) for x in units}
    mult.update({(x, "1"): (1, x) for x in units})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]

    def op(a, b):
        s, u = mult[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    pos = {x: k for k, x in enumerate(elems)}
    table = [[pos[op(a, b)] for b in elems] for a in elems]
    names = [("" if s == 1 else "-") + u for s, u in elems]
    return verify_inverse_semigroup(table, names=names, name="Q8")


def small_groups(max_order: int = 8) -> list[InverseSemigroup]:
    """One group per isomorphism class, for every order up to ``max_order`` (<= 8)."""
    if max_order > 8:
        raise ValueError("catalogue only covers orders up to 8")
    C = cyclic_group
    out = [C(n) for n in range(1, max_order + 1)]
    if max_order >= 4:
        out.append(direct_product(C(2), C(2), name="C2xC2"))
    if max_order >= 6:
        out.append(symmetric_group(3))
    if max_order >= 8:
        out.append(direct_product(C(4), C(2), name="C4xC2"))
        out.append(direct_product(direct_product(C(2), C(2)), C(2), name="C2xC2xC2"))
        out.append(dihedral_group(4))
        out.append(quaternion_group())
    return sorted(out, key=lambda G: (len(G), G.name))
