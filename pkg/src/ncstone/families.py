"""Named finite inverse semigroups used as examples and test corpora."""

from __future__ import annotations

import itertools
import random
from collections import deque
from typing import Iterable, Sequence

from .core import InverseSemigroup, adjoin_zero, from_function, verify_inverse_semigroup
from .groups import cyclic_group, direct_product, symmetric_group

# partial bijections of {1..n} are tuples p with p[i] = image of i+1 (1-based) or 0


def _pb_compose(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """s after t (t acts first), so that supp(st) = dom of the composite."""
    return tuple(0 if t[i] == 0 else s[t[i] - 1] for i in range(len(t)))


def pb_name(p: tuple[int, ...]) -> str:
    pairs = [f"{i + 1}>{v}" for i, v in enumerate(p) if v]
    return "(" + ",".join(pairs) + ")" if pairs else "0"


def partial_bijections(n: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(1, n + 1), k):
                p = [0] * n
                for i, v in zip(dom, img):
                    p[i] = v
                out.append(tuple(p))
    return sorted(out, key=lambda p: (sum(1 for v in p if v), p))


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    elems = partial_bijections(n)
    return from_function(elems, _pb_compose, [pb_name(p) for p in elems], name=f"I{n}")


def inverse_closure(gens: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Inverse subsemigroup of I_n generated by partial bijections."""
    gens = list(gens)
    n = len(gens[0])
    seen: set[tuple[int, ...]] = set()
    queue = deque()

    def add(p):
        if p not in seen:
            seen.add(p)
            queue.append(p)

    for g in gens:
        add(g)
        add(_pb_inverse(g))
    while queue:
        x = queue.popleft()
        for y in list(seen):
            add(_pb_compose(x, y))
            add(_pb_compose(y, x))
    return sorted(seen, key=lambda p: (sum(1 for v in p if v), p))


def _pb_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    q = [0] * len(p)
    for i, v in enumerate(p):
        if v:
            q[v - 1] = i + 1
    return tuple(q)


def partial_bijection_semigroup(gens: Sequence[tuple[int, ...]], name: str = "") -> InverseSemigroup:
    elems = inverse_closure(gens)
    return from_function(elems, _pb_compose, [pb_name(p) for p in elems], name=name)


def brandt(n: int = 2) -> InverseSemigroup:
    """Matrix units e_ij of size n together with 0: e_ij e_kl = delta_jk e_il."""
    elems = [None] + [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def op(a, b):
        if a is None or b is None or a[1] != b[0]:
            return None
        return (a[0], b[1])

    names = ["0"] + [f"e{i}{j}" for (i, j) in elems[1:]]
    return from_function(elems, op, names, name=f"B{n}")


def trivial_semigroup() -> InverseSemigroup:
    return verify_inverse_semigroup([[0]], names=["e"], name="trivial")


def semilattice(sets: Iterable[Iterable], name: str = "") -> InverseSemigroup:
    """Meet-semilattice of a family of sets closed under intersection."""
    fam = sorted({frozenset(s) for s in sets}, key=lambda s: (len(s), sorted(map(str, s))))
    for a, b in itertools.combinations(fam, 2):
        if a & b not in fam:
            raise ValueError("family is not closed under intersection")
    names = ["0" if not s else "".join(sorted(map(str, s))) for s in fam]
    return from_function(fam, lambda a, b: a & b, names, name=name)


def chain(n: int) -> InverseSemigroup:
    """Chain 0 < 1 < ... < n-1 under min."""
    return verify_inverse_semigroup([[min(a, b) for b in range(n)] for a in range(n)],
                                    names=[f"c{i}" for i in range(n)], name=f"chain{n}")


def group_with_zero(G: InverseSemigroup) -> InverseSemigroup:
    S0, _ = adjoin_zero(G)
    return S0


def random_inverse_subsemigroup(n: int, seed: int, ngens: int = 2, max_size: int = 8) -> InverseSemigroup | None:
    """Inverse subsemigroup of I_n generated by random partial bijections; None if too big."""
    rng = random.Random(seed)
    pool = partial_bijections(n)
    gens = [pool[rng.randrange(1, len(pool))] for _ in range(ngens)]
    elems = inverse_closure(gens)
    if len(elems) > max_size:
        return None
    return from_function(elems, _pb_compose, [pb_name(p) for p in elems], name=f"rnd{n}.{seed}")


def semigroup_corpus(max_size: int = 8, random_count: int = 20, seed: int = 0) -> list[InverseSemigroup]:
    """Named small inverse semigroups plus seeded random ones, all with at most ``max_size`` elements."""
    C = cyclic_group
    named = [
        trivial_semigroup(), C(2), C(3), C(4), direct_product(C(2), C(2), name="C2xC2"),
        symmetric_group(3), brandt(2), symmetric_inverse_monoid(2),
        group_with_zero(C(2)), group_with_zero(C(3)), group_with_zero(symmetric_group(3)),
        chain(2), chain(3), semilattice([(), (1,), (2,), (1, 2)], name="E4"),
        semilattice([(), (1,), (2,)], name="V"),
        direct_product(C(2), chain(2), name="C2xchain2"),
        direct_product(C(3), chain(2), name="C3xchain2"),
    ]
    out = [S for S in named if len(S) <= max_size]
    seen = set()
    k = 0
    s = seed
    while k < random_count and s < seed + 10_000:
        S = random_inverse_subsemigroup(3, s, ngens=1 + s % 2, max_size=max_size)
        s += 1
        if S is None or S.table in seen:
            continue
        seen.add(S.table)
        out.append(S)
        k += 1
    return out
