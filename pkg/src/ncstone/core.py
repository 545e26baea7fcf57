"""Finite inverse semigroups given by multiplication tables.

Elements are the indices ``0..n-1``; ``names`` only matters for I/O.  All
structures are validated once on construction and treated as immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InverseNotUnique, NoInverse, NotAssociative, TooLarge, ValidationError

CONGRUENCE_CAP = 12


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    zero: int | None = None
    name: str = ""

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        label = self.name or "S"
        return f"<InverseSemigroup {label} |S|={len(self)} zero={self.zero}>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = self.table[out][x]
        return out

    def support(self, s: int) -> int:
        return self.table[self.inv[s]][s]

    def image(self, s: int) -> int:
        return self.table[s][self.inv[s]]

    def is_idempotent(self, s: int) -> bool:
        return self.table[s][s] == s

    @cached_property
    def idempotent_indices(self) -> tuple[int, ...]:
        return tuple(s for s in range(len(self)) if self.table[s][s] == s)

    def leq(self, s: int, t: int) -> bool:
        """Natural partial order."""
        es, et = self.support(s), self.support(t)
        return self.table[es][et] == es and self.table[t][es] == s

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64).reshape(len(self), len(self))

    def index(self, name: str) -> int:
        return self._name_index[name]

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def identity(self) -> int | None:
        n = len(self)
        for e in self.idempotent_indices:
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        return None

    def is_group(self) -> bool:
        return len(self) > 0 and len(self.idempotent_indices) == 1

    def same_tables(self, other: "InverseSemigroup") -> bool:
        return (self.names == other.names and self.table == other.table
                and self.inv == other.inv and self.zero == other.zero)


@dataclass(frozen=True)
class IdempotentSemilattice:
    semigroup: InverseSemigroup
    carrier: tuple[int, ...]

    def meet(self, e: int, f: int) -> int:
        return self.semigroup.table[e][f]

    def leq(self, e: int, f: int) -> bool:
        return self.semigroup.table[e][f] == e

    @property
    def zero(self) -> int | None:
        return self.semigroup.zero

    def __len__(self) -> int:
        return len(self.carrier)

    def __iter__(self) -> Iterator[int]:
        return iter(self.carrier)


@dataclass(frozen=True)
class Character:
    """A nonzero semilattice homomorphism E -> {0, 1}, stored as its 1-set."""

    ones: frozenset[int]
    respects_zero: bool = True

    def __call__(self, e: int) -> int:
        return 1 if e in self.ones else 0


@dataclass(frozen=True)
class Congruence:
    """Partition stored as canonical labels: ``labels[x]`` is the class of ``x``,
    classes numbered by first occurrence."""

    labels: tuple[int, ...]

    @classmethod
    def from_labels(cls, raw: Sequence[int]) -> "Congruence":
        seen: dict[int, int] = {}
        return cls(tuple(seen.setdefault(r, len(seen)) for r in raw))

    @property
    def num_classes(self) -> int:
        return max(self.labels, default=-1) + 1

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.labels):
            out[c].append(x)
        return tuple(tuple(c) for c in out)

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def refines(self, other: "Congruence") -> bool:
        """True if every class of ``self`` lies inside a class of ``other``."""
        return all(other.labels[a] == other.labels[cls[0]]
                   for cls in self.classes for a in cls)


# ---------------------------------------------------------------------------
# validation


def verify_inverse_semigroup(
    table: Sequence[Sequence[int]],
    inv_hint: Sequence[int] | None = None,
    names: Sequence[str] | None = None,
    name: str = "",
) -> InverseSemigroup:
    n = len(table)
    if n == 0:
        raise ValidationError("empty carrier")
    rows = [tuple(int(x) for x in row) for row in table]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {i} has length {len(row)}, expected {n}", witness=i)
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise ValidationError(f"entry ({i},{j}) = {x} out of range", witness=(i, j))
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(x) for x in names)
    if len(names) != n or len(set(names)) != n:
        raise ValidationError("names must be distinct and match the table size")

    T = np.asarray(rows, dtype=np.int64)
    idx = np.arange(n)
    left = T[T]                                   # left[a,b,c] = (ab)c
    right = T[idx[:, None, None], T[None, :, :]]  # right[a,b,c] = a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"({names[a]}{names[b]}){names[c]} != {names[a]}({names[b]}{names[c]})",
                             witness=(names[a], names[b], names[c]))

    # cand[s, t]: sts = s and tst = t
    sts = T[T, idx[:, None]]                      # sts[s,t] = (s t) s
    tst = T[T.T, idx[None, :]]                    # tst[s,t] = (t s) t
    cand = (sts == idx[:, None]) & (tst == idx[None, :])
    counts = cand.sum(axis=1)
    for s in range(n):
        if counts[s] == 0:
            raise NoInverse(f"element {names[s]} has no inverse", witness=names[s])
        if counts[s] > 1:
            ts = [int(t) for t in np.flatnonzero(cand[s])]
            raise InverseNotUnique(f"element {names[s]} has inverses {[names[t] for t in ts]}",
                                   witness=(names[s], [names[t] for t in ts[:2]]))
    inv = tuple(int(np.flatnonzero(cand[s])[0]) for s in range(n))
    if inv_hint is not None:
        hint = tuple(int(x) for x in inv_hint)
        if hint != inv:
            s = next(i for i in range(n) if hint[i] != inv[i])
            raise NoInverse(f"hinted inverse of {names[s]} fails ss*s = s, s*ss* = s*",
                            witness=names[s])

    # a one-element semigroup is the trivial group; it gets no zero
    zero = None
    for z in range(n if n > 1 else 0):
        if (T[z, :] == z).all() and (T[:, z] == z).all():
            zero = z
            break
    return InverseSemigroup(names, tuple(rows), inv, zero, name)


def from_function(elements: Sequence, op, names: Sequence[str] | None = None,
                  name: str = "") -> InverseSemigroup:
    """Build and validate a semigroup from a concrete carrier and operation."""
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[op(a, b)] for b in elements] for a in elements]
    if names is None:
        names = [str(x) for x in elements]
    return verify_inverse_semigroup(table, names=names, name=name)


# ---------------------------------------------------------------------------
# idempotents, order, characters


def idempotents(S: InverseSemigroup) -> IdempotentSemilattice:
    E = S.idempotent_indices
    for e, f in itertools.product(E, repeat=2):
        ef = S.table[e][f]
        if ef != S.table[f][e] or S.table[ef][ef] != ef:
            raise ValidationError("idempotents do not commute", witness=(S.names[e], S.names[f]))
    return IdempotentSemilattice(S, E)


def natural_order(S: InverseSemigroup) -> np.ndarray:
    """Boolean matrix ``R`` with ``R[s, t]`` iff s <= t."""
    n = len(S)
    R = np.zeros((n, n), dtype=bool)
    for s in range(n):
        es = S.support(s)
        for t in range(n):
            et = S.support(t)
            R[s, t] = S.table[es][et] == es and S.table[t][es] == s
    return R


def support(S: InverseSemigroup, s: int) -> int:
    return S.support(s)


def image(S: InverseSemigroup, s: int) -> int:
    return S.image(s)


def adjoin_zero(S: InverseSemigroup) -> tuple[InverseSemigroup, bool]:
    """Return ``(S0, added)``; ``added`` is False when S already has a zero."""
    if S.zero is not None:
        return S, False
    n = len(S)
    z = n
    table = [list(row) + [z] for row in S.table] + [[z] * (n + 1)]
    zname = "0"
    while zname in S.names:
        zname = "_" + zname
    out = InverseSemigroup(S.names + (zname,), tuple(tuple(r) for r in table),
                           S.inv + (z,), z, (S.name + "_0") if S.name else "")
    return out, True


def characters(E: IdempotentSemilattice, zero_policy: str = "enforce-zero") -> list[Character]:
    """All characters of E.

    Every filter of a finite semilattice is principal, so characters are the
    up-sets of single idempotents; each candidate is still checked to be
    multiplicative.
    """
    if zero_policy not in ("enforce-zero", "allow-trivial"):
        raise ValueError(f"unknown zero policy {zero_policy!r}")
    S = E.semigroup
    enforce = zero_policy == "enforce-zero" and E.zero is not None
    out = []
    for q in E.carrier:
        if enforce and q == E.zero:
            continue
        ones = frozenset(e for e in E.carrier if S.table[q][e] == q)
        chi = Character(ones, respects_zero=enforce)
        for e, f in itertools.product(E.carrier, repeat=2):
            if chi(S.table[e][f]) != chi(e) * chi(f):
                raise ValidationError("principal filter is not a character", witness=(e, f))
        out.append(chi)
    return out


def character_generator(E: IdempotentSemilattice, chi: Character) -> int:
    """The least idempotent on which ``chi`` is 1."""
    S = E.semigroup
    ones = sorted(chi.ones)
    q = ones[0]
    for e in ones[1:]:
        q = S.table[q][e]
    return q


# ---------------------------------------------------------------------------
# congruences


class _UnionFind:
    def __init__(self, n: int, labels: Sequence[int] | None = None):
        self.parent = list(range(n))
        if labels is not None:
            first: dict[int, int] = {}
            for x, c in enumerate(labels):
                r = first.setdefault(c, x)
                self.parent[x] = r

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def labels(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


def generate_congruence(S: InverseSemigroup, pairs: Iterable[tuple[int, int]],
                        base: Congruence | None = None) -> Congruence:
    """Smallest congruence containing ``base`` and all ``pairs``."""
    n = len(S)
    T = S.table
    uf = _UnionFind(n, base.labels if base else None)
    todo = []
    for a, b in pairs:
        if uf.union(a, b):
            todo.append((a, b))
    if base is not None:
        for cls in base.classes:
            todo.extend((cls[0], x) for x in cls[1:])
    while todo:
        a, b = todo.pop()
        for x in range(n):
            for u, v in ((T[x][a], T[x][b]), (T[a][x], T[b][x])):
                if uf.union(u, v):
                    todo.append((u, v))
        u, v = S.inv[a], S.inv[b]
        if uf.union(u, v):
            todo.append((u, v))
    return Congruence.from_labels(uf.labels())


def is_congruence(S: InverseSemigroup, labels: Sequence[int]) -> bool:
    n = len(S)
    T = S.table
    classes: dict[int, list[int]] = {}
    for x, c in enumerate(labels):
        classes.setdefault(c, []).append(x)
    for cls in classes.values():
        a = cls[0]
        for b in cls[1:]:
            if labels[S.inv[a]] != labels[S.inv[b]]:
                return False
            for x in range(n):
                if labels[T[x][a]] != labels[T[x][b]] or labels[T[a][x]] != labels[T[b][x]]:
                    return False
    return True


def _join(a: Congruence, b: Congruence) -> Congruence:
    uf = _UnionFind(len(a.labels), a.labels)
    for cls in b.classes:
        for x in cls[1:]:
            uf.union(cls[0], x)
    return Congruence.from_labels(uf.labels())


def principal_congruences(S: InverseSemigroup) -> list[Congruence]:
    seen: dict[tuple[int, ...], Congruence] = {}
    for a, b in itertools.combinations(range(len(S)), 2):
        c = generate_congruence(S, [(a, b)])
        seen.setdefault(c.labels, c)
    return sorted(seen.values(), key=lambda c: c.labels)


def congruences(S: InverseSemigroup, max_classes: int | None = None,
                max_size: int = CONGRUENCE_CAP) -> list[Congruence]:
    """Every congruence of S, as joins of principal congruences.

    ``max_classes`` filters the output; ``max_size`` bounds |S|.
    """
    n = len(S)
    if n > max_size:
        raise TooLarge(f"|S| = {n} exceeds congruence cap {max_size}", witness=n)
    principals = principal_congruences(S)
    identity = Congruence(tuple(range(n)))
    found = {identity.labels: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principals:
                if p.refines(theta):
                    continue
                j = _join(theta, p)
                if j.labels not in found:
                    found[j.labels] = j
                    nxt.append(j)
        frontier = nxt
    out = sorted(found.values(), key=lambda c: (-c.num_classes, c.labels))
    if max_classes is not None:
        out = [c for c in out if c.num_classes <= max_classes]
    return out


def congruences_by_idempotent_classes(S: InverseSemigroup, max_idempotent_classes: int,
                                      max_size: int = 256) -> list[Congruence]:
    """Every congruence of S with at most ``max_idempotent_classes`` classes meeting E(S).

    Such a congruence contains the congruence generated by its idempotent
    pairs.  Those idempotent-generated congruences are enumerated as joins of
    principal congruences of idempotent pairs; above each admissible one the
    congruences are pulled back from the (small) quotient.
    """
    n = len(S)
    if n > max_size:
        raise TooLarge(f"|S| = {n} exceeds cap {max_size}", witness=n)
    E = S.idempotent_indices
    seen: dict[tuple[int, ...], Congruence] = {}
    for e, f in itertools.combinations(E, 2):
        c = generate_congruence(S, [(e, f)])
        seen.setdefault(c.labels, c)
    principals = list(seen.values())
    identity = Congruence(tuple(range(n)))
    found = {identity.labels: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principals:
                if p.refines(theta):
                    continue
                j = _join(theta, p)
                if j.labels not in found:
                    found[j.labels] = j
                    nxt.append(j)
        frontier = nxt

    out: dict[tuple[int, ...], Congruence] = {}
    for theta in found.values():
        if len({theta.labels[e] for e in E}) > max_idempotent_classes:
            continue
        Q = quotient(S, theta)
        for phi in congruences(Q, max_size=max(len(Q), CONGRUENCE_CAP)):
            c = Congruence.from_labels([phi.labels[theta.labels[x]] for x in range(n)])
            out.setdefault(c.labels, c)
    return sorted(out.values(), key=lambda c: (-c.num_classes, c.labels))


def brute_force_congruences(S: InverseSemigroup) -> list[Congruence]:
    """Filter every set partition of the carrier.  Exponential; tests only."""
    n = len(S)
    out = []

    def partitions(i: int, labels: list[int], k: int):
        if i == n:
            yield tuple(labels)
            return
        for c in range(k + 1):
            labels.append(c)
            yield from partitions(i + 1, labels, max(k, c + 1))
            labels.pop()

    for labels in partitions(0, [], 0):
        if is_congruence(S, labels):
            out.append(Congruence.from_labels(labels))
    return sorted(out, key=lambda c: (-c.num_classes, c.labels))


def quotient(S: InverseSemigroup, cong: Congruence, name: str = "") -> InverseSemigroup:
    reps = [cls[0] for cls in cong.classes]
    lab = cong.labels
    table = [[lab[S.table[a][b]] for b in reps] for a in reps]
    names = [S.names[r] for r in reps]
    return verify_inverse_semigroup(table, names=names, name=name or (S.name + "/~" if S.name else ""))


def min_group_congruence(S: InverseSemigroup) -> tuple[Congruence, InverseSemigroup]:
    """s ~ t iff es = et for some idempotent e."""
    n = len(S)
    E = S.idempotent_indices
    T = S.table
    uf = _UnionFind(n)
    for s, t in itertools.combinations(range(n), 2):
        if any(T[e][s] == T[e][t] for e in E):
            uf.union(s, t)
    cong = Congruence.from_labels(uf.labels())
    if not is_congruence(S, cong.labels):
        raise ValidationError("minimum group relation is not a congruence")
    G = quotient(S, cong)
    if not G.is_group():
        raise ValidationError("minimum group quotient is not a group")
    return cong, G


def restrict_to(S: InverseSemigroup, subset: Iterable[int], name: str = "") -> tuple[InverseSemigroup, tuple[int, ...]]:
    """Subsemigroup on ``subset`` (must be closed under product and inverse).

    Returns the revalidated semigroup and the embedding as ambient indices.
    """
    emb = tuple(sorted(set(subset)))
    pos = {x: i for i, x in enumerate(emb)}
    try:
        table = [[pos[S.table[a][b]] for b in emb] for a in emb]
    except KeyError as exc:
        raise ValidationError("subset not closed under multiplication", witness=S.names[exc.args[0]]) from None
    inv = []
    for a in emb:
        if S.inv[a] not in pos:
            raise ValidationError("subset not closed under inverse", witness=S.names[a])
        inv.append(pos[S.inv[a]])
    T = verify_inverse_semigroup(table, inv_hint=inv, names=[S.names[a] for a in emb], name=name)
    return T, emb
