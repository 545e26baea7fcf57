"""The enveloping Boolean inverse semigroup B(S) of a finite inverse semigroup.

Elements of C(S) are formal sums of terms ``(s, e)`` with ``s`` in S and
``e`` a nonzero element of the Boolean rng I(S).  Every sum is split into
atomic terms: an atom ``a`` of I(S) is the point ``up(q)`` of a unique nonzero
idempotent ``q``, and the term ``(s, a)`` with ``a <= supp s`` only depends on
the product ``u = s q``.  The set of these ``u`` is the canonical form of the
sum, and two sums are equivalent exactly when their canonical forms agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .bis import BisMorphism, BooleanInverseSemigroup, verify_bis, verify_bis_morphism
from .core import InverseSemigroup, character_generator, idempotents, verify_inverse_semigroup
from .errors import NotAHomomorphism, NotOrthogonal, NotWellDefined, TooLarge, ValidationError
from .gba import SemigroupRng, semigroup_rng
from .morphisms import is_homomorphism, search_morphisms

FORMAL_SUM_RNG_CAP = 16


@dataclass(frozen=True)
class FormalSum:
    terms: tuple[tuple[int, int], ...]   # (semigroup index, rng element)

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def of(cls, terms) -> "FormalSum":
        return cls(tuple(sorted((int(s), int(e)) for s, e in terms)))


class SumContext:
    """S together with I(S), the action of S on I(S) and the atom/idempotent dictionary."""

    def __init__(self, S: InverseSemigroup):
        self.S = S
        self.E = idempotents(S)
        self.I: SemigroupRng = semigroup_rng(self.E, zero_identified=S.zero is not None)
        R = self.I.rng
        self.R = R
        self.atom_of: dict[int, int] = {}     # nonzero idempotent q -> atom of I(S)
        self.idem_of: dict[int, int] = {}     # atom -> q
        for a in R.atoms:
            q = character_generator(self.E, self.I.character_of_atom(a))
            self.atom_of[q] = a
            self.idem_of[a] = q
        self._theta: dict[int, list[int]] = {}

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(s for s in range(len(self.S)) if s != self.S.zero)

    def idem(self, e: int) -> int:
        """The rng element of idempotent e."""
        return self.I.embed[e]

    def theta(self, s: int, x: int) -> int:
        """s x s*, extended linearly to I(S)."""
        imgs = self._theta.get(s)
        if imgs is None:
            S, basis = self.S, self.I.basis
            imgs = [self.I.embed[S.prod(s, b, S.inv[s])] for b in basis]
            self._theta[s] = imgs
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= imgs[i]
            x >>= 1
            i += 1
        return out

    def effective(self, s: int, e: int) -> int:
        return self.R.mul(e, self.idem(self.S.support(s)))

    def atoms_below(self, x: int) -> tuple[int, ...]:
        return self.R.atoms_below(x)

    def valid(self, terms: Sequence[tuple[int, int]]) -> bool:
        R = self.R
        if any(e == R.zero for _, e in terms):
            return False
        for (s, e), (t, f) in itertools.combinations(terms, 2):
            if R.mul(e, f) != R.zero:
                return False
            if R.mul(self.theta(s, e), self.theta(t, f)) != R.zero:
                return False
        return True

    def canon(self, x: FormalSum) -> frozenset[int]:
        S = self.S
        out = set()
        for s, e in x.terms:
            for a in self.atoms_below(self.effective(s, e)):
                out.add(S.table[s][self.idem_of[a]])
        return frozenset(out)

    def atomic_sum(self, germs) -> FormalSum:
        return FormalSum.of((u, self.atom_of[self.S.support(u)]) for u in germs)

    def product(self, x: FormalSum, y: FormalSum) -> FormalSum:
        """(s e)(t f) = st (t* e t) f, term by term."""
        S, R = self.S, self.R
        terms = []
        for s, e in x.terms:
            for t, f in y.terms:
                g = R.mul(self.theta(S.inv[t], self.effective(s, e)), f)
                if g != R.zero:
                    terms.append((S.table[s][t], g))
        return FormalSum.of(terms)

    def star(self, x: FormalSum) -> FormalSum:
        return FormalSum.of((self.S.inv[s], self.theta(s, self.effective(s, e))) for s, e in x.terms
                            if self.effective(s, e) != self.R.zero)

    def support_sum(self, x: FormalSum) -> int:
        out = self.R.zero
        for s, e in x.terms:
            out = self.R.add(out, self.effective(s, e))
        return out


def formal_sums(S: InverseSemigroup, max_rng: int = FORMAL_SUM_RNG_CAP, ctx: SumContext | None = None) -> Iterator[FormalSum]:
    """Every element of C(S) up to term order; terms with s = 0 are omitted."""
    ctx = ctx or SumContext(S)
    if len(ctx.R) > max_rng:
        raise TooLarge(f"|I(S)| = {len(ctx.R)} exceeds {max_rng}", witness=len(ctx.R))
    cands = [(s, e) for s in ctx.nonzero for e in range(len(ctx.R)) if e != ctx.R.zero]
    R = ctx.R
    th = {(s, e): ctx.theta(s, e) for s, e in cands}
    compat = {}
    for i, j in itertools.combinations(range(len(cands)), 2):
        (s, e), (t, f) = cands[i], cands[j]
        compat[i, j] = R.mul(e, f) == R.zero and R.mul(th[cands[i]], th[cands[j]]) == R.zero

    def rec(start: int, chosen: list[int]):
        yield FormalSum(tuple(cands[i] for i in chosen))
        for k in range(start, len(cands)):
            if all(compat[i, k] for i in chosen):
                chosen.append(k)
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def sums_equivalent(ctx: SumContext, x: FormalSum, y: FormalSum) -> bool:
    """Equal effective supports, and wherever two terms overlap on an atom they agree there.

    Agreement on an atom ``a`` means some idempotent ``p`` above the point
    ``a`` has ``s p = t p``.
    """
    S, R = ctx.S, ctx.R
    if ctx.support_sum(x) != ctx.support_sum(y):
        return False
    E = ctx.E.carrier
    for s, e in x.terms:
        es = ctx.effective(s, e)
        for t, f in y.terms:
            overlap = R.mul(es, ctx.effective(t, f))
            for a in ctx.atoms_below(overlap):
                q = ctx.idem_of[a]
                if not any(S.table[q][p] == q and S.table[s][p] == S.table[t][p] for p in E):
                    return False
    return True


@dataclass(frozen=True, eq=False)
class Booleanization:
    source: InverseSemigroup
    bis: BooleanInverseSemigroup
    embedding: tuple[int, ...]               # S index -> B(S) index
    germs: tuple[frozenset[int], ...]        # canonical form of each element
    context: SumContext = field(repr=False)

    def __iter__(self):
        return iter((self.bis, self.embedding))

    @cached_property
    def index_of(self) -> dict[frozenset[int], int]:
        return {g: i for i, g in enumerate(self.germs)}

    def sum_of(self, b: int) -> FormalSum:
        return self.context.atomic_sum(self.germs[b])

    def class_of(self, x: FormalSum) -> int:
        return self.index_of[self.context.canon(x)]


def booleanize(S: InverseSemigroup, ctx: SumContext | None = None) -> Booleanization:
    ctx = ctx or SumContext(S)
    germs = ctx.nonzero
    # atomic terms (u, atom of supp u); enumerate pairwise compatible sets
    atomic = [ctx.atomic_sum([u]).terms[0] for u in germs]
    n = len(atomic)
    ok = [[ctx.valid([atomic[i], atomic[j]]) for j in range(n)] for i in range(n)]
    classes: list[frozenset[int]] = []

    def rec(start: int, chosen: list[int]):
        classes.append(frozenset(germs[i] for i in chosen))
        for k in range(start, n):
            if all(ok[i][k] for i in chosen):
                chosen.append(k)
                rec(k + 1, chosen)
                chosen.pop()

    rec(0, [])
    classes.sort(key=lambda g: (len(g), sorted(g)))
    pos = {g: i for i, g in enumerate(classes)}
    sums = [ctx.atomic_sum(g) for g in classes]
    table = [[pos[ctx.canon(ctx.product(x, y))] for y in sums] for x in sums]
    inv = [pos[ctx.canon(ctx.star(x))] for x in sums]
    names = ["{" + ",".join(S.names[u] for u in sorted(g)) + "}" for g in classes]
    B = verify_bis(verify_inverse_semigroup(table, inv_hint=inv, names=names,
                                            name=f"B({S.name})" if S.name else ""))
    for i, j in itertools.combinations(range(len(classes)), 2):
        k = B.join_table[i][j]
        if k >= 0 and classes[k] != classes[i] | classes[j]:
            raise ValidationError("orthogonal join is not concatenation of sums")
    emb = []
    for s in range(len(S)):
        emb.append(pos[ctx.canon(FormalSum.of([(s, ctx.idem(S.support(s)))]))] if s != S.zero else B.zero)
    nonzero_imgs = [emb[s] for s in ctx.nonzero]
    if len(set(nonzero_imgs)) != len(nonzero_imgs):
        raise ValidationError("embedding S -> B(S) is not injective")
    return Booleanization(S, B, tuple(emb), tuple(classes), ctx)


def extend_hom(bz: Booleanization, phi: Sequence[int] | Mapping[int, int], target: BooleanInverseSemigroup,
               check_unique: bool = True, check_all_sums: bool = False) -> BisMorphism:
    """The unique morphism B(S) -> target restricting to ``phi`` on S."""
    S, ctx = bz.source, bz.context
    T = target.semigroup
    phi = tuple(phi[s] for s in range(len(S)))
    if not is_homomorphism(S, T, phi):
        raise NotAHomomorphism("map is not multiplicative and involution-compatible")
    if S.zero is not None and phi[S.zero] != T.zero:
        raise NotAHomomorphism("zero is not sent to zero", witness=S.names[S.zero])
    basis = ctx.I.basis

    def hat(x: int) -> int:
        mask = 0
        for i, b in enumerate(basis):
            if x >> i & 1:
                mask ^= target.emask[phi[b]]
        return target.eindex[mask]

    def image(x: FormalSum) -> int:
        parts = [T.table[phi[s]][hat(e)] for s, e in x.terms]
        out = T.zero
        for p in parts:
            try:
                out = target.join(out, p)
            except NotOrthogonal as exc:
                raise NotWellDefined("images of the terms are not orthogonal", witness=str(x.terms)) from exc
        return out

    f = [image(bz.sum_of(b)) for b in range(len(bz.bis))]
    for s in ctx.nonzero:
        single = FormalSum.of([(s, ctx.idem(S.support(s)))])
        if image(single) != f[bz.embedding[s]]:
            raise NotWellDefined("two representatives of one class have different images",
                                 witness=S.names[s])
    if check_all_sums:
        for x in formal_sums(S, ctx=ctx):
            b = bz.class_of(x)
            if image(x) != f[b]:
                raise NotWellDefined("two representatives of one class have different images",
                                     witness=str(x.terms))
    m = verify_bis_morphism(bz.bis, target, f)
    for s in range(len(S)):
        if f[bz.embedding[s]] != phi[s] and s != S.zero:
            raise NotWellDefined("extension does not restrict to phi", witness=S.names[s])
    if check_unique:
        fixed = {bz.embedding[s]: phi[s] for s in range(len(S))}
        found = list(search_morphisms(bz.bis.semigroup, T, src_bis=bz.bis, tgt_bis=target,
                                      fixed=fixed, limit=2))
        if found != [m.map]:
            raise NotWellDefined(f"{len(found)} morphisms extend phi", witness=len(found))
    return m


def germ_groupoid(S: InverseSemigroup):
    """Arrows S \\ {0}, units the nonzero idempotents, u v defined when supp u = im v.

    Independent description of the dual groupoid of B(S); used as a cross-check.
    """
    from .groupoid import verify_groupoid

    arrows = [s for s in range(len(S)) if s != S.zero]
    units = [e for e in arrows if S.is_idempotent(e)]
    upos = {e: i for i, e in enumerate(units)}
    apos = {s: i for i, s in enumerate(arrows)}
    compose = {}
    for u in arrows:
        for v in arrows:
            if S.support(u) == S.image(v):
                compose[(apos[u], apos[v])] = apos[S.table[u][v]]
    return verify_groupoid([S.names[e] for e in units], [S.names[s] for s in arrows],
                           [upos[S.support(s)] for s in arrows], [upos[S.image(s)] for s in arrows],
                           compose, [apos[e] for e in units], name=f"germs({S.name})" if S.name else "")
