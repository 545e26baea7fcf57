"""Generalized Boolean algebras as Boolean rngs over F2.

A ``BooleanRng`` stores full addition and multiplication tables over the
indices ``0..m-1``.  The rng I(S) = F2[E(S)] built by :func:`semigroup_rng`
uses bitmasks over its basis as indices, so addition is XOR.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import Character, IdempotentSemilattice
from .errors import NotAtomistic, TooLarge, ValidationError

RNG_BASIS_CAP = 10


@dataclass(frozen=True, eq=False)
class BooleanRng:
    add_table: np.ndarray
    mul_table: np.ndarray
    zero: int
    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.names)

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def leq(self, x: int, y: int) -> bool:
        return int(self.mul_table[x, y]) == x

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a in range(len(self)) if _is_atom(self, a))

    def atoms_below(self, x: int) -> tuple[int, ...]:
        return tuple(a for a in self.atoms if int(self.mul_table[a, x]) == a)


def _is_atom(R: BooleanRng, a: int) -> bool:
    if a == R.zero:
        return False
    row = R.mul_table[a]
    return bool(np.all((row == R.zero) | (row == a)))


def verify_rng(R: BooleanRng) -> BooleanRng:
    A, M, z = R.add_table, R.mul_table, R.zero
    m = len(R)
    idx = np.arange(m)
    if not (A == A.T).all() or not (A[idx, idx] == z).all() or not (A[z] == idx).all():
        raise ValidationError("addition is not an exponent-2 abelian group law")
    if not (A[A] == A[idx[:, None, None], A[None, :, :]]).all():
        raise ValidationError("addition is not associative")
    if not (M == M.T).all() or not (M[idx, idx] == idx).all():
        raise ValidationError("multiplication is not commutative and idempotent")
    if not (M[M] == M[idx[:, None, None], M[None, :, :]]).all():
        raise ValidationError("multiplication is not associative")
    # x(y + z) = xy + xz
    lhs = M[idx[:, None, None], A[None, :, :]]
    rhs = A[M[:, :, None], M[:, None, :]]
    if not (lhs == rhs).all():
        raise ValidationError("distributivity fails")
    return R


@dataclass(frozen=True)
class SemigroupRng:
    """I(S) together with the basis embedding E -> I(S).

    ``basis[i]`` is the idempotent for bit ``i``; ``embed[e]`` is the rng
    element (bitmask) of idempotent ``e``, which is 0 for an identified zero.
    """

    rng: BooleanRng
    basis: tuple[int, ...]
    embed: dict[int, int]
    semilattice: IdempotentSemilattice
    zero_identified: bool

    def character_of_atom(self, a: int) -> Character:
        ones = frozenset(e for e in self.semilattice.carrier
                         if self.rng.mul(a, self.embed[e]) == a)
        return Character(ones, respects_zero=self.zero_identified)


def semigroup_rng(E: IdempotentSemilattice, zero_identified: bool | None = None) -> SemigroupRng:
    S = E.semigroup
    if zero_identified is None:
        zero_identified = E.zero is not None
    if E.zero is not None and not zero_identified:
        raise ValueError("zero_identified is mandatory when the semigroup has a zero")
    if E.zero is None and zero_identified:
        raise ValueError("no zero to identify")
    basis = tuple(e for e in E.carrier if not (zero_identified and e == E.zero))
    k = len(basis)
    if k > RNG_BASIS_CAP:
        raise TooLarge(f"I(S) would have 2^{k} elements", witness=k)
    bit = {e: 1 << i for i, e in enumerate(basis)}
    embed = {e: bit.get(e, 0) for e in E.carrier}
    m = 1 << k

    # single-basis products by recursion on the lowest set bit
    single = np.zeros((m, k), dtype=np.int64)
    for x in range(1, m):
        low = x & -x
        i = low.bit_length() - 1
        for j in range(k):
            single[x, j] = single[x ^ low, j] ^ embed[S.table[basis[i]][basis[j]]]
    mul = np.zeros((m, m), dtype=np.int64)
    for y in range(1, m):
        low = y & -y
        j = low.bit_length() - 1
        mul[:, y] = mul[:, y ^ low] ^ single[:, j]
    idx = np.arange(m)
    add = idx[:, None] ^ idx[None, :]
    names = tuple(_mask_name(x, basis, S.names) for x in range(m))
    R = BooleanRng(add, mul, 0, names)
    return SemigroupRng(R, basis, embed, E, zero_identified)


def _mask_name(x: int, basis, names) -> str:
    if x == 0:
        return "0"
    return "+".join(names[basis[i]] for i in range(len(basis)) if x >> i & 1)


def atoms(R: BooleanRng) -> list[int]:
    """Minimal nonzero elements; checks every element is the sum of the atoms below it."""
    ats = list(R.atoms)
    for x in range(len(R)):
        total = R.zero
        for a in R.atoms_below(x):
            total = R.add(total, a)
        if total != x:
            raise NotAtomistic(f"{R.names[x]} is not the sum of its atoms", witness=R.names[x])
    return ats


@dataclass(frozen=True)
class RngCharacter:
    values: tuple[int, ...]
    atom: int

    def __call__(self, x: int) -> int:
        return self.values[x]


def _is_rng_hom(R: BooleanRng, values: Sequence[int]) -> bool:
    v = np.asarray(values, dtype=np.int64)
    if not v.any():
        return False
    return bool((v[R.add_table] == (v[:, None] ^ v[None, :])).all()
                and (v[R.mul_table] == (v[:, None] & v[None, :])).all())


def rng_characters(R: BooleanRng) -> list[RngCharacter]:
    out = []
    for a in R.atoms:
        values = tuple(1 if R.mul(a, x) == a else 0 for x in range(len(R)))
        if not _is_rng_hom(R, values):
            raise ValidationError("atom indicator is not a rng character", witness=R.names[a])
        out.append(RngCharacter(values, a))
    return out


def power_set_rng(k: int, point_names: Sequence[str] | None = None) -> BooleanRng:
    m = 1 << k
    idx = np.arange(m)
    if point_names is None:
        point_names = [str(i) for i in range(k)]
    names = tuple("{" + ",".join(point_names[i] for i in range(k) if x >> i & 1) + "}" for x in range(m))
    return BooleanRng(idx[:, None] ^ idx[None, :], idx[:, None] & idx[None, :], 0, names)


@dataclass(frozen=True)
class StoneSpectrum:
    points: tuple[int, ...]
    co: BooleanRng
    iso: tuple[int, ...]   # rng element -> bitmask of points below it


def stone_spectrum(R: BooleanRng) -> StoneSpectrum:
    """Points are atoms; x is sent to the set of atoms below it."""
    pts = tuple(atoms(R))
    co = power_set_rng(len(pts), [R.names[a] for a in pts])
    iso = tuple(sum(1 << i for i, a in enumerate(pts) if R.mul(a, x) == a) for x in range(len(R)))
    if sorted(iso) != list(range(len(co))):
        raise ValidationError("atom map is not a bijection onto CO(X)")
    for x, y in itertools.product(range(len(R)), repeat=2):
        if iso[R.add(x, y)] != iso[x] ^ iso[y] or iso[R.mul(x, y)] != iso[x] & iso[y]:
            raise ValidationError("atom map is not a rng homomorphism", witness=(R.names[x], R.names[y]))
    return StoneSpectrum(pts, co, iso)


def rng_isomorphic(R: BooleanRng, T: BooleanRng) -> tuple[int, ...] | None:
    """Isomorphism via the Stone spectra: any bijection of atoms lifts."""
    if len(R) != len(T) or len(R.atoms) != len(T.atoms):
        return None
    sr, st = stone_spectrum(R), stone_spectrum(T)
    back = {mask: x for x, mask in enumerate(st.iso)}
    return tuple(back[sr.iso[x]] for x in range(len(R)))
