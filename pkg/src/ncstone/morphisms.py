"""Backtracking search for homomorphisms between finite inverse semigroups.

Images are chosen for a small generating set; everything else is forced by
propagation through products and inverses and, for Boolean inverse
semigroups, through orthogonal joins and relative complements.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator, Mapping

from .core import InverseSemigroup


def inverse_generators(S: InverseSemigroup) -> list[int]:
    """Greedy generating set of S as an inverse semigroup, in index order."""
    n = len(S)
    covered: set[int] = set()
    gens: list[int] = []
    for x in range(n):
        if x in covered:
            continue
        gens.append(x)
        covered = _closure(S, gens)
        if len(covered) == n:
            break
    return gens


def _closure(S: InverseSemigroup, gens) -> set[int]:
    seen = set()
    queue = deque()
    for g in gens:
        for x in (g, S.inv[g]):
            if x not in seen:
                seen.add(x)
                queue.append(x)
    while queue:
        x = queue.popleft()
        for y in list(seen):
            for z in (S.table[x][y], S.table[y][x]):
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    return seen


class _Conflict(Exception):
    pass


class _State:
    def __init__(self, S, T, src, tgt):
        self.S, self.T, self.src, self.tgt = S, T, src, tgt
        self.img: dict[int, int] = {}
        self.order: list[int] = []

    def set(self, x: int, v: int, queue: deque):
        cur = self.img.get(x)
        if cur is None:
            self.img[x] = v
            self.order.append(x)
            queue.append(x)
        elif cur != v:
            raise _Conflict

    def propagate(self, queue: deque):
        S, T, img = self.S, self.T, self.img
        while queue:
            x = queue.popleft()
            fx = img[x]
            self.set(S.inv[x], T.inv[fx], queue)
            for y in list(self.order):
                fy = img[y]
                self.set(S.table[x][y], T.table[fx][fy], queue)
                self.set(S.table[y][x], T.table[fy][fx], queue)
                if self.src is not None:
                    self._bis_step(x, y, fx, fy, queue)
                    self._bis_step(y, x, fy, fx, queue)

    def _bis_step(self, x, y, fx, fy, queue):
        src, tgt = self.src, self.tgt
        j = src.join_table[x][y]
        if j >= 0:
            jt = tgt.join_table[fx][fy]
            if jt < 0:
                raise _Conflict
            self.set(j, jt, queue)
        # relative complement x \ y for idempotents y <= x
        if x in src.emask and y in src.emask and src.emask[y] & ~src.emask[x] == 0:
            if fx not in tgt.emask or fy not in tgt.emask:
                raise _Conflict
            if tgt.emask[fy] & ~tgt.emask[fx]:
                raise _Conflict
            self.set(src.relative_complement(x, y), tgt.relative_complement(fx, fy), queue)

    def snapshot(self):
        return len(self.order)

    def rollback(self, k):
        for x in self.order[k:]:
            del self.img[x]
        del self.order[k:]


def search_morphisms(
    S: InverseSemigroup,
    T: InverseSemigroup,
    *,
    src_bis=None,
    tgt_bis=None,
    fixed: Mapping[int, int] | None = None,
    preserve_zero: bool = True,
    limit: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every homomorphism S -> T extending ``fixed``.

    With ``src_bis``/``tgt_bis`` (BooleanInverseSemigroup views of S and T)
    only join-preserving maps are produced.
    """
    if (src_bis is None) != (tgt_bis is None):
        raise ValueError("give both BIS views or neither")
    n = len(S)
    state = _State(S, T, src_bis, tgt_bis)
    queue: deque = deque()
    try:
        if preserve_zero and S.zero is not None:
            if T.zero is None:
                return
            state.set(S.zero, T.zero, queue)
        for x, v in (fixed or {}).items():
            state.set(x, v, queue)
        state.propagate(queue)
    except _Conflict:
        return

    gens = inverse_generators(S)
    idem_T = [v for v in range(len(T)) if T.is_idempotent(v)]
    count = 0

    def candidates(x: int):
        return idem_T if S.is_idempotent(x) else range(len(T))

    def rec(i: int):
        nonlocal count
        while i < len(gens) and gens[i] in state.img:
            i += 1
        if i == len(gens):
            if len(state.img) == n and _check(S, T, state.img, src_bis, tgt_bis):
                count += 1
                yield tuple(state.img[x] for x in range(n))
            return
        x = gens[i]
        for v in candidates(x):
            k = state.snapshot()
            q: deque = deque()
            try:
                state.set(x, v, q)
                state.propagate(q)
            except _Conflict:
                state.rollback(k)
                continue
            yield from rec(i + 1)
            state.rollback(k)
            if limit is not None and count >= limit:
                return

    yield from rec(0)


def _check(S, T, img, src, tgt) -> bool:
    n = len(S)
    f = [img[x] for x in range(n)]
    for a in range(n):
        fa = f[a]
        row, trow = S.table[a], T.table[fa]
        for b in range(n):
            if f[row[b]] != trow[f[b]]:
                return False
        if f[S.inv[a]] != T.inv[fa]:
            return False
    if src is not None:
        for a in range(n):
            for b in range(n):
                j = src.join_table[a][b]
                if j >= 0 and tgt.join_table[f[a]][f[b]] != f[j]:
                    return False
    return True


def is_homomorphism(S: InverseSemigroup, T: InverseSemigroup, f) -> bool:
    return _check(S, T, dict(enumerate(f)), None, None)
