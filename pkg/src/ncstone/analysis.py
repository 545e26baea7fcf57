"""Finite-scale classification: subquotients, group quotients of corners,
isotropy comparisons, truncations of the convergent-sequence groupoid and
condition reports for the CCR and type I questions."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bis import (AdditiveIdeal, BisMorphism, BooleanInverseSemigroup, additive_ideals, bis_isomorphic,
                  corner, is_monoidal, is_zero_simplifying, quotient_by_additive_ideal, sub_bis,
                  verify_bis, verify_bis_morphism)
from .booleanization import Booleanization, booleanize
from .core import (Congruence, InverseSemigroup, adjoin_zero, congruences, congruences_by_idempotent_classes,
                   generate_congruence, quotient,
                   restrict_to)
from .errors import NcStoneError, TooLarge, ValidationError
from .groupoid import (FiniteGroupoid, GAMMA_ARROW_CAP, bis_image, bis_product, bis_support, bis_units,
                       bisections, btone, dual_groupoid, gamma_size, is_bisection, isotropy, orbits,
                       orbit_space_separation, restrict)
from .groups import (SUBGROUP_ENUMERATION_CAP, dedupe_groups, describe_group, group_isomorphism,
                     is_abelian, normal_subgroups, quotient_group, same_group_classes, subgroups)
from .morphisms import search_morphisms

SUB_BIS_CAP = 5000
SUBQUOTIENT_SIZE_CAP = 128
CORNER_SIZE_CAP = 256


# ---------------------------------------------------------------------------
# sub-BIS enumeration and subquotients


def _closure_from(B: BooleanInverseSemigroup, base: frozenset[int], new: Iterable[int]) -> frozenset[int]:
    """Close ``base`` (already closed) together with ``new``."""
    S = B.semigroup
    T, inv, J = S.table, S.inv, B.join_table
    emask, eindex = B.emask, B.eindex
    seen = set(base)
    queue = [x for x in new if x not in seen]
    seen.update(queue)
    while queue:
        x = queue.pop()
        cand = [inv[x]]
        mx = emask.get(x)
        for y in list(seen):
            cand.append(T[x][y])
            cand.append(T[y][x])
            j = J[x][y]
            if j >= 0:
                cand.append(j)
            if mx is not None:
                my = emask.get(y)
                if my is not None:
                    cand.append(eindex[mx & ~my])
                    cand.append(eindex[my & ~mx])
        for z in cand:
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


def sub_bis_lattice(B: BooleanInverseSemigroup, max_count: int = SUB_BIS_CAP, min_size: int = 1) -> list[frozenset[int]]:
    """Every Boolean inverse subsemigroup closed under ambient joins, smallest first."""
    bottom = _closure_from(B, frozenset(), [B.zero])
    found = {bottom}
    frontier = [bottom]
    n = len(B)
    while frontier:
        nxt = []
        for C in frontier:
            for b in range(n):
                if b in C:
                    continue
                D = _closure_from(B, C, [b])
                if D not in found:
                    found.add(D)
                    nxt.append(D)
                    if len(found) > max_count:
                        raise TooLarge(f"more than {max_count} sub-BIS", witness=max_count)
        frontier = nxt
    out = [C for C in found if len(C) >= min_size]
    return sorted(out, key=lambda C: (len(C), sorted(C)))


@dataclass(frozen=True, eq=False)
class SubquotientWitness:
    sub: frozenset[int]                  # elements of B
    sub_bis: BooleanInverseSemigroup
    embedding: tuple[int, ...]           # sub_bis index -> B index
    ideal: AdditiveIdeal                 # in sub_bis indices
    quotient_map: BisMorphism            # sub_bis -> quotient
    iso: BisMorphism                     # quotient -> target

    def describe(self, B: BooleanInverseSemigroup) -> dict:
        return {
            "sub": sorted(B.names[x] for x in self.sub),
            "ideal": sorted(self.sub_bis.names[x] for x in self.ideal.subset),
            "quotient_size": len(self.quotient_map.target),
        }


def subquotient_search(B: BooleanInverseSemigroup, target: BooleanInverseSemigroup,
                       max_size: int = SUBQUOTIENT_SIZE_CAP, max_subs: int = SUB_BIS_CAP) -> SubquotientWitness | None:
    """First (sub-BIS, additive ideal) pair whose quotient is isomorphic to ``target``.

    Sub-BIS are tried by increasing size, ideals by increasing size.
    """
    if len(B) > max_size:
        raise TooLarge(f"|B| = {len(B)} exceeds {max_size}", witness=len(B))
    if len(target) > len(B):
        return None
    t_atoms = len(target.eatoms)
    for C in sub_bis_lattice(B, max_count=max_subs, min_size=len(target)):
        CB, emb = sub_bis(B, C)
        if len(CB.eatoms) < t_atoms:
            continue
        for I in additive_ideals(CB):
            if len(CB) - len(I) + 1 < len(target):
                continue
            Q, pi = quotient_by_additive_ideal(CB, I)
            if len(Q) != len(target):
                continue
            iso = bis_isomorphic(Q, target)
            if iso is not None:
                return SubquotientWitness(C, CB, emb, I, pi, iso)
    return None


def simple_subquotients(B: BooleanInverseSemigroup, max_subs: int = SUB_BIS_CAP) -> list[tuple[int, frozenset[int]]]:
    """Sizes of the monoidal 0-simplifying subquotients, one (size, sub) per size, largest first.

    A quotient of C by an additive ideal is 0-simplifying exactly when the
    remaining units of the dual groupoid of C form a single orbit.
    """
    best: dict[int, frozenset[int]] = {}
    for C in sub_bis_lattice(B, max_count=max_subs):
        CB, _ = sub_bis(B, C)
        H = dual_groupoid(CB)
        for o in orbits(H):
            size = gamma_size(restrict(H, o))
            if size not in best:
                best[size] = C
    return sorted(best.items(), key=lambda kv: -kv[0])


# ---------------------------------------------------------------------------
# group-with-zero quotients of corners


@dataclass(frozen=True, eq=False)
class CornerQuotient:
    p: int                               # idempotent of B
    corner: BooleanInverseSemigroup
    embedding: tuple[int, ...]           # corner index -> B index
    group: InverseSemigroup
    morphism: BisMorphism                # corner -> group with zero


def _group_with_zero_bis(G: InverseSemigroup) -> BooleanInverseSemigroup:
    G0, _ = adjoin_zero(G)
    return verify_bis(G0)


def _quotient_to_group(C: BooleanInverseSemigroup, cong: Congruence) -> tuple[InverseSemigroup, tuple[int, ...]] | None:
    """If C/cong is a group with zero and the quotient map is a BIS morphism,
    return the group and the map C -> G0 (zero last)."""
    Q = quotient(C.semigroup, cong)
    if len(Q) < 2 or len(Q.idempotent_indices) != 2 or Q.zero is None:
        return None
    nz = [x for x in range(len(Q)) if x != Q.zero]
    G, emb = restrict_to(Q, nz, name="")
    pos = {x: i for i, x in enumerate(emb)}
    z = len(G)
    f = tuple(z if cong.labels[c] == Q.zero else pos[cong.labels[c]] for c in range(len(C)))
    G0 = _group_with_zero_bis(G)
    try:
        verify_bis_morphism(C, G0, f)
    except ValidationError:
        return None
    return G, f


def _filter_quotients(C: BooleanInverseSemigroup) -> list[tuple[InverseSemigroup, tuple[int, ...]]]:
    """Quotients C -> G0 through the congruence of each principal filter of E(C)."""
    S = C.semigroup
    E = S.idempotent_indices
    out = []
    for f in E:
        if f == C.zero:
            continue
        F = [e for e in E if S.table[f][e] == f]
        pairs = [(e, C.zero) for e in E if e not in F] + [(F[0], e) for e in F[1:]]
        cong = generate_congruence(S, pairs)
        got = _quotient_to_group(C, cong)
        if got is not None:
            out.append(got)
    return out


def _compose_with_group_quotients(G: InverseSemigroup, f: tuple[int, ...]):
    z = len(G)
    for N in normal_subgroups(G):
        H = quotient_group(G, N)
        cos = {}
        for g in range(len(G)):
            coset = frozenset(G.table[g][n] for n in N)
            cos.setdefault(coset, len(cos))
        lab = [cos[frozenset(G.table[g][n] for n in N)] for g in range(len(G))]
        # quotient_group labels classes by first occurrence, as here
        yield H, tuple(len(H) if x == z else lab[x] for x in f)


def group_quotients_of_corners(B: BooleanInverseSemigroup, method: str = "filters",
                               max_size: int = CORNER_SIZE_CAP, idempotents: Sequence[int] | None = None) -> list[CornerQuotient]:
    """Every BIS morphism from a corner pBp onto a group with zero.

    ``method="filters"`` quotients by the congruence of each principal filter
    and then by every normal subgroup; ``method="congruences"`` filters every
    congruence of the corner with two idempotent classes (slow, used as an oracle).
    """
    if method not in ("filters", "congruences"):
        raise ValueError(f"unknown method {method!r}")
    out = []
    ps = idempotents if idempotents is not None else B.idempotents
    for p in ps:
        if p == B.zero:
            continue
        C, emb = corner(B, p)
        if len(C) > max_size:
            raise TooLarge(f"corner of size {len(C)} exceeds {max_size}", witness=B.names[p])
        if method == "filters":
            for G, f in _filter_quotients(C):
                for H, g in _compose_with_group_quotients(G, f):
                    H0 = _group_with_zero_bis(H)
                    out.append(CornerQuotient(p, C, emb, H, verify_bis_morphism(C, H0, g)))
        else:
            for cong in congruences_by_idempotent_classes(C.semigroup, 2, max_size=max_size):
                got = _quotient_to_group(C, cong)
                if got is not None:
                    G, f = got
                    out.append(CornerQuotient(p, C, emb, G, verify_bis_morphism(C, _group_with_zero_bis(G), f)))
    return out


def corner_groups(B: BooleanInverseSemigroup, method: str = "filters", max_size: int = CORNER_SIZE_CAP) -> list[InverseSemigroup]:
    return dedupe_groups(q.group for q in group_quotients_of_corners(B, method=method, max_size=max_size))


def isotropy_groups(G: FiniteGroupoid) -> list[InverseSemigroup]:
    return [isotropy(G, min(o)) for o in orbits(G)]


def isotropy_quotients(G: FiniteGroupoid) -> list[InverseSemigroup]:
    out = []
    for K in isotropy_groups(G):
        for N in normal_subgroups(K):
            out.append(quotient_group(K, N))
    return dedupe_groups(out)


@dataclass(frozen=True, eq=False)
class IsotropyCornerRecord:
    corner_groups: tuple[InverseSemigroup, ...]
    isotropy_quotients: tuple[InverseSemigroup, ...]
    match: bool

    def labels(self) -> dict:
        return {"corners": sorted(describe_group(g) for g in self.corner_groups),
                "isotropy": sorted(describe_group(g) for g in self.isotropy_quotients)}


def isotropy_vs_corner_check(G: FiniteGroupoid, method: str = "filters", max_size: int = CORNER_SIZE_CAP,
                             gamma: BooleanInverseSemigroup | None = None) -> IsotropyCornerRecord:
    """Groups H with H0 a quotient of a corner of Gamma(G), against quotients of isotropy groups."""
    B = gamma if gamma is not None else bisections(G)
    a = corner_groups(B, method=method, max_size=max_size)
    b = isotropy_quotients(G)
    return IsotropyCornerRecord(tuple(a), tuple(b), same_group_classes(a, b))


@dataclass(frozen=True, eq=False)
class BooleanizationQuotientRecord:
    booleanization: Booleanization
    surjections: int
    restrict_surjective: bool
    failures: tuple
    isotropy_in_corners: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return self.restrict_surjective and all(v for _, v in self.isotropy_in_corners)


def semigroup_corner_groups(S0: InverseSemigroup, max_size: int = 16) -> list[InverseSemigroup]:
    """Groups G with G0 a quotient of some corner p S0 p (zero-preserving, two idempotents)."""
    out = []
    for p in S0.idempotent_indices:
        if p == S0.zero:
            continue
        carrier = {S0.prod(p, s, p) for s in range(len(S0))}
        C, _ = restrict_to(S0, carrier)
        for cong in congruences(C, max_size=max_size):
            Q = quotient(C, cong)
            if len(Q) < 2 or len(Q.idempotent_indices) != 2 or Q.zero is None:
                continue
            if cong.labels[C.zero] != Q.zero:
                continue
            nz = [x for x in range(len(Q)) if x != Q.zero]
            G, _ = restrict_to(Q, nz)
            out.append(G)
    return dedupe_groups(out)


def booleanization_quotient_check(S: InverseSemigroup, max_size: int = 16) -> BooleanizationQuotientRecord:
    """Every surjection B(S) -> G0 restricts to a surjection on the image of S0,
    and every isotropy group of the dual groupoid of B(S) is a corner quotient of S0."""
    bz = booleanize(S)
    B = bz.bis
    T = B.semigroup
    image_S0 = set(bz.embedding) | {B.zero}
    candidates = dedupe_groups(q.group for q in group_quotients_of_corners(B, idempotents=[B.unit], max_size=len(B)))
    count = 0
    failures = []
    for G in candidates:
        G0 = _group_with_zero_bis(G)
        for f in search_morphisms(T, G0.semigroup, src_bis=B, tgt_bis=G0):
            if len(set(f)) != len(G0):
                continue
            count += 1
            if {f[x] for x in image_S0} != set(range(len(G0))):
                failures.append((describe_group(G), f))
    S0, _ = adjoin_zero(S)
    found = semigroup_corner_groups(S0, max_size=max_size)
    checks = []
    for K in isotropy_groups(dual_groupoid(B)):
        ok = any(group_isomorphism(K, H) is not None for H in found)
        checks.append((describe_group(K), ok))
    return BooleanizationQuotientRecord(bz, count, not failures, tuple(failures), tuple(checks))


# ---------------------------------------------------------------------------
# truncations of the convergent-sequence groupoid


@dataclass(frozen=True, eq=False)
class Truncation:
    n: int
    groupoid: FiniteGroupoid
    gamma: BooleanInverseSemigroup | None      # None beyond the Gamma cap
    generators: dict[str, frozenset[int]]      # s0..s{n-1} and f, as arrow sets

    def s(self, k: int) -> frozenset[int]:
        return self.generators[f"s{k}"]

    @property
    def f(self) -> frozenset[int]:
        return self.generators["f"]

    def element(self, name: str) -> int:
        if self.gamma is None:
            raise ValidationError("Gamma was not materialized for this truncation")
        return self.gamma.bisection_index[self.generators[name]]


def btone_truncation(n: int, max_arrows: int = GAMMA_ARROW_CAP) -> Truncation:
    if n < 1:
        raise ValueError("n must be >= 1")
    G = btone(n)
    gen = {}
    for k in range(n):
        # the arrow k -> k+1
        g = next(a for a in range(len(G.arrows)) if G.d[a] == k and G.r[a] == k + 1)
        gen[f"s{k}"] = frozenset([g])
    gen["f"] = bis_units(G, range(n + 1))
    gamma = bisections(G) if len(G.arrows) <= max_arrows else None
    return Truncation(n, G, gamma, gen)


def truncation_relations(t: Truncation) -> list[tuple[str, bool]]:
    """The defining relations, checked with the bisection calculus (and in Gamma when built)."""
    G = t.groupoid
    out = []
    for k in range(t.n - 1):
        out.append((f"im s{k} = supp s{k + 1}", bis_image(G, t.s(k)) == bis_support(G, t.s(k + 1))))
    for k, m in itertools.combinations(range(t.n), 2):
        ok = not bis_product(G, bis_support(G, t.s(k)), bis_support(G, t.s(m)))
        out.append((f"supp s{k} _|_ supp s{m}", ok))
    f = t.f
    out.append(("f^2 = f", bis_product(G, f, f) == f))
    for k in range(t.n):
        sk = bis_support(G, t.s(k))
        out.append((f"f >= supp s{k}", bis_product(G, f, sk) == sk))
    for name, U in t.generators.items():
        out.append((f"{name} is a bisection", is_bisection(G, U)))
    if t.gamma is not None:
        B = t.gamma
        S = B.semigroup
        s = [t.element(f"s{k}") for k in range(t.n)]
        fe = t.element("f")
        for k in range(t.n - 1):
            out.append((f"[table] im s{k} = supp s{k + 1}", S.image(s[k]) == S.support(s[k + 1])))
        for k, m in itertools.combinations(range(t.n), 2):
            out.append((f"[table] supp s{k} _|_ supp s{m}", B.orthogonal(S.support(s[k]), S.support(s[m]))))
        out.append(("[table] f^2 = f", S.table[fe][fe] == fe))
        for k in range(t.n):
            out.append((f"[table] f >= supp s{k}", S.table[fe][S.support(s[k])] == S.support(s[k])))
    return out


def generator_pattern_depth(B: BooleanInverseSemigroup) -> int:
    """Largest n such that B contains s0..s{n-1} with im sk = supp sk+1, the
    supports and the last image pairwise orthogonal, and an idempotent above them.

    Searched over atoms: any such pattern can be shrunk to one made of atoms.
    """
    S = B.semigroup
    by_support: dict[int, list[int]] = {}
    for a in B.atoms:
        by_support.setdefault(S.support(a), []).append(a)
    best = 0

    def rec(last: int, used: set[int], depth: int):
        nonlocal best
        best = max(best, depth)
        for a in by_support.get(S.image(last), ()):
            img = S.image(a)
            if img in used:
                continue
            used.add(img)
            rec(a, used, depth + 1)
            used.discard(img)

    for a in B.atoms:
        if S.support(a) != S.image(a):
            rec(a, {S.support(a), S.image(a)}, 1)
    return best


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class VirtualAbelian:
    value: bool
    subgroup: frozenset[int] | None
    index: int | None
    abelian: bool
    caveat: str = ""


def is_virtually_abelian(G: InverseSemigroup) -> VirtualAbelian:
    """Finite groups are virtually abelian; the witness is a largest abelian subgroup."""
    ab = is_abelian(G)
    if ab:
        return VirtualAbelian(True, frozenset(range(len(G))), 1, True)
    if len(G) > SUBGROUP_ENUMERATION_CAP:
        e = G.idempotent_indices[0]
        return VirtualAbelian(True, frozenset([e]), len(G), False,
                              caveat=f"order above {SUBGROUP_ENUMERATION_CAP}: trivial subgroup witness only")
    best = None
    for H in subgroups(G):
        if all(G.table[a][b] == G.table[b][a] for a in H for b in H):
            if best is None or len(H) > len(best):
                best = H
    return VirtualAbelian(True, best, len(G) // len(best), False)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Clause:
    id: str
    question: str
    status: str                 # holds | fails | vacuous
    witnesses: list = field(default_factory=list)
    caveat: str = ""
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "question": self.question, "status": self.status,
                "witnesses": self.witnesses, "caveat": self.caveat, "diagnostics": self.diagnostics}


@dataclass
class AnalysisReport:
    structure: str
    kind: str
    counts: dict
    clauses: list[Clause]
    verdicts: dict
    summary: dict = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def witnesses(self) -> list:
        out = []
        for c in self.clauses:
            for w in c.witnesses:
                out.append({"clause": c.id, "witness": w})
        return out

    def to_dict(self) -> dict:
        """JSON-ready form; timings are left out so output is byte-stable."""
        return {
            "schema_version": 1,
            "structure": self.structure,
            "kind": self.kind,
            "counts": self.counts,
            "clauses": [c.to_dict() for c in self.clauses],
            "witnesses": self.witnesses(),
            "caveats": list(self.caveats),
            "verdicts": self.verdicts,
            "summary": self.summary,
        }


FINITE_CAVEAT = "finite discrete unit space: the orbit space is discrete, hence T1 and T0"


def _as_bis(obj) -> tuple[BooleanInverseSemigroup, FiniteGroupoid, str]:
    if isinstance(obj, FiniteGroupoid):
        return bisections(obj), obj, "groupoid"
    if isinstance(obj, BooleanInverseSemigroup):
        return obj, dual_groupoid(obj), "bis"
    if isinstance(obj, InverseSemigroup):
        B = booleanize(obj).bis
        return B, dual_groupoid(B), "inverse_semigroup"
    raise TypeError(f"cannot analyze {type(obj).__name__}")


def _corner_clause(B: BooleanInverseSemigroup, cid: str, max_size: int) -> Clause:
    quots = group_quotients_of_corners(B, max_size=max_size)
    groups = dedupe_groups(q.group for q in quots)
    witnesses = []
    bad = []
    for H in sorted(groups, key=lambda g: (len(g), describe_group(g))):
        va = is_virtually_abelian(H)
        p = next(q.p for q in quots if group_isomorphism(q.group, H) is not None)
        witnesses.append({"group": describe_group(H), "order": len(H), "corner": B.names[p],
                          "abelian": va.abelian, "abelian_subgroup_index": va.index})
        if not va.value:
            bad.append(describe_group(H))
    return Clause(cid, "every group quotient of a corner is virtually abelian",
                  "fails" if bad else "holds", witnesses,
                  caveat="finite groups are virtually abelian; the clause holds for every finite input")


def classify_ccr(obj, max_size: int = CORNER_SIZE_CAP, timings: dict | None = None) -> AnalysisReport:
    t0 = time.perf_counter()
    B, G, kind = _as_bis(obj)
    c1 = _corner_clause(B, "ccr.corner_group_quotients", max_size)
    depth = generator_pattern_depth(B)
    c2 = Clause("ccr.no_convergent_sequence_subquotient",
                "the convergent-sequence Boolean inverse semigroup is not a subquotient", "vacuous",
                caveat="the convergent-sequence Boolean inverse semigroup is infinite, "
                       "so it is never a subquotient of a finite one",
                diagnostics={"truncation_depth": depth})
    verdict = c1.status == "holds"
    rep = AnalysisReport(B.name or kind, kind, _counts(B, G), [c1, c2],
                         {"ccr": {"value": verdict, "finite_scale": True}},
                         caveats=[FINITE_CAVEAT])
    if timings is not None:
        timings["ccr"] = time.perf_counter() - t0
    return rep


def classify_type_i(obj, max_size: int = CORNER_SIZE_CAP, max_subs: int = SUB_BIS_CAP, timings: dict | None = None) -> AnalysisReport:
    t0 = time.perf_counter()
    B, G, kind = _as_bis(obj)
    c1 = _corner_clause(B, "type_i.corner_group_quotients", max_size)
    diag: dict = {}
    caveat = "subquotients of a finite Boolean inverse semigroup are finite"
    try:
        found = simple_subquotients(B, max_subs=max_subs)
        diag["simple_monoidal_subquotient_sizes"] = [size for size, _ in found]
        if found:
            diag["largest_witness_sub"] = sorted(B.names[x] for x in found[0][1])
    except TooLarge as exc:
        diag["simple_monoidal_subquotient_sizes"] = None
        caveat += f"; diagnostic search stopped: {exc.message}"
    c2 = Clause("type_i.no_infinite_simple_subquotient",
                "no infinite, monoidal and 0-simplifying subquotient", "vacuous",
                caveat=caveat, diagnostics=diag)
    verdict = c1.status == "holds"
    rep = AnalysisReport(B.name or kind, kind, _counts(B, G), [c1, c2],
                         {"type_i": {"value": verdict, "finite_scale": True}},
                         caveats=[FINITE_CAVEAT])
    if timings is not None:
        timings["type_i"] = time.perf_counter() - t0
    return rep


def _counts(B: BooleanInverseSemigroup, G: FiniteGroupoid) -> dict:
    return {"elements": len(B), "idempotents": len(B.idempotents), "atoms": len(B.atoms),
            "units": len(G.units), "arrows": len(G.arrows), "orbits": len(orbits(G)),
            "additive_ideals": len(additive_ideals(B))}


def analyze(obj, max_size: int = CORNER_SIZE_CAP, max_subs: int = SUB_BIS_CAP) -> AnalysisReport:
    """Both classifications plus a structural summary, merged into one report."""
    timings: dict = {}
    ccr = classify_ccr(obj, max_size=max_size, timings=timings)
    ti = classify_type_i(obj, max_size=max_size, max_subs=max_subs, timings=timings)
    B, G, kind = _as_bis(obj)
    zs = is_zero_simplifying(B)
    mono = is_monoidal(B)
    summary = {
        "idempotents": [B.names[e] for e in B.idempotents],
        "atoms": [B.names[a] for a in B.atoms],
        "additive_ideals": [sorted(B.names[x] for x in I.subset) for I in additive_ideals(B)],
        "orbits": [[G.units[x] for x in sorted(o)] for o in orbits(G)],
        "isotropy": [{"unit": G.units[min(o)], "group": describe_group(isotropy(G, min(o))),
                      "order": len(isotropy(G, min(o)))} for o in orbits(G)],
        "zero_simplifying": {"value": zs.value, "degenerate": zs.degenerate},
        "monoidal": {"value": mono.value, "degenerate": mono.degenerate},
        "orbit_space": orbit_space_separation(G),
    }
    return AnalysisReport(ccr.structure, kind, ccr.counts, ccr.clauses + ti.clauses,
                          {**ccr.verdicts, **ti.verdicts}, summary, caveats=[FINITE_CAVEAT], timings=timings)
