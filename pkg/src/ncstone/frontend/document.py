"""Line-oriented structure documents.

::

    kind: inverse_semigroup          # or bis, groupoid
    name: C2_0
    elements: 0 e g
    mul: e g = g
    ...

Groupoids declare ``units:`` and one ``arrows: g: u -> v`` line per
non-unit arrow; units are their own identity arrows and compose implicitly,
so ``compose:`` lines only mention non-unit arrows.  ``tag: t = x y ...``
names a set of symbols.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..bis import BooleanInverseSemigroup, verify_bis
from ..core import InverseSemigroup, verify_inverse_semigroup
from ..errors import DocumentSyntaxError, DuplicateEntry, UndeclaredSymbol, ValidationError
from ..groupoid import FiniteGroupoid, verify_groupoid

KINDS = ("inverse_semigroup", "bis", "groupoid")
_NAME = re.compile(r"^[^\s#=:]+$")


@dataclass
class StructureDocument:
    kind: str
    name: str = ""
    elements: list[str] = field(default_factory=list)      # elements, or units for groupoids
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    entries: dict[tuple[str, str], str] = field(default_factory=dict)
    tags: dict[str, list[str]] = field(default_factory=dict)
    lines: dict = field(default_factory=dict, repr=False)   # what -> line number


def _col(raw: str, token: str) -> int:
    i = raw.find(token)
    return i + 1 if i >= 0 else 1


def parse(text: str) -> StructureDocument:
    kind = None
    name = ""
    decl: list[str] | None = None
    arrows: list[tuple[str, str, str]] = []
    entries: dict[tuple[str, str], str] = {}
    tags: dict[str, list[str]] = {}
    lines: dict = {}
    pending: list[tuple[int, str, str, list[str]]] = []   # checked once declarations are known

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise DocumentSyntaxError("expected 'key: value'", lineno, 1)
        key, val = line.split(":", 1)
        key, val = key.strip(), val.strip()
        if key == "kind":
            if kind is not None:
                raise DuplicateEntry("kind declared twice", lineno, 1)
            if val not in KINDS:
                raise DocumentSyntaxError(f"unknown kind {val!r}", lineno, _col(raw, val))
            kind = val
        elif key == "name":
            name = val
        elif key in ("elements", "units"):
            if decl is not None:
                raise DuplicateEntry(f"{key} declared twice", lineno, 1)
            decl = val.split()
            seen = set()
            for tok in decl:
                if not _NAME.match(tok):
                    raise DocumentSyntaxError(f"bad symbol {tok!r}", lineno, _col(raw, tok))
                if tok in seen:
                    raise DuplicateEntry(f"{tok!r} declared twice", lineno, _col(raw, tok), witness=tok)
                seen.add(tok)
            lines[key] = lineno
        elif key == "arrows":
            if ":" not in val:
                raise DocumentSyntaxError("expected 'arrows: g: u -> v'", lineno, len(raw) + 1)
            g, rest = val.split(":", 1)
            g = g.strip()
            toks = rest.split()
            if len(toks) != 3 or toks[1] != "->" or not _NAME.match(g):
                raise DocumentSyntaxError("expected 'arrows: g: u -> v'", lineno, _col(raw, rest.strip() or g))
            if any(a[0] == g for a in arrows):
                raise DuplicateEntry(f"arrow {g!r} declared twice", lineno, _col(raw, g), witness=g)
            arrows.append((g, toks[0], toks[2]))
            pending.append((lineno, raw, "arrow", [toks[0], toks[2]]))
        elif key in ("mul", "compose"):
            toks = val.split()
            if len(toks) != 4 or toks[2] != "=":
                raise DocumentSyntaxError(f"expected '{key}: a b = c'", lineno, _col(raw, val) if val else len(raw) + 1)
            a, b, c = toks[0], toks[1], toks[3]
            if (a, b) in entries:
                raise DuplicateEntry(f"entry for {a} {b} given twice", lineno, _col(raw, a), witness=(a, b))
            entries[(a, b)] = c
            pending.append((lineno, raw, key, [a, b, c]))
        elif key == "tag":
            if "=" not in val:
                raise DocumentSyntaxError("expected 'tag: t = x y ...'", lineno, len(raw) + 1)
            t, rest = val.split("=", 1)
            t = t.strip()
            if not _NAME.match(t):
                raise DocumentSyntaxError(f"bad tag name {t!r}", lineno, _col(raw, t))
            if t in tags:
                raise DuplicateEntry(f"tag {t!r} given twice", lineno, _col(raw, t), witness=t)
            tags[t] = rest.split()
            pending.append((lineno, raw, "tag", tags[t]))
        else:
            raise DocumentSyntaxError(f"unknown key {key!r}", lineno, _col(raw, key))

    if kind is None:
        raise DocumentSyntaxError("missing 'kind:' line", 1, 1)
    if decl is None:
        raise DocumentSyntaxError("missing " + ("'units:'" if kind == "groupoid" else "'elements:'"), 1, 1)
    is_gpd = kind == "groupoid"
    units = set(decl)
    symbols = units | {a[0] for a in arrows} if is_gpd else units
    for g, _, _ in arrows:
        if g in units:
            raise DuplicateEntry(f"arrow {g!r} reuses a unit name", lines.get("units", 1), 1, witness=g)
    for lineno, raw, what, toks in pending:
        if what == "arrow":
            pool = units
        elif what == "tag":
            pool = symbols
        else:
            if (what == "compose") != is_gpd:
                raise DocumentSyntaxError(f"'{what}:' does not belong to kind {kind}", lineno, 1)
            pool = symbols
        for tok in toks:
            if tok not in pool:
                raise UndeclaredSymbol(f"undeclared symbol {tok!r}", lineno, _col(raw, tok), witness=tok)
    if not is_gpd and arrows:
        raise DocumentSyntaxError("'arrows:' only belongs to groupoids", 1, 1)
    return StructureDocument(kind, name, decl, arrows, entries, tags, lines)


def build(doc: StructureDocument):
    """Validate the document as the structure it declares."""
    if doc.kind == "groupoid":
        return _build_groupoid(doc)
    n = len(doc.elements)
    pos = {x: i for i, x in enumerate(doc.elements)}
    missing = [(a, b) for a in doc.elements for b in doc.elements if (a, b) not in doc.entries]
    if missing:
        a, b = missing[0]
        raise DocumentSyntaxError(f"multiplication table has no entry for {a} {b}",
                                  doc.lines.get("elements", 1), 1, witness=(a, b))
    table = [[pos[doc.entries[(a, b)]] for b in doc.elements] for a in doc.elements]
    S = verify_inverse_semigroup(table, names=doc.elements, name=doc.name)
    if n == 0:
        raise ValidationError("empty carrier")
    return verify_bis(S) if doc.kind == "bis" else S


def _build_groupoid(doc: StructureDocument) -> FiniteGroupoid:
    units = list(doc.elements)
    upos = {u: i for i, u in enumerate(units)}
    names = units + [a[0] for a in doc.arrows]
    apos = {g: i for i, g in enumerate(names)}
    d = list(range(len(units))) + [upos[a[1]] for a in doc.arrows]
    r = list(range(len(units))) + [upos[a[2]] for a in doc.arrows]
    compose = {(apos[a], apos[b]): apos[c] for (a, b), c in doc.entries.items()}
    return verify_groupoid(units, names, d, r, compose, list(range(len(units))), name=doc.name)


def load(text: str):
    return build(parse(text))


def kind_of(obj) -> str:
    if isinstance(obj, FiniteGroupoid):
        return "groupoid"
    if isinstance(obj, BooleanInverseSemigroup):
        return "bis"
    if isinstance(obj, InverseSemigroup):
        return "inverse_semigroup"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj, name: str | None = None, tags: dict[str, list[str]] | None = None) -> str:
    """Canonical text: declarations and table entries sorted by name, then index."""
    kind = kind_of(obj)
    out = [f"kind: {kind}"]
    label = name if name is not None else obj.name
    if label:
        out.append(f"name: {label}")
    if kind == "groupoid":
        G = obj
        unit_arrows = G.is_unit_arrow
        aname = list(G.arrows)
        for x, u in enumerate(G.unit_arrow):
            aname[u] = G.units[x]
        units = sorted(range(len(G.units)), key=lambda x: (G.units[x], x))
        out.append("units: " + " ".join(G.units[x] for x in units) if units else "units:")
        order = sorted((g for g in range(len(G.arrows)) if g not in unit_arrows), key=lambda g: (aname[g], g))
        for g in order:
            out.append(f"arrows: {aname[g]}: {G.units[G.d[g]]} -> {G.units[G.r[g]]}")
        for g in order:
            for h in order:
                k = G.compose_table[g][h]
                if k >= 0:
                    out.append(f"compose: {aname[g]} {aname[h]} = {aname[k]}")
    else:
        S = obj.semigroup if kind == "bis" else obj
        order = sorted(range(len(S)), key=lambda a: (S.names[a], a))
        out.append("elements: " + " ".join(S.names[a] for a in order))
        for a in order:
            for b in order:
                out.append(f"mul: {S.names[a]} {S.names[b]} = {S.names[S.table[a][b]]}")
    for t in sorted(tags or {}):
        out.append(f"tag: {t} = " + " ".join(tags[t]))
    return "\n".join(out) + "\n"


def canonical(text: str) -> str:
    doc = parse(text)
    return serialize(build(doc), name=doc.name, tags=doc.tags or None)


def structurally_equal(x, y) -> bool:
    """Same kind, same symbols and same tables, compared by name."""
    if kind_of(x) != kind_of(y):
        return False
    if kind_of(x) == "groupoid":
        if set(x.units) != set(y.units) or len(x.arrows) != len(y.arrows):
            return False
        def arrow_key(G):
            names = list(G.arrows)
            for i, u in enumerate(G.unit_arrow):
                names[u] = G.units[i]
            return names

        nx, ny = arrow_key(x), arrow_key(y)
        if set(nx) != set(ny):
            return False
        py = {n: i for i, n in enumerate(ny)}
        for g in range(len(nx)):
            h = py[nx[g]]
            if x.units[x.d[g]] != y.units[y.d[h]] or x.units[x.r[g]] != y.units[y.r[h]]:
                return False
            for g2 in range(len(nx)):
                h2 = py[nx[g2]]
                k, k2 = x.compose_table[g][g2], y.compose_table[h][h2]
                if (k < 0) != (k2 < 0) or (k >= 0 and nx[k] != ny[k2]):
                    return False
        return True
    Sx = x.semigroup if kind_of(x) == "bis" else x
    Sy = y.semigroup if kind_of(y) == "bis" else y
    if set(Sx.names) != set(Sy.names):
        return False
    return all(Sx.names[Sx.table[a][b]] == Sy.names[Sy.table[Sy.index(Sx.names[a])][Sy.index(Sx.names[b])]]
               for a in range(len(Sx)) for b in range(len(Sx)))
