"""Command line: ``ncstone <command> ...``.

Exit codes: 0 success, 1 validation or analysis failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..analysis import analyze, btone_truncation, subquotient_search
from ..bis import BooleanInverseSemigroup, verify_bis
from ..booleanization import booleanize
from ..core import InverseSemigroup
from ..errors import NcStoneError
from ..groupoid import (FiniteGroupoid, bisections, disjoint_union, dual_groupoid, duality_roundtrip,
                        duality_roundtrip_groupoid, group_groupoid, orbits, pair_groupoid, random_groupoid)
from .document import load, serialize
from .report import report_json, report_text


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return load(_read(path))


def _as_bis(obj) -> BooleanInverseSemigroup:
    if isinstance(obj, BooleanInverseSemigroup):
        return obj
    if isinstance(obj, InverseSemigroup):
        return verify_bis(obj)
    raise UsageError("expected an inverse semigroup or bis document")


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_validate(args) -> int:
    obj = _load(args.file)
    if isinstance(obj, FiniteGroupoid):
        print(f"valid groupoid {obj.name or '-'}: {len(obj.units)} units, {len(obj.arrows)} arrows, "
              f"{len(orbits(obj))} orbits")
    elif isinstance(obj, BooleanInverseSemigroup):
        print(f"valid bis {obj.name or '-'}: {len(obj)} elements, {len(obj.idempotents)} idempotents, "
              f"{len(obj.atoms)} atoms")
    else:
        z = obj.names[obj.zero] if obj.zero is not None else "none"
        print(f"valid inverse_semigroup {obj.name or '-'}: {len(obj)} elements, "
              f"{len(obj.idempotent_indices)} idempotents, zero {z}")
    return 0


def cmd_booleanize(args) -> int:
    obj = _load(args.file)
    S = obj.semigroup if isinstance(obj, BooleanInverseSemigroup) else obj
    if not isinstance(S, InverseSemigroup):
        raise UsageError("booleanize expects an inverse semigroup document")
    bz = booleanize(S)
    tags = {f"i.{S.names[s]}": [bz.bis.names[bz.embedding[s]]] for s in range(len(S))}
    _write(serialize(bz.bis, tags=tags), args.output)
    _note(f"B({S.name or 'S'}): {len(bz.bis)} elements")
    return 0


def cmd_dual(args) -> int:
    B = _as_bis(_load(args.file))
    G = dual_groupoid(B)
    _write(serialize(G), args.output)
    _note(f"dual groupoid: {len(G.units)} units, {len(G.arrows)} arrows")
    return 0


def cmd_gamma(args) -> int:
    G = _load(args.file)
    if not isinstance(G, FiniteGroupoid):
        raise UsageError("gamma expects a groupoid document")
    B = bisections(G)
    _write(serialize(B), args.output)
    _note(f"Gamma({G.name or 'G'}): {len(B)} elements")
    return 0


def cmd_analyze(args) -> int:
    rep = analyze(_load(args.file), max_size=args.max_size)
    if args.json:
        sys.stdout.write(report_json(rep))
    else:
        sys.stdout.write(report_text(rep))
    return 0


def cmd_subquotient(args) -> int:
    big, small = _load(args.big), _load(args.small)
    B = bisections(big) if isinstance(big, FiniteGroupoid) else _as_bis(big)
    T = bisections(small) if isinstance(small, FiniteGroupoid) else _as_bis(small)
    w = subquotient_search(B, T, max_size=args.max_size)
    if w is None:
        if args.json:
            print(json.dumps({"found": False}))
        else:
            print("no subquotient found")
        return 1
    desc = w.describe(B)
    desc["iso"] = {w.quotient_map.target.names[q]: T.names[w.iso(q)] for q in range(len(T))}
    if args.json:
        print(json.dumps({"found": True, **desc}, sort_keys=True))
    else:
        print("sub: " + " ".join(desc["sub"]))
        print("ideal: " + " ".join(desc["ideal"]))
        print("quotient -> target: " + ", ".join(f"{k} -> {v}" for k, v in desc["iso"].items()))
    return 0


def cmd_check(args) -> int:
    if args.what != "duality":
        raise UsageError(f"unknown check {args.what!r}")
    obj = _load(args.file)
    if isinstance(obj, FiniteGroupoid):
        cert = duality_roundtrip_groupoid(obj)
        print(f"G(Gamma(G)) ~ G: {len(obj.arrows)} arrows matched via g -> {{g}}")
    else:
        B = _as_bis(obj)
        cert = duality_roundtrip(B)
        print(f"Gamma(G(B)) ~ B: {len(B)} elements matched via b -> atoms below b")
    del cert
    return 0


def cmd_gen(args) -> int:
    fam, rest = args.family, args.args
    tags = None
    if fam == "pair":
        G = pair_groupoid(_int(rest, 0))
    elif fam == "btone":
        t = btone_truncation(_int(rest, 0))
        G = t.groupoid
        names = list(G.arrows)
        for x, u in enumerate(G.unit_arrow):
            names[u] = G.units[x]
        tags = {k: [names[g] for g in sorted(U)] for k, U in t.generators.items()}
    elif fam == "group":
        if len(rest) != 1:
            raise UsageError("gen group FILE")
        S = _load(rest[0])
        if not isinstance(S, InverseSemigroup) or not S.is_group():
            raise UsageError("gen group expects a group table")
        G = group_groupoid(S)
    elif fam == "union":
        parts = [_load(p) for p in rest]
        if not parts or not all(isinstance(p, FiniteGroupoid) for p in parts):
            raise UsageError("gen union FILE FILE ... expects groupoid documents")
        G = disjoint_union(*parts)
    elif fam == "random":
        G = random_groupoid(args.seed if args.seed is not None else 0)
    else:
        raise UsageError(f"unknown family {fam!r}")
    sys.stdout.write(serialize(G, tags=tags))
    return 0


def _int(rest, i) -> int:
    try:
        return int(rest[i])
    except (IndexError, ValueError):
        raise UsageError("expected an integer argument") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output and errors")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for random families")

    p = argparse.ArgumentParser(prog="ncstone", parents=[common],
                                description="Finite inverse semigroups, Boolean inverse semigroups and groupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a structure document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    for name, func, helptext in (("booleanize", cmd_booleanize, "B(S) of an inverse semigroup"),
                                 ("dual", cmd_dual, "dual groupoid of atoms of a bis"),
                                 ("gamma", cmd_gamma, "bisections of a groupoid")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file", nargs="?", default="-")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("analyze", parents=[common], help="condition report")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--max-size", type=int, default=256, help="largest corner for quotient enumeration")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("subquotient", parents=[common], help="search SMALL as a subquotient of BIG")
    s.add_argument("big")
    s.add_argument("small")
    s.add_argument("--max-size", type=int, default=128)
    s.set_defaults(func=cmd_subquotient)

    s = sub.add_parser("check", parents=[common], help="check duality FILE")
    s.add_argument("what", choices=["duality"])
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("gen", parents=[common], help="pair n | btone n | group FILE | union FILE... | random")
    s.add_argument("family")
    s.add_argument("args", nargs="*")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", None)
    try:
        return args.func(args)
    except UsageError as exc:
        _error(args, {"error": "usage", "message": str(exc)})
        return 2
    except NcStoneError as exc:
        _error(args, exc.to_dict())
        return 1


def _error(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"error: {payload['message']}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
