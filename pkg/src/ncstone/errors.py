"""Exception hierarchy.

Every validation error carries a ``witness`` so callers (and the CLI's JSON
error objects) can point at the offending elements.
"""

from __future__ import annotations

from typing import Any


class NcStoneError(Exception):
    code = "error"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(x):
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return str(x)


class ValidationError(NcStoneError):
    code = "validation"


class NotAssociative(ValidationError):
    code = "not_associative"


class NoInverse(ValidationError):
    code = "no_inverse"


class InverseNotUnique(ValidationError):
    code = "inverse_not_unique"


class TooLarge(NcStoneError):
    code = "too_large"


class IdempotentsNotGBA(ValidationError):
    code = "idempotents_not_gba"


class MissingJoin(ValidationError):
    code = "missing_join"


class NotOrthogonal(ValidationError):
    code = "not_orthogonal"


class NotIdempotent(ValidationError):
    code = "not_idempotent"


class NotAtomistic(ValidationError):
    code = "not_atomistic"


class BadComposition(ValidationError):
    code = "bad_composition"


class BadUnits(ValidationError):
    code = "bad_units"


class BadInverse(ValidationError):
    code = "bad_inverse"


class NotInvariant(ValidationError):
    code = "not_invariant"


class AtomCompositionFailure(ValidationError):
    code = "atom_composition_failure"


class NotAHomomorphism(ValidationError):
    code = "not_a_homomorphism"


class NotWellDefined(ValidationError):
    code = "not_well_defined"


class ParseError(NcStoneError):
    code = "parse"

    def __init__(self, message: str, line: int | None = None, column: int | None = None, witness: Any = None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message, witness)
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["line"] = self.line
        out["column"] = self.column
        return out


class DocumentSyntaxError(ParseError):
    code = "syntax"


class UndeclaredSymbol(ParseError):
    code = "undeclared_symbol"


class DuplicateEntry(ParseError):
    code = "duplicate_entry"
