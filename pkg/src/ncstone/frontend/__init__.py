"""Structure documents, report rendering and the command line."""

from .document import StructureDocument, build, canonical, load, parse, serialize, structurally_equal

__all__ = ["StructureDocument", "build", "canonical", "load", "parse", "serialize", "structurally_equal"]
