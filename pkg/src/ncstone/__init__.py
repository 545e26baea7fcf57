"""Finite inverse semigroups, Boolean inverse semigroups and discrete groupoids."""

__version__ = "0.1.0"
