"""Sheaves on weighted graded posets, cocycle codes, exact expansion oracles,
and explicit locally testable code constructions."""

__version__ = "0.1.0"
