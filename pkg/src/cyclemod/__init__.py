"""Graphs without cycles of length 0 mod 4: detection, constructions, lemma checks, exact search."""

__version__ = "0.1.0"
