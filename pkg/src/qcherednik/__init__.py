"""Exact computer algebra for q-symmetric algebras, braided Dunkl operators
and braided Cherednik algebra presentations."""

__version__ = "0.1.0"
