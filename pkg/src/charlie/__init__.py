"""Exact character tables of GL(n, q), U(n, q^2) and their extensions by
the transpose-inverse automorphism."""

__version__ = "0.1.0"
