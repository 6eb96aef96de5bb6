"""Exact verification of unramified L-group character and Bessel-period identities."""

__version__ = "0.1.0"
