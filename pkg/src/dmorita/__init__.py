"""Exact verification engine for derived Morita theory over finite-dimensional algebras."""

__version__ = "0.1.0"
