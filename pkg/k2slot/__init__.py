"""Exact computations in K2 modulo m of rational function fields over finite fields."""

__version__ = "0.1.0"
