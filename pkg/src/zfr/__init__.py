"""Certified constants and inequality checks for an explicit
Vinogradov-Korobov zero-free region for Dirichlet L-functions."""

__version__ = "0.1.0"
