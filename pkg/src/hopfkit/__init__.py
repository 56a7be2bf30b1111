"""Exact toolkit for finite-dimensional and normal-form Hopf algebras."""

__version__ = "0.1.0"
