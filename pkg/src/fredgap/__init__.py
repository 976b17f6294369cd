"""Fredholm determinants of integrable kernels and their Painleve cross-checks."""

__version__ = "0.1.0"
