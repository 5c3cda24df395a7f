"""Exact exterior calculus over rational-function coefficients."""

__version__ = "0.1.0"
