"""Computational homological algebra for comma categories and triangular matrix algebras."""
__version__ = "0.1.0"
