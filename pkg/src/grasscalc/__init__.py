"""Exact Schubert calculus, Bott and Koszul computations on Grassmannians."""

__version__ = "0.1.0"
