"""Exact computations with Krichever-Novikov superalgebras on the 2- and 3-punctured sphere."""

__version__ = "0.3.0"
