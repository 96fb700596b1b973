"""Exact verification of crossed-product constructions over number fields."""

__version__ = "0.1.0"
