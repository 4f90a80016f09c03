"""Exact computations with small quantum groups and their divided-power kernels."""

__version__ = "0.1.0"
