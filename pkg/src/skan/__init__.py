"""Exact combinatorics of simplicial sets, simplicial groups and principal bundles."""
__version__ = "0.1.0"
