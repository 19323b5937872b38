"""Exact symbolic evolution of recurrences and lattice equations with
co-primeness, Laurentness and irreducibility checks."""

__version__ = "0.1.0"
