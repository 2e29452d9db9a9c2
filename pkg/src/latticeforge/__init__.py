"""Finite, checkable pieces of a lattice-realization construction:
posets and join semilattices, free-product word calculus, valuations and
their extensions, and a few explicit group constructions."""

__version__ = "0.1.0"
