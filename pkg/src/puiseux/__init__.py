"""Exact computations in Puiseux monoids (additive submonoids of the
nonnegative rationals): membership with certificates, atoms, divisibility
and the Furstenberg / atomicity properties of a catalogue of examples."""

__version__ = "0.1.0"
