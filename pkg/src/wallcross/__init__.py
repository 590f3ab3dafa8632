"""Chamber structure, wall crossing and Lefschetz invariants for SU(n) representation spaces of fibred knots."""

__version__ = "0.1.0"
