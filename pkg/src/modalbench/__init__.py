"""Exact checks for necessity, possibility and tense operators on boolean algebras.

Finite powerset algebras are handled exhaustively; relations on the
one-point and Stone-Cech compactifications of N are handled symbolically.
"""

__version__ = "0.1.0"
