"""Executable desk-scale checks for compactifications of automorphism groups.

Three countable homogeneous structures are bundled (the pure set, the
dense linear order and the Rado graph).  The subpackages cover partial
isomorphism semigroups, the bi-embedding calculus of the WAP
compactification, unitary matrix coefficients, Cantor-Bendixson ranks of
orbit closures and stability certificates.
"""

from .structures import BUNDLED, DLO, PURE_SET, RADO, Kind, Structure

__all__ = ["BUNDLED", "DLO", "PURE_SET", "RADO", "Kind", "Structure"]
__version__ = "0.1.0"
