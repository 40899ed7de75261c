"""Delaunay circle patterns and circle packings on closed oriented surfaces.

Pipeline: combinatorics + angle data -> admissibility -> balanced cusped
hyperbolic metrics in multiplicative shear coordinates -> pleated-surface
developing -> circle patterns and dihedral angles.
"""

__version__ = "0.1.0"
