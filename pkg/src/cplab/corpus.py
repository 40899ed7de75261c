"""Bundled example complexes and angle assignments used by tests and docs."""

from __future__ import annotations

from fractions import Fraction

from .admissibility import AngleFunction
from .surface_complex import (
    CellComplex,
    build_from_gluing,
    complex_from_face_cycles,
    dual,
    midpoint_decomposition,
)

__all__ = [
    "tetrahedron",
    "cube",
    "octahedron",
    "square_torus",
    "octagon_genus2",
    "genus2_midpoint",
    "monogon_pair",
    "theta_constant",
    "theta_right_angles",
]


def tetrahedron() -> CellComplex:
    return build_from_gluing(
        [[1, 2, 3], [-1, 4, -5], [-2, 5, 6], [-3, -6, -4]], genus_hint=0
    )


def cube() -> CellComplex:
    faces = [
        [0, 1, 3, 2],
        [4, 6, 7, 5],
        [0, 2, 6, 4],
        [1, 5, 7, 3],
        [0, 4, 5, 1],
        [2, 3, 7, 6],
    ]
    return complex_from_face_cycles(faces)


def octahedron() -> CellComplex:
    return dual(cube())


def square_torus() -> CellComplex:
    return build_from_gluing([[1, 2, -1, -2]], genus_hint=1)


def octagon_genus2() -> CellComplex:
    return build_from_gluing([[1, 2, -1, -2, 3, 4, -3, -4]], genus_hint=2)


def genus2_midpoint() -> CellComplex:
    return midpoint_decomposition(octagon_genus2())


def monogon_pair() -> CellComplex:
    return build_from_gluing([[1], [-1]], genus_hint=0)


def theta_constant(c: CellComplex, value: Fraction) -> AngleFunction:
    """Constant angle function, value given as a rational multiple of pi."""
    return AngleFunction({e: Fraction(value) for e in range(c.n_edges)})


def theta_right_angles(c: CellComplex) -> AngleFunction:
    return theta_constant(c, Fraction(1, 2))
