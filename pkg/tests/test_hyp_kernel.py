"""Kernel geometry: circles, isometries, and the closed-form identities."""

import cmath
import math

import numpy as np
import pytest

from cplab.errors import DegenerateShape, DomainError, NegativeArea, NoIntersection
from cplab.hyp_kernel import (
    IdealTetrahedron,
    Isometry,
    OrientedCircle,
    apply,
    half_turn,
    intersection_angle,
    inversive_product,
    isoperimetric_max_area,
    mobius_from_triples,
    opposite_edge_lengths,
    perp_distance,
    point,
    point_distance,
    point_to_complex,
    polygon_area,
    roof_bound,
    rotation_about,
)

RNG = np.random.default_rng(20240811)


def random_isometry(rng=RNG) -> Isometry:
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    while abs(np.linalg.det(m)) < 1e-3:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return Isometry(m)


def euclid_angle_oracle(m1, r1, m2, r2):
    """Plane-geometry cosine formula for the inversive product."""
    d = abs(m1 - m2)
    return (d * d - r1 * r1 - r2 * r2) / (2 * r1 * r2)


class TestCircles:
    def test_orthogonal_unit_circles(self):
        a = OrientedCircle.from_center_radius(0, 1)
        b = OrientedCircle.from_center_radius(math.sqrt(2), 1)
        assert intersection_angle(a, b) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_tangency_boundary_case(self):
        a = OrientedCircle.from_center_radius(0, 1)
        b = OrientedCircle.from_center_radius(2, 1)
        assert intersection_angle(a, b) == pytest.approx(0.0, abs=1e-7)

    def test_normal_orientation_convention(self):
        # Pins the sign convention: unit circles at center distance 1.
        a = OrientedCircle.from_center_radius(0, 1)
        b = OrientedCircle.from_center_radius(1, 1)
        oracle = euclid_angle_oracle(0, 1, 1, 1)
        assert oracle == pytest.approx(-0.5)
        assert inversive_product(a, b) == pytest.approx(oracle, abs=1e-12)
        assert intersection_angle(a, b) == pytest.approx(2 * math.pi / 3, abs=1e-12)

    def test_random_pairs_match_euclid_oracle(self):
        for _ in range(200):
            m1, m2 = RNG.normal(size=2) + 1j * RNG.normal(size=2)
            r1, r2 = RNG.uniform(0.2, 2.0, size=2)
            a = OrientedCircle.from_center_radius(m1, r1)
            b = OrientedCircle.from_center_radius(m2, r2)
            oracle = euclid_angle_oracle(m1, r1, m2, r2)
            assert inversive_product(a, b) == pytest.approx(oracle, abs=1e-9)

    def test_disjoint_raises(self):
        a = OrientedCircle.from_center_radius(0, 1)
        b = OrientedCircle.from_center_radius(5, 1)
        with pytest.raises(NoIntersection):
            intersection_angle(a, b)
        with pytest.raises(NoIntersection):
            intersection_angle(a, OrientedCircle.from_center_radius(0.1, 0.2))

    def test_normalization_idempotent(self):
        a = OrientedCircle.from_center_radius(1 + 2j, 0.7)
        again = OrientedCircle(a.h * 1.0)
        assert np.abs(a.h - again.h).max() < 1e-15

    def test_orientation_flip(self):
        a = OrientedCircle.from_center_radius(0, 1)
        assert a.eval_point(point(0)) < 0  # inside the disk
        assert a.flipped().eval_point(point(0)) > 0
        assert a.eval_point(point(1)) == pytest.approx(0, abs=1e-14)

    def test_through_points(self):
        c = OrientedCircle.through_points(point(0), point(1), point(1j), inside=point(0.5 + 0.5j))
        center, radius = c.center_radius()
        assert center == pytest.approx(0.5 + 0.5j, abs=1e-12)
        assert radius == pytest.approx(math.sqrt(0.5), abs=1e-12)
        line = OrientedCircle.through_points(point(0), point(1), point("inf"))
        assert line.center_radius() is None


class TestIsometries:
    def test_identity_and_translation(self):
        a = OrientedCircle.from_center_radius(0, 1)
        assert np.abs(apply(Isometry.identity(), a).h - a.h).max() < 1e-14
        t = Isometry(np.array([[1, 1], [0, 1]]))  # z -> z + 1
        b = apply(t, a)
        center, radius = b.center_radius()
        assert center == pytest.approx(1 + 0j, abs=1e-12)
        assert radius == pytest.approx(1.0, abs=1e-12)

    def test_angle_invariance_under_random_isometries(self):
        a = OrientedCircle.from_center_radius(0.3 + 0.1j, 1.1)
        b = OrientedCircle.from_center_radius(1.2 - 0.4j, 0.9)
        base = intersection_angle(a, b)
        for _ in range(1000):
            m = random_isometry()
            moved = intersection_angle(apply(m, a), apply(m, b))
            assert moved == pytest.approx(base, abs=1e-10)

    def test_mobius_from_triples(self):
        src = (point(0), point(1), point("inf"))
        dst = (point(2j), point(-1), point(0.5))
        m = mobius_from_triples(src, dst)
        for s, d in zip(src, dst):
            assert point_distance(m.apply_point(s), d) < 1e-12

    def test_rotation_fixes_axis(self):
        p, q = point(0.5), point(-2 + 1j)
        r = rotation_about(p, q, 1.234)
        assert point_distance(r.apply_point(p), p) < 1e-12
        assert point_distance(r.apply_point(q), q) < 1e-12
        # full turn is the identity in PSL(2, C)
        full = rotation_about(p, q, 2 * math.pi)
        assert full.dist_to_identity() < 1e-12

    def test_half_turn_square(self):
        m = half_turn(point(1 - 1j), point("inf"))
        assert (m @ m).dist_to_identity() < 1e-12


class TestFormulas:
    def test_perp_distance_endpoints(self):
        assert perp_distance(math.pi) == pytest.approx(0, abs=1e-12)
        assert perp_distance(1e-6) > 10
        with pytest.raises(DomainError):
            perp_distance(0.0)
        with pytest.raises(DomainError):
            perp_distance(math.pi + 1e-9)

    def test_perp_distance_identity_grid(self):
        for phi in np.linspace(0.01, math.pi - 0.01, 100):
            assert math.cosh(perp_distance(phi)) * math.sin(phi / 2) == pytest.approx(
                1.0, abs=1e-12
            )

    def test_constant_pin(self):
        assert abs(math.cosh(math.log(1.5)) - 13 / 12) < 1e-14

    def test_roof_bound(self):
        assert roof_bound(0) == 0
        assert roof_bound(100) == pytest.approx(math.pi, abs=1e-12)
        grid = [roof_bound(x) for x in np.linspace(0, 10, 100)]
        assert all(x < y for x, y in zip(grid, grid[1:]))

    def test_polygon_area(self):
        assert polygon_area([math.pi / 2] * 5) == pytest.approx(math.pi / 2)
        with pytest.raises(NegativeArea):
            polygon_area([math.pi / 2] * 4)
        # ideal limit: n-gon area stays below (n - 2) pi
        for n in range(3, 12):
            thetas = [math.pi * (1 - 1e-9)] * n
            assert polygon_area(thetas) < (n - 2) * math.pi

    def test_isoperimetric(self):
        assert isoperimetric_max_area(0) == pytest.approx(0, abs=1e-12)
        area = 1.0
        length = math.sqrt(area**2 + 4 * math.pi * area)
        assert isoperimetric_max_area(length) == pytest.approx(area, abs=1e-12)
        # hyperbolic circles satisfy L^2 = A^2 + 4 pi A exactly
        for r in np.linspace(0.05, 4, 60):
            area = 2 * math.pi * (math.cosh(r) - 1)
            length = 2 * math.pi * math.sinh(r)
            assert isoperimetric_max_area(length) == pytest.approx(area, abs=1e-10)


def xratio_oracle(z, index):
    """cosh^2(l/2) for each opposite-edge pair, from cross-ratio algebra."""
    if index == 0:
        return z / (z - 1)
    if index == 1:
        return (z - 1) / z
    raise ValueError


class TestIdealTetrahedron:
    def test_shape_validation(self):
        with pytest.raises(DegenerateShape):
            IdealTetrahedron(0.5)
        with pytest.raises(DegenerateShape):
            IdealTetrahedron(2.0 - 0.1j)

    def test_regular_shape(self):
        t = IdealTetrahedron(cmath.exp(1j * math.pi / 3))
        l1, l2 = opposite_edge_lengths(t)
        # the symmetry swapping the two pairs reverses orientation
        assert abs(l1 - l2.conjugate()) < 1e-10
        assert abs(cmath.cosh(l1 / 2) * cmath.cosh(l2 / 2) - 1) < 1e-10

    def test_identity_on_random_shapes(self):
        for _ in range(100):
            z = complex(RNG.uniform(-3, 3), RNG.uniform(0.1, 10))
            t = IdealTetrahedron(z)
            l1, l2 = opposite_edge_lengths(t)
            assert abs(cmath.cosh(l1 / 2) * cmath.cosh(l2 / 2) - 1) < 1e-9
            assert l1.real > 0 and l2.real > 0
            assert -math.pi < l1.imag <= math.pi

    def test_matches_cross_ratio_oracle(self):
        for _ in range(100):
            z = complex(RNG.uniform(-3, 3), RNG.uniform(0.1, 8))
            t = IdealTetrahedron(z)
            l1, l2 = opposite_edge_lengths(t, pairing=(0, 1))
            assert cmath.cosh(l1 / 2) ** 2 == pytest.approx(xratio_oracle(z, 0), abs=1e-8)
            assert cmath.cosh(l2 / 2) ** 2 == pytest.approx(xratio_oracle(z, 1), abs=1e-8)

    def test_degenerating_shape_limit(self):
        # z -> i * inf: the long pair blows up, its partner tends to i*pi
        t = IdealTetrahedron(1e8j)
        l_long, l_short = opposite_edge_lengths(t, pairing=(2, 0))
        assert l_long.real > 10
        assert abs(l_short - 1j * math.pi) < 1e-3


def test_point_roundtrip():
    assert point_to_complex(point(2 + 3j)) == pytest.approx(2 + 3j)
    assert point_to_complex(point("inf")) == math.inf
    assert point_distance(point(1), point(1)) == 0
