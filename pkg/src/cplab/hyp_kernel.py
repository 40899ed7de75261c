"""Numeric kernel: circles on the sphere at infinity, isometries of
hyperbolic 3-space, and the closed-form hyperbolic identities used by the
higher-level modules.

Conventions
-----------
* Points of the sphere at infinity are projective 2-vectors ``(z1, z2)`` over
  the complex numbers (``z = z1/z2``, infinity is ``(1, 0)``).
* An isometry is a 2x2 complex matrix with determinant normalized to 1,
  identified with its negative.
* An oriented circle is a Hermitian 2x2 matrix ``H`` with ``det H = -1``; the
  circle is the projective null set of the Hermitian form and the closed disk
  is the side where the form is non-positive.  Flipping the sign of ``H``
  flips the disk.
* ``intersection_angle`` returns ``arccos`` of the inversive product, so two
  unit circles at center distance 1 meet at ``2*pi/3`` and external tangency
  is the boundary case 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateShape, DomainError, NegativeArea, NoIntersection

__all__ = [
    "Isometry",
    "OrientedCircle",
    "IdealTetrahedron",
    "point",
    "point_to_complex",
    "point_distance",
    "mobius_from_triples",
    "rotation_about",
    "half_turn",
    "apply",
    "intersection_angle",
    "inversive_product",
    "perp_distance",
    "roof_bound",
    "polygon_area",
    "isoperimetric_max_area",
    "opposite_edge_lengths",
    "OPPOSITE_EDGE_PAIRS",
]

_DET_TOL = 1e-12


# ---------------------------------------------------------------------------
# points on the sphere at infinity


def point(z) -> np.ndarray:
    """Projective 2-vector for a complex number, ``math.inf`` or ``"inf"``."""
    if isinstance(z, np.ndarray):
        v = z.astype(np.complex128)
    elif z == "inf" or (isinstance(z, (int, float)) and math.isinf(z)) or (
        isinstance(z, complex) and (math.isinf(z.real) or math.isinf(z.imag))
    ):
        v = np.array([1.0, 0.0], dtype=np.complex128)
    else:
        v = np.array([complex(z), 1.0], dtype=np.complex128)
    n = np.linalg.norm(v)
    if n == 0:
        raise DomainError("zero vector is not a projective point")
    return v / n


def point_to_complex(v: np.ndarray):
    """Inverse of :func:`point`; returns ``math.inf`` for the point at infinity."""
    if abs(v[1]) <= 1e-14 * abs(v[0]):
        return math.inf
    return complex(v[0] / v[1])


def point_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Chordal distance |det [u v]| / (|u| |v|); zero iff equal points."""
    det = u[0] * v[1] - u[1] * v[0]
    return float(abs(det) / (np.linalg.norm(u) * np.linalg.norm(v)))


# ---------------------------------------------------------------------------
# isometries


@dataclass(frozen=True, eq=False)
class Isometry:
    """Orientation-preserving isometry of hyperbolic 3-space.

    Wraps a 2x2 complex matrix with determinant 1; ``m`` and ``-m`` denote
    the same isometry.
    """

    m: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.m, dtype=np.complex128)
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        if abs(det) < 1e-300:
            raise DomainError("singular matrix is not an isometry")
        a = a / np.sqrt(det)
        a.setflags(write=False)
        object.__setattr__(self, "m", a)
        if abs(self.det() - 1) > _DET_TOL:
            raise DomainError("determinant normalization failed")

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(np.eye(2, dtype=np.complex128))

    def det(self) -> complex:
        return complex(self.m[0, 0] * self.m[1, 1] - self.m[0, 1] * self.m[1, 0])

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.m @ other.m)

    def inverse(self) -> "Isometry":
        a, b, c, d = self.m[0, 0], self.m[0, 1], self.m[1, 0], self.m[1, 1]
        return Isometry(np.array([[d, -b], [-c, a]], dtype=np.complex128))

    def dist_to_identity(self) -> float:
        """max-norm distance to the nearer of +I, -I."""
        eye = np.eye(2)
        return float(
            min(np.abs(self.m - eye).max(), np.abs(self.m + eye).max())
        )

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.dist_to_identity() <= tol

    def apply_point(self, v: np.ndarray) -> np.ndarray:
        w = self.m @ v
        n = np.linalg.norm(w)
        return w / n

    def apply_complex(self, z):
        return point_to_complex(self.apply_point(point(z)))


def _det2(u: np.ndarray, v: np.ndarray) -> complex:
    return u[0] * v[1] - u[1] * v[0]


def mobius_from_triples(src, dst) -> Isometry:
    """Unique Moebius transformation sending three points to three points.

    ``src`` and ``dst`` are triples of projective 2-vectors (see :func:`point`).
    """
    def to_std(p1, p2, p3):
        # rows built so p1 -> 0, p2 -> inf, p3 -> (1, 1)
        a = _det2(p3, p2)
        b = _det2(p3, p1)
        m = np.array(
            [[a * p1[1], -a * p1[0]], [b * p2[1], -b * p2[0]]],
            dtype=np.complex128,
        )
        return m

    ms = to_std(*[np.asarray(p, dtype=np.complex128) for p in src])
    md = to_std(*[np.asarray(p, dtype=np.complex128) for p in dst])
    return Isometry(np.linalg.inv(md) @ ms)


def half_turn(p: np.ndarray, q: np.ndarray) -> Isometry:
    """Rotation by pi about the geodesic with ideal endpoints p, q."""
    if point_distance(p, q) < 1e-14:
        raise DomainError("half turn needs two distinct endpoints")
    k = np.column_stack([p, q]).astype(np.complex128)
    rot = np.diag([1j, -1j])
    return Isometry(k @ rot @ np.linalg.inv(k))


def rotation_about(p: np.ndarray, q: np.ndarray, angle: float) -> Isometry:
    """Rotation by ``angle`` about the oriented geodesic from p to q."""
    if point_distance(p, q) < 1e-14:
        raise DomainError("rotation axis needs two distinct endpoints")
    k = np.column_stack([q, p]).astype(np.complex128)  # q -> inf, p -> 0
    rot = np.diag([np.exp(1j * angle / 2), np.exp(-1j * angle / 2)])
    return Isometry(k @ rot @ np.linalg.inv(k))


# ---------------------------------------------------------------------------
# oriented circles


def _adjugate(h: np.ndarray) -> np.ndarray:
    return np.array(
        [[h[1, 1], -h[0, 1]], [-h[1, 0], h[0, 0]]], dtype=np.complex128
    )


@dataclass(frozen=True, eq=False)
class OrientedCircle:
    """Circle on the sphere at infinity with a choice of disk side.

    ``h`` is Hermitian with determinant -1; the closed disk is
    ``{v : v* h v <= 0}``.
    """

    h: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.h, dtype=np.complex128)
        if np.abs(a - a.conj().T).max() > 1e-9 * max(1.0, np.abs(a).max()):
            raise DomainError("circle matrix must be Hermitian")
        a = (a + a.conj().T) / 2
        det = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]).real
        if det >= -1e-300:
            raise DomainError("circle matrix must have negative determinant")
        a = a / math.sqrt(-det)
        a.setflags(write=False)
        object.__setattr__(self, "h", a)

    @staticmethod
    def from_center_radius(center: complex, radius: float) -> "OrientedCircle":
        """Circle |z - center| = radius, disk = the bounded side."""
        if radius <= 0:
            raise DomainError("radius must be positive")
        m = complex(center)
        h = np.array(
            [[1.0, -m], [-m.conjugate(), abs(m) ** 2 - radius**2]],
            dtype=np.complex128,
        )
        return OrientedCircle(h)

    @staticmethod
    def real_line(disk_upper: bool = True) -> "OrientedCircle":
        """The real axis; disk side is the upper half plane by default."""
        h = np.array([[0, 1j], [-1j, 0]], dtype=np.complex128)
        return OrientedCircle(-h if disk_upper else h)

    @staticmethod
    def through_points(p, q, r, inside=None) -> "OrientedCircle":
        """Circle through three projective points.

        ``inside`` (optional projective point) selects the disk side; the
        default orientation is arbitrary but deterministic.
        """
        pts = [np.asarray(x, dtype=np.complex128) for x in (p, q, r)]
        rows = []
        for v in pts:
            z1, z2 = v
            # v* H v = a|z1|^2 + 2 Re(b conj(z1) z2 ... ) + c |z2|^2 over
            # unknowns (a, Re b, Im b, c); one real linear condition per point.
            rows.append(
                [
                    abs(z1) ** 2,
                    2 * (z1.conjugate() * z2).real,
                    -2 * (z1.conjugate() * z2).imag,
                    abs(z2) ** 2,
                ]
            )
        _, _, vt = np.linalg.svd(np.array(rows, dtype=np.float64))
        a, br, bi, c = vt[-1]
        h = np.array([[a, br + 1j * bi], [br - 1j * bi, c]], dtype=np.complex128)
        det = (h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]).real
        if det >= -1e-13:
            raise DomainError("points are collinear-degenerate or coincide")
        circ = OrientedCircle(h)
        if inside is not None and circ.eval_point(np.asarray(inside)) > 0:
            circ = circ.flipped()
        return circ

    def flipped(self) -> "OrientedCircle":
        return OrientedCircle(-self.h)

    def eval_point(self, v: np.ndarray) -> float:
        v = v / np.linalg.norm(v)
        return float((v.conj() @ self.h @ v).real)

    def contains_boundary(self, v: np.ndarray, tol: float = 1e-8) -> bool:
        return abs(self.eval_point(v)) <= tol

    def center_radius(self):
        """(center, radius) for a bounded-disk circle, or None for a line."""
        a = self.h[0, 0].real
        if abs(a) < 1e-12:
            return None
        m = -self.h[0, 1] / a
        r = 1.0 / abs(a)
        return complex(m), r

    def line_params(self):
        """(unit normal b, offset c): the line is 2*Re(conj(b) z) + c = 0."""
        b = complex(self.h[0, 1])
        return b, float(self.h[1, 1].real)


def inversive_product(a: OrientedCircle, b: OrientedCircle) -> float:
    """Minkowski pairing of the normalized circle matrices.

    Equals ``(d^2 - r1^2 - r2^2) / (2 r1 r2)`` for bounded disks; lies in
    [-1, 1] exactly when the circles intersect.
    """
    return float(np.trace(a.h @ _adjugate(b.h)).real / 2)


def intersection_angle(a: OrientedCircle, b: OrientedCircle) -> float:
    """Angle in [0, pi] between two crossing oriented circles.

    Moebius invariant; raises :class:`NoIntersection` for disjoint or nested
    circles.  Tangency is the boundary value 0 (or pi for interior tangency).
    """
    i = inversive_product(a, b)
    if abs(i) > 1 + 1e-9:
        raise NoIntersection(i)
    return math.acos(max(-1.0, min(1.0, i)))


def apply(m: Isometry, x):
    """Push a point or an oriented circle forward by an isometry."""
    if isinstance(x, OrientedCircle):
        mi = m.inverse().m
        return OrientedCircle(mi.conj().T @ x.h @ mi)
    if isinstance(x, np.ndarray):
        return m.apply_point(x)
    return m.apply_complex(x)


# ---------------------------------------------------------------------------
# closed-form hyperbolic identities


def perp_distance(phi: float) -> float:
    """arccosh(1 / sin(phi/2)) for phi in (0, pi]; zero at phi = pi."""
    if not 0 < phi <= math.pi:
        raise DomainError(f"phi must lie in (0, pi], got {phi}")
    return math.acosh(max(1.0, 1.0 / math.sin(phi / 2)))


def roof_bound(length: float) -> float:
    """2 * arccos(sech(L/2)); increases from 0 to pi with L >= 0."""
    if length < 0:
        raise DomainError("length must be non-negative")
    return 2 * math.acos(1.0 / math.cosh(length / 2))


def polygon_area(thetas) -> float:
    """Area of a compact convex hyperbolic polygon from its exterior angles."""
    thetas = list(thetas)
    for t in thetas:
        if not 0 < t < math.pi:
            raise DomainError("exterior angles must lie in (0, pi)")
    s = math.fsum(thetas)
    if s <= 2 * math.pi:
        raise NegativeArea(f"exterior angles sum to {s:.6g} <= 2*pi")
    return s - 2 * math.pi


def isoperimetric_max_area(length: float) -> float:
    """Largest hyperbolic area enclosed by a loop of the given length."""
    if length < 0:
        raise DomainError("length must be non-negative")
    return math.sqrt(length**2 + 4 * math.pi**2) - 2 * math.pi


# ---------------------------------------------------------------------------
# ideal tetrahedra


@dataclass(frozen=True, eq=False)
class IdealTetrahedron:
    """Ideal tetrahedron with vertices 0, 1, inf and shape z (Im z > 0)."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if z.imag <= 0 or z == 0 or z == 1:
            raise DegenerateShape(f"shape must lie in the open upper half plane, got {z}")
        object.__setattr__(self, "z", z)


#: The three pairs of opposite edges, as endpoint pairs ("z" marks the shape).
OPPOSITE_EDGE_PAIRS = (
    ((0.0, math.inf), (1.0, "z")),
    ((1.0, math.inf), (0.0, "z")),
    (("z", math.inf), (0.0, 1.0)),
)


def _pair_half_turns(t: IdealTetrahedron, index: int):
    def pt(spec):
        return point(t.z) if spec == "z" else point(spec)

    (a1, b1), (a2, b2) = OPPOSITE_EDGE_PAIRS[index]
    return half_turn(pt(a1), pt(b1)), half_turn(pt(a2), pt(b2))


# Relative trace signs for the two opposite-edge pairs linked by one core
# curve.  The half-turn product determines cosh of the complex distance only
# up to sign; the core curve orients the four crossed edges mutually, which
# fixes the signs below (pinned by the cross-ratio tests).
_PAIRING_SIGNS = {
    (0, 1): (-1, -1),
    (0, 2): (1, -1),
    (1, 2): (1, 1),
}


def _arccosh_branch(t: complex) -> complex:
    """Solution of cosh(l) = t with Re(l) >= 0 and Im(l) in (-pi, pi]."""
    ell = cmath.log(t + cmath.sqrt(t * t - 1))
    if ell.real < 0 or (ell.real == 0 and ell.imag < 0):
        ell = -ell
    if ell.imag > math.pi:
        ell -= 2j * math.pi
    elif ell.imag <= -math.pi:
        ell += 2j * math.pi
    return ell


def opposite_edge_lengths(t: IdealTetrahedron, pairing=(0, 1)):
    """Complex distances between two chosen pairs of opposite edges.

    ``pairing`` selects two of the three entries of
    :data:`OPPOSITE_EDGE_PAIRS` (the two pairs crossed by one core curve of
    the tetrahedron).  The returned lengths have positive real part,
    imaginary part in (-pi, pi], and satisfy ``cosh(l/2) * cosh(l'/2) = 1``.
    """
    i, j = pairing
    if i == j or not {i, j} <= {0, 1, 2}:
        raise DomainError("pairing must name two distinct opposite-edge pairs")
    signs = dict(zip(sorted((i, j)), _PAIRING_SIGNS[tuple(sorted((i, j)))]))
    out = []
    for k in (i, j):
        m1, m2 = _pair_half_turns(t, k)
        tr_half = complex(np.trace((m1 @ m2).m)) / 2
        out.append(_arccosh_branch(signs[k] * tr_half))
    return tuple(out)
