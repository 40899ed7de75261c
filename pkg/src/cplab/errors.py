"""Exception hierarchy shared across the package.

Every domain error raised by cplab derives from :class:`CplabError`, so the
CLI can map failures onto its exit-code contract in one place.
"""


class CplabError(Exception):
    """Base class for all cplab domain errors."""


class InputError(CplabError):
    """Malformed or inconsistent input data (exit code 2 in the CLI)."""


class MissingTwin(InputError):
    """An edge label does not appear exactly twice with opposite signs."""


class Disconnected(InputError):
    """The cell complex is not connected."""


class ResourceCap(CplabError):
    """A cover construction exceeded its configured dart budget."""


class NoIntersection(CplabError):
    """Two oriented circles are disjoint or nested (|inversive product| > 1)."""

    def __init__(self, inversive: float):
        super().__init__(f"circles do not intersect (inversive product {inversive:.6g})")
        self.inversive = inversive


class DomainError(CplabError, ValueError):
    """Argument outside the mathematical domain of a kernel formula."""


class NegativeArea(DomainError):
    """Exterior angles sum to at most 2*pi: no compact convex polygon."""


class DegenerateShape(DomainError):
    """Ideal tetrahedron shape parameter on the real line."""


class MissingAngle(InputError):
    """An angle function does not cover every edge."""


class Unfillable(InputError):
    """Complex cannot carry an ideal triangulation (genus 0 with < 3 vertices)."""


class IncompleteCusp(CplabError):
    """Cusp products differ from 1: horocycle walk does not close."""


class DegreeNotFour(InputError):
    """A vertex does not have degree 4 where the 4-balance condition requires it."""


class NotAdmissible(CplabError):
    """Operation requires an admissible (complex, angles) pair."""


class NoConvergence(CplabError):
    """Solver hit its iteration cap before reaching the residual target."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"no convergence: residual {residual:.3e} after {iterations} iterations"
        )
        self.residual = residual
        self.iterations = iterations


class GluingMismatch(CplabError):
    """Developed faces fail to share their common geodesic within tolerance."""


class NontrivialHolonomy(CplabError):
    """A vertex holonomy is not +/- identity within tolerance."""

    def __init__(self, vertex: int, distance: float):
        super().__init__(
            f"vertex {vertex} holonomy differs from +/-I by {distance:.3e}"
        )
        self.vertex = vertex
        self.distance = distance


class Degenerate(InputError):
    """Hull input is concyclic/coplanar or otherwise degenerate."""
