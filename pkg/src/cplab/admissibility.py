"""Admissibility gate for (complex, angle) pairs.

A pair is admissible when every dual face has angle sum exactly 2*pi and
every homotopically trivial non-backtracking closed edge path in the dual
1-skeleton that does not bound a face has angle sum strictly above 2*pi.
Both conditions are decided exactly when all angles are rational multiples
of pi, and to tolerance 1e-9 otherwise.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from .errors import InputError, MissingAngle
from .surface_complex import (
    CellComplex,
    EdgePath,
    canonical_cycle,
    dual,
    is_null_homotopic,
)

__all__ = [
    "AngleFunction",
    "AdmissibilityVerdict",
    "check_faces",
    "enumerate_candidate_cycles",
    "check_admissible",
]

FLOAT_TOL = 1e-9

AngleValue = Union[Fraction, float]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CPLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class AngleFunction:
    """Map from edge ids to angles in (0, pi).

    Values are either exact rational multiples of pi (``Fraction``) or float
    radians.  Sums are exact whenever every participating value is rational.
    """

    values: Mapping[int, AngleValue]

    def __post_init__(self):
        vals = dict(self.values)
        for e, v in vals.items():
            if isinstance(v, Fraction):
                if not 0 < v < 1:
                    raise InputError(f"angle at edge {e} must lie in (0, pi)")
            else:
                v = float(v)
                if not 0 < v < math.pi:
                    raise InputError(f"angle at edge {e} must lie in (0, pi)")
                vals[e] = v
        object.__setattr__(self, "values", vals)

    def __getitem__(self, edge: int) -> AngleValue:
        try:
            return self.values[edge]
        except KeyError:
            raise MissingAngle(f"no angle for edge {edge}") from None

    def __contains__(self, edge: int) -> bool:
        return edge in self.values

    @property
    def edges(self):
        return self.values.keys()

    @property
    def all_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values.values())

    def radians(self, edge: int) -> float:
        v = self[edge]
        return float(v) * math.pi if isinstance(v, Fraction) else v

    def min_radians(self) -> float:
        if not self.values:
            raise InputError("empty angle function")
        return min(self.radians(e) for e in self.values)

    def as_floats(self) -> "AngleFunction":
        return AngleFunction({e: self.radians(e) for e in self.values})

    def sum_exact(self, edges) -> Optional[Fraction]:
        """Sum over edges in units of pi, or None if any value is a float."""
        total = Fraction(0)
        for e in edges:
            v = self[e]
            if not isinstance(v, Fraction):
                return None
            total += v
        return total

    def sum_radians(self, edges) -> float:
        return math.fsum(self.radians(e) for e in edges)

    def to_json(self) -> dict:
        out = {}
        for e, v in sorted(self.values.items()):
            if isinstance(v, Fraction):
                out[str(e + 1)] = {"pi_rational": [v.numerator, v.denominator]}
            else:
                out[str(e + 1)] = {"radians": v}
        return {"theta": out}

    @staticmethod
    def from_json(data: dict) -> "AngleFunction":
        try:
            theta = data["theta"]
        except (KeyError, TypeError):
            raise InputError("angle JSON must have a 'theta' object") from None
        vals: dict[int, AngleValue] = {}
        for key, spec in theta.items():
            edge = int(key) - 1
            if edge < 0:
                raise InputError("edge ids are positive integers")
            if "pi_rational" in spec:
                p, q = spec["pi_rational"]
                vals[edge] = Fraction(p, q)
            elif "radians" in spec:
                vals[edge] = float(spec["radians"])
            else:
                raise InputError(f"angle for edge {key} needs pi_rational or radians")
        return AngleFunction(vals)


@dataclass(frozen=True)
class FaceViolation:
    face: int
    edges: tuple[int, ...]
    sum_radians: float
    sum_pi_units: Optional[Fraction] = None


@dataclass(frozen=True)
class CycleViolation:
    path: EdgePath
    sum_radians: float
    sum_pi_units: Optional[Fraction] = None


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    face_violations: tuple[FaceViolation, ...]
    cycle_violations: tuple[CycleViolation, ...]
    cycles_checked: int
    indeterminate_cycles: tuple[EdgePath, ...] = field(default_factory=tuple)


def _require_total(c: CellComplex, theta: AngleFunction) -> None:
    for e in range(c.n_edges):
        if e not in theta:
            raise MissingAngle(f"no angle for edge {e + 1}")


def check_faces(eta: CellComplex, theta: AngleFunction) -> list[FaceViolation]:
    """Angle sums over the faces of the dual: each must equal 2*pi.

    Faces of the dual correspond to vertices of ``eta``; their boundary
    edges are the edges at the vertex, counted with multiplicity.
    """
    _require_total(eta, theta)
    violations = []
    for v, orbit in enumerate(eta.vertices):
        edges = tuple(eta.edge_of[d] for d in orbit)
        exact = theta.sum_exact(edges)
        if exact is not None:
            if exact != 2:
                violations.append(
                    FaceViolation(v, edges, float(exact) * math.pi, exact)
                )
        else:
            s = theta.sum_radians(edges)
            if abs(s - 2 * math.pi) > FLOAT_TOL:
                violations.append(FaceViolation(v, edges, s))
    return violations


def enumerate_candidate_cycles(
    eta_star: CellComplex, theta_min: float
) -> Iterator[EdgePath]:
    """Non-backtracking closed edge paths with length at most 2*pi/theta_min.

    Paths are produced once up to cyclic rotation and reversal and never
    bound a single face.  Longer paths satisfy the open cycle inequality
    automatically because every edge contributes at least ``theta_min``.
    """
    if theta_min <= 0:
        raise InputError("theta_min must be positive")
    bound = math.floor(2 * math.pi / theta_min + 1e-12)
    face_forms = {canonical_cycle(eta_star, orbit) for orbit in eta_star.faces}
    seen: set[tuple[int, ...]] = set()

    twin, nxt = eta_star.twin, eta_star.next

    def successors(d: int):
        # darts leaving head(d), skipping the immediate backtrack
        first = nxt[twin[d]]
        e = first
        while True:
            if e != twin[d]:
                yield e
            e = nxt[twin[e]]
            if e == first:
                break

    def extend(path: list[int]):
        if eta_star.head(path[-1]) == eta_star.tail(path[0]) and path[-1] != eta_star.twin[path[0]]:
            form = canonical_cycle(eta_star, path)
            if form not in seen and form not in face_forms:
                seen.add(form)
                yield EdgePath(tuple(path))
        if len(path) == bound:
            return
        for e in successors(path[-1]):
            path.append(e)
            yield from extend(path)
            path.pop()

    for start in range(eta_star.n_darts):
        yield from extend([start])


def check_admissible(
    eta: CellComplex,
    theta: AngleFunction,
    budget: int = 200_000,
) -> AdmissibilityVerdict:
    """Full admissibility check of the pair (eta, theta).

    Runs the exact face-sum condition, then tests every candidate cycle in
    the dual 1-skeleton that is homotopically trivial and not a face
    boundary against the strict 2*pi lower bound.  Indeterminate homotopy
    results are conservative: they force a non-admissible verdict.
    """
    face_violations = tuple(check_faces(eta, theta))
    eta_star = dual(eta)
    theta_min = theta.min_radians()

    candidates = list(enumerate_candidate_cycles(eta_star, theta_min))

    def classify(path: EdgePath):
        return is_null_homotopic(eta_star, path, budget)

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(classify, candidates))
    else:
        verdicts = [classify(p) for p in candidates]

    cycle_violations = []
    indeterminate = []
    for path, trivial in zip(candidates, verdicts):
        if trivial is None:
            indeterminate.append(path)
            continue
        if not trivial:
            continue
        edges = [eta_star.edge_of[d] for d in path.darts]
        exact = theta.sum_exact(edges)
        if exact is not None:
            if exact <= 2:
                cycle_violations.append(
                    CycleViolation(path, float(exact) * math.pi, exact)
                )
        else:
            s = theta.sum_radians(edges)
            if s <= 2 * math.pi + FLOAT_TOL:
                cycle_violations.append(CycleViolation(path, s))

    admissible = (
        not face_violations and not cycle_violations and not indeterminate
    )
    return AdmissibilityVerdict(
        admissible=admissible,
        face_violations=face_violations,
        cycle_violations=tuple(cycle_violations),
        cycles_checked=len(candidates),
        indeterminate_cycles=tuple(indeterminate),
    )
