"""Exact combinatorics of polygonal cell decompositions of closed oriented
surfaces, encoded as rotation systems on darts.

A dart is a directed side of an edge.  ``twin`` is the fixed-point-free
involution exchanging the two sides of each edge and ``next`` gives the
successor dart counterclockwise around the face containing the dart.  All
derived structure (vertices, edges, faces, genus) is orbit arithmetic:

* faces    = orbits of ``next``
* edges    = orbits of ``twin``
* vertices = orbits of ``d -> next[twin[d]]`` (darts sharing a tail)

Indexing is deterministic everywhere (lowest dart first), so all outputs are
reproducible byte for byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import Disconnected, InputError, MissingTwin, ResourceCap

__all__ = [
    "CellComplex",
    "EdgePath",
    "CoverBall",
    "ValidationReport",
    "build_from_gluing",
    "complex_from_face_cycles",
    "validate_polygonal",
    "dual",
    "midpoint_decomposition",
    "bipartition",
    "cover_ball",
    "is_null_homotopic",
]

DEFAULT_DART_BUDGET = 200_000


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


class CellComplex:
    """Oriented polygonal cell decomposition of a closed surface.

    Immutable after construction; all operations on it are pure functions.
    """

    def __init__(
        self,
        twin: Sequence[int],
        next_: Sequence[int],
        edge_pairs: Optional[Sequence[tuple[int, int]]] = None,
    ):
        twin = tuple(twin)
        next_ = tuple(next_)
        n = len(twin)
        if len(next_) != n or n == 0 or n % 2:
            raise InputError("dart count must be positive and even")
        if sorted(next_) != list(range(n)):
            raise InputError("next must be a permutation of the darts")
        for d in range(n):
            if twin[d] == d or twin[twin[d]] != d or not 0 <= twin[d] < n:
                raise MissingTwin(f"twin is not a fixed-point-free involution at dart {d}")
        self.twin = twin
        self.next = next_
        if edge_pairs is None:
            edge_pairs = tuple((d, twin[d]) for d in range(n) if d < twin[d])
        else:
            edge_pairs = tuple((int(a), int(b)) for a, b in edge_pairs)
            if sorted(d for pair in edge_pairs for d in pair) != list(range(n)):
                raise InputError("edge pairs must partition the darts")
            for a, b in edge_pairs:
                if twin[a] != b:
                    raise InputError("edge pairs must be twin pairs")
        self.edge_pairs = edge_pairs
        if not self._connected():
            raise Disconnected("cell complex is not connected")

    # -- construction helpers ------------------------------------------------

    def _connected(self) -> bool:
        n = len(self.twin)
        seen = [False] * n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            d = stack.pop()
            for e in (self.twin[d], self.next[d]):
                if not seen[e]:
                    seen[e] = True
                    count += 1
                    stack.append(e)
        return count == n

    # -- derived structure ---------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.twin)

    @cached_property
    def prev(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for d, e in enumerate(self.next):
            out[e] = d
        return tuple(out)

    def vperm(self, d: int) -> int:
        """Next dart around the tail vertex of ``d``."""
        return self.next[self.twin[d]]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_orbits(self.next))

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_orbits([self.next[self.twin[d]] for d in range(self.n_darts)]))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Twin pairs, positive-direction dart first."""
        return self.edge_pairs

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, orbit in enumerate(self.faces):
            for d in orbit:
                out[d] = i
        return tuple(out)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Tail vertex of each dart."""
        out = [0] * self.n_darts
        for i, orbit in enumerate(self.vertices):
            for d in orbit:
                out[d] = i
        return tuple(out)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, (d, e) in enumerate(self.edges):
            out[d] = i
            out[e] = i
        return tuple(out)

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.twin[d]]

    def primary_dart(self, edge: int) -> int:
        return self.edges[edge][0]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi % 2:
            raise InputError(f"odd Euler characteristic {chi}: not a closed surface")
        return (2 - chi) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.vertices)

    def face_lengths(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    def edge_endpoints(self, edge: int) -> tuple[int, int]:
        d = self.primary_dart(edge)
        return self.tail(d), self.head(d)

    # -- signed-label round trip ----------------------------------------------

    def face_labels(self) -> list[list[int]]:
        """Faces as cycles of signed edge ids (1-based; sign = direction)."""
        out = []
        for orbit in self.faces:
            cyc = []
            for d in orbit:
                e = self.edge_of[d]
                cyc.append(e + 1 if d == self.primary_dart(e) else -(e + 1))
            out.append(cyc)
        return out

    def relabeled(self, perm: Sequence[int]) -> "CellComplex":
        """Complex with darts renamed by ``perm`` (old dart -> new dart)."""
        n = self.n_darts
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        twin = [perm[self.twin[inv[d]]] for d in range(n)]
        next_ = [perm[self.next[inv[d]]] for d in range(n)]
        pairs = [(perm[a], perm[b]) for a, b in self.edge_pairs]
        return CellComplex(twin, next_, edge_pairs=pairs)

    def is_isomorphic_to(self, other: "CellComplex") -> bool:
        """Exact isomorphism of rotation systems (equivariant dart bijection)."""
        if self.n_darts != other.n_darts:
            return False
        for anchor in range(other.n_darts):
            phi = {0: anchor}
            stack = [0]
            ok = True
            while stack and ok:
                d = stack.pop()
                for step_self, step_other in (
                    (self.twin, other.twin),
                    (self.next, other.next),
                ):
                    e, img = step_self[d], step_other[phi[d]]
                    if e in phi:
                        if phi[e] != img:
                            ok = False
                            break
                    else:
                        phi[e] = img
                        stack.append(e)
            if ok and len(phi) == self.n_darts and len(set(phi.values())) == self.n_darts:
                return True
        return False

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"CellComplex(V={self.n_vertices}, E={self.n_edges}, "
            f"F={self.n_faces}, genus={self.genus})"
        )


def build_from_gluing(
    faces: Iterable[Iterable[int]], genus_hint: Optional[int] = None
) -> CellComplex:
    """Build a complex from faces given as cycles of signed edge labels.

    Every label must appear exactly twice with opposite signs across all
    cycles.  Labels are arbitrary nonzero integers; edge ids are assigned in
    sorted label order.
    """
    flat: list[tuple[int, int]] = []  # (label, sign) per dart
    cycles = []
    for cyc in faces:
        cyc = list(cyc)
        if not cyc:
            raise InputError("empty face cycle")
        start = len(flat)
        for lab in cyc:
            if lab == 0:
                raise InputError("zero is not a valid edge label")
            flat.append((abs(lab), 1 if lab > 0 else -1))
        cycles.append(range(start, len(flat)))

    n = len(flat)
    next_ = [0] * n
    for cyc in cycles:
        ds = list(cyc)
        for i, d in enumerate(ds):
            next_[d] = ds[(i + 1) % len(ds)]

    sides: dict[int, dict[int, int]] = {}
    for d, (lab, sign) in enumerate(flat):
        entry = sides.setdefault(lab, {})
        if sign in entry:
            raise MissingTwin(f"label {lab} appears twice with the same sign")
        entry[sign] = d
    twin = [0] * n
    pairs = []
    for lab in sorted(sides):
        entry = sides[lab]
        if len(entry) != 2:
            raise MissingTwin(f"label {lab} appears only once")
        a, b = entry[1], entry[-1]
        twin[a], twin[b] = b, a
        pairs.append((a, b))  # positive-direction dart first, label order

    c = CellComplex(twin, next_, edge_pairs=pairs)
    if genus_hint is not None and c.genus != genus_hint:
        raise InputError(f"computed genus {c.genus} != genus_hint {genus_hint}")
    return c


def complex_from_face_cycles(faces: Sequence[Sequence[int]]) -> CellComplex:
    """Build a complex from faces given as cyclic vertex lists.

    Each unordered vertex pair must occur exactly twice, once per direction.
    Convenience for polyhedra with simple 1-skeletons (cube, hulls, ...).
    """
    labels: dict[tuple[int, int], int] = {}
    out_faces = []
    for cyc in faces:
        signed = []
        for i, u in enumerate(cyc):
            v = cyc[(i + 1) % len(cyc)]
            if u == v:
                raise InputError("vertex cycles must not repeat consecutively")
            key = (min(u, v), max(u, v))
            lab = labels.setdefault(key, len(labels) + 1)
            signed.append(lab if u < v else -lab)
        out_faces.append(signed)
    return build_from_gluing(out_faces)


# ---------------------------------------------------------------------------
# edge paths


@dataclass(frozen=True)
class EdgePath:
    """Walk in the 1-skeleton as a dart sequence; heads chain onto tails."""

    darts: tuple[int, ...]
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "darts", tuple(self.darts))
        if not self.darts:
            raise InputError("empty edge path")

    def validate(self, c: CellComplex) -> None:
        ds = self.darts
        for a, b in zip(ds, ds[1:]):
            if c.head(a) != c.tail(b):
                raise InputError("path darts do not chain head-to-tail")
        if self.closed and c.head(ds[-1]) != c.tail(ds[0]):
            raise InputError("closed path does not return to its start vertex")

    def is_non_backtracking(self, c: CellComplex) -> bool:
        ds = self.darts
        pairs = list(zip(ds, ds[1:]))
        if self.closed and len(ds) > 1:
            pairs.append((ds[-1], ds[0]))
        return all(b != c.twin[a] for a, b in pairs)

    def reversed(self, c: CellComplex) -> "EdgePath":
        return EdgePath(tuple(c.twin[d] for d in reversed(self.darts)), self.closed)

    @staticmethod
    def from_edges(c: CellComplex, signed_edges: Sequence[int], closed: bool = True) -> "EdgePath":
        """Path from 1-based signed edge ids (sign = direction)."""
        darts = []
        for se in signed_edges:
            e = abs(se) - 1
            d = c.primary_dart(e)
            darts.append(d if se > 0 else c.twin[d])
        p = EdgePath(tuple(darts), closed)
        p.validate(c)
        return p


def canonical_cycle(c: CellComplex, darts: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of a closed dart cycle up to rotation and
    reversal."""
    ds = tuple(darts)
    rev = tuple(c.twin[d] for d in reversed(ds))
    best = None
    for seq in (ds, rev):
        for i in range(len(seq)):
            cand = seq[i:] + seq[:i]
            if best is None or cand < best:
                best = cand
    return best


# ---------------------------------------------------------------------------
# universal cover machinery


class CoverBall:
    """Finite simply connected portion of the universal cover.

    Cover faces are glued copies of base faces; the lift map sends cover
    darts to base darts and commutes with ``twin`` and ``next`` wherever both
    are defined.
    """

    def __init__(self, base: CellComplex, budget: int = DEFAULT_DART_BUDGET):
        self.base = base
        self.budget = budget
        self.lift: list[int] = []
        self.cnext: list[int] = []
        self.cprev: list[int] = []
        self.ctwin: list[int] = []
        self._slot: list[int] = []  # union-find parent per dart tail slot
        self._out: dict[int, dict[int, int]] = {}  # root -> {base dart: cover dart}
        self.cface_of: list[int] = []
        self.face_base: list[int] = []
        self.face_dist: list[int] = []
        self.radius = 0
        self.base_dart: Optional[int] = None
        self.base_lift: Optional[int] = None

    # union-find ----------------------------------------------------------

    def _find(self, x: int) -> int:
        root = x
        while self._slot[root] != root:
            root = self._slot[root]
        while self._slot[x] != root:
            self._slot[x], x = root, self._slot[x]
        return root

    def _union(self, a: int, b: int) -> int:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return ra
        da, db = self._out.get(ra, {}), self._out.get(rb, {})
        if len(da) < len(db):
            ra, rb = rb, ra
            da, db = db, da
        self._slot[rb] = ra
        for bd, cd in db.items():
            if bd in da and da[bd] != cd:
                raise InputError("cover folding produced a duplicated edge end")
            da[bd] = cd
        self._out[ra] = da
        self._out.pop(rb, None)
        return ra

    # growth ----------------------------------------------------------------

    def tail_root(self, cd: int) -> int:
        return self._find(cd)

    def head_root(self, cd: int) -> int:
        return self._find(self.cnext[cd])

    def _new_face(self, base_face_dart: int, dist: int) -> int:
        orbit = []
        d = base_face_dart
        while True:
            orbit.append(d)
            d = self.base.next[d]
            if d == base_face_dart:
                break
        if self.n_darts + len(orbit) > self.budget:
            raise ResourceCap(
                f"cover exceeded dart budget {self.budget}"
            )
        fid = len(self.face_base)
        self.face_base.append(self.base.face_of[base_face_dart])
        self.face_dist.append(dist)
        start = self.n_darts
        k = len(orbit)
        for i, bd in enumerate(orbit):
            cd = start + i
            self.lift.append(bd)
            self.cnext.append(start + (i + 1) % k)
            self.cprev.append(start + (i - 1) % k)
            self.ctwin.append(-1)
            self._slot.append(cd)
            self._out[cd] = {bd: cd}
            self.cface_of.append(fid)
        return start

    @property
    def n_darts(self) -> int:
        return len(self.lift)

    @property
    def n_faces(self) -> int:
        return len(self.face_base)

    def _glue(self, cd: int, ce: int) -> None:
        if self.ctwin[cd] != -1 or self.ctwin[ce] != -1:
            raise InputError("gluing already-matched cover darts")
        if self.lift[ce] != self.base.twin[self.lift[cd]]:
            raise InputError("gluing incompatible cover darts")
        self.ctwin[cd] = ce
        self.ctwin[ce] = cd
        self._union(self.cnext[cd], ce)
        self._union(self.cnext[ce], cd)

    def _fold_at(self, roots: Iterable[int]) -> None:
        queue = deque(self._find(r) for r in roots)
        while queue:
            r = self._find(queue.popleft())
            again = True
            while again:
                again = False
                out = self._out.get(r, {})
                for bd, cd in list(out.items()):
                    if self.ctwin[cd] != -1:
                        continue
                    succ = self.base.next[self.base.twin[bd]]
                    ce_next = out.get(succ)
                    if ce_next is None:
                        continue
                    a = self.cprev[ce_next]
                    if self.ctwin[a] != -1:
                        continue
                    heads = (self.head_root(cd), self._find(a))
                    self._glue(cd, a)
                    queue.extend(heads)
                    r = self._find(r)
                    again = True
                    break

    def _attach(self, cd: int, dist: int) -> int:
        """Attach the face across boundary cover dart ``cd``; returns its
        lift of twin(base)."""
        tb = self.base.twin[self.lift[cd]]
        start = self._new_face(tb, dist)
        self._glue(cd, start)
        self._fold_at([self._find(cd), self._find(start)])
        return start

    def _close_vertex(self, root: int, dist: int) -> int:
        """Attach/fold until the link of the vertex is a full circle."""
        root = self._find(root)
        while True:
            self._fold_at([root])
            root = self._find(root)
            boundary = [
                cd
                for cd in sorted(self._out[root].values())
                if self.ctwin[cd] == -1
            ]
            if not boundary:
                return root
            self._attach(boundary[0], dist)
            root = self._find(root)

    def seed(self, base_dart: int) -> None:
        start = self._new_face(base_dart, 0)
        self.base_dart = base_dart
        self.base_lift = start  # _new_face starts its orbit at base_dart

    def grow_ball(self, radius: int) -> None:
        """Close vertex links layer by layer out to star-distance ``radius``."""
        for layer in range(1, radius + 1):
            roots = {self._find(cd) for cd in range(self.n_darts)
                     if self.face_dist[self.cface_of[cd]] <= layer - 1}
            for r in sorted(roots):
                self._close_vertex(r, layer)
            self.radius = layer

    # path lifting ----------------------------------------------------------

    def lift_path(self, darts: Sequence[int]) -> Optional[bool]:
        """Lift a closed dart path; True iff the lift closes up.

        Expands the cover lazily around the walked vertices.  Returns None
        if the budget is exhausted first.
        """
        if self.base_dart is None:
            self.seed(darts[0])
        try:
            cur = self._find(self.base_lift)
            for d in darts:
                cur = self._find(cur)
                cd = self._out[cur].get(d)
                if cd is None:
                    cur = self._close_vertex(cur, self.radius + 1)
                    cd = self._out[cur].get(d)
                    if cd is None:
                        raise InputError("path dart is not incident to its vertex")
                cur = self.head_root(cd)
            return self._find(cur) == self._find(self.base_lift)
        except ResourceCap:
            return None

    # reporting ---------------------------------------------------------------

    def euler_characteristic(self) -> int:
        verts = {self._find(cd) for cd in range(self.n_darts)}
        paired = sum(1 for cd in range(self.n_darts) if self.ctwin[cd] != -1)
        unpaired = self.n_darts - paired
        edges = paired // 2 + unpaired
        return len(verts) - edges + self.n_faces

    def boundary_darts(self) -> list[int]:
        return [cd for cd in range(self.n_darts) if self.ctwin[cd] == -1]

    def interior_vertices(self) -> list[int]:
        """Roots whose link is a closed circle."""
        out = []
        for r in {self._find(cd) for cd in range(self.n_darts)}:
            if all(self.ctwin[cd] != -1 for cd in self._out[r].values()):
                out.append(r)
        return sorted(out)

    def cover_edges(self) -> dict[int, tuple[int, int]]:
        """Representative cover dart -> (tail root, head root)."""
        out = {}
        for cd in range(self.n_darts):
            t = self.ctwin[cd]
            if t != -1 and t < cd:
                continue
            out[cd] = (self.tail_root(cd), self.head_root(cd))
        return out


def cover_ball(
    c: CellComplex, base: int, radius: int, budget: int = DEFAULT_DART_BUDGET
) -> CoverBall:
    """Portion of the universal cover containing every face within
    star-distance ``radius`` of the base dart's face.

    Star-distance counts vertex-sharing steps between faces, so radius 1 on
    the square torus yields the 3x3 block of nine squares.
    """
    if radius < 1:
        raise InputError("radius must be at least 1")
    ball = CoverBall(c, budget)
    ball.seed(base)
    ball.grow_ball(radius)
    return ball


# ---------------------------------------------------------------------------
# combinatorial operations


def dual(c: CellComplex) -> CellComplex:
    """Dual decomposition: vertices and faces swap, edges persist with their
    ids and directions.

    The dual of the dual is the original complex on the nose.
    """
    n = c.n_darts
    dual_next = [c.next[c.twin[d]] for d in range(n)]
    return CellComplex(c.twin, dual_next, edge_pairs=c.edge_pairs)


def midpoint_decomposition(tau: CellComplex) -> CellComplex:
    """Decomposition on the edge midpoints of ``tau``.

    Vertices are edges of tau, edges are corners of tau, and faces come in
    two families indexed by the vertices and the faces of tau.  Every vertex
    of the result has degree exactly 4.
    """
    faces: list[list[int]] = []
    # corner labels: dart d labels the corner of face(d) at head(d),
    # running from midpoint(edge(d)) to midpoint(edge(next(d))).
    for orbit in tau.faces:
        faces.append([d + 1 for d in orbit])
    for orbit in tau.vertices:
        # incoming darts at the vertex, walked by a -> prev(twin(a))
        a0 = tau.twin[orbit[0]]
        cyc = []
        a = a0
        while True:
            cyc.append(-(a + 1))
            a = tau.prev[tau.twin[a]]
            if a == a0:
                break
        faces.append(cyc)
    eta = build_from_gluing(faces)
    if eta.euler_characteristic != tau.euler_characteristic:
        raise InputError("midpoint decomposition changed the Euler characteristic")
    return eta


def bipartition(c: CellComplex) -> Optional[tuple[int, ...]]:
    """2-coloring of the vertices with no monochromatic edge, if one exists.

    Deterministic: vertex 0 gets color 0 and BFS explores edges in id order.
    """
    colors: list[Optional[int]] = [None] * c.n_vertices
    adjacency: list[list[int]] = [[] for _ in range(c.n_vertices)]
    for e, (d, _) in enumerate(c.edges):
        u, v = c.tail(d), c.head(d)
        if u == v:
            return None
        adjacency[u].append(v)
        adjacency[v].append(u)
    for start in range(c.n_vertices):
        if colors[start] is not None:
            continue
        colors[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if colors[v] is None:
                    colors[v] = 1 - colors[u]
                    queue.append(v)
                elif colors[v] == colors[u]:
                    return None
    return tuple(colors)


# ---------------------------------------------------------------------------
# null-homotopy and validation


def is_null_homotopic(
    c: CellComplex,
    p: EdgePath,
    budget: int = DEFAULT_DART_BUDGET,
) -> Optional[bool]:
    """Decide whether a closed edge path is homotopically trivial.

    Primary method: evaluate the path word in a faithful discrete
    representation of the fundamental group (surface-group matrices from the
    regular 4g-gon for genus >= 2, integer translations for genus 1, the
    trivial group for genus 0).  Cross-checks against cover lifting when the
    matrix verdict is marginal.  Returns None only when no method is
    conclusive within the budget.
    """
    from . import _homotopy

    p.validate(c)
    if not p.closed:
        raise InputError("null-homotopy is defined for closed paths")
    rep = _homotopy.holonomy_representation(c)
    verdict, confident = rep.evaluate(p.darts)
    if verdict is not None and confident:
        return verdict
    ball = CoverBall(c, budget)
    lifted = ball.lift_path(p.darts)
    if lifted is not None:
        return lifted
    return verdict


@dataclass(frozen=True)
class ValidationReport:
    """Findings of :func:`validate_polygonal`; nothing raises."""

    min_degree: int
    degree_ok: bool
    face_length_ok: bool
    loop_violations: tuple[int, ...]
    double_violations: tuple[tuple[int, int], ...]
    indeterminate: tuple[tuple[int, ...], ...]
    cover_witness_radius: int
    cover_witness_ok: bool

    @property
    def simple_lift_ok(self) -> bool:
        return not self.loop_violations and not self.double_violations

    @property
    def ok(self) -> bool:
        return (
            self.degree_ok
            and self.face_length_ok
            and self.simple_lift_ok
            and not self.indeterminate
        )


def _cover_witness(c: CellComplex, radius: int, budget: int) -> tuple[int, bool]:
    """Scan a budget-capped cover ball for lifted loops or double edges.

    Returns the radius actually achieved and whether the scanned portion is
    simple.  A partial ball is still a genuine witness for everything it
    contains.
    """
    ok = True
    ball = CoverBall(c, budget)
    ball.seed(0)
    try:
        ball.grow_ball(radius)
    except ResourceCap:
        pass
    seen: set[tuple[int, int]] = set()
    for cd, (t, h) in ball.cover_edges().items():
        if t == h:
            ok = False
        key = (min(t, h), max(t, h))
        # distinct cover edges with equal endpoints are doubles even when
        # they lift the same base edge
        if key in seen:
            ok = False
        seen.add(key)
    return ball.radius, ok


def validate_polygonal(
    c: CellComplex,
    budget: int = DEFAULT_DART_BUDGET,
    witness_radius: Optional[int] = None,
) -> ValidationReport:
    """Check the polygonal-decomposition conditions.

    (a) every vertex has degree >= 3; (b) the 1-skeleton lifts to a simple
    graph in the universal cover; (c) faces keep length >= 3 upstairs.

    The simple-lift check is exact: a lifted edge is a loop iff a loop edge
    downstairs is null-homotopic as a 1-cycle, and two lifted edges share
    both endpoints iff two parallel edges bound a null-homotopic 2-cycle.
    A budget-capped cover ball is scanned as an independent witness.
    """
    min_degree = min(c.degrees)
    degree_ok = min_degree >= 3
    face_length_ok = all(len(f) >= 3 for f in c.faces)

    loops: list[int] = []
    doubles: list[tuple[int, int]] = []
    indeterminate: list[tuple[int, ...]] = []

    for e in range(c.n_edges):
        u, v = c.edge_endpoints(e)
        if u == v:
            r = is_null_homotopic(c, EdgePath((c.primary_dart(e),)), budget)
            if r is True:
                loops.append(e)
            elif r is None:
                indeterminate.append((e,))
    by_pair: dict[tuple[int, int], list[int]] = {}
    for e in range(c.n_edges):
        u, v = c.edge_endpoints(e)
        by_pair.setdefault((min(u, v), max(u, v)), []).append(e)
    for (u, v), es in by_pair.items():
        for i, e1 in enumerate(es):
            for e2 in es[i + 1 :]:
                d1 = c.primary_dart(e1)
                d2 = c.primary_dart(e2)
                if c.tail(d1) != c.tail(d2):
                    d2 = c.twin[d2]
                probes = [EdgePath((d1, c.twin[d2]))]
                if u == v:
                    # loops at one vertex: lifts from opposite ends can also
                    # share endpoints
                    probes.append(EdgePath((d1, d2)))
                results = [is_null_homotopic(c, p, budget) for p in probes]
                if any(r is True for r in results):
                    doubles.append((e1, e2))
                elif any(r is None for r in results):
                    indeterminate.append((e1, e2))

    if witness_radius is None:
        witness_radius = 2 * max(c.face_lengths())
    achieved, witness_ok = _cover_witness(c, witness_radius, budget)

    return ValidationReport(
        min_degree=min_degree,
        degree_ok=degree_ok,
        face_length_ok=face_length_ok,
        loop_violations=tuple(loops),
        double_violations=tuple(sorted(doubles)),
        indeterminate=tuple(indeterminate),
        cover_witness_radius=achieved,
        cover_witness_ok=witness_ok,
    )
