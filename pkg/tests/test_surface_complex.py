"""Rotation-system combinatorics: construction, dual, midpoint, covers,
null-homotopy, and polygonal validation."""

import numpy as np
import pytest

from cplab import corpus
from cplab.errors import InputError, MissingTwin
from cplab.surface_complex import (
    CellComplex,
    CoverBall,
    EdgePath,
    bipartition,
    build_from_gluing,
    cover_ball,
    dual,
    is_null_homotopic,
    midpoint_decomposition,
    validate_polygonal,
)

RNG = np.random.default_rng(7)


def counts(c: CellComplex):
    return c.n_vertices, c.n_edges, c.n_faces


class TestBuild:
    def test_octagon(self):
        c = corpus.octagon_genus2()
        assert counts(c) == (1, 4, 1)
        assert c.genus == 2

    def test_square_torus(self):
        c = corpus.square_torus()
        assert counts(c) == (1, 2, 1)
        assert c.genus == 1

    def test_tetrahedron_orbits(self):
        c = corpus.tetrahedron()
        assert counts(c) == (4, 6, 4)
        assert c.genus == 0
        assert set(c.degrees) == {3}

    def test_cube(self):
        c = corpus.cube()
        assert counts(c) == (8, 12, 6)
        assert c.genus == 0

    def test_missing_twin(self):
        with pytest.raises(MissingTwin):
            build_from_gluing([[1, 2, 3]])
        with pytest.raises(MissingTwin):
            build_from_gluing([[1, 2], [1, -2]])

    def test_disconnected(self):
        from cplab.errors import Disconnected

        with pytest.raises(Disconnected):
            build_from_gluing([[1, -1], [2, -2]])

    def test_genus_hint(self):
        with pytest.raises(InputError):
            build_from_gluing([[1, 2, -1, -2]], genus_hint=2)

    def test_face_labels_roundtrip(self):
        for c in (corpus.tetrahedron(), corpus.octagon_genus2(), corpus.cube()):
            again = build_from_gluing(c.face_labels())
            assert again.is_isomorphic_to(c)


class TestDual:
    def test_involution_exact(self):
        for c in (corpus.tetrahedron(), corpus.cube(), corpus.octagon_genus2(),
                  corpus.genus2_midpoint()):
            dd = dual(dual(c))
            assert dd.twin == c.twin and dd.next == c.next

    def test_tetrahedron_self_dual(self):
        c = corpus.tetrahedron()
        assert dual(c).is_isomorphic_to(c)

    def test_cube_octahedron(self):
        oct_ = dual(corpus.cube())
        assert counts(oct_) == (6, 12, 8)
        assert set(oct_.degrees) == {4}
        assert set(len(f) for f in oct_.faces) == {3}

    def test_octagon_dual_counts(self):
        d = dual(corpus.octagon_genus2())
        assert counts(d) == (1, 4, 1)
        assert d.genus == 2


class TestMidpoint:
    def test_tetrahedron_gives_octahedron(self):
        eta = midpoint_decomposition(corpus.tetrahedron())
        assert counts(eta) == (6, 12, 8)
        assert eta.genus == 0
        assert set(eta.degrees) == {4}
        assert eta.is_isomorphic_to(corpus.octahedron())

    def test_octagon_midpoint(self):
        eta = corpus.genus2_midpoint()
        assert counts(eta) == (4, 8, 2)
        assert eta.genus == 2
        assert set(eta.degrees) == {4}

    def test_degree_four_always(self):
        for tau in (corpus.tetrahedron(), corpus.cube(), corpus.square_torus(),
                    corpus.octagon_genus2()):
            eta = midpoint_decomposition(tau)
            assert set(eta.degrees) == {4}
            assert eta.euler_characteristic == tau.euler_characteristic


class TestBipartition:
    def test_cube_graph_bipartite(self):
        eta = midpoint_decomposition(corpus.tetrahedron())
        colors = bipartition(dual(eta))
        assert colors is not None
        assert colors[0] == 0
        d = dual(eta)
        for e in range(d.n_edges):
            u, v = d.edge_endpoints(e)
            assert colors[u] != colors[v]

    def test_odd_cycle_absent(self):
        assert bipartition(corpus.tetrahedron()) is None

    def test_loops_absent(self):
        assert bipartition(corpus.octagon_genus2()) is None

    def test_midpoint_duals_bipartite(self):
        for tau in (corpus.octagon_genus2(), corpus.cube()):
            assert bipartition(dual(midpoint_decomposition(tau))) is not None


class TestCoverBall:
    def test_torus_radius_one_is_3x3(self):
        c = corpus.square_torus()
        ball = cover_ball(c, 0, 1)
        assert ball.n_faces == 9
        assert ball.euler_characteristic() == 1  # a disk

    def test_radius_one_contains_base_vertex_star(self):
        for c in (corpus.tetrahedron(), corpus.square_torus()):
            ball = cover_ball(c, 0, 1)
            deg = c.degrees[c.tail(0)]
            # every face around the base dart's tail is attached
            root = ball.tail_root(ball.base_lift)
            assert len(ball._out[root]) == deg
            assert all(ball.ctwin[cd] != -1 for cd in ball._out[root].values())

    def test_monotone_in_radius(self):
        c = corpus.octagon_genus2()
        b1 = cover_ball(c, 0, 1, budget=150_000)
        b2 = cover_ball(c, 0, 2, budget=150_000)
        assert b2.n_faces > b1.n_faces

    def test_lift_commutes(self):
        c = corpus.tetrahedron()
        ball = cover_ball(c, 0, 2)
        for cd in range(ball.n_darts):
            assert ball.lift[ball.cnext[cd]] == c.next[ball.lift[cd]]
            t = ball.ctwin[cd]
            if t != -1:
                assert ball.lift[t] == c.twin[ball.lift[cd]]

    def test_sphere_cover_closes(self):
        c = corpus.tetrahedron()
        ball = cover_ball(c, 0, 4)
        assert ball.n_faces == 4
        assert not ball.boundary_darts()
        assert ball.euler_characteristic() == 2

    def test_budget_cap(self):
        from cplab.errors import ResourceCap

        with pytest.raises(ResourceCap):
            cover_ball(corpus.octagon_genus2(), 0, 4, budget=2_000)


class TestNullHomotopy:
    def test_face_boundary_trivial(self):
        for c in (corpus.square_torus(), corpus.octagon_genus2(), corpus.tetrahedron()):
            face = EdgePath(c.faces[0])
            assert is_null_homotopic(c, face) is True

    def test_backtrack_trivial(self):
        c = corpus.octagon_genus2()
        d = 0
        assert is_null_homotopic(c, EdgePath((d, c.twin[d]))) is True

    def test_torus_generators_nontrivial(self):
        c = corpus.square_torus()
        assert is_null_homotopic(c, EdgePath.from_edges(c, [1])) is False
        assert is_null_homotopic(c, EdgePath.from_edges(c, [2])) is False
        assert is_null_homotopic(c, EdgePath.from_edges(c, [1, 2])) is False

    def test_torus_homologically_trivial_word(self):
        c = corpus.square_torus()
        # the commutator bounds the square face, hence is trivial
        comm = EdgePath.from_edges(c, [1, 2, -1, -2])
        assert is_null_homotopic(c, comm) is True

    def test_genus2_generators_nontrivial(self):
        c = corpus.octagon_genus2()
        for e in range(1, 5):
            assert is_null_homotopic(c, EdgePath.from_edges(c, [e])) is False
        assert is_null_homotopic(c, EdgePath.from_edges(c, [1, -2])) is False
        # one commutator is NOT trivial in genus 2
        assert is_null_homotopic(c, EdgePath.from_edges(c, [1, 2, -1, -2])) is False
        # but the full boundary word is
        assert (
            is_null_homotopic(c, EdgePath.from_edges(c, [1, 2, -1, -2, 3, 4, -3, -4]))
            is True
        )

    def test_sphere_everything_trivial(self):
        c = corpus.tetrahedron()
        path = EdgePath.from_edges(c, [1, 5, -4])  # a closed non-facial walk
        path.validate(c)
        assert is_null_homotopic(c, path) is True

    def test_matrix_and_cover_agree(self):
        c = corpus.octagon_genus2()
        from cplab._homotopy import holonomy_representation

        rep = holonomy_representation(c)
        words = [[1], [2], [1, 2], [1, -3], [1, 2, -1, -2], [1, 2, -1, -2, 3, 4, -3, -4],
                 [3, 4, -3, -4], [1, 1], [2, -2]]
        for w in words:
            try:
                path = EdgePath.from_edges(c, w)
            except InputError:
                continue
            verdict, confident = rep.evaluate(path.darts)
            assert confident
            ball = CoverBall(c, 200_000)
            assert ball.lift_path(path.darts) is verdict


class TestValidation:
    def test_octagon_passes(self):
        report = validate_polygonal(corpus.octagon_genus2())
        assert report.ok
        assert report.min_degree == 16
        assert report.cover_witness_ok

    def test_corpus_passes(self):
        for c in (corpus.tetrahedron(), corpus.cube(), corpus.genus2_midpoint(),
                  corpus.square_torus()):
            report = validate_polygonal(c)
            assert report.ok, c

    def test_monogon_pair_fails(self):
        report = validate_polygonal(corpus.monogon_pair())
        assert not report.ok
        assert report.loop_violations == (0,)
        assert not report.degree_ok  # degree-2 vertex as well
        assert not report.face_length_ok

    def test_degree_two_vertex_fails(self):
        # two squares glued along two opposite edge pairs: a sphere pillow
        c = build_from_gluing([[1, 2, 3, 4], [-3, -2, -1, -4]])
        report = validate_polygonal(c)
        assert not report.degree_ok

    def test_double_edge_detected(self):
        # sphere made of two bigons: parallel edges bounding a trivial cycle
        c = build_from_gluing([[1, -2], [2, -1]])
        report = validate_polygonal(c)
        assert report.double_violations
        assert not report.ok


class TestRelabeling:
    def test_relabeled_isomorphic(self):
        c = corpus.genus2_midpoint()
        perm = list(RNG.permutation(c.n_darts))
        rc = c.relabeled(perm)
        assert rc.is_isomorphic_to(c)
        assert counts(rc) == counts(c)


def test_edge_path_validation():
    c = corpus.tetrahedron()
    with pytest.raises(InputError):
        EdgePath.from_edges(c, [1, 3])  # does not chain
    p = EdgePath.from_edges(c, [1, 5, -2])
    assert p.is_non_backtracking(c)
