import numpy as np
import pytest

from hullkit import (
    EPS,
    DegenerateInput,
    DimensionMismatch,
    GeometryError,
    NonUnitDirection,
    OriginNotInterior,
    Polygon,
    Polytope3,
    brightness,
    brightness_many,
    central_symmetral,
    difference_body,
    gauge,
    hausdorff_distance,
    hull,
    minkowski_sum,
    point_body_distance,
    polar,
    shadow_area,
    support,
)
from hullkit.sampling import random_polygon, random_polytope3

from conftest import unit_vector


class TestHull:
    def test_interior_point_dropped(self):
        body = hull([[0, 0], [1, 0], [0, 1], [0.2, 0.2]])
        assert len(body) == 3
        assert sorted(map(tuple, body.vertices.tolist())) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]

    def test_square(self, square):
        assert len(square) == 4
        assert square.volume == pytest.approx(4.0, abs=0)

    def test_ccw_orientation(self):
        body = Polygon([[0, 0], [0, 1], [1, 0]])  # clockwise input
        edges = np.roll(body.vertices, -1, axis=0) - body.vertices
        nxt = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
        assert np.all(cross > 0)

    def test_random_points_in_ball(self):
        rng = np.random.default_rng(1)
        for dim in (2, 3):
            pts = rng.normal(size=(100, dim))
            pts *= rng.uniform(0, 1, size=100)[:, None] ** (1 / dim) / np.linalg.norm(pts, axis=1)[:, None]
            body = hull(pts)
            for p in pts:
                assert body.contains(p)
            again = hull(body.vertices)
            assert sorted(map(tuple, again.vertices.tolist())) == sorted(map(tuple, body.vertices.tolist()))
            # brute-force extremality: no hull vertex is inside the hull of the others
            for i in range(len(body)):
                rest = hull(np.delete(body.vertices, i, axis=0))
                assert not rest.contains(body.vertices[i], tol=-EPS * body.diameter)

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateInput):
            hull([[0, 0], [1, 0]])
        with pytest.raises(DegenerateInput):
            hull([[0, 0], [1, 1], [2, 2], [3, 3]])
        with pytest.raises(DegenerateInput):
            hull([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]])

    def test_duplicate_vertices_rejected_by_polygon(self):
        with pytest.raises(DegenerateInput):
            Polygon([[0, 0], [1, 0], [1, 0], [0, 1]])

    def test_cube_facets_merged(self, cube):
        assert len(cube.facet_loops) == 6
        assert all(len(loop) == 4 for loop in cube.facet_loops)

    def test_unsupported_dimension(self):
        with pytest.raises(GeometryError):
            hull(np.zeros((5, 4)))

    def test_inconsistent_facet_loops_rejected(self, tetrahedron):
        with pytest.raises(DegenerateInput):
            Polytope3(tetrahedron.vertices, list(tetrahedron.facet_loops)[:3])


class TestPolytopeInvariants:
    def test_euler_and_caches(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            body = random_polytope3(rng, int(rng.integers(6, 13)))
            edges = sum(len(loop) for loop in body.facet_loops) // 2
            assert len(body.vertices) - edges + len(body.facet_loops) == 2
            # cached volume agrees with an independent tetrahedra sum from the centroid
            c = body.vertices.mean(axis=0)
            total = 0.0
            for loop, n in zip(body.facet_loops, body.facet_normals):
                ring = body.vertices[list(loop)]
                for i in range(1, len(ring) - 1):
                    total += abs(np.linalg.det(np.vstack((ring[0] - c, ring[i] - c, ring[i + 1] - c)))) / 6
            assert total == pytest.approx(body.volume, rel=1e-12)
            assert np.allclose(np.linalg.norm(body.facet_normals, axis=1), 1.0, atol=1e-12)

    def test_vertices_within_halfspaces(self):
        rng = np.random.default_rng(3)
        body = random_polytope3(rng, 10)
        slack = body.vertices @ body.facet_normals.T - body.facet_offsets
        assert np.max(slack) <= EPS * body.diameter

    def test_halfspace_cache_agrees_with_vertices(self):
        # each cached offset is the support value in the facet normal direction
        rng = np.random.default_rng(72)
        for body in (random_polygon(rng, 8), random_polytope3(rng, 9)):
            recomputed = np.max(body.vertices @ body.facet_normals.T, axis=0)
            assert np.max(np.abs(recomputed - body.facet_offsets)) <= EPS * body.diameter

    def test_bodies_are_immutable(self, square, cube):
        for body in (square, cube):
            with pytest.raises(ValueError):
                body.vertices[0, 0] = 99.0
            with pytest.raises(ValueError):
                body.facet_offsets[0] = 99.0


class TestVolume:
    def test_square(self, square):
        assert square.volume == 4.0

    def test_cube(self, cube):
        assert cube.volume == pytest.approx(8.0, rel=1e-14)

    def test_tetrahedron_against_determinant(self, tetrahedron):
        v = tetrahedron.vertices
        oracle = abs(np.linalg.det(v[1:] - v[0])) / 6
        assert oracle == pytest.approx(8 / 3, rel=1e-14)
        assert tetrahedron.volume == pytest.approx(oracle, rel=1e-12)

    def test_translation_invariance(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            body = random_polytope3(rng, 8) if rng.random() < 0.5 else random_polygon(rng, 7)
            t = rng.normal(size=body.dim) * 10
            assert abs(body.translate(t).volume - body.volume) <= 1e-12 * body.volume


class TestSupportGauge:
    def test_square_axis(self, square):
        assert support(square, [1, 0]) == 1.0
        assert gauge(square, [1, 0]) == 1.0

    def test_square_corner_direction(self, square):
        u = np.array([1, 1]) / np.sqrt(2)
        assert support(square, u) == pytest.approx(np.sqrt(2), rel=1e-14)
        assert gauge(square, u) == pytest.approx(np.sqrt(2), rel=1e-14)

    def test_duality_with_polar(self):
        rng = np.random.default_rng(5)
        for body in (random_polygon(rng, 8), random_polytope3(rng, 9)):
            dual = polar(body)
            for _ in range(100):
                u = unit_vector(rng, body.dim)
                assert gauge(dual, u) * support(body, u) == pytest.approx(1.0, rel=1e-9)
                assert support(dual, u) * gauge(body, u) == pytest.approx(1.0, rel=1e-9)

    def test_gauge_needs_interior_origin(self, square):
        with pytest.raises(OriginNotInterior):
            gauge(square.translate([5, 5]), np.array([1.0, 0.0]))


class TestPolar:
    def test_square_to_cross(self, square):
        cross = polar(square)
        assert sorted(map(tuple, np.round(cross.vertices, 12).tolist())) == [
            (-1.0, 0.0),
            (0.0, -1.0),
            (0.0, 1.0),
            (1.0, 0.0),
        ]

    def test_cube_to_octahedron(self, cube):
        octa = polar(cube)
        expected = {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
        got = {tuple(int(round(c)) for c in v) for v in octa.vertices}
        assert got == expected

    def test_involution_on_random_bodies(self):
        rng = np.random.default_rng(6)
        for i in range(50):
            if i % 2 == 0:
                body = random_polygon(rng, int(rng.integers(5, 10)))
            else:
                body = random_polytope3(rng, int(rng.integers(6, 12)))
            back = polar(polar(body))
            worst = max(
                np.min(np.linalg.norm(back.vertices - v, axis=1)) for v in body.vertices
            )
            assert worst < 1e-9 * body.diameter

    def test_needs_interior_origin(self, square):
        with pytest.raises(OriginNotInterior):
            polar(square.translate([3, 0]))


class TestMinkowski:
    def test_square_plus_square(self, square):
        out = minkowski_sum(square, square)
        assert out.volume == pytest.approx(16.0, abs=0)
        assert np.max(np.abs(out.vertices)) == 2.0

    def test_triangle_difference_body_is_hexagon(self, unit_triangle):
        diff = difference_body(unit_triangle)
        expected = {(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)}
        assert {tuple(map(round, v)) for v in diff.vertices.tolist()} == expected

    def test_edge_merge_against_pairwise_hull_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = random_polygon(rng, int(rng.integers(3, 9)))
            b = random_polygon(rng, int(rng.integers(3, 9))).translate(rng.normal(size=2))
            fast = minkowski_sum(a, b)
            sums = (a.vertices[:, None, :] + b.vertices[None, :, :]).reshape(-1, 2)
            oracle = hull(sums)
            assert hausdorff_distance(fast, oracle) <= 1e-12 * oracle.diameter

    def test_difference_body_symmetry(self):
        rng = np.random.default_rng(8)
        for body in (random_polygon(rng, 6), random_polytope3(rng, 8)):
            diff = difference_body(body)
            assert hausdorff_distance(diff, diff.negate()) <= 1e-12 * diff.diameter

    def test_dimension_mismatch(self, square, cube):
        with pytest.raises(DimensionMismatch):
            minkowski_sum(square, cube)

    def test_support_additivity(self):
        rng = np.random.default_rng(70)
        for dim in (2, 3):
            a = random_polygon(rng, 6) if dim == 2 else random_polytope3(rng, 7)
            b = random_polygon(rng, 8) if dim == 2 else random_polytope3(rng, 9)
            total = minkowski_sum(a, b)
            for _ in range(50):
                u = unit_vector(rng, dim)
                assert total.support(u) == pytest.approx(a.support(u) + b.support(u), rel=1e-12)

    def test_central_symmetral_support(self):
        rng = np.random.default_rng(71)
        body = random_polygon(rng, 7)
        half = central_symmetral(body)
        for _ in range(50):
            u = unit_vector(rng, 2)
            expected = 0.5 * (body.support(u) + body.support(-u))
            assert half.support(u) == pytest.approx(expected, rel=1e-12)


class TestBrightness:
    def test_cube_axis(self, cube):
        assert brightness(cube, [1.0, 0.0, 0.0]) == pytest.approx(4.0, rel=1e-14)

    def test_cube_diagonal_vs_shadow_oracle(self, cube):
        u = np.array([1.0, 1.0, 1.0]) / np.sqrt(3)
        cauchy = brightness(cube, u)
        assert cauchy == pytest.approx(4 * np.sqrt(3), rel=1e-12)
        assert cauchy == pytest.approx(shadow_area(cube, u), rel=1e-12)

    def test_square_diagonal(self, square):
        u = np.array([1.0, 1.0]) / np.sqrt(2)
        assert brightness(square, u) == pytest.approx(2 * np.sqrt(2), rel=1e-14)
        assert brightness(square, u) == pytest.approx(shadow_area(square, u), rel=1e-14)

    def test_cauchy_consistency_random(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            body = random_polytope3(rng, int(rng.integers(6, 13)))
            dirs = np.array([unit_vector(rng, 3) for _ in range(100)])
            formula = brightness_many(body, dirs)
            oracle = np.array([shadow_area(body, u) for u in dirs])
            assert np.max(np.abs(formula - oracle) / oracle) <= 1e-9

    def test_non_unit_direction(self, cube):
        with pytest.raises(NonUnitDirection):
            brightness(cube, [1.0, 1.0, 1.0])


class TestDistances:
    def test_point_distance_outside_corner(self, square):
        assert point_body_distance([2.0, 2.0], square) == pytest.approx(np.sqrt(2), rel=1e-12)

    def test_point_distance_inside(self, square):
        assert point_body_distance([0.3, -0.2], square) == 0.0

    def test_point_distance_3d_face_and_edge(self, cube):
        assert point_body_distance([0.0, 0.0, 2.0], cube) == pytest.approx(1.0, rel=1e-12)
        assert point_body_distance([2.0, 2.0, 0.0], cube) == pytest.approx(np.sqrt(2), rel=1e-12)

    def test_hausdorff_scaled_cube(self, cube):
        grown = cube.scale(1.25)
        # farthest point of the grown cube from the cube is its corner
        assert hausdorff_distance(cube, grown) == pytest.approx(0.25 * np.sqrt(3), rel=1e-12)
