import itertools
import random
from fractions import Fraction

import pytest

from tropfactor.exact import QuadExt, SQRT2, dot, field_rank, solve_linear, vsub
from tropfactor.polyhedra import (
    DegeneratePolytope,
    DimensionMismatch,
    Fan,
    LatticePolytope,
    Polyhedron,
    convex_hull,
    normalize_ray,
)


def brute_force_vertices(ineqs, n):
    """All vertices of {x : a.x <= b} by solving n-subsets of tight constraints."""
    verts = set()
    for subset in itertools.combinations(range(len(ineqs)), n):
        rows = [ineqs[i][0] for i in subset]
        rhs = [ineqs[i][1] for i in subset]
        x = solve_linear(rows, rhs)
        if x is None:
            continue
        if any(dot(a, x) != b for a, b in zip(rows, rhs)):
            continue  # underdetermined solve missed the system
        if not all(dot(a, x) <= b for a, b in ineqs):
            continue
        tight = [a for a, b in ineqs if dot(a, x) == b]
        if field_rank(tight) == n:
            verts.add(tuple(x))
    return verts


class TestPolyhedronHRep:
    def test_unit_square(self):
        P = Polyhedron(2, [((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
        assert sorted(P.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert P.rays == [] and P.lineality == ()
        assert P.dim() == 2
        assert P.contains((Fraction(1, 2), Fraction(1, 2)))
        assert not P.contains((2, 0))

    def test_nonnegative_quadrant(self):
        P = Polyhedron(2, [((-1, 0), 0), ((0, -1), 0)])
        assert P.vertices == [(0, 0)]
        assert sorted(P.rays) == [(0, 1), (1, 0)]

    def test_halfplane_has_lineality(self):
        P = Polyhedron(2, [((1, 1), 1)])
        assert len(P.lineality) == 1
        assert normalize_ray(P.lineality[0]) in [(1, -1), (-1, 1)]
        assert P.dim() == 2
        assert not P.is_empty()

    def test_empty(self):
        P = Polyhedron(1, [((1,), 0), ((-1,), -1)])
        assert P.is_empty()
        assert P.dim() == -1

    def test_equalities(self):
        P = Polyhedron(2, [((1, 0), 1), ((-1, 0), 1)], [((0, 1), 2)])
        assert sorted(P.vertices) == [(-1, 2), (1, 2)]
        assert P.dim() == 1

    def test_random_bounded_against_brute_force(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.choice([2, 3])
            ineqs = [(tuple(rng.randint(-3, 3) for _ in range(n)), rng.randint(0, 4))
                     for _ in range(rng.randint(3, 7))]
            # bounding box keeps everything finite
            for i in range(n):
                e = tuple(1 if j == i else 0 for j in range(n))
                ineqs.append((e, 5))
                ineqs.append((tuple(-x for x in e), 5))
            P = Polyhedron(n, ineqs)
            assert set(P.vertices) == brute_force_vertices(ineqs, n)
            assert P.rays == [] and P.lineality == ()

    def test_relative_interior_point(self):
        P = Polyhedron(2, [((-1, 0), 0), ((0, -1), 0)])
        p = P.relative_interior_point()
        assert P.contains(p)
        assert p[0] > 0 and p[1] > 0

    def test_contains_polyhedron(self):
        quad = Polyhedron(2, [((-1, 0), 0), ((0, -1), 0)])
        wedge = Polyhedron(2, [((-1, 0), 0), ((1, -1), 0)])
        assert quad.contains_polyhedron(wedge)
        assert not wedge.contains_polyhedron(quad)

    def test_key_is_representation_independent(self):
        A = Polyhedron.cone_from_rays([(2, 0), (2, 2)])
        B = Polyhedron(2, [((0, -1), 0), ((-1, 1), 0)])
        assert A.key() == B.key()
        assert A == B


class TestFromGenerators:
    def test_triangle_hrep(self):
        P = Polyhedron.from_generators([(0, 0), (1, 0), (0, 1)])
        ineqs, eqs = P.minimal_hrep()
        assert not eqs
        assert len(ineqs) == 3
        for x in [(0, 0), (1, 0), (0, 1), (Fraction(1, 3), Fraction(1, 3))]:
            assert P.contains(x)
        assert not P.contains((1, 1))

    def test_lower_dimensional_segment(self):
        P = Polyhedron.from_generators([(0, 0, 0), (2, 2, 0)])
        assert P.dim() == 1
        assert P.contains((1, 1, 0))
        assert not P.contains((1, 1, 1))
        assert not P.contains((3, 3, 0))

    def test_cone_roundtrip(self):
        C = Polyhedron.cone_from_rays([(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)])
        assert C.vertices == [(0, 0, 0)]
        assert len(C.rays) == 4

    def test_interior_points_dropped(self):
        P = Polyhedron.from_generators([(0, 0), (2, 0), (0, 2), (1, 1), (0, 1)])
        assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0)]


class TestLatticePolytope:
    def test_vertex_reduction_and_order(self):
        P = LatticePolytope([(2, 0), (0, 0), (1, 0), (0, 2), (1, 1)])
        assert P.vertices == ((0, 0), (0, 2), (2, 0))

    def test_minkowski_square(self):
        h = LatticePolytope([(0, 0), (1, 0)])
        v = LatticePolytope([(0, 0), (0, 1)])
        sq = h + v
        assert sq.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_scale_translate(self):
        P = LatticePolytope([(0, 0), (1, 0)])
        assert P.scale(2).vertices == ((0, 0), (2, 0))
        assert P.scale(0).vertices == ((0, 0),)
        assert P.translate((1, 1)).vertices == ((1, 1), (2, 1))
        with pytest.raises(ValueError):
            P.scale(-1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            LatticePolytope([(0, 0), (0, 0, 1)])

    def test_support_and_face(self):
        P = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert P.support((1, 1)) == 2
        assert P.face_vertices((1, 0)) == [(1, 0), (1, 1)]
        assert P.face_vertices((1, 1)) == [(1, 1)]

    def test_edges_of_cube(self):
        cube = LatticePolytope(list(itertools.product([0, 1], repeat=3)))
        assert len(cube.vertices) == 8
        assert len(cube.edges()) == 12
        assert len(cube.two_faces()) == 6

    def test_edges_of_segment(self):
        seg = LatticePolytope([(0, 0), (3, 3)])
        assert seg.edges() == [((0, 0), (3, 3))]
        assert seg.edge_weight((0, 0), (3, 3)) == 3

    def test_two_faces_of_square(self):
        sq = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert sq.two_faces() == [frozenset(sq.vertices)]

    def test_edge_weight_metric(self):
        seg = LatticePolytope([(0, 0), (2, 2)])
        G = [[1, 0], [0, 1]]
        assert seg.edge_weight((0, 0), (2, 2), gram=G) == 2 * SQRT2


OCTAGON = [(1, 0), (0, 1), (2, 0), (0, 2), (3, 1), (3, 2), (2, 3), (1, 3)]


class TestNormalFan:
    def test_octagon_fan_shape(self):
        S = LatticePolytope(OCTAGON)
        assert len(S.vertices) == 8
        fan = S.normal_fan()
        assert len(fan.chambers) == 8
        assert len(fan.walls) == 8
        assert len(fan.ridges) == 1
        (rk,) = fan.ridges
        assert sorted(fan.ridge_walls[rk]) == sorted(fan.walls)
        assert all(w == 1 for w in fan.wall_weights.values())

    def test_octagon_wall_directions(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        dirs = sorted(W.rays[0] for W in fan.walls.values())
        expected = sorted([(1, 0), (1, 1), (0, 1), (-1, 1),
                           (-1, 0), (-1, -1), (0, -1), (1, -1)])
        assert dirs == expected

    def test_square_fan_weights(self):
        sq = LatticePolytope([(0, 0), (2, 0), (0, 3), (2, 3)])
        fan = sq.normal_fan()
        assert len(fan.chambers) == 4
        weights = sorted(fan.wall_weights.values())
        assert weights == [2, 2, 3, 3]

    def test_degenerate_polytope_rejected(self):
        seg = LatticePolytope([(0, 0), (2, 0)])
        with pytest.raises(DegeneratePolytope):
            seg.normal_fan()

    def test_chamber_graph_is_a_cycle(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        adj = fan.chamber_graph()
        assert all(len(v) == 2 for v in adj.values())

    def test_refinement(self):
        S = LatticePolytope(OCTAGON)
        sq = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert S.normal_fan().refines(sq.normal_fan())
        assert not sq.normal_fan().refines(S.normal_fan())
        assert S.normal_fan().refines(S.normal_fan())

    def test_zonotope_matches_octagon_up_to_translation(self):
        B1 = LatticePolytope([(0, 0), (1, 0)])
        B2 = LatticePolytope([(0, 0), (1, -1)])
        B3 = LatticePolytope([(0, 0), (0, 1)])
        B4 = LatticePolytope([(0, 0), (1, 1)])
        Z = B1 + B2 + B3 + B4
        S = LatticePolytope(OCTAGON)
        assert Z.normalize_translation() == S.normalize_translation()

    def test_cube_fan_cells(self):
        cube = LatticePolytope(list(itertools.product([0, 1], repeat=3)))
        fan = cube.normal_fan()
        assert len(fan.chambers) == 8
        assert len(fan.walls) == 12
        assert len(fan.ridges) == 6

    def test_find_chamber(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        i = fan.find_chamber((1, 1))
        # (1,1) maximizes at the vertex (3,2) or (2,3); both chambers contain it
        assert fan.labels[i] in [(3, 2), (2, 3)]


class TestQuadExtGeometry:
    def test_sqrt2_cone(self):
        # chamber of the B2 fan between (1,0) and (1,1)
        C = Polyhedron(2, [((QuadExt(0), QuadExt(-1)), 0),
                           ((QuadExt(-1), QuadExt(1)), 0)])
        assert sorted(C.rays) == [(1, 0), (1, 1)]
        p = (QuadExt(1, 1), QuadExt(1))
        assert C.contains(p)

    def test_demotion_unifies_keys(self):
        A = Polyhedron.cone_from_rays([(QuadExt(1), QuadExt(0))], n=2)
        B = Polyhedron.cone_from_rays([(Fraction(3), Fraction(0))], n=2)
        assert A.key() == B.key()

    def test_sqrt2_vertex_polytope(self):
        P = LatticePolytope([(QuadExt(0), QuadExt(0)), (SQRT2, QuadExt(0)),
                             (QuadExt(0), SQRT2)])
        assert len(P.vertices) == 3
        assert P.edge_weight((0, 0), (SQRT2, 0), gram=[[1, 0], [0, 1]]) == SQRT2


class TestFanOneDim:
    def test_line_fan(self):
        pos = Polyhedron(1, [((-1,), 0)])
        neg = Polyhedron(1, [((1,), 0)])
        fan = Fan([pos, neg])
        assert len(fan.chambers) == 2
        assert len(fan.walls) == 1
        (k,) = fan.walls
        assert len(fan.wall_chambers[k]) == 2
        assert fan.ridges == {}
