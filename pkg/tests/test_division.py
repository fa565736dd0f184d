import random
from fractions import Fraction

import pytest

from tropfactor.division import (
    NegativeWeight,
    NotBalanced,
    NotContained,
    divide,
    extend_weights,
    reconstruct_from_fan,
    variety_containment_witness,
    variety_contained,
)
from tropfactor.polyhedra import LatticePolytope
from tropfactor.tropical import TropicalComplex, TropicalPolynomial

G_TERMS = {(0, 0): 0, (0, 1): -7, (1, 0): -7, (1, 1): -10}
F_TERMS = {(0, 0): 0, (0, 1): -7, (1, 0): -7, (1, 1): -10,
           (1, 2): -17, (2, 1): -17, (2, 2): -20}
TENT_F = {(0, 2): 0, (2, 0): 0, (-2, 0): 0, (0, -2): 0,
          (0, 1): 1, (1, 0): 1, (0, -1): 1, (-1, 0): 1}
TENT_G = {(0, 2): 0, (2, 0): 0, (-2, 0): 0, (0, -2): 0}

OCTAGON = [(1, 0), (0, 1), (2, 0), (0, 2), (3, 1), (3, 2), (2, 3), (1, 3)]


def ray_weights(fan, by_direction):
    """Spell a weight vector keyed by 2-d wall ray directions."""
    out = {}
    for k, W in fan.walls.items():
        out[k] = by_direction[W.rays[0]]
    assert len(out) == len(by_direction)
    return out


class TestVarietyContainment:
    def test_worked_example_contained(self):
        g = TropicalPolynomial(G_TERMS)
        f = TropicalPolynomial(F_TERMS)
        assert variety_contained(g, f)

    def test_not_contained_gives_point_of_difference(self):
        g = TropicalPolynomial({(0, 0): 0, (1, 0): 0})   # variety x1 = 0
        f = TropicalPolynomial({(0, 0): 0, (0, 1): 0})   # variety x2 = 0
        w = variety_containment_witness(g, f)
        assert w is not None
        assert len(g.argmax(w)) >= 2
        assert len(f.argmax(w)) == 1

    def test_tent_variety_is_contained(self):
        # containment holds for the tent; division still fails on weights
        g = TropicalPolynomial(TENT_G)
        f = TropicalPolynomial(TENT_F)
        assert variety_contained(g, f)

    def test_wall_split_across_chambers(self):
        # V(g) is one line, cut into three pieces by the walls of T(f)
        g = TropicalPolynomial({(0, 0): 0, (1, 1): 0})
        f = TropicalPolynomial(F_TERMS)
        w = variety_containment_witness(g, f)
        assert w is not None  # the diagonal of T(f) is only a segment + rays

    def test_single_term_divisor(self):
        g = TropicalPolynomial({(1, 1): -3})
        f = TropicalPolynomial(F_TERMS)
        assert variety_contained(g, f)  # empty variety


class TestExtendWeights:
    def test_tent_extension(self):
        g = TropicalPolynomial(TENT_G)
        f = TropicalPolynomial(TENT_F)
        T = f.dual_complex()
        wup = extend_weights(f, g, T)
        got = sorted((tuple(sorted(T.wall_duals[k])), wup[k]) for k in wup)
        by_edge = dict(got)
        # outer diagonal walls and inner half-diagonals both lie on V(g)
        assert by_edge[((0, 2), (2, 0))] == 2
        assert by_edge[((0, 1), (1, 0))] == 2
        # connector walls are off the variety of g
        assert by_edge[((0, 1), (0, 2))] == 0
        assert sorted(wup.values()) == [0] * 4 + [2] * 8

    def test_self_extension_recovers_weights(self):
        f = TropicalPolynomial(F_TERMS)
        T = f.dual_complex()
        wup = extend_weights(f, f, T)
        assert wup == T.wall_weights


class TestDivide:
    def test_worked_example(self):
        g = TropicalPolynomial(G_TERMS)
        f = TropicalPolynomial(F_TERMS)
        h = divide(f, g)
        assert set(h.terms) == {(0, 0), (1, 1)}
        assert h.terms[(0, 0)] == 0
        assert h.terms[(1, 1)] == -10
        rng = random.Random(123)
        for _ in range(100):
            x = (Fraction(rng.randint(-60, 60), rng.randint(1, 9)),
                 Fraction(rng.randint(-60, 60), rng.randint(1, 9)))
            assert f(x) == g(x) + h(x)

    def test_tent_fails_with_deficit(self):
        g = TropicalPolynomial(TENT_G)
        f = TropicalPolynomial(TENT_F)
        with pytest.raises(NegativeWeight) as ei:
            divide(f, g)
        err = ei.value
        assert err.deficit == -1
        assert err.w_f == 1 and err.w_up == 2
        # the witness wall is dual to an edge of the inner square
        e = set(map(tuple, err.dual_edge))
        assert e in [{(0, 1), (1, 0)}, {(0, 1), (-1, 0)},
                     {(0, -1), (1, 0)}, {(0, -1), (-1, 0)}]

    def test_not_contained_raises(self):
        g = TropicalPolynomial({(0, 0): 0, (1, 0): 0})
        f = TropicalPolynomial({(0, 0): 0, (0, 1): 0})
        with pytest.raises(NotContained) as ei:
            divide(f, g)
        w = ei.value.witness
        assert len(g.argmax(w)) >= 2

    def test_divide_by_itself(self):
        f = TropicalPolynomial(F_TERMS)
        h = divide(f, f)
        assert h.terms == {(0, 0): 0}

    def test_divide_by_constant(self):
        f = TropicalPolynomial(F_TERMS)
        g = TropicalPolynomial({(0, 0): Fraction(5, 2)})
        h = divide(f, g)
        assert h.same_function(f.shift(Fraction(-5, 2)))

    def test_divide_by_monomial(self):
        f = TropicalPolynomial(F_TERMS)
        g = TropicalPolynomial({(1, 1): -3})
        h = divide(f, g)
        assert (g * h).same_function(f)
        assert (-1, -1) in h.terms

    def test_random_products_divide_back(self):
        rng = random.Random(77)
        for _ in range(25):
            n = rng.choice([1, 2])

            def rand_poly():
                terms = {}
                for _ in range(rng.randint(1, 4)):
                    e = tuple(rng.randint(0, 2) for _ in range(n))
                    terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 2))
                return TropicalPolynomial(terms)

            g, h = rand_poly(), rand_poly()
            f = g * h
            q = divide(f, g)
            assert q.same_function(h)


class TestReconstruct:
    def test_octagon_roundtrip(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        P = reconstruct_from_fan(fan, fan.wall_weights)
        assert P == S.normalize_translation()

    def test_tall_triangle_from_weights(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        w = ray_weights(fan, {(1, 1): 1, (0, 1): 0, (-1, 1): 0, (-1, 0): 2,
                              (-1, -1): 0, (0, -1): 0, (1, -1): 1, (1, 0): 0})
        P = reconstruct_from_fan(fan, w)
        assert P == LatticePolytope([(0, 0), (0, 2), (1, 1)])

    def test_corner_triangle_from_weights(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        w = ray_weights(fan, {(1, 1): 0, (0, 1): 0, (-1, 1): 1, (-1, 0): 0,
                              (-1, -1): 0, (0, -1): 1, (1, -1): 0, (1, 0): 1})
        P = reconstruct_from_fan(fan, w)
        assert P == LatticePolytope([(0, 0), (1, 0), (1, 1)])

    def test_unbalanced_weights_raise(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        w = ray_weights(fan, {(1, 1): 0, (0, 1): 0, (-1, 1): 1, (-1, 0): 1,
                              (-1, -1): 0, (0, -1): 1, (1, -1): 0, (1, 0): 0})
        with pytest.raises(NotBalanced):
            reconstruct_from_fan(fan, w)

    def test_hexagon_plus_segment_is_octagon(self):
        # dropping the N and S walls removes the horizontal segment summand
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        w = ray_weights(fan, {(1, 1): 1, (0, 1): 0, (-1, 1): 1, (-1, 0): 1,
                              (-1, -1): 1, (0, -1): 0, (1, -1): 1, (1, 0): 1})
        H = reconstruct_from_fan(fan, w)
        assert len(H.vertices) == 6
        B1 = LatticePolytope([(0, 0), (1, 0)])
        assert (H + B1).normalize_translation() == S.normalize_translation()

    def test_signed_weights_are_accepted_when_balanced(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        w = ray_weights(fan, {(1, 1): 1, (0, 1): -1, (-1, 1): 1, (-1, 0): 1,
                              (-1, -1): 1, (0, -1): -1, (1, -1): 1, (1, 0): 1})
        reconstruct_from_fan(fan, w)  # balanced, so it must not raise

    def test_missing_weight_raises(self):
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        with pytest.raises(NotBalanced):
            reconstruct_from_fan(fan, {})

    def test_cube_roundtrip(self):
        import itertools
        cube = LatticePolytope([tuple(3 * x for x in p)
                                for p in itertools.product([0, 1], repeat=3)])
        fan = cube.normal_fan()
        P = reconstruct_from_fan(fan, fan.wall_weights)
        assert P == cube.normalize_translation()


class TestRoundTripWeights:
    def test_octagon_weight_vector_of_summand(self):
        # w_P for P = conv{(0,1),(2,1),(1,0)} on the octagon fan
        S = LatticePolytope(OCTAGON)
        fan = S.normal_fan()
        P1 = LatticePolytope([(0, 1), (2, 1), (1, 0)])
        fP = TropicalPolynomial.from_polytope(P1)
        # extended weights of f_P1 on T(f_S) walls, keyed back to ray dirs
        fS = TropicalPolynomial.from_polytope(S)
        T = fS.dual_complex()
        wup = extend_weights(fS, fP, T)
        by_dir = {T.walls[k].rays[0]: v for k, v in wup.items()}
        assert by_dir == {(1, 1): 0, (0, 1): 2, (-1, 1): 0, (-1, 0): 0,
                          (-1, -1): 1, (0, -1): 0, (1, -1): 1, (1, 0): 0}
