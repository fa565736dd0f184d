"""Exact polyhedral geometry: cones, polyhedra, polytopes, fans.

One double description engine does all conversions between inequality and
generator descriptions; hulls, facets, normal fans and cell incidence are
thin layers over it.  Entries may be Fraction or QuadExt, so the same code
paths serve the rational fans and the Coxeter fans over Q(sqrt(2)).

Conventions.  An inequality is stored as (a, b) and means a.x <= b, so the
vectors a are outer normals.  Cones are polyhedra whose offsets are all
zero.  Normal cones use the max convention: N(v) = {y : y.v >= y.v' for
all vertices v'}, matching support functions f_P(y) = max_v y.v.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact import (
    QuadExt,
    TropfactorError,
    dot,
    is_zero_vector,
    primitive_of_rational,
    primitive_vector,
    rational_content,
    row_reduce,
    scalar_sqrt,
    sign,
    vadd,
    vsub,
)


class DimensionMismatch(TropfactorError):
    pass


class DegeneratePolytope(TropfactorError):
    pass


def _demote(x):
    """Collapse QuadExt values with no radical part back to Fraction."""
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    return x


def demote_vector(v) -> tuple:
    return tuple(_demote(x) for x in v)


def _is_rational_vector(v) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in v)


def normalize_ray(v) -> tuple:
    """Canonical representative of the ray through v (positive scaling only)."""
    v = tuple(v)
    if all(isinstance(x, int) for x in v):
        if not any(v):
            raise ValueError("zero vector spans no ray")
        return primitive_vector(v)
    v = demote_vector(v)
    if is_zero_vector(v):
        raise ValueError("zero vector spans no ray")
    if _is_rational_vector(v):
        return primitive_of_rational(v)
    c = next(x for x in v if x)
    c = abs(c)
    return demote_vector(x / c for x in v)


def rref_basis(vectors) -> tuple:
    """Canonical (reduced echelon) basis of the span of the given vectors."""
    vecs = [v for v in vectors if not is_zero_vector(v)]
    if not vecs:
        return ()
    red, _ = row_reduce(vecs)
    return tuple(demote_vector(r) for r in red)


# ---------------------------------------------------------------------------
# double description


def _integer_row(a) -> tuple:
    """Positive integer rescale of a rational row; other rows pass through.

    Rescaling a constraint by a positive factor leaves the cone unchanged
    but lets the insertion loops run on plain machine integers.
    """
    if all(isinstance(x, int) for x in a):
        return tuple(a)
    if _is_rational_vector(a):
        m = 1
        for x in a:
            if isinstance(x, Fraction):
                m = m * x.denominator // math.gcd(m, x.denominator)
        return tuple(int(x * m) for x in a)
    return tuple(a)


def dd_cone(constraints, n):
    """Extreme rays and lineality of {x in R^n : a.x >= 0 / a.x = 0}.

    constraints is a sequence of (a, is_equality).  Starts from the whole
    space and inserts constraints one at a time; adjacency of rays is
    decided combinatorially from zero sets.  Zero sets are maintained
    incrementally: projecting along a lineality generator rescales every
    constraint value by a positive factor, so sign patterns survive, and
    only freshly combined rays need their sets computed from scratch.
    """
    lineality = [tuple(1 if j == i else 0 for j in range(n))
                 for i in range(n)]
    rays = []      # normalized ray representatives
    zsets = []     # per ray: indices of processed constraints it annihilates
    processed = [] # constraint rows seen so far

    def insert(a, equality):
        nonlocal rays, zsets, lineality
        m = len(processed)
        hot = next((l for l in lineality if dot(a, l)), None)
        if hot is not None:
            # lineality escapes the hyperplane: split off one generator
            if sign(dot(a, hot)) < 0:
                hot = tuple(-x for x in hot)
            s0 = dot(a, hot)

            def drop(v):
                t = dot(a, v)
                return vsub(tuple(s0 * x for x in v),
                            tuple(t * x for x in hot))

            lineality = [p for p in map(drop, lineality)
                         if not is_zero_vector(p)]
            kept, kept_z = [], []
            for r, z in zip(rays, zsets):
                p = drop(r)
                if not is_zero_vector(p):
                    # every processed row vanishes on hot, so dropping
                    # rescales the row values by s0 > 0: zero sets keep
                    kept.append(normalize_ray(p))
                    kept_z.append(z | {m})
            rays, zsets = kept, kept_z
            if not equality:
                rays.append(normalize_ray(hot))
                zsets.append(frozenset(range(m)))
            return
        vals = [dot(a, r) for r in rays]
        signs = [sign(v) for v in vals]
        pos = [i for i, s in enumerate(signs) if s > 0]
        neg = [i for i, s in enumerate(signs) if s < 0]
        zero = [i for i, s in enumerate(signs) if s == 0]
        if not neg and not equality:
            zsets[:] = [z | {m} if s == 0 else z
                        for z, s in zip(zsets, signs)]
            return
        if not pos and not neg:
            zsets[:] = [z | {m} for z in zsets]
            return
        keep = zero + (pos if not equality else [])
        new = [rays[i] for i in keep]
        new_z = [zsets[i] | {m} if signs[i] == 0 else zsets[i] for i in keep]
        for i, j in itertools.product(pos, neg):
            t = zsets[i] & zsets[j]
            adjacent = not any(k != i and k != j and zsets[k] >= t
                               for k in range(len(rays)))
            if not adjacent:
                continue
            r = vsub(tuple(vals[i] * x for x in rays[j]),
                     tuple(vals[j] * x for x in rays[i]))
            if is_zero_vector(r):
                continue
            r = normalize_ray(r)
            z = frozenset(k for k in range(m) if not dot(processed[k], r))
            new.append(r)
            new_z.append(z | {m})
        rays[:] = new
        zsets[:] = new_z

    for a, eq in constraints:
        a = _integer_row(a)
        insert(a, eq)
        processed.append(a)
        # dedupe rays by direction (safety; combinations can repeat)
        seen = {}
        for r, z in zip(rays, zsets):
            seen.setdefault(r, z)
        rays[:] = list(seen)
        zsets[:] = list(seen.values())
    return list(rays), rref_basis(lineality)


def cone_to_inequalities(rays, lineality, n):
    """Irredundant H-description of cone(rays) + span(lineality).

    Returns (inequalities, equalities) as homogeneous normal vectors a,
    meaning a.x >= 0 and a.x = 0.  Obtained by double description on the
    polar cone.
    """
    cons = [(tuple(r), False) for r in rays] + [(tuple(l), True) for l in lineality]
    polar_rays, polar_lin = dd_cone(cons, n)
    return list(polar_rays), list(polar_lin)


# ---------------------------------------------------------------------------
# polyhedra


class Polyhedron:
    """A convex polyhedron {x : A x <= b, E x = c} with exact entries."""

    def __init__(self, n: int, inequalities=(), equalities=()):
        self.n = n
        self.inequalities = [(tuple(a), b) for a, b in inequalities]
        self.equalities = [(tuple(a), b) for a, b in equalities]
        for a, _ in self.inequalities + self.equalities:
            if len(a) != n:
                raise DimensionMismatch(f"normal of length {len(a)} in R^{n}")
        self._vrep = None
        self._hrep_min = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_generators(cls, points, rays=(), lineality=(), n=None):
        pts = [tuple(p) for p in points]
        rys = [tuple(r) for r in rays]
        lin = [tuple(l) for l in lineality]
        if n is None:
            probe = (pts + rys + lin)
            if not probe:
                raise DimensionMismatch("cannot infer ambient dimension")
            n = len(probe[0])
        if any(len(v) != n for v in pts + rys + lin):
            raise DimensionMismatch("mixed-dimension generators")
        gens = [(1,) + p for p in pts] + [(0,) + r for r in rys]
        glin = [(0,) + l for l in lin]
        ineqs_h, eqs_h = cone_to_inequalities(gens, glin, n + 1)
        ineqs, eqs = [], []
        for f in ineqs_h:
            s, y = f[0], f[1:]
            if is_zero_vector(y):
                continue  # the inequality t >= 0 itself
            ineqs.append((tuple(-x for x in y), s))
        for f in eqs_h:
            s, y = f[0], f[1:]
            if is_zero_vector(y):
                continue
            eqs.append((tuple(-x for x in y), s))
        P = cls(n, ineqs, eqs)
        P._hrep_min = (list(P.inequalities), list(P.equalities))
        return P

    @classmethod
    def cone_from_rays(cls, rays, lineality=(), n=None):
        if n is None:
            probe = list(rays) + list(lineality)
            if not probe:
                raise DimensionMismatch("cannot infer ambient dimension")
            n = len(probe[0])
        zero = tuple(Fraction(0) for _ in range(n))
        return cls.from_generators([zero], rays, lineality, n=n)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")
        return Polyhedron(self.n, self.inequalities + other.inequalities,
                          self.equalities + other.equalities)

    def with_equality(self, a, b) -> "Polyhedron":
        return Polyhedron(self.n, self.inequalities,
                          self.equalities + [(tuple(a), b)])

    # -- V-representation --------------------------------------------------

    def _compute_vrep(self):
        if self._vrep is not None:
            return self._vrep
        cons = [((1,) + tuple(0 for _ in range(self.n)), False)]  # t >= 0
        for a, b in self.inequalities:
            cons.append(((b,) + tuple(-x for x in a), False))
        for a, b in self.equalities:
            cons.append(((b,) + tuple(-x for x in a), True))
        crays, clin = dd_cone(cons, self.n + 1)
        verts, rays = [], []
        for r in crays:
            t, x = r[0], r[1:]
            if sign(t) > 0:
                if isinstance(t, int):
                    t = Fraction(t)
                verts.append(demote_vector(v / t for v in x))
            else:
                rays.append(normalize_ray(x))
        lin = []
        for l in clin:
            # homogenization lineality always has t = 0
            assert not l[0]
            lin.append(l[1:])
        self._vrep = (sorted(verts), sorted(rays), rref_basis(lin))
        return self._vrep

    @property
    def vertices(self):
        """Points generating the bounded part (true vertices iff pointed)."""
        return self._compute_vrep()[0]

    @property
    def rays(self):
        return self._compute_vrep()[1]

    @property
    def lineality(self):
        return self._compute_vrep()[2]

    def is_empty(self) -> bool:
        return not self.vertices

    def dim(self) -> int:
        verts, rays, lin = self._compute_vrep()
        if not verts:
            return -1
        diffs = [vsub(v, verts[0]) for v in verts[1:]]
        return len(rref_basis(diffs + list(rays) + list(lin)))

    def key(self):
        """Canonical hashable identity of the point set."""
        verts, rays, lin = self._compute_vrep()
        return (tuple(verts), tuple(rays), lin)

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def contains(self, x, strict=False) -> bool:
        if len(x) != self.n:
            raise DimensionMismatch("point has wrong dimension")
        for a, b in self.equalities:
            if dot(a, x) != b:
                return False
        for a, b in self.inequalities:
            s = sign(b - dot(a, x))
            if s < 0 or (strict and s == 0):
                return False
        return True

    def contains_polyhedron(self, other: "Polyhedron") -> bool:
        verts, rays, lin = other._compute_vrep()
        for v in verts:
            if not self.contains(v):
                return False
        recession = list(rays) + [l for l in lin] + [tuple(-x for x in l) for l in lin]
        for r in recession:
            for a, b in self.equalities:
                if dot(a, r):
                    return False
            for a, b in self.inequalities:
                if sign(dot(a, r)) > 0:
                    return False
        return True

    def relative_interior_point(self):
        verts, rays, _ = self._compute_vrep()
        if not verts:
            raise ValueError("empty polyhedron has no relative interior")
        k = len(verts)
        p = tuple(sum(v[i] for v in verts) / k for i in range(self.n))
        for r in rays:
            p = vadd(p, r)
        return p

    # -- irredundant H-representation -------------------------------------

    def minimal_hrep(self):
        """(facet inequalities, affine-hull equalities), canonically scaled."""
        if self._hrep_min is None:
            verts, rays, lin = self._compute_vrep()
            if not verts:
                raise ValueError("empty polyhedron has no facet description")
            P = Polyhedron.from_generators(verts, rays, lin, n=self.n)
            self._hrep_min = (P.inequalities, P.equalities)
        ineqs, eqs = self._hrep_min
        return list(ineqs), list(eqs)

    def facets(self):
        """The facet cells, as polyhedra, paired with their outer normals."""
        ineqs, eqs = self.minimal_hrep()
        out = []
        for a, b in ineqs:
            F = Polyhedron(self.n, ineqs, eqs + [(a, b)])
            out.append((F, a))
        return out


# ---------------------------------------------------------------------------
# polytopes


class LatticePolytope:
    """A bounded polytope given by its vertices, with exact coordinates.

    Vertices are stored sorted, so equal polytopes compare equal.  Despite
    the name, rational and Q(sqrt(2)) vertex coordinates are accepted; edge
    weights fall back from lattice length to metric length in that case.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = [demote_vector(Fraction(x) if isinstance(x, int) else x for x in p)
               for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("mixed-dimension points")
        self.n = n
        P = Polyhedron.from_generators(pts, n=n)
        if P.rays or P.lineality:
            raise ValueError("point set is unbounded?")
        self.vertices = tuple(P.vertices)
        self._poly = P
        self._facet_cache = None

    # -- basics ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope({list(self.vertices)!r})"

    def dim(self) -> int:
        return self._poly.dim()

    def contains(self, x) -> bool:
        return self._poly.contains(x)

    def as_polyhedron(self) -> Polyhedron:
        return self._poly

    def translate(self, t) -> "LatticePolytope":
        return LatticePolytope([vadd(v, tuple(t)) for v in self.vertices])

    def scale(self, c) -> "LatticePolytope":
        if sign(c) < 0:
            raise ValueError("negative scaling factor")
        if sign(c) == 0:
            return LatticePolytope([tuple(Fraction(0) for _ in range(self.n))])
        return LatticePolytope([tuple(c * x for x in v) for v in self.vertices])

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")
        return LatticePolytope([vadd(u, v) for u in self.vertices
                                for v in other.vertices])

    minkowski_sum = __add__

    def normalize_translation(self) -> "LatticePolytope":
        """Translate so the lexicographically smallest vertex is the origin."""
        return self.translate(tuple(-x for x in self.vertices[0]))

    # -- support function --------------------------------------------------

    def support(self, y):
        return max(dot(y, v) for v in self.vertices)

    def face_vertices(self, y):
        """Vertices of the face of P in direction y (the argmax face)."""
        vals = [dot(y, v) for v in self.vertices]
        m = max(vals)
        return [v for v, s in zip(self.vertices, vals) if s == m]

    # -- face structure ----------------------------------------------------

    def _facet_data(self):
        if self._facet_cache is None:
            ineqs, _ = self._poly.minimal_hrep()
            tight = []
            for v in self.vertices:
                tight.append(frozenset(i for i, (a, b) in enumerate(ineqs)
                                       if dot(a, v) == b))
            self._facet_cache = (ineqs, tight)
        return self._facet_cache

    def edges(self):
        """Vertex pairs (u, v) forming the 1-faces."""
        if len(self.vertices) == 1:
            return []
        _, tight = self._facet_data()
        verts = self.vertices
        out = []
        for i, j in itertools.combinations(range(len(verts)), 2):
            t = tight[i] & tight[j]
            members = [k for k in range(len(verts)) if tight[k] >= t]
            if members == [i, j] or set(members) == {i, j}:
                out.append((verts[i], verts[j]))
        return out

    def two_faces(self):
        """Vertex sets of the 2-faces."""
        d = self.dim()
        if d < 2:
            return []
        if d == 2:
            return [frozenset(self.vertices)]
        _, tight = self._facet_data()
        verts = self.vertices
        edge_ix = []
        for i, j in itertools.combinations(range(len(verts)), 2):
            t = tight[i] & tight[j]
            members = frozenset(k for k in range(len(verts)) if tight[k] >= t)
            if members == {i, j}:
                edge_ix.append((i, j, t))
        faces = set()
        for (i1, j1, t1), (i2, j2, t2) in itertools.combinations(edge_ix, 2):
            if not {i1, j1} & {i2, j2}:
                continue
            t = t1 & t2
            members = [k for k in range(len(verts)) if tight[k] >= t]
            pts = [verts[k] for k in members]
            diffs = [vsub(p, pts[0]) for p in pts[1:]]
            if len(rref_basis(diffs)) == 2:
                faces.add(frozenset(pts))
        return sorted(faces, key=lambda f: sorted(f))

    def edge_weight(self, u, v, gram=None):
        """Lattice length of the edge u-v, or metric length under gram."""
        d = vsub(v, u)
        if gram is None and _is_rational_vector(d):
            return rational_content(d)
        G = gram
        if G is None:
            G = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        q = dot(d, tuple(dot(row, d) for row in G))
        return scalar_sqrt(q)

    # -- normal fan --------------------------------------------------------

    def normal_fan(self, gram=None) -> "Fan":
        """The complete normal fan, with edge weights attached to walls.

        Chambers are the vertex normal cones N(v) in the max convention.
        Each wall (codimension 1 cone) is dual to an edge and carries the
        edge's lattice length, or its gram-metric length when a gram matrix
        is given (the Coxeter case).
        """
        if self.dim() != self.n:
            raise DegeneratePolytope(
                f"polytope has dimension {self.dim()} < ambient {self.n}")
        chambers = []
        for v in self.vertices:
            ineqs = [(tuple(vsub(w, v)), Fraction(0)) for w in self.vertices
                     if w != v]
            chambers.append(Polyhedron(self.n, ineqs))
        fan = Fan(chambers, labels=list(self.vertices))
        weights = {}
        duals = {}
        for (u, v) in self.edges():
            iu = self.vertices.index(u)
            iv = self.vertices.index(v)
            wall = chambers[iu].intersect(
                Polyhedron(self.n, [], [(vsub(u, v), Fraction(0))]))
            k = wall.key()
            weights[k] = self.edge_weight(u, v, gram=gram)
            duals[k] = (u, v)
        fan.wall_weights = weights
        fan.wall_duals = duals
        missing = [k for k in fan.walls if k not in weights]
        assert not missing, "every wall of a normal fan is dual to an edge"
        return fan


def convex_hull(points) -> LatticePolytope:
    return LatticePolytope(points)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    return P + Q


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A polyhedral fan given by its maximal cones.

    Cells of codimension 1 (walls) and 2 (ridges) are derived from the
    chambers; cells are identified across chambers by canonical keys of
    their point sets, so incidence is available by dictionary lookup.
    """

    def __init__(self, chambers: Sequence[Polyhedron], labels=None):
        if not chambers:
            raise ValueError("a fan needs at least one cone")
        self.n = chambers[0].n
        if any(c.n != self.n for c in chambers):
            raise DimensionMismatch("mixed-dimension cones")
        self.chambers = list(chambers)
        self.labels = list(labels) if labels is not None else list(range(len(chambers)))
        self._walls = None
        self._ridges = None
        self.wall_weights = None
        self.wall_duals = None

    def _compute_cells(self):
        if self._walls is not None:
            return
        walls = {}
        wall_sides = {}
        for ci, C in enumerate(self.chambers):
            ineqs, eqs = C.minimal_hrep()
            for a, b in ineqs:
                assert not b, "fan cones must be homogeneous"
                W = Polyhedron(self.n, ineqs, eqs + [(a, b)])
                k = W.key()
                if k not in walls:
                    walls[k] = W
                    wall_sides[k] = []
                inward = tuple(-x for x in a)
                wall_sides[k].append((ci, inward))
        ridges = {}
        ridge_star = {}
        for wk, W in walls.items():
            ineqs, eqs = W.minimal_hrep()
            for a, b in ineqs:
                R = Polyhedron(self.n, ineqs, eqs + [(a, b)])
                if R.is_empty() or R.dim() != self.n - 2:
                    continue
                k = R.key()
                if k not in ridges:
                    ridges[k] = R
                    ridge_star[k] = []
                if wk not in ridge_star[k]:
                    ridge_star[k].append(wk)
        self._walls = walls
        self._wall_sides = wall_sides
        self._ridges = ridges
        self._ridge_star = ridge_star

    @property
    def walls(self):
        self._compute_cells()
        return self._walls

    @property
    def wall_chambers(self):
        """wall key -> list of (chamber index, inward normal)."""
        self._compute_cells()
        return self._wall_sides

    @property
    def ridges(self):
        self._compute_cells()
        return self._ridges

    @property
    def ridge_walls(self):
        """ridge key -> list of wall keys containing it."""
        self._compute_cells()
        return self._ridge_star

    def chamber_graph(self):
        """Adjacency across interior walls: chamber -> [(other, wall key)]."""
        adj = {i: [] for i in range(len(self.chambers))}
        for k, sides in self.wall_chambers.items():
            if len(sides) == 2:
                (i, _), (j, _) = sides
                adj[i].append((j, k))
                adj[j].append((i, k))
        return adj

    def find_chamber(self, x) -> Optional[int]:
        for i, C in enumerate(self.chambers):
            if C.contains(x):
                return i
        return None

    def refines(self, other: "Fan") -> bool:
        """Is every cone of this fan contained in a cone of the other?"""
        for C in self.chambers:
            if not any(D.contains_polyhedron(C) for D in other.chambers):
                return False
        return True
