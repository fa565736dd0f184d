"""Coxeter fans and Phi-polytopes over Q(sqrt(2)).

A finite reflection arrangement in R^n cuts space into the chambers of
the Coxeter fan; its walls lie on the mirror hyperplanes.  Weights on
the walls are balanced in the root form: around every ridge A the two
walls on a common mirror H_alpha form a pair (F+, F-), and balancedness
asks that sum (w(F+) - w(F-)) alpha lies in the span of A.  Since the
unit roots of the supported types live in Q(sqrt(2)), the whole weight
cone is exact over that field; its kernel basis, made non-negative with
the all-ones vector, plays the role the lattice factorization basis
plays for rational fans.

Type A_n is coordinatized on the quotient of R^{n+1} by the diagonal:
points of the fan's ambient space are the action coordinates (f_1, ...,
f_n) of mean-zero functionals, so the dual Gram matrix is I + J and the
root e_i - e_j pairs with primal points through the integer vector
G(e_i - e_j), which is exactly the braid inequality normal.  B2 is
self-dual with the standard metric.  In both cases polytope edge
lengths are measured in the primal metric, the inverse of the dual
Gram matrix, and every root has squared length 2 on the type A side.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .exact import (
    TropfactorError,
    dot,
    nullspace_field,
    primitive_of_rational,
    scalar_sqrt,
    sign,
    solve_linear,
    vadd,
    vscale,
    vsub,
)
from .division import reconstruct_from_fan
from .polyhedra import (
    Fan,
    LatticePolytope,
    Polyhedron,
    demote_vector,
    normalize_ray,
)
from .tropical import annihilator_lattice, covector


class UnsupportedType(TropfactorError):
    """The requested Coxeter type is outside A_1..A_4, B2."""


class NotAPhiPolytope(TropfactorError):
    """The polytope's normal fan is not refined by the Coxeter fan."""


class PointOnHyperplane(TropfactorError):
    """The base point lies on a mirror, so its orbit is degenerate."""


_SUPPORTED = ("A1", "A2", "A3", "A4", "B2")
_GROUP_ORDER = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "B2": 8}


# ---------------------------------------------------------------------------
# root systems


class RootSystem:
    """A finite root system with unit-length roots over Q(sqrt(2)).

    Roots are stored both as primitive integer vectors (for exact sign
    work) and as unit vectors in the dual metric.  gram is the dual Gram
    matrix, pgram its inverse; mirror(r) = gram . r is the integer
    pairing vector of the mirror hyperplane of r, and at the same time
    the primal direction of edges dual to walls on that mirror.
    """

    def __init__(self, tag: str, n: int, gram, int_roots):
        self.tag = tag
        self.n = n
        self.gram = tuple(tuple(row) for row in gram)
        self.pgram = _invert_gram(self.gram)
        self.int_roots = tuple(int_roots)
        self.int_positive = tuple(r for r in self.int_roots
                                  if _lex_positive(r))
        self.roots = tuple(self.unit_root(r) for r in self.int_roots)
        self.positive_roots = tuple(self.unit_root(r)
                                    for r in self.int_positive)
        self.int_simple = tuple(self._find_simple())
        self.simple_roots = tuple(self.unit_root(r) for r in self.int_simple)

    # -- metric ------------------------------------------------------------

    def mirror(self, r) -> tuple:
        return tuple(dot(row, r) for row in self.gram)

    def gdot(self, u, v):
        return dot(u, self.mirror(v))

    def root_norm(self, r):
        return scalar_sqrt(self.gdot(r, r))

    def unit_root(self, r) -> tuple:
        nrm = self.root_norm(r)
        return demote_vector(x / nrm for x in r)

    def primal_norm(self, d):
        return scalar_sqrt(dot(d, tuple(dot(row, d) for row in self.pgram)))

    # -- reflections -------------------------------------------------------

    def reflect_dual(self, x, r) -> tuple:
        """Image of the dual-space point x under the reflection in r."""
        c = 2 * self.gdot(x, r) / self.gdot(r, r)
        return demote_vector(vsub(x, vscale(c, r)))

    def reflect_primal(self, v, r) -> tuple:
        """Image of the primal point v; r pairs with v through mirror(r)."""
        c = 2 * dot(v, r) / self.gdot(r, r)
        return demote_vector(vsub(v, vscale(c, self.mirror(r))))

    # -- simple roots ------------------------------------------------------

    def _find_simple(self):
        """Positive roots whose mirrors are facets of the fundamental cone.

        The cone {x : <x, alpha> >= 0 for all positive alpha} is cut out
        by the simple roots alone; the irredundant H-description of the
        intersection recovers exactly their mirrors.
        """
        C = Polyhedron(self.n, [(tuple(-x for x in self.mirror(r)),
                                 Fraction(0)) for r in self.int_positive])
        ineqs, eqs = C.minimal_hrep()
        assert not eqs, "the fundamental chamber is full-dimensional"
        facets = {normalize_ray(tuple(-x for x in a)) for a, _ in ineqs}
        simple = [r for r in self.int_positive
                  if normalize_ray(self.mirror(r)) in facets]
        assert len(simple) == len(facets), (
            "every facet of the fundamental chamber lies on a mirror")
        return simple

    def __repr__(self):
        return f"RootSystem({self.tag!r}, {len(self.int_roots)} roots)"


def _lex_positive(r) -> bool:
    for x in r:
        if x:
            return x > 0
    return False


def _invert_gram(gram):
    n = len(gram)
    aug = [list(map(Fraction, row)) + [Fraction(1) if j == i else Fraction(0)
                                       for j in range(n)]
           for i, row in enumerate(gram)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def build_root_system(tag: str) -> RootSystem:
    """The root system of the given type, with validated reflection closure.

    A_n (n <= 4) uses the quotient coordinates described in the module
    docstring; its n(n+1) roots are the images of e_i - e_j and all have
    squared dual norm 2.  B2 has the eight roots +-e_1, +-e_2,
    (+-1, +-1)/sqrt(2) in the standard metric.  Raises UnsupportedType
    for any other tag.
    """
    if tag not in _SUPPORTED:
        raise UnsupportedType(
            f"type {tag!r} is not supported; choose one of {_SUPPORTED}")
    if tag == "B2":
        n = 2
        gram = ((1, 0), (0, 1))
        ints = [(1, 0), (0, 1), (1, 1), (1, -1)]
    else:
        n = int(tag[1])
        gram = tuple(tuple(2 if i == j else 1 for j in range(n))
                     for i in range(n))
        # a-coordinates of e_i - e_j: drop the last entry of the
        # mean-orthogonal representative
        ints = []
        for i in range(n):
            ints.append(tuple(1 if k == i else 0 for k in range(n)))
            for j in range(i + 1, n):
                ints.append(tuple(1 if k == i else (-1 if k == j else 0)
                                  for k in range(n)))
    int_roots = [tuple(r) for r in ints] + [tuple(-x for x in r) for r in ints]
    rs = RootSystem(tag, n, gram, int_roots)
    if tag.startswith("A"):
        assert all(rs.gdot(r, r) == 2 for r in rs.int_roots), (
            "all type A roots have squared dual norm 2")
    roots = set(rs.roots)
    for r in rs.int_roots:
        image = {rs.reflect_dual(u, r) for u in roots}
        assert image == roots, "each reflection permutes the root set"
    assert len(rs.int_simple) == n, "the simple roots form a base"
    return rs


# ---------------------------------------------------------------------------
# the Coxeter fan


class CoxeterFan:
    """The chamber fan of a reflection arrangement, with wall bookkeeping.

    wall_order fixes the cone order used when weight vectors are written
    as tuples; for B2 it is the Cayley-graph order of the eight rays
    (W_t, W_s, sW_t, stW_s, stsW_t, tstW_s, tsW_t, tW_s) starting at the
    ray (1, 1) and going counterclockwise, for type A it is the sorted
    canonical key order.  ridge_pairs exposes, per ridge, the mirror
    pairing (alpha, F+, F-) used by the root form of balancing.
    """

    def __init__(self, rs: RootSystem, fan: Fan, wall_order, labels=None):
        self.rs = rs
        self.fan = fan
        self.wall_order = list(wall_order)
        self.labels = dict(labels) if labels is not None else None
        self.group_order = len(fan.chambers)
        self._pairs = None
        self._rows = None

    # -- weights as dicts or tuples ---------------------------------------

    def weight_dict(self, w) -> Dict:
        if isinstance(w, dict):
            missing = [k for k in self.wall_order if k not in w]
            if missing or len(w) != len(self.wall_order):
                raise ValueError("weight keys do not match the fan's walls")
            return dict(w)
        values = list(w)
        if len(values) != len(self.wall_order):
            raise ValueError(
                f"expected {len(self.wall_order)} weights, got {len(values)}")
        return dict(zip(self.wall_order, values))

    def weight_values(self, by_key) -> tuple:
        return tuple(by_key[k] for k in self.wall_order)

    # -- mirror pairing per ridge ------------------------------------------

    @property
    def ridge_pairs(self):
        """ridge key -> tuple of (integer root, F+ key, F- key)."""
        self._compute_pairs()
        return self._pairs

    def _compute_pairs(self):
        if self._pairs is not None:
            return
        fan, rs = self.fan, self.rs
        mirrors = {r: rs.mirror(r) for r in rs.int_positive}
        pairs = {}
        for rk in sorted(fan.ridges):
            tau = fan.ridges[rk]
            pi = annihilator_lattice(tau)
            assert len(pi) == 2, "ridges have codimension 2"
            signed = {}
            for wk in fan.ridge_walls[rk]:
                W = fan.walls[wk]
                p = W.relative_interior_point()
                on = [r for r, m in mirrors.items() if dot(m, p) == 0]
                assert len(on) == 1, "each wall lies on exactly one mirror"
                r = on[0]
                c = covector(tau, W)
                s = sign(dot(pi[0], r) * dot(pi[1], c)
                         - dot(pi[1], r) * dot(pi[0], c))
                assert s != 0, "roots are transverse to their mirrors"
                signed.setdefault(r, {})[s] = wk
            entry = []
            for r in rs.int_positive:
                if r not in signed:
                    continue
                assert set(signed[r]) == {1, -1}, (
                    "a mirror through a ridge carries one wall per side")
                entry.append((r, signed[r][1], signed[r][-1]))
            assert 2 * len(entry) == len(fan.ridge_walls[rk]), (
                "the star of a ridge pairs its walls two by two")
            pairs[rk] = tuple(entry)
        self._pairs = pairs

    def _phi_rows(self):
        """Rows of the stacked root-form maps phi^A over wall_order."""
        if self._rows is not None:
            return self._rows
        self._compute_pairs()
        fan, rs = self.fan, self.rs
        col = {k: i for i, k in enumerate(self.wall_order)}
        rows = []
        for rk in sorted(self._pairs):
            pi = annihilator_lattice(fan.ridges[rk])
            for j in (0, 1):
                row = [Fraction(0)] * len(self.wall_order)
                for r, plus, minus in self._pairs[rk]:
                    coeff = dot(pi[j], r) / rs.root_norm(r)
                    row[col[plus]] = row[col[plus]] + coeff
                    row[col[minus]] = row[col[minus]] - coeff
                rows.append(tuple(row))
        self._rows = rows
        return rows

    def __repr__(self):
        return (f"CoxeterFan({self.rs.tag!r}, {self.group_order} chambers, "
                f"{len(self.wall_order)} walls)")


_B2_LABEL_ORDER = ("W_t", "W_s", "sW_t", "stW_s",
                   "stsW_t", "tstW_s", "tsW_t", "tW_s")


def _b2_labels(rs: RootSystem, fan: Fan):
    """Wall order and labels for B2, following the Cayley-graph cosets.

    The generator s reflects in the vertical mirror and fixes the ray
    (0, 1); t reflects in the main diagonal and fixes (1, 1).  A label
    like stW_s names the coset st<s>, whose ray is s(t(ray of W_s)).
    """
    base = {"t": (Fraction(1), Fraction(1)), "s": (Fraction(0), Fraction(1))}
    gen_root = {"s": (1, 0), "t": (1, -1)}
    for g in ("s", "t"):
        assert rs.reflect_dual(base[g], gen_root[g]) == base[g], (
            "each generator fixes its own ray pointwise")
    wall_of_ray = {}
    for k, W in fan.walls.items():
        rays = W.rays
        assert len(rays) == 1, "B2 walls are single rays"
        wall_of_ray[normalize_ray(rays[0])] = k
    order, labels = [], {}
    for label in _B2_LABEL_ORDER:
        word, g = label.split("W_")
        ray = base[g]
        for ch in reversed(word):
            ray = rs.reflect_dual(ray, gen_root[ch])
        k = wall_of_ray[normalize_ray(ray)]
        order.append(k)
        labels[k] = label
    assert len(set(order)) == 8, "the eight cosets hit the eight rays"
    return order, labels


def coxeter_fan(rs: RootSystem) -> CoxeterFan:
    """The complete fan of Weyl chambers of the arrangement of rs.

    Chambers are found as the orbit of the fundamental chamber under the
    simple reflections; each is described by its sign vector against the
    positive-root mirrors.  The count equals the group order, which
    checks simple transitivity.
    """
    mirrors = [rs.mirror(r) for r in rs.int_positive]
    fundamental = Polyhedron(rs.n, [(tuple(-x for x in rs.mirror(r)),
                                     Fraction(0)) for r in rs.int_simple])
    p0 = demote_vector(fundamental.relative_interior_point())
    seen = {p0}
    queue = [p0]
    points = []
    while queue:
        p = queue.pop()
        points.append(p)
        for r in rs.int_simple:
            q = rs.reflect_dual(p, r)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    assert len(points) == _GROUP_ORDER[rs.tag], (
        "the group acts simply transitively on the chambers")
    chambers = []
    for p in sorted(points):
        ineqs = []
        for m in mirrors:
            s = sign(dot(m, p))
            assert s != 0, "orbit points of a generic point stay generic"
            ineqs.append((vscale(-s, m), Fraction(0)))
        chambers.append(Polyhedron(rs.n, ineqs))
    fan = Fan(chambers)
    if rs.tag == "B2":
        wall_order, labels = _b2_labels(rs, fan)
    else:
        wall_order, labels = sorted(fan.walls), None
    return CoxeterFan(rs, fan, wall_order, labels)


# ---------------------------------------------------------------------------
# balancing


def root_balanced(cf: CoxeterFan, w) -> bool:
    """Is w balanced in the root form around every ridge?

    Around a ridge A with mirror pairs (alpha_i, F_i+, F_i-) the test is
    sum_i (w(F_i+) - w(F_i-)) alpha_i in span(A), checked through the
    integer annihilator functionals of A, so the answer is exact for
    weights in Q(sqrt(2)).
    """
    values = cf.weight_values(cf.weight_dict(w))
    return all(dot(row, values) == 0 for row in cf._phi_rows())


def covector_balanced(cf: CoxeterFan, w) -> bool:
    """Balancedness in the unit-covector form, when it stays in the field.

    Around each ridge the covectors of its star are projected onto the
    orthogonal complement of the ridge span, normalized to unit length
    and summed with their weights; balance means the sum lies in the
    ridge span.  Raises ValueError when a covector norm leaves
    Q(sqrt(2)) (already for A_2, whose ray norms are sqrt(6)); the root
    form is the exact test in general.
    """
    by_key = cf.weight_dict(w)
    fan, rs = cf.fan, cf.rs
    for rk in sorted(fan.ridges):
        tau = fan.ridges[rk]
        pi = annihilator_lattice(tau)
        span = _ridge_span(tau)
        total = None
        for wk in fan.ridge_walls[rk]:
            c = covector(tau, fan.walls[wk])
            c = _gram_perp(rs, c, span)
            u = demote_vector(x / rs.root_norm(c) for x in c)
            contrib = vscale(by_key[wk], u)
            total = contrib if total is None else vadd(total, contrib)
        if any(dot(p, total) != 0 for p in pi):
            return False
    return True


def _ridge_span(tau: Polyhedron):
    verts, rays, lin = tau.vertices, tau.rays, tau.lineality
    dirs = [vsub(v, verts[0]) for v in verts[1:]] + list(rays) + list(lin)
    return [d for d in dirs if any(d)]


def _gram_perp(rs: RootSystem, c, span):
    """Component of c orthogonal to the span in the dual metric."""
    if not span:
        return c
    gram = [[rs.gdot(a, b) for b in span] for a in span]
    rhs = [rs.gdot(c, b) for b in span]
    coeffs = solve_linear(gram, rhs)
    out = c
    for t, b in zip(coeffs, span):
        out = vsub(out, vscale(t, b))
    return demote_vector(out)


# ---------------------------------------------------------------------------
# the weight cone over the field


class PhiBasis:
    """A non-negative basis of the balanced weight space of a Coxeter fan."""

    def __init__(self, cfan: CoxeterFan, vectors: List[Dict],
                 polytopes: List[LatticePolytope]):
        self.cfan = cfan
        self.vectors = vectors
        self.polytopes = polytopes

    @property
    def r(self) -> int:
        return len(self.vectors)

    def matrix(self) -> List[tuple]:
        return [self.cfan.weight_values(v) for v in self.vectors]


def phi_weight_cone_basis(cf: CoxeterFan) -> PhiBasis:
    """A basis of the balanced weight space, non-negative entry-wise.

    The space is the kernel of the stacked root-form maps over
    Q(sqrt(2)).  The all-ones vector is balanced (each mirror pair
    contributes w(F+) - w(F-) = 0) and strictly positive, so exchanging
    it into a kernel basis and adding suitable multiples of it to the
    other elements yields a non-negative basis.  Each basis vector is
    realized as a polytope by support reconstruction.
    """
    m = len(cf.wall_order)
    rows = cf._phi_rows()
    kernel = nullspace_field(rows, ncols=m)
    assert kernel, "the all-ones vector is always balanced"
    ones = tuple(Fraction(1) for _ in range(m))
    assert all(dot(row, ones) == 0 for row in rows)
    coords = solve_linear([tuple(v[i] for v in kernel) for i in range(m)],
                          ones)
    assert coords is not None, "the all-ones vector lies in the kernel"
    k = next(i for i, c in enumerate(coords) if c)
    basis = [ones] + [v for i, v in enumerate(kernel) if i != k]
    out = [basis[0]]
    for v in basis[1:]:
        low = min(v)
        if sign(low) < 0:
            v = vadd(v, vscale(-low, ones))
        out.append(demote_vector(v))
    vectors = [dict(zip(cf.wall_order, v)) for v in out]
    polys = [reconstruct_phi(cf, v) for v in vectors]
    return PhiBasis(cf, vectors, polys)


def reconstruct_phi(cf: CoxeterFan, w) -> LatticePolytope:
    """The polytope with the given balanced wall weights as edge lengths.

    Support integration over the chamber graph; the step across a wall
    is the weight times the unit primal normal of the mirror, so weights
    are metric edge lengths.  NotBalanced propagates from the walk when
    the weights fail to close up.
    """
    by_key = cf.weight_dict(w)
    rs = cf.rs

    def wall_normal(key, inward):
        p = primitive_of_rational(inward)
        return demote_vector(x / rs.primal_norm(p) for x in p)

    return reconstruct_from_fan(cf.fan, by_key, wall_normal=wall_normal)


# ---------------------------------------------------------------------------
# Phi-polytopes


def phi_weights(P: LatticePolytope, cf: CoxeterFan) -> Dict:
    """Metric edge weights of P on the walls of the Coxeter fan.

    Requires the Coxeter fan to refine the normal fan of P; otherwise
    NotAPhiPolytope.  Walls whose dual face is a vertex get weight zero;
    refinement forces every edge to be parallel to a mirror normal, so
    all lengths stay in Q(sqrt(2)).
    """
    fan = cf.fan
    if P.n != fan.n:
        raise ValueError("polytope and fan live in different dimensions")
    for C in fan.chambers:
        p = C.relative_interior_point()
        F = set(P.face_vertices(p))
        dirs = list(C.rays)
        for l in C.lineality:
            dirs.append(l)
            dirs.append(tuple(-x for x in l))
        for ray in dirs:
            if not F <= set(P.face_vertices(ray)):
                raise NotAPhiPolytope(
                    "a chamber of the Coxeter fan crosses a wall of the "
                    "polytope's normal fan, so the edges cannot all be "
                    "parallel to roots")
    out = {}
    for wk, W in fan.walls.items():
        p = W.relative_interior_point()
        verts = P.face_vertices(p)
        face = LatticePolytope(verts)
        d = face.dim()
        assert d <= 1, "refined walls meet faces of dimension at most one"
        if d == 0:
            out[wk] = Fraction(0)
        else:
            u, v = face.vertices[0], face.vertices[-1]
            out[wk] = cf.rs.primal_norm(vsub(v, u))
    return out


def phi_expand(P: LatticePolytope, basis: PhiBasis) -> tuple:
    """The unique y over the basis with w_P = sum_i y_i b_i.

    Existence holds because extended weights of a polytope are balanced
    and the basis spans the balanced space; uniqueness because the basis
    is linearly independent.  The answer is verified as a signed
    Minkowski identity P + sum(y_i^- B_i) = sum(y_i^+ B_i) before it is
    returned.
    """
    cf = basis.cfan
    wp = phi_weights(P, cf)
    rhs = cf.weight_values(wp)
    cols = basis.matrix()
    y = solve_linear([tuple(col[i] for col in cols)
                      for i in range(len(rhs))], rhs)
    assert y is not None, (
        "extended weights are balanced, hence in the span of the basis")
    lhs = P
    rhs_poly = LatticePolytope([tuple(Fraction(0) for _ in range(P.n))])
    for yi, B in zip(y, basis.polytopes):
        s = sign(yi)
        if s < 0:
            lhs = lhs + B.scale(-yi)
        elif s > 0:
            rhs_poly = rhs_poly + B.scale(yi)
    assert (lhs.normalize_translation() == rhs_poly.normalize_translation()), (
        "the signed Minkowski identity of the expansion holds exactly")
    return demote_vector(y)


def phi_permutahedron(rs: RootSystem, x) -> LatticePolytope:
    """The convex hull of the orbit of x under the reflection group.

    x is a primal point; it pairs with the root r through the integer
    vector mirror(r), and must avoid all mirrors (PointOnHyperplane
    otherwise).  Every orbit point is then a vertex, so the vertex count
    equals the group order.
    """
    x = demote_vector(Fraction(v) if isinstance(v, int) else v for v in x)
    if len(x) != rs.n:
        raise ValueError("point has wrong dimension")
    for r in rs.int_positive:
        if dot(x, r) == 0:
            raise PointOnHyperplane(
                f"the point lies on the mirror of the root {r}")
    seen = {x}
    queue = [x]
    while queue:
        p = queue.pop()
        for r in rs.int_simple:
            q = rs.reflect_primal(p, r)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    assert len(seen) == _GROUP_ORDER[rs.tag], (
        "a generic point has a free orbit")
    P = LatticePolytope(sorted(seen))
    assert len(P.vertices) == len(seen), (
        "every orbit point of a generic point is a vertex")
    return P
