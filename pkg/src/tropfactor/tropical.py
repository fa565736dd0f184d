"""Tropical polynomials over (R, max, +) and their dual complexes.

A tropical polynomial is a finite map from integer exponent vectors to
rational coefficients, evaluated as f(x) = max_a (v_a + a.x).  The induced
regular subdivision of the Newton polytope comes from the upper convex
hull of the lifted points (a, v_a): a face is upper when its normal cone
meets {last coordinate > 0}, which is the side the argmax structure of a
max-plus polynomial sees.

The dual complex T(f) decomposes R^n into the chambers where a single
term wins; its codimension 1 cells carry lattice-length weights and the
balancing condition around codimension 2 cells characterizes tropical
varieties among weighted complexes.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Sequence, Tuple

from .exact import (
    TropfactorError,
    dot,
    field_rank,
    in_lattice,
    integer_nullspace,
    nullspace_field,
    rational_content,
    sign,
    solve_linear,
    vsub,
)
from .polyhedra import LatticePolytope, Polyhedron, rref_basis


class WeightDomainMismatch(TropfactorError):
    pass


Exponent = Tuple[int, ...]


class TropicalPolynomial:
    """A max-plus polynomial with integer exponents and rational coefficients."""

    def __init__(self, terms: Dict[Sequence[int], object], n: Optional[int] = None):
        clean = {}
        for a, v in terms.items():
            e = tuple(int(x) for x in a)
            v = Fraction(v)
            if e in clean:
                clean[e] = max(clean[e], v)
            else:
                clean[e] = v
        if not clean:
            raise ValueError("a tropical polynomial needs at least one term")
        dims = {len(e) for e in clean}
        if len(dims) != 1:
            raise ValueError("mixed exponent dimensions")
        self.n = dims.pop() if n is None else n
        if n is not None and n not in dims:
            raise ValueError("exponent dimension disagrees with n")
        self.terms = dict(sorted(clean.items()))
        self._subdivision = None
        self._essential = None

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        return max(v + dot(a, x) for a, v in self.terms.items())

    def argmax(self, x):
        """The terms achieving the maximum at x."""
        best = None
        arg = []
        for a, v in self.terms.items():
            s = v + dot(a, x)
            if best is None or s > best:
                best, arg = s, [a]
            elif s == best:
                arg.append(a)
        return arg

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        """Tropical product: Minkowski sum of supports, max of coefficient sums."""
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        out: Dict[Exponent, Fraction] = {}
        for a, v in self.terms.items():
            for b, u in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                s = v + u
                if e not in out or s > out[e]:
                    out[e] = s
        return TropicalPolynomial(out)

    def shift(self, c) -> "TropicalPolynomial":
        return TropicalPolynomial({a: v + Fraction(c) for a, v in self.terms.items()})

    @classmethod
    def from_polytope(cls, P: LatticePolytope) -> "TropicalPolynomial":
        """The support function of P as a tropical polynomial (all coefficients 0)."""
        return cls({v: Fraction(0) for v in P.vertices})

    def newton_polytope(self) -> LatticePolytope:
        return LatticePolytope(list(self.terms))

    # -- essential structure ------------------------------------------------

    def subdivision(self) -> "RegularSubdivision":
        if self._subdivision is None:
            self._subdivision = RegularSubdivision(self)
        return self._subdivision

    def essential_terms(self) -> Dict[Exponent, Fraction]:
        """Terms that are the unique maximum somewhere (upper hull vertices)."""
        if self._essential is None:
            verts = set()
            for cell in self.subdivision().cells:
                verts.update(LatticePolytope(list(cell)).vertices)
            ess = {tuple(int(x) for x in a): self.terms[tuple(int(x) for x in a)]
                   for a in verts}
            self._essential = dict(sorted(ess.items()))
        return self._essential

    def same_function(self, other: "TropicalPolynomial") -> bool:
        return self.n == other.n and self.essential_terms() == other.essential_terms()

    def dual_complex(self) -> "TropicalComplex":
        return TropicalComplex(self)


class RegularSubdivision:
    """The subdivision of the Newton polytope induced by the coefficient lift.

    Cells are recorded as tuples of exponent vectors: all lifted points
    lying on the corresponding upper face, so terms absorbed into the
    interior or boundary of a cell are kept visible.
    """

    def __init__(self, f: TropicalPolynomial):
        self.f = f
        lifted = [a + (v,) for a, v in f.terms.items()]
        self.cells: list[tuple] = []
        if len(lifted) == 1:
            self.cells = [tuple(f.terms)]
            return
        L = Polyhedron.from_generators(lifted)
        ineqs, eqs = L.minimal_hrep()
        if any(a[-1] for a, _ in eqs):
            # the lift is affine over the Newton polytope: trivial subdivision
            self.cells = [tuple(sorted(f.terms))]
            return
        for a, b in ineqs:
            if sign(a[-1]) <= 0:
                continue
            cell = tuple(sorted(p[:-1] for p in lifted if dot(a, p) == b))
            self.cells.append(cell)
        self.cells.sort()
        assert self.cells, "an upper facet exists whenever the lift is not affine"

    def vertices(self):
        out = set()
        for cell in self.cells:
            out.update(LatticePolytope(list(cell)).vertices)
        return sorted(tuple(int(x) for x in v) for v in out)

    def edges(self):
        """Edges of the subdivision, as ordered pairs of exponent vertices."""
        out = set()
        for cell in self.cells:
            P = LatticePolytope(list(cell))
            if P.dim() == 0:
                continue
            if P.dim() == 1:
                vs = P.vertices
                out.add((vs[0], vs[1]))
                continue
            for u, v in P.edges():
                out.add(tuple(sorted((u, v))))
        return sorted((tuple(int(x) for x in u), tuple(int(x) for x in v))
                      for u, v in out)

    def two_faces(self):
        """2-dimensional faces of the subdivision, as sorted vertex tuples."""
        out = set()
        for cell in self.cells:
            P = LatticePolytope(list(cell))
            if P.dim() < 2:
                continue
            for fv in P.two_faces():
                out.add(tuple(sorted(fv)))
        return sorted(tuple(tuple(int(x) for x in v) for v in fv) for fv in out)


# ---------------------------------------------------------------------------
# dual complex


class TropicalComplex:
    """The polyhedral complex dual to the regular subdivision of f.

    chambers are the closed regions where one essential term is maximal;
    walls (codimension 1) are dual to subdivision edges and weighted by
    their lattice length; ridges (codimension 2) are dual to subdivision
    2-faces.  The attribute names match Fan so the balancing check below
    serves both.
    """

    def __init__(self, f: TropicalPolynomial):
        self.f = f
        self.n = f.n
        sub = f.subdivision()
        ess = f.essential_terms()
        self.chamber_terms = list(ess)
        self.chambers = []
        for a in self.chamber_terms:
            va = f.terms[a]
            ineqs = [(vsub(b, a), va - vb) for b, vb in f.terms.items() if b != a]
            self.chambers.append(Polyhedron(self.n, ineqs))
        self.walls = {}
        self.wall_duals = {}
        self.wall_weights = {}
        self._wall_sides = {}
        index = {a: i for i, a in enumerate(self.chamber_terms)}
        for (a, b) in sub.edges():
            ia, ib = index[a], index[b]
            eq = (vsub(b, a), f.terms[a] - f.terms[b])
            W = self.chambers[ia].with_equality(*eq)
            k = W.key()
            assert W.dim() == self.n - 1, "subdivision edges dualize to walls"
            self.walls[k] = W
            self.wall_duals[k] = (a, b)
            self.wall_weights[k] = rational_content(vsub(b, a))
            self._wall_sides[k] = [(ia, None), (ib, None)]
        self.ridges = {}
        self.ridge_walls = {}
        self.ridge_duals = {}
        for face in sub.two_faces():
            a0 = face[0]
            base = self.chambers[index[a0]]
            eqs = [(vsub(b, a0), f.terms[a0] - f.terms[b]) for b in face[1:]]
            R = Polyhedron(self.n, base.inequalities, base.equalities + eqs)
            k = R.key()
            assert R.dim() == self.n - 2, "subdivision 2-faces dualize to ridges"
            self.ridges[k] = R
            self.ridge_duals[k] = face
            P = LatticePolytope(list(face))
            fedges = set()
            for u, v in P.edges():
                fedges.add(tuple(sorted((u, v))))
            self.ridge_walls[k] = []
            for wk, e in self.wall_duals.items():
                if tuple(sorted(e)) in fedges:
                    self.ridge_walls[k].append(wk)

    @property
    def wall_chambers(self):
        return self._wall_sides

    def chamber_of_point(self, x) -> Optional[int]:
        for i, C in enumerate(self.chambers):
            if C.contains(x):
                return i
        return None

    def one_cells(self):
        """The walls, as polyhedra (convenience accessor)."""
        return list(self.walls.values())


# ---------------------------------------------------------------------------
# balancing


def _integer_rows(vectors):
    """Scale rational vectors to integer vectors spanning the same space."""
    rows = []
    for fvec in vectors:
        den = 1
        for x in fvec:
            q = Fraction(x)
            den = den * q.denominator // gcd(den, q.denominator)
        rows.append(tuple(int(Fraction(x) * den) for x in fvec))
    return rows


def direction_lattice(cell: Polyhedron):
    """Saturated integer basis of the direction space of a cell's affine span."""
    verts, rays, lin = cell.vertices, cell.rays, cell.lineality
    dirs = [vsub(v, verts[0]) for v in verts[1:]] + list(rays) + list(lin)
    span = rref_basis(dirs)
    if not span:
        return []
    funcs = nullspace_field(list(span), ncols=cell.n)
    if not funcs:
        # full-dimensional span: the whole lattice
        return [tuple(1 if j == i else 0 for j in range(cell.n))
                for i in range(cell.n)]
    return integer_nullspace(_integer_rows(funcs))


def annihilator_lattice(cell: Polyhedron):
    """Saturated basis of the integer functionals vanishing on L(cell)."""
    verts, rays, lin = cell.vertices, cell.rays, cell.lineality
    dirs = [vsub(v, verts[0]) for v in verts[1:]] + list(rays) + list(lin)
    span = rref_basis(dirs)
    if not span:
        return [tuple(1 if j == i else 0 for j in range(cell.n))
                for i in range(cell.n)]
    return integer_nullspace(_integer_rows(span))


def covector(tau: Polyhedron, sigma: Polyhedron):
    """Primitive generator of L(sigma)/L(tau) pointing from tau into sigma.

    The returned integer vector lies in the direction lattice of sigma and
    its class generates the quotient by the direction lattice of tau; it is
    well defined up to elements of L(tau), which is all the balancing
    condition needs.
    """
    Bs = direction_lattice(sigma)
    Bt = direction_lattice(tau)
    T = []
    for t in Bt:
        coeffs = in_lattice(Bs, t)
        assert coeffs is not None, "tau must be a face of sigma"
        T.append(coeffs)
    k = len(Bs)
    if T:
        funcs = integer_nullspace(T)
        assert len(funcs) == 1, "sigma/tau must have relative dimension 1"
        fvec = funcs[0]
    else:
        assert k == 1
        fvec = (1,)
    y = in_lattice([(c,) for c in fvec], (1,))
    assert y is not None, "a saturated quotient admits a generator"
    c = tuple(sum(yi * b[j] for yi, b in zip(y, Bs)) for j in range(sigma.n))
    # orient into sigma
    p = sigma.relative_interior_point()
    q = tau.relative_interior_point()
    gamma = solve_linear([tuple(b[j] for b in Bs) for j in range(sigma.n)],
                         vsub(p, q))
    assert gamma is not None
    s = sign(dot(fvec, gamma))
    assert s != 0, "relative interior of sigma lies off the span of tau"
    if s < 0:
        c = tuple(-x for x in c)
    return c


def balance_violation(complex_like, weights=None):
    """First unbalanced ridge of a weighted complex, or None if balanced.

    complex_like provides ridges, ridge_walls, walls and wall_weights in
    the shared layout of TropicalComplex and Fan.  weights may override
    the complex's own wall weights; its keys must be exactly the wall
    keys.  Returns (ridge key, excess vector) for the first ridge where
    the weighted covector sum leaves the span of the ridge.
    """
    if weights is None:
        weights = complex_like.wall_weights
    if weights is None:
        raise WeightDomainMismatch("complex carries no weights and none were given")
    if set(weights) != set(complex_like.walls):
        raise WeightDomainMismatch(
            f"weights cover {len(weights)} cells, complex has "
            f"{len(complex_like.walls)} walls")
    for rk in sorted(complex_like.ridges):
        tau = complex_like.ridges[rk]
        total = None
        for wk in complex_like.ridge_walls[rk]:
            sig = complex_like.walls[wk]
            c = covector(tau, sig)
            w = weights[wk]
            contrib = tuple(w * x for x in c)
            total = contrib if total is None else tuple(
                a + b for a, b in zip(total, contrib))
        if total is None:
            continue
        span = direction_lattice(tau)
        if all(sign(x) == 0 for x in total):
            continue
        if span and field_rank(list(span) + [total]) == len(span):
            continue
        return rk, total
    return None


def is_balanced(complex_like, weights=None) -> bool:
    return balance_violation(complex_like, weights) is None
