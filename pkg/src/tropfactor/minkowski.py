"""Minkowski factorization of polytopes and factorization bases of fans.

A polytope Q is a summand of P exactly when the normal fan of P refines
that of Q and the edge weights of P dominate the extended weights of Q;
the complement R is the Newton polytope of f_P - f_Q.  Since support
functions of polytopes are tropical polynomials with zero coefficients,
factor() is a thin wrapper around tropical division, which also makes it
work for lower-dimensional and rational-vertex inputs.

The weight cone W(N) of a fan N collects the balanced non-negative
weight vectors on its walls; a factorization basis is a non-negative
lattice basis of its linear span, with one polytope per basis vector via
support reconstruction.  Expansions of polytopes in such a basis are
unique and integral, giving signed Minkowski identities.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    TropfactorError,
    dot,
    in_lattice,
    integer_nullspace,
    nonnegative_basis,
    rational_content,
    vsub,
)
from .division import NegativeWeight, NotContained, divide, reconstruct_from_fan
from .polyhedra import Fan, LatticePolytope, dd_cone
from .tropical import (
    TropicalPolynomial,
    balance_violation,
    covector,
    direction_lattice,
    annihilator_lattice,
)


class NotASummand(TropfactorError):
    """Q is not a Minkowski summand of P; .witness explains why.

    witness is ("not_refining", point) for a point where the normal fan
    of P is strictly finer than V(f_Q) allows, or ("negative_weight",
    edge, deficit) for an edge of P whose weight drops below the
    extension of w_Q.
    """

    def __init__(self, witness, message):
        self.witness = witness
        super().__init__(message)


class NotRefining(TropfactorError):
    pass


class NotRefined(TropfactorError):
    pass


class NotPolytopal(TropfactorError):
    pass


class TooLarge(TropfactorError):
    pass


MAX_CONES_ENV = "TROPFACTOR_MAX_CONES"
DEFAULT_MAX_CONES = 12


# ---------------------------------------------------------------------------
# weight vectors


class WeightVector:
    """Weights on the walls of a fan, in canonical (sorted key) cone order."""

    def __init__(self, fan: Fan, by_key: Dict):
        if set(by_key) != set(fan.walls):
            raise ValueError("weight keys do not match the fan's walls")
        self.fan = fan
        self.by_key = dict(by_key)

    @classmethod
    def from_values(cls, fan: Fan, values: Sequence):
        keys = sorted(fan.walls)
        if len(values) != len(keys):
            raise ValueError(f"expected {len(keys)} weights, got {len(values)}")
        return cls(fan, dict(zip(keys, values)))

    @property
    def values(self) -> tuple:
        return tuple(self.by_key[k] for k in sorted(self.fan.walls))

    def __getitem__(self, key):
        return self.by_key[key]

    def is_balanced(self) -> bool:
        return balance_violation(self.fan, self.by_key) is None

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.by_key.values())


class FactorizationBasis:
    """A non-negative lattice basis of the span of W(N), with its polytopes."""

    def __init__(self, fan: Fan, vectors: List[WeightVector],
                 polytopes: List[LatticePolytope]):
        self.fan = fan
        self.vectors = vectors
        self.polytopes = polytopes

    @property
    def r(self) -> int:
        return len(self.vectors)

    def matrix(self) -> List[tuple]:
        return [w.values for w in self.vectors]


# ---------------------------------------------------------------------------
# extended weights of a polytope on a fan


def _face_at(Q: LatticePolytope, y):
    verts = Q.face_vertices(y)
    return LatticePolytope(verts)


def extended_weights(Q: LatticePolytope, fan: Fan) -> WeightVector:
    """w_Q extended to the walls of a fan refining N(Q).

    Raises NotRefined when some cone of the fan is not contained in a
    single normal cone of Q.
    """
    for C in fan.chambers:
        p = C.relative_interior_point()
        F = set(Q.face_vertices(p))
        dirs = list(C.rays)
        for l in C.lineality:
            dirs.append(l)
            dirs.append(tuple(-x for x in l))
        for r in dirs:
            if not F <= set(Q.face_vertices(r)):
                raise NotRefined(
                    "a chamber of the fan crosses a wall of the polytope's "
                    "normal fan")
    out = {}
    for wk, W in fan.walls.items():
        p = W.relative_interior_point()
        F = _face_at(Q, p)
        d = F.dim()
        assert d <= 1, "refined walls meet faces of dimension at most one"
        if d == 0:
            out[wk] = Fraction(0)
        else:
            u, v = F.vertices[0], F.vertices[-1]
            out[wk] = rational_content(vsub(v, u))
    return WeightVector(fan, out)


def polytope_weights(P: LatticePolytope) -> Tuple[Fan, WeightVector]:
    """The normal fan of P with its edge-length weight vector."""
    fan = P.normal_fan()
    return fan, WeightVector(fan, dict(fan.wall_weights))


# ---------------------------------------------------------------------------
# factorization


def _clear_scale(polys: Sequence[LatticePolytope]) -> int:
    m = 1
    for P in polys:
        for v in P.vertices:
            for x in v:
                d = Fraction(x).denominator
                m = m * d // math.gcd(m, d)
    return m


def factor(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """The unique R with Q + R = P, or raise NotASummand with a witness.

    Works through tropical division of support functions; rational vertex
    coordinates are handled by clearing denominators first.
    """
    if P.n != Q.n:
        raise ValueError("ambient dimensions differ")
    m = _clear_scale([P, Q])
    Pm = P.scale(m) if m != 1 else P
    Qm = Q.scale(m) if m != 1 else Q
    fP = TropicalPolynomial.from_polytope(Pm)
    fQ = TropicalPolynomial.from_polytope(Qm)
    try:
        h = divide(fP, fQ)
    except NotContained as e:
        raise NotASummand(("not_refining", e.witness),
                          f"normal fan of P does not refine that of Q "
                          f"(witness direction {e.witness})") from e
    except NegativeWeight as e:
        raise NotASummand(("negative_weight", e.dual_edge, e.deficit),
                          f"edge {e.dual_edge} of P has weight deficit "
                          f"{e.deficit}") from e
    assert all(c == 0 for c in h.terms.values()), (
        "support functions have zero coefficients, so must their quotient")
    R = LatticePolytope(list(h.essential_terms()))
    if m != 1:
        R = R.scale(Fraction(1, m))
    assert (Q + R) == P, "factor soundness: Q + R reproduces P exactly"
    return R


def is_summand(P: LatticePolytope, Q: LatticePolytope) -> bool:
    try:
        factor(P, Q)
        return True
    except NotASummand:
        return False


def has_scaled_summand(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """Is P = c Q + R for some rational c >= 0 and polytope R?

    Decided by the vertex-count criterion: this holds exactly when P and
    P + Q have the same number of vertices.
    """
    if P.n != Q.n:
        raise ValueError("ambient dimensions differ")
    return len(P.vertices) == len((P + Q).vertices)


def is_strict_balanced_coarsening(coarse_fan: Fan, coarse_w: WeightVector,
                                  fine_fan: Fan, fine_w: WeightVector) -> bool:
    """Is (coarse_fan, coarse_w) a strict balanced coarsening under (fine_fan, fine_w)?

    Requires fine_fan to refine coarse_fan (else NotRefining); then tests
    w_fine - coarse_w^ >= 0 with strict inequality somewhere.
    """
    if not fine_fan.refines(coarse_fan):
        raise NotRefining("the fine fan does not refine the coarse fan")
    strict = False
    for wk, W in fine_fan.walls.items():
        up = Fraction(0)
        for ck, CW in coarse_fan.walls.items():
            if CW.contains_polyhedron(W):
                up = coarse_w[ck]
                break
        diff = fine_w[wk] - up
        if diff < 0:
            return False
        if diff > 0:
            strict = True
    return strict


# ---------------------------------------------------------------------------
# the weight cone and factorization bases


def _phi_matrix(fan: Fan) -> Tuple[List[tuple], List]:
    """Stack the maps phi^A over all ridges A, as rows over the wall order.

    For each ridge, covectors of its star are expressed in a fixed basis
    of Z^n / L_Z(A) (rank 2), contributing two integer rows.  The kernel
    of the stacked matrix is the lattice of balanced weight vectors.
    """
    keys = sorted(fan.walls)
    col = {k: i for i, k in enumerate(keys)}
    rows = []
    for rk in sorted(fan.ridges):
        tau = fan.ridges[rk]
        funcs = annihilator_lattice(tau)
        star = fan.ridge_walls[rk]
        covs = {wk: covector(tau, fan.walls[wk]) for wk in star}
        for f in funcs:
            row = [0] * len(keys)
            for wk in star:
                row[col[wk]] = dot(f, covs[wk])
            rows.append(tuple(row))
    return rows, keys


def balanced_weight_lattice(fan: Fan) -> Tuple[List[tuple], List]:
    """Lattice basis of all integer balanced weight vectors, plus wall order."""
    rows, keys = _phi_matrix(fan)
    if not rows:
        lat = [tuple(1 if j == i else 0 for j in range(len(keys)))
               for i in range(len(keys))]
        return lat, keys
    return integer_nullspace(rows), keys


def weight_cone_basis(fan: Fan) -> FactorizationBasis:
    """A factorization basis for a polytopal fan.

    The basis vectors form a non-negative lattice basis of the span of
    W(N); the positive witness comes from the extreme rays of the cone of
    non-negative balanced weights.  NotPolytopal if no strictly positive
    balanced weight vector exists.
    """
    rows, keys = _phi_matrix(fan)
    m = len(keys)
    lattice = integer_nullspace(rows) if rows else [
        tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    if not lattice:
        raise NotPolytopal("no nonzero balanced weight vector exists")
    cons = [(r, True) for r in rows]
    cons += [(tuple(1 if j == i else 0 for j in range(m)), False)
             for i in range(m)]
    rays, lin = dd_cone(cons, m)
    assert not lin, "the non-negativity constraints leave no lineality"
    if not rays:
        raise NotPolytopal("the balanced non-negative cone is trivial")
    witness = tuple(sum(r[i] for r in rays) for i in range(m))
    if any(x <= 0 for x in witness):
        raise NotPolytopal(
            "no strictly positive balanced weight vector exists")
    vecs = nonnegative_basis(lattice, witness)
    weight_vectors = [WeightVector.from_values(fan, v) for v in vecs]
    polys = [reconstruct_from_fan(fan, w.by_key) for w in weight_vectors]
    return FactorizationBasis(fan, weight_vectors, polys)


def expand_in_basis(Q: LatticePolytope, basis: FactorizationBasis) -> tuple:
    """The unique integer y with w_Q^ = sum_i y_i b_i over the basis fan.

    Verified by the signed Minkowski identity Q + sum(y_i^- B_i) =
    sum(y_i^+ B_i) up to translation.  NotRefined if the basis fan does
    not refine the normal fan of Q.
    """
    wq = extended_weights(Q, basis.fan)
    vals = []
    for x in wq.values:
        q = Fraction(x)
        assert q.denominator == 1, "lattice polytopes have integer edge weights"
        vals.append(int(q))
    y = in_lattice([w.values for w in basis.vectors], tuple(vals))
    assert y is not None, (
        "extended weights are balanced, so they lie in the basis lattice")
    lhs = Q
    rhs = LatticePolytope([tuple(Fraction(0) for _ in range(Q.n))])
    for yi, B in zip(y, basis.polytopes):
        # k-fold Minkowski sum of a convex polytope is its dilation by k
        if yi < 0:
            lhs = lhs + B.scale(-yi)
        elif yi > 0:
            rhs = rhs + B.scale(yi)
    assert lhs.normalize_translation() == rhs.normalize_translation(), (
        "the signed Minkowski identity of the expansion holds exactly")
    return tuple(y)


# ---------------------------------------------------------------------------
# summands and indecomposability


def _max_cones(override: Optional[int]) -> int:
    if override is not None:
        return override
    return int(os.environ.get(MAX_CONES_ENV, DEFAULT_MAX_CONES))


def _span_coordinates(P: LatticePolytope):
    """Coordinates of P in a saturated lattice basis of its direction span.

    Returns (image polytope, basis rows); the image is full-dimensional in
    Z^d, and embedding is x -> sum x_i b_i up to the dropped translation.
    """
    v0 = P.vertices[0]
    dirs = [vsub(v, v0) for v in P.vertices[1:]]
    funcs = integer_nullspace(dirs)
    if not funcs:
        B = [tuple(1 if j == i else 0 for j in range(P.n))
             for i in range(P.n)]
    else:
        B = integer_nullspace(funcs)
    coords = []
    for v in P.vertices:
        c = in_lattice(B, vsub(v, v0))
        assert c is not None, "a saturated basis spans every lattice direction"
        coords.append(c)
    return LatticePolytope(coords), B


def _embed_from_span(Q: LatticePolytope, B, n: int) -> LatticePolytope:
    verts = [tuple(sum(c * b[j] for c, b in zip(cv, B)) for j in range(n))
             for cv in Q.vertices]
    return LatticePolytope(verts).normalize_translation()


def _summand_cone_rays(P: LatticePolytope, max_cones: Optional[int]):
    """Primitive extreme rays of {w balanced on N(P) : w >= 0}, with w_P."""
    fan = P.normal_fan()
    keys = sorted(fan.walls)
    m = len(keys)
    cap = _max_cones(max_cones)
    if m > cap:
        raise TooLarge(f"{m} walls exceed the configured bound of {cap}")
    rows, keys2 = _phi_matrix(fan)
    assert keys2 == keys
    wp = tuple(fan.wall_weights[k] for k in keys)
    cons = [(r, True) for r in rows]
    cons += [(tuple(1 if j == i else 0 for j in range(m)), False)
             for i in range(m)]
    rays, lin = dd_cone(cons, m)
    assert not lin, "the non-negativity constraints leave no lineality"
    return fan, keys, wp, rays


def is_indecomposable(P: LatticePolytope, max_cones: Optional[int] = None) -> bool:
    """Are 0 and integer multiples of w_P the only balanced weights below w_P?

    Equivalently, P admits no decomposition into two non-point lattice
    summands, which maximal_summand_pairs witnesses directly.
    """
    return not maximal_summand_pairs(P, max_cones)


def maximal_summand_pairs(P: LatticePolytope,
                          max_cones: Optional[int] = None):
    """Pairs (R, R') with P = R + R' and R a minimal summand.

    Minimal summands carry the primitive generators of the extreme rays
    of the cone of non-negative balanced weights on N(P); a generator u
    yields a pair exactly when u <= w_P and u is not w_P itself.
    Lower-dimensional polytopes are factored inside their affine span.
    TooLarge when the fan has more walls than the configured bound.
    """
    d = P.dim()
    if d == 0:
        return []
    if d < P.n:
        Q, B = _span_coordinates(P)
        out = []
        for Rq, R2q in maximal_summand_pairs(Q, max_cones):
            R = _embed_from_span(Rq, B, P.n)
            R2 = _embed_from_span(R2q, B, P.n)
            assert (R + R2).normalize_translation() == P.normalize_translation()
            out.append((R, R2))
        return out
    fan, keys, wp, rays = _summand_cone_rays(P, max_cones)
    pairs = []
    seen = set()
    for u in rays:
        if any(a > b for a, b in zip(u, wp)):
            continue
        if tuple(u) == tuple(wp):
            continue
        comp = {k: fan.wall_weights[k] - ui for k, ui in zip(keys, u)}
        R = reconstruct_from_fan(fan, dict(zip(keys, u)))
        R2 = reconstruct_from_fan(fan, comp)
        key = (R.vertices, R2.vertices)
        if key in seen:
            continue
        seen.add(key)
        total = (R + R2).normalize_translation()
        assert total == P.normalize_translation(), (
            "complementary balanced weights reassemble the polytope")
        pairs.append((R, R2))
    pairs.sort(key=lambda p: (p[0].vertices, p[1].vertices))
    return pairs


def complete_factorizations(P: LatticePolytope,
                            max_cones: Optional[int] = None):
    """All factorizations of P into minimal summands, as sorted tuples.

    Repeated summands are reported with multiplicity.  Recursion follows
    maximal_summand_pairs; results are deduplicated as multisets and the
    recursion is memoized on translation-normalized vertex sets.
    """
    memo: Dict[tuple, list] = {}

    def go(X: LatticePolytope):
        key = X.vertices
        if key in memo:
            return memo[key]
        pairs = maximal_summand_pairs(X, max_cones)
        if not pairs:
            out = [(X,)]
        else:
            acc = set()
            for R, R2 in pairs:
                for rest in go(R2.normalize_translation()):
                    acc.add(tuple(sorted((R.normalize_translation(),) + rest,
                                         key=lambda T: T.vertices)))
            out = sorted(acc, key=lambda c: (len(c), [T.vertices for T in c]))
        memo[key] = out
        return out

    return go(P.normalize_translation())
