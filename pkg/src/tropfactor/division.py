"""Tropical polynomial division and reconstruction from weighted fans.

divide(f, g) decides whether f = g (.) h for some tropical polynomial h
and builds h when it exists.  The test is the divisibility criterion: the
variety of g must sit inside the variety of f, and on every wall of T(f)
the weight of f must dominate the weight pulled back from g.  Both
failure modes raise, with an exact witness attached.

reconstruct_from_fan integrates a weighted complete fan back into a
polytope: walking the chamber graph, the supporting linear form changes
by weight times wall normal at each crossing, and the gradients of the
resulting forms are the vertices.  Loop closure of this integration is
exactly the balancing condition, so unbalanced input raises NotBalanced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Optional

from .exact import (
    TropfactorError,
    dot,
    primitive_of_rational,
    rational_content,
    sign,
    vadd,
    vsub,
)
from .polyhedra import Fan, LatticePolytope, demote_vector
from .tropical import TropicalComplex, TropicalPolynomial


class NotContained(TropfactorError):
    """V(g) is not a subset of V(f); .witness is a point of the difference."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"variety not contained; separating point {witness}")


class NegativeWeight(TropfactorError):
    """Some wall of T(f) has w_f < extended w_g; carries the witness cell."""

    def __init__(self, dual_edge, w_f, w_up):
        self.dual_edge = dual_edge
        self.w_f = w_f
        self.w_up = w_up
        self.deficit = w_f - w_up
        super().__init__(
            f"weight deficit {self.deficit} on the wall dual to {dual_edge} "
            f"(w_f={w_f}, extended w_g={w_up})")


class NotBalanced(TropfactorError):
    def __init__(self, detail):
        super().__init__(f"weights are not balanced: {detail}")


# ---------------------------------------------------------------------------
# variety containment


def variety_containment_witness(g: TropicalPolynomial, f: TropicalPolynomial):
    """A point of V(g) \\ V(f), or None when V(g) is contained in V(f).

    Each wall of T(g) is cut along the chambers of T(f); a piece either
    lies on the boundary of its chamber (hence inside V(f)) or its
    relative interior is in the open chamber, which one interior probe
    detects exactly.
    """
    if g.n != f.n:
        raise ValueError("ambient dimensions differ")
    Tg = g.dual_complex()
    Tf = f.dual_complex()
    for wk in sorted(Tg.walls):
        sigma = Tg.walls[wk]
        for D in Tf.chambers:
            piece = sigma.intersect(D)
            if piece.is_empty():
                continue
            p = piece.relative_interior_point()
            if len(f.argmax(p)) == 1:
                return p
    return None


def variety_contained(g: TropicalPolynomial, f: TropicalPolynomial) -> bool:
    return variety_containment_witness(g, f) is None


# ---------------------------------------------------------------------------
# weight extension and division


def extend_weights(f: TropicalPolynomial, g: TropicalPolynomial,
                   Tf: Optional[TropicalComplex] = None) -> Dict:
    """The extension of w_g to the walls of T(f).

    A wall of T(f) inside a wall of T(g) inherits that wall's weight;
    walls off the variety of g get weight zero.  Requires V(g) inside
    V(f), which makes each wall of T(f) fall entirely on one side.
    """
    if Tf is None:
        Tf = f.dual_complex()
    out = {}
    for wk, sigma in Tf.walls.items():
        p = sigma.relative_interior_point()
        arg = g.argmax(p)
        if len(arg) == 1:
            out[wk] = Fraction(0)
            continue
        seg = LatticePolytope(list(arg))
        assert seg.dim() == 1, (
            "a wall relative interior meets the variety of g in a wall there")
        u, v = seg.vertices[0], seg.vertices[-1]
        out[wk] = rational_content(vsub(v, u))
    return out


def divide(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    """The tropical quotient h with g (.) h = f, when it exists.

    Raises NotContained if V(g) is not inside V(f) and NegativeWeight if
    the weight criterion fails on some wall of T(f).  When both checks
    pass, f - g is convex and h is the maximum of the per-chamber
    difference forms; the identity g (.) h = f is verified exactly before
    returning.
    """
    witness = variety_containment_witness(g, f)
    if witness is not None:
        raise NotContained(witness)
    Tf = f.dual_complex()
    wup = extend_weights(f, g, Tf)
    for wk in sorted(Tf.walls):
        if Tf.wall_weights[wk] < wup[wk]:
            raise NegativeWeight(Tf.wall_duals[wk], Tf.wall_weights[wk], wup[wk])
    terms = {}
    for i, a in enumerate(Tf.chamber_terms):
        p = Tf.chambers[i].relative_interior_point()
        arg = g.argmax(p)
        assert len(arg) == 1, "chamber interiors avoid the variety of g"
        b = arg[0]
        e = vsub(a, b)
        c = f.terms[a] - g.terms[b]
        if e not in terms or c > terms[e]:
            terms[e] = c
    h = TropicalPolynomial(terms, n=f.n)
    assert (g * h).same_function(f), (
        "the divisibility criterion certifies the chamber-difference quotient")
    return h


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct_from_fan(fan: Fan, weights: Dict,
                         wall_normal: Optional[Callable] = None) -> LatticePolytope:
    """The polytope whose support function has the given wall increments.

    weights maps every wall key of the (complete) fan to a number; the
    fan's normal directions are scaled to primitive lattice vectors unless
    wall_normal overrides that (the Coxeter fans pass unit roots).  The
    result is translated so its lexicographically smallest vertex is the
    origin.  Signed weights are accepted; only loop closure is required.
    """
    missing = [k for k in fan.walls if k not in weights]
    if missing:
        raise NotBalanced(f"{len(missing)} walls carry no weight")
    if wall_normal is None:
        def wall_normal(key, inward):
            return primitive_of_rational(inward)
    grads = {0: tuple(Fraction(0) for _ in range(fan.n))}
    order = [0]
    adj = {i: [] for i in range(len(fan.chambers))}
    for k, sides in fan.wall_chambers.items():
        if len(sides) != 2:
            raise NotBalanced("fan is not complete: a wall has one side")
        (i, ai), (j, aj) = sides
        adj[i].append((j, k, aj))
        adj[j].append((i, k, ai))
    while order:
        i = order.pop()
        for j, k, inward in adj[i]:
            step = wall_normal(k, inward)
            target = vadd(grads[i], tuple(weights[k] * x for x in step))
            if j in grads:
                if grads[j] != tuple(target):
                    raise NotBalanced(
                        f"support integration disagrees across wall {k}")
            else:
                grads[j] = tuple(target)
                order.append(j)
    if len(grads) != len(fan.chambers):
        raise NotBalanced("chamber graph is disconnected")
    P = LatticePolytope([demote_vector(v) for v in grads.values()])
    return P.normalize_translation()
