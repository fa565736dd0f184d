"""Walkthrough: Minkowski factorization of an octagon.

Every weak Minkowski summand of a lattice polytope P corresponds to a
balanced nonnegative weight vector on the normal fan of P.  The cone of
such weights has a canonical nonnegative lattice basis; expanding a
polytope in that basis writes it as a signed Minkowski sum of the basis
polytopes.
"""

from tropfactor import (
    LatticePolytope,
    expand_in_basis,
    factor,
    is_indecomposable,
    weight_cone_basis,
)

OCTAGON = LatticePolytope([
    (1, 0), (0, 1), (2, 0), (0, 2), (3, 1), (3, 2), (2, 3), (1, 3),
])


def verts(P: LatticePolytope) -> list:
    return sorted(tuple(int(c) for c in v) for v in P.vertices)


def main() -> None:
    S = OCTAGON
    fan = S.normal_fan()
    print(f"octagon with vertices {verts(S)}")
    print(f"its normal fan has {len(fan.chambers)} maximal cones")

    basis = weight_cone_basis(fan)
    print(f"\nbalanced weight cone has dimension r = {basis.r}")
    print("nonnegative lattice basis (rows are weight vectors):")
    for row, B in zip(basis.matrix(), basis.polytopes):
        tag = "indecomposable" if is_indecomposable(B) else "decomposable"
        print(f"  {row}  ->  {verts(B)}  ({tag})")

    # Expand a summand: the triangle P1 below is a weak summand of a
    # dilate of S, and its expansion has negative coefficients, so it is
    # a virtual (signed) sum of basis polytopes.
    P1 = LatticePolytope([(0, 0), (1, -1), (2, 0)])
    y = expand_in_basis(P1, basis)
    print(f"\nexpansion of {verts(P1)} in the basis: {y}")

    pos = LatticePolytope([(0, 0)])
    neg = LatticePolytope([(0, 0)])
    for c, B in zip(y, basis.polytopes):
        if c > 0:
            pos = pos + B.scale(c)
        elif c < 0:
            neg = neg + B.scale(-c)
    lhs = (P1 + neg).normalize_translation()
    rhs = pos.normalize_translation()
    print("signed identity P1 + (negative part) == (positive part):",
          lhs == rhs)

    # Minkowski division recovers the complementary summand exactly.
    Q = basis.polytopes[0]
    R = factor(S + Q, Q)
    print(f"\nfactor((S + Q) / Q) returns S back:",
          R.normalize_translation() == S.normalize_translation())


if __name__ == "__main__":
    main()
