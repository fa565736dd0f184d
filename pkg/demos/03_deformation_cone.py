"""Walkthrough: the deformation cone of the braid fan.

Generalized permutahedra in R^{n+1} are exactly the polytopes whose
normal fan coarsens the braid fan.  A support weight y, one value per
subset of {1, ..., n+1}, lies in the deformation cone precisely when the
submodularity inequalities indexed by ordered partitions hold.  The rows
of the weight matrix record which subsets support which walls of the
universal fan.
"""

from tropfactor import (
    deformation_cone_violations,
    polymatroid_from_weights,
    weight_matrix,
)


def main() -> None:
    n = 2
    wm = weight_matrix(n)
    print(f"weight matrix for n = {n}: {len(wm.rows)} ordered partitions"
          f" x {len(wm.subsets)} subsets")
    header = ", ".join("".join(str(i) for i in I) for I in wm.subsets)
    print(f"columns: {header}")
    for pi, row in zip(wm.partitions, wm.rows):
        print(f"  {pi.label():14} {row}")

    inside = {(1, 2): 2, (1, 2, 3): 1}
    print(f"\ny = {inside}")
    bad = deformation_cone_violations(inside, n)
    print("violated inequalities:", bad if bad else "none; y is in the cone")
    P = polymatroid_from_weights(inside, n)
    print("the corresponding generalized permutahedron has vertices:")
    print(" ", sorted(tuple(int(c) for c in v) for v in P.vertices))

    outside = {(1, 2): 1, (1, 2, 3): -1}
    print(f"\ny = {outside}")
    for pi, value in deformation_cone_violations(outside, n):
        print(f"  inequality at {pi.label()} fails with value {value}")


if __name__ == "__main__":
    main()
