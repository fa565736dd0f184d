"""Walkthrough: the B2 Coxeter fan and its weight cone over Q(sqrt(2)).

The Coxeter arrangement of type B2 cuts the plane into eight chambers.
Polytopes whose normal fan is refined by this fan are the (generalized)
B2 permutahedra; their support weights live in the balanced weight cone,
which is computed here over the field Q(sqrt(2)) with exact arithmetic.
"""

from tropfactor import (
    LatticePolytope,
    build_root_system,
    coxeter_fan,
    phi_expand,
    phi_permutahedron,
    phi_weight_cone_basis,
    phi_weights,
    reconstruct_phi,
)


def main() -> None:
    rs = build_root_system("B2")
    print(f"B2 root system: {len(rs.roots)} roots, simple roots"
          f" {sorted(rs.simple_roots)}")

    cf = coxeter_fan(rs)
    print(f"Coxeter fan: {len(cf.fan.chambers)} chambers,"
          f" {len(cf.wall_order)} rays")
    print("rays in canonical order, with Weyl coset labels:")
    for key in cf.wall_order:
        ray = key[1][0]
        print(f"  {cf.labels[key]:8} {ray}")

    basis = phi_weight_cone_basis(cf)
    print(f"\nbalanced weight cone has dimension r = {basis.r}")
    print("nonnegative basis rows over Q(sqrt(2)):")
    for row in basis.matrix():
        print(f"  ({', '.join(str(x) for x in row)})")

    P1 = LatticePolytope([(0, 1), (2, 1), (1, 0)])
    w = phi_weights(P1, cf)
    tri = sorted(tuple(int(c) for c in v) for v in P1.vertices)
    print(f"\nsupport weights of the triangle {tri}:")
    print(" ", [str(w[key]) for key in cf.wall_order])

    y = phi_expand(P1, basis)
    print("expansion in the basis:", tuple(str(c) for c in y))
    R = reconstruct_phi(cf, [w[key] for key in cf.wall_order])
    print("reconstruction from the weights returns the triangle"
          " (up to translation):",
          R.normalize_translation() == P1.normalize_translation())

    perm = phi_permutahedron(rs, (3, 1))
    print(f"\nB2 permutahedron of the point (3, 1):"
          f" {len(perm.vertices)} vertices")
    print(" ", sorted(tuple(int(c) for c in v) for v in perm.vertices))


if __name__ == "__main__":
    main()
