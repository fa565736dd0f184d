"""Walkthrough: exact division of tropical polynomials.

A tropical polynomial f(x) = max_e (c_e + <e, x>) divides cleanly by g
exactly when the corner locus of g sits inside the corner locus of f with
enough multiplicity on every wall.  This script divides a polynomial in
two variables by a known factor, checks the quotient, and then shows a
divisor that fails with a certified obstruction.
"""

from tropfactor import TropicalPolynomial, divide
from tropfactor.division import NegativeWeight, extend_weights


def main() -> None:
    g = TropicalPolynomial({
        (0, 0): 0, (0, 1): -7, (1, 0): -7, (1, 1): -10,
    })
    h = TropicalPolynomial({(0, 0): 0, (1, 1): -10})
    f = g * h

    print("f has terms:")
    for e, c in sorted(f.terms.items()):
        print(f"  exp {e}: coefficient {c}")

    q = divide(f, g)
    print("\nquotient f / g has terms:")
    for e, c in sorted(q.terms.items()):
        print(f"  exp {e}: coefficient {c}")
    assert q.same_function(h), "quotient must agree with h as a function"
    print("check: g * (f/g) and f agree as functions:",
          (g * q).same_function(f))

    # A divisor can fail even when its corner locus is contained in the
    # corner locus of f: the extended weights may overshoot on a wall.
    tent_g = TropicalPolynomial({
        (0, 2): 0, (2, 0): 0, (-2, 0): 0, (0, -2): 0,
    })
    tent_f = TropicalPolynomial(dict(tent_g.terms) | {
        (0, 1): 1, (1, 0): 1, (0, -1): 1, (-1, 0): 1,
    })

    Tf = tent_f.dual_complex()
    ext = extend_weights(tent_f, tent_g, Tf)
    print("\nextended divisor weights on the walls of the curve of f:")
    for key, w in sorted(ext.items(), key=lambda kv: Tf.wall_duals[kv[0]]):
        edge = Tf.wall_duals[key]
        print(f"  wall dual to edge {edge[0]}--{edge[1]}:"
              f" extended weight {w}, weight on f is {Tf.wall_weights[key]}")

    try:
        divide(tent_f, tent_g)
    except NegativeWeight as obstruction:
        print("\ndivision fails:", obstruction)
        print("deficit on the witnessing wall:", obstruction.deficit)


if __name__ == "__main__":
    main()
