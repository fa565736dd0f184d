"""Walkthrough: rendering plane tropical curves, fans, and polytopes.

Writes four SVG figures next to this script.  The division overlay draws
the walls of the curve of f, with the walls that are missing from the
corner locus of the divisor g dotted; weight labels mark walls of weight
other than one.
"""

import os

from tropfactor import LatticePolytope, TropicalPolynomial, polytope_weights
from tropfactor.svg import render_fan, render_polynomial, render_polytope

HERE = os.path.dirname(os.path.abspath(__file__))

OCTAGON = LatticePolytope([
    (1, 0), (0, 1), (2, 0), (0, 2), (3, 1), (3, 2), (2, 3), (1, 3),
])


def save(name: str, svg: str) -> None:
    path = os.path.join(HERE, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {path} ({len(svg)} bytes)")


def main() -> None:
    g = TropicalPolynomial({
        (0, 0): 0, (0, 1): -7, (1, 0): -7, (1, 1): -10,
    })
    f = g * TropicalPolynomial({(0, 0): 0, (1, 1): -10})

    save("curve.svg", render_polynomial(f))
    save("curve_with_divisor.svg", render_polynomial(f, divisor=g))

    fan, weights = polytope_weights(OCTAGON)
    save("octagon_fan.svg", render_fan(fan, weights.by_key))
    save("octagon.svg", render_polytope(OCTAGON))


if __name__ == "__main__":
    main()
