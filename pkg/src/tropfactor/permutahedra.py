"""Type A_n machinery: ordered partitions, the universal fan, the 0-1
weight matrix, and deformation-cone membership for generalized
permutahedra.

The ambient quotient R^{n+1}/R(1,...,1) is coordinatized by the
unimodular section z -> (z_1 - z_{n+1}, ..., z_n - z_{n+1}), which keeps
all simplices Delta_I integral.  Under this map e_i goes to e_i for
i <= n and e_{n+1} goes to (-1, ..., -1).

The (n-1)-dimensional cones of the universal fan are indexed by ordered
partitions of [n+1] with exactly one doubleton block; the extended
weight of Delta_I on such a cone is 1 exactly when the partition
restricts to I with the doubleton in front.  Stacking these 0-1 weights
gives the weight matrix W, and a signed combination sum y_I Delta_I is
a polytope minus a polytope exactly when W y >= 0.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from .exact import TropfactorError, same_lattice
from .minkowski import (
    FactorizationBasis,
    TooLarge,
    WeightVector,
    balanced_weight_lattice,
    extended_weights,
    factor,
)
from .polyhedra import Fan, LatticePolytope, Polyhedron


class TooSmall(TropfactorError):
    pass


class NotInCone(TropfactorError):
    """The weight vector leaves the deformation cone; .partition violates."""

    def __init__(self, partition, value):
        self.partition = partition
        self.value = value
        super().__init__(
            f"weights give {value} < 0 on the cone of {partition}")


class NotRestricting:
    """Marker: deleting non-I blocks did not leave an ordered partition of I."""

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"NotRestricting({self.reason!r})"


class OrderedPartition:
    """An ordered partition of a ground set with one doubleton block.

    Blocks are disjoint, cover the ground set, and exactly one block has
    two elements while the rest are singletons; such partitions index the
    codimension-one cones of the braid arrangement of the ground set.
    """

    def __init__(self, blocks: Iterable[Iterable[int]]):
        blk = tuple(tuple(sorted(b)) for b in blocks)
        if not blk:
            raise ValueError("an ordered partition needs at least one block")
        sizes = sorted(len(b) for b in blk)
        if sizes != [1] * (len(blk) - 1) + [2]:
            raise ValueError("exactly one block of size two, the rest single")
        flat = [x for b in blk for x in b]
        if len(set(flat)) != len(flat):
            raise ValueError("blocks must be pairwise disjoint")
        self.blocks = blk
        self.ground = tuple(sorted(flat))

    @property
    def doubleton(self) -> tuple:
        return next(b for b in self.blocks if len(b) == 2)

    @property
    def doubleton_position(self) -> int:
        return next(i for i, b in enumerate(self.blocks) if len(b) == 2)

    @property
    def singletons(self) -> tuple:
        return tuple(b[0] for b in self.blocks if len(b) == 1)

    def sort_key(self):
        return (self.doubleton_position, self.doubleton, self.singletons)

    def label(self) -> str:
        parts = []
        for b in self.blocks:
            if len(b) == 2:
                parts.append("{%d,%d}" % b)
            else:
                parts.append(str(b[0]))
        return "(" + ", ".join(parts) + ")"

    def __eq__(self, other):
        return isinstance(other, OrderedPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"OrderedPartition{self.label()}"


def ordered_partitions(I: Iterable[int]) -> List[OrderedPartition]:
    """All ordered partitions of I with one doubleton, in canonical order.

    Canonical order sorts by position of the doubleton, then by the
    doubleton itself, then by the singleton sequence; this is the row
    order of the type A_3 weight matrix table.
    """
    ground = sorted(set(I))
    k = len(ground)
    if k < 2:
        raise TooSmall("ordered partitions need at least two elements")
    out = []
    for pair in itertools.combinations(ground, 2):
        rest = [x for x in ground if x not in pair]
        for perm in itertools.permutations(rest):
            for pos in range(k - 1):
                blocks = [(x,) for x in perm]
                blocks.insert(pos, pair)
                out.append(OrderedPartition(blocks))
    out.sort(key=lambda p: p.sort_key())
    assert len(out) == _factorial(k) * (k - 1) // 2
    return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def restricts_to(pi: OrderedPartition, I: Iterable[int]):
    """The restriction pi|_I, or a NotRestricting marker.

    Blocks containing any element outside I are deleted wholesale; the
    survivors must again form an ordered partition of I with a doubleton.
    """
    Iset = set(I)
    if len(Iset) < 2:
        raise TooSmall("restriction targets need at least two elements")
    kept = [b for b in pi.blocks if set(b) <= Iset]
    covered = {x for b in kept for x in b}
    if covered != Iset:
        return NotRestricting("deletion removed elements of I")
    if not any(len(b) == 2 for b in kept):
        return NotRestricting("the doubleton was deleted")
    return OrderedPartition(kept)


# ---------------------------------------------------------------------------
# quotient coordinates and simplices


def quotient_point(z: Sequence) -> tuple:
    """Image of z in R^{n+1}/R(1,...,1) via z -> (z_k - z_{n+1})."""
    last = z[-1]
    return tuple(x - last for x in z[:-1])


def root_direction(i: int, j: int, n: int) -> tuple:
    """The image of e_i - e_j in quotient coordinates."""
    z = [0] * (n + 1)
    z[i - 1] += 1
    z[j - 1] -= 1
    return quotient_point(z)


def braid_functional(i: int, j: int, n: int) -> tuple:
    """The braid hyperplane functional f_i - f_j in normal-fan coordinates.

    Normal fans of quotient polytopes live in the dual space of
    functionals vanishing on (1, ..., 1); its coordinates g are dual to
    the quotient coordinates, with the last value recovered as
    f_{n+1} = -(g_1 + ... + g_n).
    """
    out = [0] * n
    if i <= n:
        out[i - 1] += 1
    else:
        out = [x - 1 for x in out]
    if j <= n:
        out[j - 1] -= 1
    else:
        out = [x + 1 for x in out]
    return tuple(out)


def simplex_polytope(I: Iterable[int], n: int) -> LatticePolytope:
    """Delta_I = conv{e_i : i in I} in quotient coordinates."""
    pts = []
    for i in sorted(set(I)):
        if not 1 <= i <= n + 1:
            raise ValueError(f"index {i} outside [n+1]")
        z = [0] * (n + 1)
        z[i - 1] = 1
        pts.append(quotient_point(z))
    return LatticePolytope(pts)


def canonical_subsets(n: int) -> List[tuple]:
    """Subsets of [n+1] with at least two elements, in column order.

    Sorted by size; within size two by (span, minimum); larger sizes
    lexicographically.  This is the column order of the printed weight
    matrix tables.
    """
    ground = list(range(1, n + 2))
    out = []
    for k in range(2, n + 2):
        subs = list(itertools.combinations(ground, k))
        if k == 2:
            subs.sort(key=lambda s: (s[1] - s[0], s[0]))
        out.extend(subs)
    return out


# ---------------------------------------------------------------------------
# the weight matrix


class WeightMatrix:
    """Extended 0-1 weights of all simplex faces on the universal fan.

    Rows are indexed by ordered partitions of [n+1] in canonical order,
    columns by subsets I of [n+1] with |I| >= 2 in canonical order; the
    entry is 1 exactly when the partition restricts to I with the
    doubleton block in front.
    """

    def __init__(self, n: int, partitions, subsets, rows):
        self.n = n
        self.partitions = partitions
        self.subsets = subsets
        self.rows = rows
        self._col = {s: i for i, s in enumerate(subsets)}

    def entry(self, pi: OrderedPartition, I) -> int:
        i = self.partitions.index(pi)
        return self.rows[i][self._col[tuple(sorted(I))]]

    def row_of(self, pi: OrderedPartition) -> tuple:
        return self.rows[self.partitions.index(pi)]

    def column_of(self, I) -> tuple:
        j = self._col[tuple(sorted(I))]
        return tuple(r[j] for r in self.rows)


def _weight_entry(pi: OrderedPartition, I: tuple) -> int:
    r = restricts_to(pi, I)
    if not r:
        return 0
    return 1 if len(r.blocks[0]) == 2 else 0


def weight_matrix(n: int, cap: int = 6) -> WeightMatrix:
    """The weight matrix of type A_n.  TooLarge above the configured cap.

    Rows are independent of one another; each is computed directly from
    the restriction rule.
    """
    if n < 1:
        raise TooSmall("the type A_n weight matrix needs n >= 1")
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the configured cap of {cap}")
    partitions = ordered_partitions(range(1, n + 2))
    subsets = canonical_subsets(n)
    rows = tuple(tuple(_weight_entry(pi, I) for I in subsets)
                 for pi in partitions)
    return WeightMatrix(n, partitions, subsets, rows)


# ---------------------------------------------------------------------------
# the universal fan


class UniversalFan:
    """The braid fan in quotient coordinates with labeled walls."""

    def __init__(self, n: int, fan: Fan, label_of: Dict, wall_of: Dict):
        self.n = n
        self.fan = fan
        self.label_of = label_of
        self.wall_of = wall_of

    @property
    def partitions(self):
        return sorted(self.wall_of, key=lambda p: p.sort_key())


def _partition_of_point(g: Sequence) -> OrderedPartition:
    """The ordered partition reading off the tie pattern of a dual point."""
    z = list(g) + [-sum(g)]
    order = sorted(range(len(z)), key=lambda i: z[i], reverse=True)
    blocks = []
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and z[order[j + 1]] == z[order[i]]:
            j += 1
        blocks.append(tuple(sorted(order[k] + 1 for k in range(i, j + 1))))
        i = j + 1
    return OrderedPartition(blocks)


def universal_fan(n: int, cap: int = 4) -> UniversalFan:
    """The type A_n universal fan with its cone-partition bijection.

    Chambers realize the strict orderings x_{s(1)} > ... > x_{s(n+1)};
    each wall's relative interior determines an ordered partition with a
    single doubleton, and this labeling is a bijection.
    """
    if n < 1:
        raise TooSmall("the universal fan needs n >= 1")
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the configured cap of {cap}")
    chambers = []
    for perm in itertools.permutations(range(1, n + 2)):
        ineqs = []
        for a, b in zip(perm, perm[1:]):
            f = braid_functional(a, b, n)
            ineqs.append((tuple(-x for x in f), Fraction(0)))
        chambers.append(Polyhedron(n, ineqs))
    fan = Fan(chambers)
    label_of = {}
    wall_of = {}
    for wk, W in fan.walls.items():
        pi = _partition_of_point(W.relative_interior_point())
        assert len(pi.blocks) == n, "walls carry exactly one coordinate tie"
        label_of[wk] = pi
        wall_of[pi] = wk
    assert len(wall_of) == len(fan.walls), "the labeling is a bijection"
    assert len(wall_of) == _factorial(n + 1) * n // 2
    return UniversalFan(n, fan, label_of, wall_of)


def geometric_weight_column(uf: UniversalFan, I) -> Dict:
    """w_I^ on the universal fan, computed from the polytope Delta_I."""
    Q = simplex_polytope(I, uf.n)
    w = extended_weights(Q, uf.fan)
    return {uf.label_of[k]: v for k, v in w.by_key.items()}


# ---------------------------------------------------------------------------
# deformation cone membership


def _net_weights(y: Dict, n: int) -> Dict[tuple, int]:
    out = {}
    for key, val in y.items():
        I = tuple(sorted(key))
        if any(not 1 <= i <= n + 1 for i in I):
            raise ValueError(f"subset {I} is not within [n+1]")
        if len(I) <= 1:
            # singletons and the empty set only translate; ignored
            continue
        out[I] = out.get(I, 0) + val
    return out


def deformation_cone_violations(y: Dict, n: int,
                                W: Optional[WeightMatrix] = None):
    """All (partition, value) pairs with a negative weight combination."""
    if W is None:
        W = weight_matrix(n)
    net = _net_weights(y, n)
    out = []
    for pi, row in zip(W.partitions, W.rows):
        val = sum(net.get(I, 0) * e for I, e in zip(W.subsets, row))
        if val < 0:
            out.append((pi, val))
    return out


def deformation_cone_contains(y: Dict, n: int,
                              W: Optional[WeightMatrix] = None) -> bool:
    """Does the signed simplex combination y deform to a polytope?

    True exactly when W y >= 0 componentwise over all ordered partitions.
    """
    return not deformation_cone_violations(y, n, W)


def polymatroid_from_weights(y: Dict, n: int) -> LatticePolytope:
    """The polytope M with M + sum y_I^- Delta_I = sum y_I^+ Delta_I.

    Raises NotInCone with a violating partition when W y >= 0 fails.
    """
    violations = deformation_cone_violations(y, n)
    if violations:
        pi, val = violations[0]
        raise NotInCone(pi, val)
    net = _net_weights(y, n)
    origin = LatticePolytope([tuple(0 for _ in range(n))])
    pos = origin
    neg = origin
    for I, v in sorted(net.items()):
        D = simplex_polytope(I, n)
        if v > 0:
            pos = pos + D.scale(v)
        elif v < 0:
            neg = neg + D.scale(-v)
    return factor(pos, neg)


# ---------------------------------------------------------------------------
# the simplex family as a factorization basis


def simplex_family_basis(n: int) -> FactorizationBasis:
    """The faces Delta_I as a factorization basis of the universal fan.

    Verified on construction: the extended weight columns are a lattice
    basis of the balanced weight vectors on the fan.
    """
    uf = universal_fan(n)
    subsets = canonical_subsets(n)
    vectors = []
    polys = []
    for I in subsets:
        Q = simplex_polytope(I, n)
        vectors.append(extended_weights(Q, uf.fan))
        polys.append(Q)
    lattice, _ = balanced_weight_lattice(uf.fan)
    mat = [tuple(int(x) for x in w.values) for w in vectors]
    assert same_lattice(mat, lattice), (
        "the simplex faces span the balanced weight lattice of the fan")
    return FactorizationBasis(uf.fan, vectors, polys)
