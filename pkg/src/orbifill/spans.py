"""Pullback-pushforward counts on spans of point orbifolds.

A span */H1 <-s- */G -t-> */H2 contributes the rational weight |H2|/|G|.
Composing two spans is governed by the fiber product, which is the action
groupoid of G1 x G2 acting on the shared group H2 by
(g1, g2) . h = s2(g2) * h * t1(g1)^-1; decomposing into orbits with their
stabilizers recovers the composite weight, and the equality of the two
computations is the identity exercised by the randomized battery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import MiddleMismatch, ParseError


class FiniteGroupTable:
    """A finite group as a multiplication table; index 0 is the identity."""

    __slots__ = ("table", "inverse", "generators", "labels", "name")

    def __init__(self, table, generators=None, labels=None, name="", validate=False):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if validate:
            self._validate(n)
        inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == 0:
                    inverse[i] = j
                    break
            if inverse[i] is None or self.table[inverse[i]][i] != 0:
                raise ParseError(f"element {i} has no two-sided inverse")
        self.inverse = tuple(inverse)
        self.generators = tuple(generators) if generators is not None else tuple(range(n))
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.name = name

    def _validate(self, n):
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise ParseError("multiplication table is not square")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise ParseError("table entries must be element indices")
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise ParseError("index 0 is not a two-sided identity")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if (
                        self.table[self.table[i][j]][k]
                        != self.table[i][self.table[j][k]]
                    ):
                        raise ParseError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, i, j):
        return self.table[i][j]


def cyclic(k: int) -> FiniteGroupTable:
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    return FiniteGroupTable(table, generators=(1 % k,), name=f"Z{k}")


def from_permutations(gens: list[tuple[int, ...]], name="") -> FiniteGroupTable:
    """Closure of permutation generators; deterministic BFS order."""
    degree = len(gens[0])
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        fresh = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in index:
                    index[q] = len(elements)
                    elements.append(q)
                    fresh.append(q)
        frontier = fresh
    n = len(elements)
    table = [
        [index[tuple(a[b[i]] for i in range(degree))] for b in elements]
        for a in elements
    ]
    gen_idx = tuple(index[g] for g in gens)
    return FiniteGroupTable(table, generators=gen_idx, labels=elements, name=name)


def dihedral(m: int) -> FiniteGroupTable:
    """Symmetries of the m-gon, order 2m, for m >= 3."""
    if m < 3:
        raise ValueError("dihedral groups need m >= 3")
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((m - i) % m for i in range(m))
    return from_permutations([rot, ref], name=f"D{m}")


def quaternion8() -> FiniteGroupTable:
    """The order-8 quaternion group, elements +-1, +-i, +-j, +-k."""
    # element = (sign, axis) encoded as sign*4 + axis with axes 1,i,j,k
    def mul(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        prod = {
            (0, 0): (0, 0),
            (0, 1): (0, 1), (1, 0): (0, 1),
            (0, 2): (0, 2), (2, 0): (0, 2),
            (0, 3): (0, 3), (3, 0): (0, 3),
            (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
            (1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
            (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2),
        }[(ua, ub)]
        sign = (sa + sb + prod[0]) % 2
        return sign * 4 + prod[1]

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroupTable(table, generators=(1, 2), name="Q8")


def direct_product(a: FiniteGroupTable, b: FiniteGroupTable) -> FiniteGroupTable:
    na, nb = a.order, b.order
    table = [
        [
            (a.table[i // nb][j // nb]) * nb + b.table[i % nb][j % nb]
            for j in range(na * nb)
        ]
        for i in range(na * nb)
    ]
    gens = tuple(g * nb for g in a.generators) + tuple(b.generators)
    labels = tuple((a.labels[i // nb], b.labels[i % nb]) for i in range(na * nb))
    return FiniteGroupTable(table, generators=gens, labels=labels, name=f"{a.name}x{b.name}")


def subgroup_of_product(
    a: FiniteGroupTable, b: FiniteGroupTable, pair_gens: list[tuple[int, int]], name=""
) -> FiniteGroupTable:
    """The subgroup of A x B generated by the given pairs, built without
    materializing the full product table."""
    identity = (0, 0)
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        fresh = []
        for x, y in frontier:
            for gx, gy in pair_gens:
                q = (a.table[x][gx], b.table[y][gy])
                if q not in index:
                    index[q] = len(elements)
                    elements.append(q)
                    fresh.append(q)
        frontier = fresh
    table = [
        [index[(a.table[x1][x2], b.table[y1][y2])] for (x2, y2) in elements]
        for (x1, y1) in elements
    ]
    gens = tuple(index[g] for g in pair_gens)
    return FiniteGroupTable(table, generators=gens, labels=elements, name=name)


def from_elements_of_product(
    a: FiniteGroupTable, b: FiniteGroupTable, pairs: list[tuple[int, int]], name=""
) -> FiniteGroupTable:
    """Table for a set of pairs already closed under multiplication."""
    pairs = sorted(set(pairs))
    if (0, 0) not in pairs:
        raise ParseError("subgroup must contain the identity pair")
    pairs.remove((0, 0))
    elements = [(0, 0)] + pairs
    index = {p: i for i, p in enumerate(elements)}
    table = [
        [index[(a.table[x1][x2], b.table[y1][y2])] for (x2, y2) in elements]
        for (x1, y1) in elements
    ]
    return FiniteGroupTable(table, labels=elements, name=name)


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroupTable
    target: FiniteGroupTable
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise ParseError("homomorphism image list has the wrong length")
        if self.images[0] != 0:
            raise ParseError("homomorphism must send identity to identity")
        for i in range(self.source.order):
            for j in range(self.source.order):
                lhs = self.images[self.source.table[i][j]]
                rhs = self.target.table[self.images[i]][self.images[j]]
                if lhs != rhs:
                    raise ParseError(
                        f"map is not a homomorphism at pair ({i}, {j})"
                    )


@dataclass(frozen=True)
class PointOrbifoldSpan:
    """*/H1 <-s- */G -t-> */H2 with verified homomorphisms."""

    left: FiniteGroupTable
    middle: FiniteGroupTable
    right: FiniteGroupTable
    s: Homomorphism
    t: Homomorphism

    def __post_init__(self):
        if self.s.source is not self.middle or self.s.target is not self.left:
            raise ParseError("source map must go from the middle to the left group")
        if self.t.source is not self.middle or self.t.target is not self.right:
            raise ParseError("target map must go from the middle to the right group")


def span(left, middle, right, s_images, t_images) -> PointOrbifoldSpan:
    return PointOrbifoldSpan(
        left,
        middle,
        right,
        Homomorphism(middle, left, tuple(s_images)),
        Homomorphism(middle, right, tuple(t_images)),
    )


def identity_span(group: FiniteGroupTable) -> PointOrbifoldSpan:
    ident = tuple(range(group.order))
    return span(group, group, group, ident, ident)


def pushpull(sp: PointOrbifoldSpan) -> Fraction:
    """t_* s^* applied to the unit: the weight |H2| / |G|."""
    return Fraction(sp.right.order, sp.middle.order)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbit sizes and stabilizer orders of the fiber-product action."""

    orbits: tuple[tuple[int, int], ...]  # (orbit size, stabilizer order)

    @property
    def total(self) -> int:
        return sum(size for size, _ in self.orbits)


def _require_composable(span1, span2):
    if span1.right.table != span2.left.table:
        raise MiddleMismatch("the shared group of the two spans differs")


def _orbit_reps(span1, span2):
    h2 = span1.right
    g1, g2 = span1.middle, span2.middle
    t1, s2 = span1.t.images, span2.s.images
    mul, inv = h2.table, h2.inverse
    moves = [lambda h, a=t1[g]: mul[h][inv[a]] for g in g1.generators]
    moves += [lambda h, a=s2[g]: mul[a][h] for g in g2.generators]
    seen = [False] * h2.order
    orbits = []
    for h in range(h2.order):
        if seen[h]:
            continue
        stack, orbit = [h], {h}
        seen[h] = True
        while stack:
            x = stack.pop()
            for mv in moves:
                y = mv(x)
                if not seen[y]:
                    seen[y] = True
                    orbit.add(y)
                    stack.append(y)
        orbits.append(sorted(orbit))
    return orbits


def _stabilizer_order(span1, span2, h: int) -> int:
    # (g1, g2) stabilizes h iff s2(g2) = h * t1(g1) * h^-1; count via the
    # fiber sizes of s2 rather than scanning all pairs.
    h2 = span1.right
    mul, inv = h2.table, h2.inverse
    t1, s2 = span1.t.images, span2.s.images
    fiber = [0] * h2.order
    for img in s2:
        fiber[img] += 1
    total = 0
    hinv = inv[h]
    for g1 in range(span1.middle.order):
        total += fiber[mul[mul[h][t1[g1]]][hinv]]
    return total


def orbit_decomposition(span1, span2) -> OrbitDecomposition:
    _require_composable(span1, span2)
    out = []
    for orbit in _orbit_reps(span1, span2):
        out.append((len(orbit), _stabilizer_order(span1, span2, orbit[0])))
    return OrbitDecomposition(tuple(out))


def fiber_product(span1, span2):
    """Orbit decomposition plus the composite spans */H1 <- */stab_i -> */H3."""
    _require_composable(span1, span2)
    g1, g2 = span1.middle, span2.middle
    h2 = span1.right
    mul, inv = h2.table, h2.inverse
    t1, s2 = span1.t.images, span2.s.images
    decomposition = []
    composites = []
    for orbit in _orbit_reps(span1, span2):
        h = orbit[0]
        stab_pairs = [
            (a, b)
            for a in range(g1.order)
            for b in range(g2.order)
            if mul[mul[s2[b]][h]][inv[t1[a]]] == h
        ]
        stab = from_elements_of_product(g1, g2, stab_pairs, name="stab")
        s3 = tuple(span1.s.images[a] for a, _ in stab.labels)
        t3 = tuple(span2.t.images[b] for _, b in stab.labels)
        composites.append(span(span1.left, stab, span2.right, s3, t3))
        decomposition.append((len(orbit), stab.order))
    return OrbitDecomposition(tuple(decomposition)), composites


def composition_check(span1, span2):
    """Both evaluations of the composite weight, computed independently.

    Left: |H2||H3| / (|G1||G2|) from the pushpull formula applied twice.
    Right: the sum of |H3| / |stab_i| over the fiber-product orbits.
    """
    _require_composable(span1, span2)
    lhs = Fraction(
        span1.right.order * span2.right.order,
        span1.middle.order * span2.middle.order,
    )
    rhs = sum(
        (Fraction(span2.right.order, stab) for _, stab in orbit_decomposition(span1, span2).orbits),
        Fraction(0),
    )
    return lhs, rhs, lhs == rhs


# -- randomized battery --------------------------------------------------------


def _group_pool(max_order: int) -> list[FiniteGroupTable]:
    pool = [cyclic(k) for k in range(2, 13)]
    pool += [dihedral(m) for m in range(3, 7)]
    pool.append(quaternion8())
    pool.append(direct_product(cyclic(2), cyclic(2)))
    pool.append(direct_product(cyclic(2), cyclic(4)))
    pool.append(direct_product(cyclic(3), cyclic(3)))
    pool.append(direct_product(cyclic(2), quaternion8()))
    return [g for g in pool if g.order <= max_order]


def _random_span(rng: random.Random, left, right, max_middle: int) -> PointOrbifoldSpan:
    while True:
        k = rng.choice((1, 1, 2, 2, 3))
        pair_gens = [
            (rng.randrange(left.order), rng.randrange(right.order)) for _ in range(k)
        ]
        sub = subgroup_of_product(left, right, pair_gens)
        middle = sub
        kernel = None
        if sub.order * 2 <= max_middle and rng.random() < 0.5:
            kernel = cyclic(rng.choice((2, 3, 4)))
            if sub.order * kernel.order <= max_middle:
                middle = direct_product(sub, kernel)
            else:
                kernel = None
        if middle.order > max_middle:
            continue
        if kernel is None:
            s_images = tuple(a for a, _ in sub.labels)
            t_images = tuple(b for _, b in sub.labels)
        else:
            s_images = tuple(a for (a, _), _ in middle.labels)
            t_images = tuple(b for (_, b), _ in middle.labels)
        return span(left, middle, right, s_images, t_images)


def random_composition_battery(trials: int, seed: int, max_order: int = 24) -> dict:
    """Seeded random composable span pairs, checking the composition identity.

    Per-trial randomness derives deterministically from the master seed, so
    trials are reproducible independently of each other.
    """
    pool = _group_pool(max_order)
    failures = []
    checked = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        h1, h2, h3 = (rng.choice(pool) for _ in range(3))
        span1 = _random_span(rng, h1, h2, max_order)
        span2 = _random_span(rng, h2, h3, max_order)
        lhs, rhs, equal = composition_check(span1, span2)
        checked += 1
        if not equal:
            failures.append(
                {
                    "trial": trial,
                    "groups": [h1.name, h2.name, h3.name],
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                }
            )
    return {
        "trials": checked,
        "seed": seed,
        "max_order": max_order,
        "failures": failures,
        "all_equal": not failures,
    }


# -- span documents ------------------------------------------------------------


def group_from_document(doc, loader=None) -> FiniteGroupTable:
    """A group in a span document: a table, a cyclic shorthand, or a
    reference to a unitary group document resolved by the loader."""
    if isinstance(doc, dict) and "table" in doc:
        return FiniteGroupTable(doc["table"], name=doc.get("name", ""), validate=True)
    if isinstance(doc, dict) and "cyclic" in doc:
        k = doc["cyclic"]
        if not isinstance(k, int) or k < 1:
            raise ParseError("cyclic order must be a positive integer")
        return cyclic(k)
    if isinstance(doc, dict) and "ref" in doc:
        if loader is None:
            raise ParseError("group references require a document loader")
        unitary = loader(doc["ref"])
        return FiniteGroupTable(unitary.mult_table, name=unitary.name or doc["ref"])
    raise ParseError("group must provide 'table', 'cyclic', or 'ref'")


def span_from_document(doc, loader=None) -> PointOrbifoldSpan:
    for key in ("left", "middle", "right", "source", "target"):
        if key not in doc:
            raise ParseError(f"span document is missing '{key}'")
    left = group_from_document(doc["left"], loader)
    middle = group_from_document(doc["middle"], loader)
    right = group_from_document(doc["right"], loader)
    return span(left, middle, right, tuple(doc["source"]), tuple(doc["target"]))
