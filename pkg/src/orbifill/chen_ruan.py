"""Twisted sectors, ages, and the Chen-Ruan ring of C^n/G.

For an isolated quotient singularity every twisted sector is a point with
finite isotropy, so the whole ring is group theory: one sector per conjugacy
class, graded by twice the age, with structure constants summed over pairs
of class members whose ages add. The summation domain of the displayed
product formula admits two readings, so both are implemented behind an
explicit convention flag and an associativity sweep arbitrates empirically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .coefficients import CoefficientRing
from .errors import InternalInconsistency
from .groups import ConjugacyClass, FiniteUnitaryGroup, _age_from_eigen


def age(group: FiniteUnitaryGroup, element_index: int) -> Fraction:
    """sum of m_i / o over the eigenvalue exponents of the element."""
    return _age_from_eigen(group.eigen_multiplicities(element_index))


@dataclass(frozen=True)
class TwistedSector:
    """One conjugacy class of the inertia groupoid, with its degree shift."""

    class_ref: ConjugacyClass
    age: Fraction
    degree: Fraction
    centralizer_order: int

    @property
    def label(self) -> str:
        return self.class_ref.label


class CupConvention(enum.Enum):
    """How the product formula's pair set is summed.

    FULL_PAIR_SUM is the literal reading: every pair (h1, h2) of class
    members with additive ages contributes. ORBIT_REPRESENTATIVE_SUM counts
    one representative per simultaneous-conjugation orbit of such pairs.
    """

    FULL_PAIR_SUM = "full-pairs"
    ORBIT_REPRESENTATIVE_SUM = "orbit-reps"


DEFAULT_CONVENTION = CupConvention.FULL_PAIR_SUM


def twisted_sectors(group: FiniteUnitaryGroup) -> tuple[TwistedSector, ...]:
    """One sector per conjugacy class, untwisted first then ascending degree."""
    group.require_isolated()
    sectors = []
    for cls in group.classes:
        a = age(group, cls.representative_index)
        sectors.append(TwistedSector(cls, a, 2 * a, cls.centralizer_order))
    return tuple(sectors)


def _zz2_parity(degree: Fraction) -> str:
    # The induced Z/2 grading: parity of the numerator when the denominator
    # is odd, indeterminate otherwise.
    if degree.denominator % 2 == 1:
        return "even" if degree.numerator % 2 == 0 else "odd"
    return "indeterminate"


@dataclass
class CRRing:
    """The Chen-Ruan cohomology ring of C^n/G as structure constants."""

    group: FiniteUnitaryGroup
    sectors: tuple[TwistedSector, ...]
    convention: CupConvention
    structure_constants: dict = field(repr=False, default_factory=dict)

    def sector_count(self) -> int:
        return len(self.sectors)


def build_ring(group: FiniteUnitaryGroup, convention: CupConvention = DEFAULT_CONVENTION) -> CRRing:
    sectors = twisted_sectors(group)
    ring = CRRing(group, sectors, convention)
    table = group.mult_table
    inv = [group.inverse_index(g) for g in range(group.order)]
    ages = [s.age for s in sectors]
    cent_orders = [s.centralizer_order for s in sectors]
    pos_of = group.class_position
    elem_cent: dict[int, frozenset] = {}

    def centralizer_of(h):
        cached = elem_cent.get(h)
        if cached is None:
            cached = frozenset(
                x for x in range(group.order) if table[x][h] == table[h][x]
            )
            elem_cent[h] = cached
        return cached

    for i in range(1, len(sectors)):
        for j in range(1, len(sectors)):
            contributions: dict[int, Fraction] = {}
            seen_orbits: set = set()
            for h1 in sectors[i].class_ref.member_indices:
                for h2 in sectors[j].class_ref.member_indices:
                    p = table[h1][h2]
                    if p == 0:
                        continue
                    k = pos_of(p)
                    if ages[i] + ages[j] != ages[k]:
                        continue
                    if ring.convention is CupConvention.ORBIT_REPRESENTATIVE_SUM:
                        orbit = min(
                            (table[table[g][h1]][inv[g]], table[table[g][h2]][inv[g]])
                            for g in range(group.order)
                        )
                        if orbit in seen_orbits:
                            continue
                        seen_orbits.add(orbit)
                    inter = len(centralizer_of(h1) & centralizer_of(h2))
                    coeff = Fraction(cent_orders[k], inter)
                    contributions[k] = contributions.get(k, Fraction(0)) + coeff
            terms = tuple(sorted((k, c) for k, c in contributions.items() if c))
            for k, _ in terms:
                if ring.sectors[k].degree != ring.sectors[i].degree + ring.sectors[j].degree:
                    raise InternalInconsistency(
                        "cup product term violates degree additivity"
                    )
            ring.structure_constants[(i, j)] = terms
    return ring


def cr_cup(ring: CRRing, i: int, j: int) -> list[tuple[int, Fraction]]:
    """Product of sector generators i and j as (sector, coefficient) terms."""
    count = ring.sector_count()
    if not (0 <= i < count and 0 <= j < count):
        raise ValueError("sector index out of range")
    if i == 0:
        return [(j, Fraction(1))]
    if j == 0:
        return [(i, Fraction(1))]
    return list(ring.structure_constants[(i, j)])


def _cup_linear(ring: CRRing, terms, j: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for s, c in terms:
        for t, d in cr_cup(ring, s, j):
            out[t] = out.get(t, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v}


def associativity_sweep(ring: CRRing):
    """Check ([a][b])[c] = [a]([b][c]) over all sector triples.

    Returns (passes, counterexample) where the counterexample is the first
    failing triple with both evaluations.
    """
    count = ring.sector_count()
    for a in range(count):
        for b in range(count):
            ab = cr_cup(ring, a, b)
            for c in range(count):
                left = _cup_linear(ring, ab, c)
                bc = cr_cup(ring, b, c)
                right = {}
                for t, d in bc:
                    for u, e in cr_cup(ring, a, t):
                        right[u] = right.get(u, Fraction(0)) + d * e
                right = {k: v for k, v in right.items() if v}
                if left != right:
                    return False, {"triple": (a, b, c), "left": left, "right": right}
    return True, None


def commutativity_check(ring: CRRing):
    """Flag any sector pair whose products differ as coefficient multisets."""
    count = ring.sector_count()
    for i in range(count):
        for j in range(count):
            if dict(cr_cup(ring, i, j)) != dict(cr_cup(ring, j, i)):
                return False, (i, j)
    return True, None


def choose_ring(group: FiniteUnitaryGroup, convention: CupConvention | None = None):
    """Build the ring, selecting the convention when the caller does not.

    The default is the literal pair-sum reading; if that fails the
    associativity sweep for this group while the orbit reading passes, the
    orbit reading is selected. Sweep verdicts for both are always reported.
    """
    full = build_ring(group, CupConvention.FULL_PAIR_SUM)
    full_ok, _ = associativity_sweep(full)
    orbit = build_ring(group, CupConvention.ORBIT_REPRESENTATIVE_SUM)
    orbit_ok, _ = associativity_sweep(orbit)
    verdicts = {
        CupConvention.FULL_PAIR_SUM.value: full_ok,
        CupConvention.ORBIT_REPRESENTATIVE_SUM.value: orbit_ok,
    }
    if convention is CupConvention.FULL_PAIR_SUM:
        return full, verdicts
    if convention is CupConvention.ORBIT_REPRESENTATIVE_SUM:
        return orbit, verdicts
    if full_ok or not orbit_ok:
        return full, verdicts
    return orbit, verdicts


def cr_pairing_check(group: FiniteUnitaryGroup) -> dict:
    """Age duality age(g) + age(g^-1) = n, and the induced sector pairing."""
    sectors = twisted_sectors(group)
    n = group.dimension
    pairs = []
    all_pass = True
    for pos, sector in enumerate(sectors):
        if pos == 0:
            continue
        rep = sector.class_ref.representative_index
        inv_pos = group.class_position(group.inverse_index(rep))
        dual = sectors[inv_pos]
        ok = sector.age + dual.age == n
        all_pass = all_pass and ok
        pairs.append(
            {
                "sector": sector.label,
                "dual": dual.label,
                "degree": str(sector.degree),
                "dual_degree": str(dual.degree),
                "complementary": dual.degree == 2 * n - sector.degree,
                "age_sum_is_n": ok,
            }
        )
    return {"dimension": n, "all_pass": all_pass, "pairs": pairs}


@dataclass(frozen=True)
class FillingCRProfile:
    """Additive input for the Chen-Ruan groups of an exact orbifold filling."""

    betti: tuple[int, ...]
    singularities: tuple[FiniteUnitaryGroup, ...]
    coefficient: CoefficientRing

    def __post_init__(self):
        if any(b < 0 for b in self.betti):
            raise ValueError("Betti numbers must be non-negative")


def cr_of_filling(profile: FillingCRProfile) -> dict[Fraction, int]:
    """Graded ranks: the user's Betti data plus one rank per nontrivial class
    per singularity in degree 2*age. Torsion of the underlying space is the
    caller's responsibility and passes through untouched."""
    ranks: dict[Fraction, int] = {}
    for degree, rank in enumerate(profile.betti):
        if rank:
            ranks[Fraction(degree)] = ranks.get(Fraction(degree), 0) + rank
    for group in profile.singularities:
        for sector in twisted_sectors(group)[1:]:
            ranks[sector.degree] = ranks.get(sector.degree, 0) + 1
    return dict(sorted(ranks.items()))


def sector_report(ring: CRRing) -> dict:
    """JSON-ready description of sectors, products, and ring diagnostics."""
    sectors = [
        {
            "label": s.label,
            "age": str(s.age),
            "degree": str(s.degree),
            "parity": _zz2_parity(s.degree),
            "class_size": s.class_ref.size,
            "centralizer_order": s.centralizer_order,
        }
        for s in ring.sectors
    ]
    products = []
    for i in range(1, ring.sector_count()):
        for j in range(i, ring.sector_count()):
            terms = cr_cup(ring, i, j)
            products.append(
                {
                    "left": ring.sectors[i].label,
                    "right": ring.sectors[j].label,
                    "terms": [
                        {"sector": ring.sectors[k].label, "coefficient": str(c)}
                        for k, c in terms
                    ],
                }
            )
    assoc_ok, counterexample = associativity_sweep(ring)
    comm_ok, comm_pair = commutativity_check(ring)
    return {
        "convention": ring.convention.value,
        "sectors": sectors,
        "products": products,
        "associative": assoc_ok,
        "associativity_counterexample": counterexample and {
            "triple": [ring.sectors[p].label for p in counterexample["triple"]]
        },
        "commutative": comm_ok,
        "commutativity_counterexample": comm_pair
        and [ring.sectors[p].label for p in comm_pair],
    }
