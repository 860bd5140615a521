"""The combinatorial generator ledger of the filtered Floer complex of C^n/G.

Everything recorded here is determined by group theory: generator degrees,
actions, homotopy classes, and the one differential entry that is forced,
namely that the minimum cell of the simple contractible family kills |G|
times the untwisted unit. All other differential entries are unknown rather
than zero and enter only through user-supplied data validated against the
necessary conditions (same class, degree +1, strictly increasing action).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chen_ruan import age
from .coefficients import CoefficientRing
from .errors import InvariantViolation
from .groups import FiniteUnitaryGroup
from .reeb import MorseCell, cz_generator, families_below

KIND_CONSTANT_TWISTED = "constant-twisted"
KIND_CONSTANT_UNTWISTED = "constant-untwisted"
KIND_CELL = "cell"

PROVENANCE_PAPER = "established"
PROVENANCE_USER = "user-supplied"


@dataclass(frozen=True)
class FloerGenerator:
    kind: str
    homotopy_class: str
    degree: Fraction
    action: Fraction  # units of 2*pi; constants sit at zero, orbits below
    isotropy_order: int
    period: Fraction | None = None
    morse_index: int | None = None

    def describe(self) -> dict:
        out = {
            "kind": self.kind,
            "class": self.homotopy_class,
            "degree": str(self.degree),
            "action": str(self.action),
            "isotropy": self.isotropy_order,
        }
        if self.period is not None:
            out["period"] = str(self.period)
            out["morse_index"] = self.morse_index
        return out


@dataclass(frozen=True)
class DifferentialEntry:
    source: FloerGenerator
    target: FloerGenerator
    coefficient: int
    provenance: str


@dataclass(frozen=True)
class GeneratorLedger:
    group: FiniteUnitaryGroup
    slope: Fraction
    generators: tuple[FloerGenerator, ...]

    def minimum_cell(self, class_label: str, period: Fraction) -> FloerGenerator | None:
        for g in self.generators:
            if (
                g.kind == KIND_CELL
                and g.homotopy_class == class_label
                and g.period == period
                and g.morse_index == 0
            ):
                return g
        return None


def default_cell_profile(fixed_dim: int) -> tuple[int, ...]:
    """Two-cell profile: the minimum and the top cell of the family."""
    return (0, 2 * fixed_dim - 1)


def build_ledger(
    group: FiniteUnitaryGroup,
    slope,
    cell_profiles: dict[tuple[str, Fraction], tuple[int, ...]] | None = None,
) -> GeneratorLedger:
    """Assemble the generators of the complex at the given slope.

    Constants: one untwisted degree-0 generator (the Morse minimum, which
    for a nontrivial group sits at the singular point with full isotropy)
    and one generator of degree 2*age per nontrivial class. Nonconstant
    generators: one per Morse cell of every family with period below the
    slope, with action equal to minus the period.
    """
    group.require_isolated()
    slope = Fraction(slope)
    families = families_below(group, slope)
    profiles = cell_profiles or {}
    class_pos = {cls.label: pos for pos, cls in enumerate(group.classes)}
    generators = [
        FloerGenerator(
            KIND_CONSTANT_UNTWISTED,
            group.classes[0].label,
            Fraction(0),
            Fraction(0),
            group.order,
        )
    ]
    for cls in group.classes[1:]:
        generators.append(
            FloerGenerator(
                KIND_CONSTANT_TWISTED,
                cls.label,
                2 * age(group, cls.representative_index),
                Fraction(0),
                cls.centralizer_order,
            )
        )
    for family in families:
        profile = profiles.get(
            (family.class_label, family.period), default_cell_profile(family.fixed_dim)
        )
        isotropy = group.classes[family.class_position].centralizer_order
        for index in profile:
            cell = MorseCell(family, index)
            _, degree = cz_generator(cell, group)
            generators.append(
                FloerGenerator(
                    KIND_CELL,
                    family.class_label,
                    degree,
                    -family.period,
                    isotropy,
                    family.period,
                    index,
                )
            )
    generators.sort(key=lambda g: (class_pos[g.homotopy_class], g.action, g.degree))
    return GeneratorLedger(group, slope, tuple(generators))


def known_differentials(ledger: GeneratorLedger) -> list[DifferentialEntry]:
    """The single forced entry: the minimum cell of the simple contractible
    family maps to |G| times the untwisted constant. Every other entry is
    unknown, not zero."""
    gamma0 = ledger.minimum_cell(ledger.group.classes[0].label, Fraction(1))
    if gamma0 is None:
        return []
    unit = next(g for g in ledger.generators if g.kind == KIND_CONSTANT_UNTWISTED)
    return [DifferentialEntry(gamma0, unit, ledger.group.order, PROVENANCE_PAPER)]


def check_ledger(ledger: GeneratorLedger, entries) -> dict:
    """Assert the necessary conditions on every entry and report ranks.

    Raises InvariantViolation naming the first failing entry and rule.
    """
    entries = list(entries)
    members = set(ledger.generators)
    for i, entry in enumerate(entries):
        if entry.source not in members or entry.target not in members:
            raise InvariantViolation(i, "references a generator outside the ledger")
        if entry.source.homotopy_class != entry.target.homotopy_class:
            raise InvariantViolation(i, "homotopy classes differ")
        if entry.target.degree != entry.source.degree + 1:
            raise InvariantViolation(i, "target degree is not source degree + 1")
        if not entry.target.action > entry.source.action:
            raise InvariantViolation(i, "action does not increase")
    by_class: dict[str, dict[str, int]] = {}
    for g in ledger.generators:
        degrees = by_class.setdefault(g.homotopy_class, {})
        key = str(g.degree)
        degrees[key] = degrees.get(key, 0) + 1
    return {
        "entries_checked": len(entries),
        "classes": {
            label: {"ranks_by_degree": dict(sorted(degrees.items()))}
            for label, degrees in sorted(by_class.items())
        },
    }


def sh_vanishing(group: FiniteUnitaryGroup, ring: CoefficientRing) -> bool:
    """Whether the symplectic invariant vanishes: |G| invertible in the ring."""
    group.require_isolated()
    return ring.is_invertible(group.order)


def exact_triangle_report(group: FiniteUnitaryGroup, ring: CoefficientRing) -> dict:
    """Rank bookkeeping only: the constant generators realize the Chen-Ruan
    ranks; the positive-action part is not combinatorially determined."""
    from .chen_ruan import twisted_sectors

    sectors = twisted_sectors(group)
    return {
        "coefficient": ring.describe(),
        "constant_ranks_by_degree": {
            str(s.degree): sum(1 for t in sectors if t.degree == s.degree)
            for s in sectors
        },
        "vanishes": sh_vanishing(group, ring),
    }
