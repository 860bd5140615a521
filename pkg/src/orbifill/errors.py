"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code contract: input problems exit 2,
domain-negative outcomes exit 1, broken internal invariants exit 3.
"""


class InputError(Exception):
    """A malformed document, literal, or option value."""


class ParseError(InputError):
    """Grammar or schema violation, with a human-readable locus."""

    def __init__(self, message, locus=None):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)


class NotUnitary(InputError):
    """A generator failed the exact unitarity check."""

    def __init__(self, generator, entry):
        self.generator = generator
        self.entry = entry
        super().__init__(
            "generator %d is not unitary: conjugate-transpose product "
            "differs from the identity first at entry (%d, %d)" % (generator, *entry)
        )


class GroupTooLarge(InputError):
    """Closure enumeration exceeded the configured order cap."""


class IncompatibleConductor(InputError):
    """Attempted to lift a value to a conductor its own does not divide."""


class NonIsolated(Exception):
    """The group has a nontrivial element with eigenvalue 1.

    ``witness`` is the index of the first offending element.
    """

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"element {witness} fixes a nonzero vector")


class SlopeOnSpectrum(InputError):
    """A slope or period bound coincides with an admissible orbit period."""


class MiddleMismatch(InputError):
    """Two spans cannot be composed: the shared group differs."""


class NotApplicable(Exception):
    """A constraint set whose theorem hypotheses fail cannot admit anything."""


class InvariantViolation(Exception):
    """A user-supplied differential entry breaks a necessary condition."""

    def __init__(self, entry_index, rule):
        self.entry_index = entry_index
        self.rule = rule
        super().__init__(f"entry {entry_index}: {rule}")


class InternalInconsistency(Exception):
    """An internal invariant failed; this signals a bug, not a user error."""
