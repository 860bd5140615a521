"""Finite subgroups of U(n): enumeration, conjugacy structure, eigenvalue data.

A group is described by a JSON document declaring the dimension n, a single
cyclotomic conductor N, and generator matrices whose entries are literals in
the cyclotomic grammar. Enumeration is a breadth-first closure keyed by the
canonical form of each matrix; everything downstream (classes, centralizers,
eigenvalue multiplicities) is exact.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import (
    CyclotomicNumber,
    euler_phi,
    make,
    parse_literal,
    _reduction_table,
)
from .errors import (
    GroupTooLarge,
    InternalInconsistency,
    NonIsolated,
    NotUnitary,
    ParseError,
)

DEFAULT_MAX_ORDER = 20000

Matrix = tuple[tuple[CyclotomicNumber, ...], ...]


class UnitaryElement:
    """A group element: an n x n cyclotomic matrix with a canonical key."""

    __slots__ = ("entries", "key")

    def __init__(self, entries: Matrix):
        self.entries = entries
        # All entries of a group live at the document conductor, so the raw
        # coefficient tuples form a faithful canonical key.
        self.key = tuple(c.coefficients for row in entries for c in row)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, UnitaryElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def trace(self) -> CyclotomicNumber:
        t = self.entries[0][0]
        for i in range(1, len(self.entries)):
            t = t + self.entries[i][i]
        return t

    def to_literals(self) -> list[list[str]]:
        return [[c.to_literal() for c in row] for row in self.entries]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                x = a[i][k]
                if x.is_zero():
                    continue
                term = x * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else a[i][0] * 0)
        out.append(tuple(row))
    return tuple(out)


def mat_conj_transpose(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(a[j][i].conjugate() for j in range(n)) for i in range(n))


def mat_identity(n: int, conductor: int) -> Matrix:
    one = make(conductor, [(1, 0)])
    nil = make(conductor, [])
    return tuple(tuple(one if i == j else nil for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class ConjugacyClass:
    """A conjugation orbit with its centralizer, in deterministic order."""

    label: str
    representative_index: int
    member_indices: tuple[int, ...]
    centralizer_indices: tuple[int, ...]
    order: int

    @property
    def size(self) -> int:
        return len(self.member_indices)

    @property
    def centralizer_order(self) -> int:
        return len(self.centralizer_indices)


@dataclass(frozen=True)
class EigenData:
    """Exact eigenvalue multiplicities of one element.

    ``multiplicities`` maps an exponent m in 0..o-1 to the multiplicity of
    the eigenvalue zeta_o^m; exponents with multiplicity zero are omitted.
    """

    element_index: int
    order: int
    multiplicities: dict[int, int]

    def multiplicity(self, m: int) -> int:
        return self.multiplicities.get(m % self.order, 0)


class FiniteUnitaryGroup:
    """A finite subgroup of U(n), staged as parsed-then-enumerated."""

    def __init__(self, name, dimension, conductor, generators):
        self.name = name
        self.dimension = dimension
        self.conductor = conductor
        self.generators = generators
        self.elements: list[UnitaryElement] | None = None
        self._index: dict | None = None
        self._parents: list[tuple[int, int]] | None = None
        self._mult_table = None
        self._inverses = None
        self._orders: dict[int, int] = {}
        self._eigen: dict[int, EigenData] = {}
        self._traces: dict[int, tuple] = {}
        self._classes = None
        self._class_of = None
        self._isolated = None

    # -- enumeration ---------------------------------------------------------

    @property
    def is_enumerated(self) -> bool:
        return self.elements is not None

    @property
    def order(self) -> int:
        self._require_enumerated()
        return len(self.elements)

    def _require_enumerated(self):
        if not self.is_enumerated:
            raise ValueError("group is not enumerated yet")

    def element_index(self, element: UnitaryElement) -> int:
        self._require_enumerated()
        idx = self._index.get(element.key)
        if idx is None:
            raise InternalInconsistency("product escaped the enumerated closure")
        return idx

    @property
    def mult_table(self) -> list[list[int]]:
        """|G| x |G| index table, built lazily.

        Column j of the table is derived from column parents: every element
        was discovered as parent * generator, so only generator columns need
        matrix products.
        """
        self._require_enumerated()
        if self._mult_table is None:
            n = len(self.elements)
            table: list[list[int]] = [[0] * n for _ in range(n)]
            gen_cols: dict[int, list[int]] = {}
            for i in range(n):
                table[i][0] = i
            for j in range(1, n):
                parent, gen_idx = self._parents[j]
                col = gen_cols.get(gen_idx)
                if col is None:
                    g = self.generators[gen_idx]
                    col = [
                        self.element_index(UnitaryElement(mat_mul(e.entries, g.entries)))
                        for e in self.elements
                    ]
                    gen_cols[gen_idx] = col
                if parent == 0:
                    for i in range(n):
                        table[i][j] = col[i]
                else:
                    parent_col = [table[i][parent] for i in range(n)]
                    for i in range(n):
                        table[i][j] = col[parent_col[i]]
            self._mult_table = table
        return self._mult_table

    def inverse_index(self, i: int) -> int:
        self._require_enumerated()
        if self._inverses is None:
            self._inverses = [None] * len(self.elements)
        if self._inverses[i] is None:
            inv = UnitaryElement(mat_conj_transpose(self.elements[i].entries))
            self._inverses[i] = self.element_index(inv)
        return self._inverses[i]

    def element_order(self, i: int) -> int:
        self._require_enumerated()
        o = self._orders.get(i)
        if o is None:
            o = len(self.power_indices(i))
        return o

    def power_indices(self, i: int) -> list[int]:
        """Indices of g^0, g^1, ..., g^(o-1)."""
        self._require_enumerated()
        table = self.mult_table
        out = [0]
        cur = i
        while cur != 0:
            out.append(cur)
            cur = table[cur][i]
        self._orders[i] = len(out)
        return out

    # -- conjugacy structure ---------------------------------------------------

    @property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        self._require_enumerated()
        if self._classes is None:
            table = self.mult_table
            n = len(self.elements)
            inv = [self.inverse_index(g) for g in range(n)]
            seen = [False] * n
            raw = []
            for i in range(n):
                if seen[i]:
                    continue
                members = sorted({table[table[g][i]][inv[g]] for g in range(n)})
                for m in members:
                    seen[m] = True
                rep = members[0]
                centralizer = tuple(
                    h for h in range(n) if table[h][rep] == table[rep][h]
                )
                raw.append((rep, tuple(members), centralizer))
            raw.sort(
                key=lambda c: (
                    _age_from_eigen(self.eigen_multiplicities(c[0])),
                    len(c[1]),
                    self.elements[c[0]].key,
                )
            )
            classes = []
            for pos, (rep, members, centralizer) in enumerate(raw):
                label = "Id" if rep == 0 else f"c{pos}"
                classes.append(
                    ConjugacyClass(label, rep, members, centralizer, self.element_order(rep))
                )
            self._classes = tuple(classes)
            self._class_of = {
                m: pos for pos, cls in enumerate(self._classes) for m in cls.member_indices
            }
        return self._classes

    def class_position(self, element_index: int) -> int:
        self.classes
        return self._class_of[element_index]

    # -- eigenvalue data -------------------------------------------------------

    def eigen_multiplicities(self, i: int) -> EigenData:
        """Multiplicity of each eigenvalue zeta_o^m via the character formula
        mult(m) = (1/o) * sum_k zeta_o^(-mk) trace(g^k)."""
        self._require_enumerated()
        cached = self._eigen.get(i)
        if cached is not None:
            return cached
        powers = self.power_indices(i)
        o = len(powers)
        n_dim = self.dimension
        lift_to = self.conductor * o // math.gcd(self.conductor, o)
        traces = [
            [(e, c) for e, c in enumerate(self.elements[p].trace().lift(lift_to).coefficients) if c]
            for p in powers
        ]
        phi = euler_phi(lift_to)
        red = _reduction_table(lift_to)
        step = lift_to // o
        mults: dict[int, int] = {}
        total = 0
        for m in range(o):
            acc = [Fraction(0)] * phi
            for k in range(o):
                shift = (-m * k * step) % lift_to
                for e, c in traces[k]:
                    idx = e + shift
                    if idx < phi:
                        acc[idx] += c
                    else:
                        for t, r in enumerate(red[idx]):
                            if r:
                                acc[t] += c * r
            if any(acc[1:]):
                raise InternalInconsistency(
                    f"eigenvalue multiplicity of element {i} is not rational"
                )
            val = acc[0] / o
            if val.denominator != 1 or val < 0:
                raise InternalInconsistency(
                    f"eigenvalue multiplicity of element {i} is not a non-negative integer"
                )
            if val:
                mults[m] = int(val)
                total += int(val)
        if total != n_dim:
            raise InternalInconsistency(
                f"eigenvalue multiplicities of element {i} sum to {total}, not {n_dim}"
            )
        data = EigenData(i, o, mults)
        self._eigen[i] = data
        return data

    def _trace_sparse(self, i: int) -> tuple:
        """Nonzero (exponent, coefficient) pairs of the element's trace."""
        cached = self._traces.get(i)
        if cached is None:
            cached = tuple(
                (e, c) for e, c in enumerate(self.elements[i].trace().coefficients) if c
            )
            self._traces[i] = cached
        return cached

    def fixed_space_dimension(self, i: int) -> int:
        """dim ker(g - I): the multiplicity of eigenvalue 1, computed cheaply."""
        cached = self._eigen.get(i)
        if cached is not None:
            return cached.multiplicity(0)
        powers = self.power_indices(i)
        o = len(powers)
        acc: dict[int, Fraction] = {}
        for p in powers:
            for e, c in self._trace_sparse(p):
                acc[e] = acc.get(e, 0) + c
        if any(v for e, v in acc.items() if e > 0):
            raise InternalInconsistency(
                f"fixed-space dimension of element {i} is not rational"
            )
        val = Fraction(acc.get(0, 0), o)
        if val.denominator != 1 or val < 0:
            raise InternalInconsistency(
                f"fixed-space dimension of element {i} is not a non-negative integer"
            )
        return int(val)

    def is_isolated_singularity(self) -> tuple[bool, int | None]:
        """True when no nontrivial element has eigenvalue 1.

        On failure the second component is the first offending element index.
        """
        self._require_enumerated()
        if self._isolated is None:
            witness = None
            for i in range(1, len(self.elements)):
                if self.fixed_space_dimension(i) > 0:
                    witness = i
                    break
            self._isolated = (witness is None, witness)
        return self._isolated

    def require_isolated(self):
        ok, witness = self.is_isolated_singularity()
        if not ok:
            raise NonIsolated(witness)


def _age_from_eigen(data: EigenData) -> Fraction:
    return Fraction(sum(m * mult for m, mult in data.multiplicities.items()), data.order)


# -- document handling --------------------------------------------------------


def parse_group(document) -> FiniteUnitaryGroup:
    """Validate a group document (text or mapping) into generators.

    The result is not yet enumerated; pass it to :func:`enumerate_group`.
    """
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}")
    else:
        doc = document
    if not isinstance(doc, dict):
        raise ParseError("group document must be a JSON object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("must be a string", "name")
    dimension = doc.get("dimension")
    if not isinstance(dimension, int) or dimension < 1:
        raise ParseError("must be a positive integer", "dimension")
    conductor = doc.get("conductor")
    if not isinstance(conductor, int) or conductor < 1:
        raise ParseError("must be a positive integer", "conductor")
    raw_gens = doc.get("generators")
    if not isinstance(raw_gens, list):
        raise ParseError("must be a list of matrices", "generators")
    generators = []
    for gi, mat in enumerate(raw_gens):
        if not isinstance(mat, list) or len(mat) != dimension:
            raise ParseError(f"must be a {dimension}x{dimension} matrix", f"generators[{gi}]")
        rows = []
        for ri, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dimension:
                raise ParseError(
                    f"must have {dimension} entries", f"generators[{gi}][{ri}]"
                )
            parsed = []
            for ci, entry in enumerate(row):
                if not isinstance(entry, str):
                    raise ParseError(
                        "entry must be a cyclotomic literal string",
                        f"generators[{gi}][{ri}][{ci}]",
                    )
                parsed.append(
                    parse_literal(entry, conductor, f"generators[{gi}][{ri}][{ci}]")
                )
            rows.append(tuple(parsed))
        element = UnitaryElement(tuple(rows))
        _check_unitary(element, gi, conductor)
        generators.append(element)
    return FiniteUnitaryGroup(name, dimension, conductor, generators)


def _check_unitary(element: UnitaryElement, generator_index: int, conductor: int):
    product = mat_mul(mat_conj_transpose(element.entries), element.entries)
    n = element.dimension
    for r in range(n):
        for c in range(n):
            expected = Fraction(1 if r == c else 0)
            if product[r][c] != expected:
                raise NotUnitary(generator_index, (r, c))


def enumerate_group(group: FiniteUnitaryGroup, max_order: int = DEFAULT_MAX_ORDER) -> FiniteUnitaryGroup:
    """Breadth-first closure of the generators under multiplication."""
    if group.is_enumerated:
        return group
    identity = UnitaryElement(mat_identity(group.dimension, group.conductor))
    elements = [identity]
    index = {identity.key: 0}
    parents: list[tuple[int, int]] = [(0, -1)]
    frontier = [0]
    while frontier:
        fresh = []
        for ei in frontier:
            base = elements[ei].entries
            for gi, g in enumerate(group.generators):
                p = UnitaryElement(mat_mul(base, g.entries))
                if p.key not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLarge(
                            f"closure exceeded the order cap {max_order}"
                        )
                    index[p.key] = len(elements)
                    elements.append(p)
                    parents.append((ei, gi))
                    fresh.append(index[p.key])
        frontier = fresh
    group.elements = elements
    group._index = index
    group._parents = parents
    return group


def conjugacy_classes(group: FiniteUnitaryGroup) -> tuple[ConjugacyClass, ...]:
    return group.classes


def centralizer_intersection(group: FiniteUnitaryGroup, a: int, b: int) -> int:
    """Order of the subgroup commuting with both elements a and b."""
    table = group.mult_table
    return sum(
        1
        for h in range(group.order)
        if table[h][a] == table[a][h] and table[h][b] == table[b][h]
    )


# -- canonical documents, digests, cache serialization ------------------------


def canonical_document(document) -> dict:
    """Re-render a group document with canonical entry literals and ordering."""
    group = parse_group(document)
    return {
        "name": group.name,
        "dimension": group.dimension,
        "conductor": group.conductor,
        "generators": [g.to_literals() for g in group.generators],
    }


def document_digest(document) -> str:
    canon = canonical_document(document)
    payload = json.dumps(canon, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()


def serialize_enumerated(group: FiniteUnitaryGroup) -> dict:
    """Cache form: the canonical document plus elements and the index table."""
    group._require_enumerated()
    return {
        "name": group.name,
        "dimension": group.dimension,
        "conductor": group.conductor,
        "generators": [g.to_literals() for g in group.generators],
        "elements": [e.to_literals() for e in group.elements],
        "mult_table": group.mult_table,
    }


def load_enumerated(doc: dict) -> FiniteUnitaryGroup:
    """Rebuild an enumerated group from its cache form; raises on corruption."""
    group = parse_group(
        {
            "name": doc["name"],
            "dimension": doc["dimension"],
            "conductor": doc["conductor"],
            "generators": doc["generators"],
        }
    )
    elements = []
    index = {}
    for li, literals in enumerate(doc["elements"]):
        rows = []
        for ri, row in enumerate(literals):
            rows.append(
                tuple(
                    parse_literal(entry, group.conductor, f"elements[{li}][{ri}]")
                    for entry in row
                )
            )
        el = UnitaryElement(tuple(rows))
        index[el.key] = li
        elements.append(el)
    table = doc["mult_table"]
    n = len(elements)
    if n == 0 or len(index) != n or len(table) != n or any(len(r) != n for r in table):
        raise ParseError("corrupt enumerated-group cache entry")
    if elements[0].key != UnitaryElement(mat_identity(group.dimension, group.conductor)).key:
        raise ParseError("cache entry does not start with the identity element")
    group.elements = elements
    group._index = index
    group._mult_table = [list(map(int, row)) for row in table]
    group._parents = None
    return group
