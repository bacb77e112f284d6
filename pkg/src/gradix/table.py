"""Relation schemes, tuples, ranked data tables, and the fundamental
relational operations.

A ranked data table (RDT) maps tuples on a fixed relation scheme to degrees
from one residuated lattice; only tuples with nonzero score are stored, so
finiteness of the answer set is a structural invariant.  Tables are
immutable, every operation returns a new table, and all operations are pure.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Mapping

from .errors import (
    LatticeMismatchError,
    NotJoinableError,
    SchemeError,
    TypeRegistryError,
)
from .lattice import ResiduatedLattice

#: A relation scheme is a finite set of attribute names.
Scheme = frozenset

EMPTY_SCHEME: Scheme = frozenset()


def scheme_of_names(*names: str) -> Scheme:
    return frozenset(names)


class Tuple:
    """Immutable map from the attributes of a scheme to values.

    Values are equality-only scalars (int, str, float); the engine never
    orders or computes with them.  The empty tuple is the unique tuple on
    the empty scheme.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, assignment: Mapping[str, object] | Iterable = ()):
        if isinstance(assignment, Mapping):
            items = tuple(sorted(assignment.items()))
        else:
            items = tuple(sorted(assignment))
        self._items = items
        self._hash = hash(items)

    @property
    def scheme(self) -> Scheme:
        return frozenset(a for a, _ in self._items)

    def __getitem__(self, attr: str):
        for a, v in self._items:
            if a == attr:
                return v
        raise KeyError(attr)

    def items(self):
        return self._items

    def as_dict(self) -> dict:
        return dict(self._items)

    def project(self, scheme: Scheme) -> "Tuple":
        """Restriction of the assignment to a subscheme."""
        if not scheme <= self.scheme:
            raise SchemeError(f"cannot project {self} onto {sorted(scheme)}")
        return Tuple((a, v) for a, v in self._items if a in scheme)

    def joinable(self, other: "Tuple") -> bool:
        """True when the two tuples agree on every shared attribute."""
        mine = dict(self._items)
        return all(a not in mine or mine[a] == v for a, v in other._items)

    def join(self, other: "Tuple") -> "Tuple":
        """Set union of the assignments; requires joinability."""
        mine = dict(self._items)
        for a, v in other._items:
            if a in mine and mine[a] != v:
                raise NotJoinableError(f"{self} and {other} disagree on {a}")
            mine[a] = v
        return Tuple(mine)

    def __eq__(self, other):
        return isinstance(other, Tuple) and other._items == self._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{a}: {v!r}" for a, v in self._items)
        return "⟨" + inner + "⟩"


EMPTY_TUPLE = Tuple()


def tuple_project(r: Tuple, scheme: Scheme) -> Tuple:
    return r.project(scheme)


def tuple_joinable(r1: Tuple, r2: Tuple) -> bool:
    return r1.joinable(r2)


def tuple_join(r1: Tuple, r2: Tuple) -> Tuple:
    return r1.join(r2)


class RankedDataTable:
    """Finite map from tuples on a scheme to nonzero degrees."""

    __slots__ = ("scheme", "lattice", "rows")

    def __init__(self, scheme: Scheme, lattice: ResiduatedLattice, rows=()):
        self.scheme = frozenset(scheme)
        self.lattice = lattice
        stored = {}
        items = rows.items() if isinstance(rows, Mapping) else rows
        for t, d in items:
            if t.scheme != self.scheme:
                raise SchemeError(
                    f"tuple {t} is not on scheme {sorted(self.scheme)}"
                )
            d = lattice.check(d)
            if not lattice.is_bottom(d):
                stored[t] = d
        self.rows = stored

    def score(self, t: Tuple):
        return self.rows.get(t, self.lattice.bottom)

    def support(self):
        return self.rows.keys()

    def is_non_ranked(self) -> bool:
        """All stored scores are exactly the top degree."""
        return all(d == self.lattice.top for d in self.rows.values())

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows.items())

    def __eq__(self, other):
        return (
            isinstance(other, RankedDataTable)
            and other.scheme == self.scheme
            and other.lattice == self.lattice
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.scheme, frozenset(self.rows.items())))

    def approx_equals(self, other: "RankedDataTable") -> bool:
        """Pointwise equality under the lattice's degree tolerance."""
        if other.scheme != self.scheme or other.lattice != self.lattice:
            return False
        lat = self.lattice
        for t in self.rows.keys() | other.rows.keys():
            if not lat.eq(self.score(t), other.score(t)):
                return False
        return True

    def max_deviation(self, other: "RankedDataTable") -> float:
        """Largest pointwise degree difference over the union of supports."""
        lat = self.lattice
        dev = 0.0
        for t in self.rows.keys() | other.rows.keys():
            dev = max(dev, lat.degree_diff(self.score(t), other.score(t)))
        return dev

    def __repr__(self):
        cells = ", ".join(f"{t}:{d}" for t, d in sorted_rows(self))
        return f"RDT[{','.join(sorted(self.scheme))}]{{{cells}}}"


def _same_lattice(*tables: RankedDataTable) -> ResiduatedLattice:
    lat = tables[0].lattice
    for t in tables[1:]:
        if t.lattice != lat:
            raise LatticeMismatchError(
                f"operands over {t.lattice!r} and {lat!r} cannot be combined"
            )
    return lat


def _same_scheme(*tables: RankedDataTable) -> Scheme:
    scheme = tables[0].scheme
    for t in tables[1:]:
        if t.scheme != scheme:
            raise SchemeError(
                f"operands on schemes {sorted(t.scheme)} and {sorted(scheme)} must agree"
            )
    return scheme


def dee(lattice: ResiduatedLattice, degree) -> RankedDataTable:
    """Table on the empty scheme scoring the empty tuple with `degree`."""
    return RankedDataTable(EMPTY_SCHEME, lattice, {EMPTY_TUPLE: degree})


def empty(lattice: ResiduatedLattice, scheme: Scheme) -> RankedDataTable:
    """The empty table 0_R."""
    return RankedDataTable(scheme, lattice, {})


def union(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    lat = _same_lattice(d1, d2)
    scheme = _same_scheme(d1, d2)
    rows = {t: lat.join(d1.score(t), d2.score(t)) for t in d1.rows.keys() | d2.rows.keys()}
    return RankedDataTable(scheme, lat, rows)


def intersection(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    lat = _same_lattice(d1, d2)
    scheme = _same_scheme(d1, d2)
    rows = {t: lat.meet(d1.score(t), d2.score(t)) for t in d1.rows.keys() & d2.rows.keys()}
    return RankedDataTable(scheme, lat, rows)


def natural_join(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    """(D1 ⋈ D2)(rst) = D1(rs) ⊗ D2(st); ⊗ acts as the conjunctive aggregator."""
    lat = _same_lattice(d1, d2)
    common = d1.scheme & d2.scheme
    by_common: dict[Tuple, list] = {}
    for t2, b in d2.rows.items():
        by_common.setdefault(t2.project(common), []).append((t2, b))
    rows = {}
    for t1, a in d1.rows.items():
        for t2, b in by_common.get(t1.project(common), ()):
            rows[t1.join(t2)] = lat.otimes(a, b)
    return RankedDataTable(d1.scheme | d2.scheme, lat, rows)


def projection(d: RankedDataTable, scheme: Scheme) -> RankedDataTable:
    """(π_S D)(s) = ⋁ {D(r) | r(S) = s}; suprema interpret 'there is'."""
    scheme = frozenset(scheme)
    if not scheme <= d.scheme:
        raise SchemeError(
            f"projection target {sorted(scheme)} not within {sorted(d.scheme)}"
        )
    lat = d.lattice
    rows: dict[Tuple, object] = {}
    for t, a in d.rows.items():
        s = t.project(scheme)
        prev = rows.get(s)
        rows[s] = a if prev is None else lat.join(prev, a)
    return RankedDataTable(scheme, lat, rows)


def semijoin(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    """π_R(D1 ⋈ D2); the algebraic form of "some φ is ψ" queries."""
    return projection(natural_join(d1, d2), d1.scheme)


def difference_graded(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    """(D1 ∖ D2)(r) = D1(r) ⊗ (D2(r) → 0).

    On the two-element lattice this is exactly set difference; on graded
    lattices it lacks several laws a difference would be expected to have,
    so the engine only builds classic composed divisions from it.
    """
    lat = _same_lattice(d1, d2)
    scheme = _same_scheme(d1, d2)
    rows = {
        t: lat.otimes(a, lat.residuum(d2.score(t), lat.bottom))
        for t, a in d1.rows.items()
    }
    return RankedDataTable(scheme, lat, rows)


def nabla(d: RankedDataTable) -> RankedDataTable:
    """Support indicator: nonzero scores become 1."""
    lat = d.lattice
    return RankedDataTable(d.scheme, lat, {t: lat.top for t in d.rows})


def delta(d: RankedDataTable) -> RankedDataTable:
    """Kernel indicator: scores equal to 1 stay 1, everything else drops.

    On float lattices scores within the degree tolerance of 1 count as 1,
    absorbing drift from ⊗ chains.
    """
    lat = d.lattice
    return RankedDataTable(
        d.scheme, lat, {t: lat.top for t, a in d.rows.items() if lat.is_top(a)}
    )


def residuum_with_range(
    d1: RankedDataTable, d2: RankedDataTable, rng: RankedDataTable
) -> RankedDataTable:
    """Row r gets rng(r) ⊗ (D1(r) → D2(r)); support stays inside rng's."""
    lat = _same_lattice(d1, d2, rng)
    scheme = _same_scheme(d1, d2, rng)
    rows = {
        t: lat.otimes(g, lat.residuum(d1.score(t), d2.score(t)))
        for t, g in rng.rows.items()
    }
    return RankedDataTable(scheme, lat, rows)


class DatabaseInstance:
    """Named map from relation symbols to tables sharing one lattice."""

    def __init__(self, lattice: ResiduatedLattice, tables: Mapping[str, RankedDataTable] = ()):
        self.lattice = lattice
        self._tables: dict[str, RankedDataTable] = {}
        items = tables.items() if isinstance(tables, Mapping) else tables
        for name, tab in items:
            self._bind(name, tab)

    def _bind(self, name: str, tab: RankedDataTable):
        if tab.lattice != self.lattice:
            raise LatticeMismatchError(f"table {name!r} uses a different lattice")
        if name in self._tables:
            raise SchemeError(f"relation symbol {name!r} already bound")
        self._tables[name] = tab

    def table(self, name: str) -> RankedDataTable:
        from .errors import UnboundSymbolError

        try:
            return self._tables[name]
        except KeyError:
            raise UnboundSymbolError(f"relation symbol {name!r} is not bound") from None

    def symbols(self):
        return sorted(self._tables)

    def tables(self):
        for name in self.symbols():
            yield name, self._tables[name]

    def __contains__(self, name):
        return name in self._tables

    def with_table(self, name: str, tab: RankedDataTable) -> "DatabaseInstance":
        """A widened copy with one more symbol bound."""
        inst = DatabaseInstance(self.lattice, self._tables)
        inst._bind(name, tab)
        return inst


class AttributeRegistry:
    """Session-wide attribute typing: one type per attribute name."""

    TYPES = ("integer", "text", "decimal")
    _ALIASES = {"int": "integer", "integer": "integer", "str": "text",
                "text": "text", "decimal": "decimal", "float": "decimal"}
    _PARSERS = {"integer": int, "text": str, "decimal": float}

    def __init__(self):
        self._types: dict[str, str] = {}

    def declare(self, attr: str, type_name: str) -> None:
        try:
            canonical = self._ALIASES[type_name.lower()]
        except KeyError:
            raise TypeRegistryError(f"unknown attribute type {type_name!r}") from None
        existing = self._types.get(attr)
        if existing is not None and existing != canonical:
            raise TypeRegistryError(
                f"attribute {attr!r} already declared {existing}, cannot redeclare {canonical}"
            )
        self._types[attr] = canonical

    def type_of(self, attr: str) -> str | None:
        """Declared type of the attribute, None when undeclared."""
        return self._types.get(attr)

    def parse_value(self, attr: str, text: str):
        ty = self.type_of(attr) or "text"
        try:
            return self._PARSERS[ty](text)
        except ValueError:
            raise TypeRegistryError(
                f"value {text!r} is not a valid {ty} for {attr!r}"
            ) from None


def sorted_rows(d: RankedDataTable):
    """Rows ordered by descending rank, then lexicographic tuple order."""
    attrs = sorted(d.scheme)
    lat = d.lattice

    def key(item):
        t, a = item
        return (-_numeric(lat.sort_key(a)), tuple(_ordkey(t[x]) for x in attrs))

    return sorted(d.rows.items(), key=key)


def _numeric(x):
    return float(x)


def _ordkey(v):
    # values within one attribute share a type; the type tag keeps mixed
    # tables sortable rather than raising
    return (type(v).__name__, v)


def write_csv(d: RankedDataTable, out) -> None:
    """Serialize: header of sorted attribute names plus a final rank column."""
    attrs = sorted(d.scheme)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(attrs + ["rank"])
    for t, a in sorted_rows(d):
        writer.writerow([_value_to_text(t[x]) for x in attrs] + [d.lattice.format_degree(a)])


def table_to_csv(d: RankedDataTable) -> str:
    buf = io.StringIO()
    write_csv(d, buf)
    return buf.getvalue()


def _value_to_text(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


def read_csv(
    text_or_file,
    lattice: ResiduatedLattice,
    registry: AttributeRegistry,
    types: Mapping[str, str] | None = None,
) -> RankedDataTable:
    """Parse a CSV table.

    The header names the attributes; an optional final `rank` column carries
    the degree (default: top).  `types` declares attribute types, enforced
    through the session registry.
    """
    if isinstance(text_or_file, str):
        text_or_file = io.StringIO(text_or_file)
    reader = csv.reader(text_or_file)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemeError("CSV input has no header row") from None
    header = [h.strip() for h in header]
    has_rank = bool(header) and header[-1] == "rank"
    attrs = header[:-1] if has_rank else header
    if len(set(attrs)) != len(attrs):
        raise SchemeError(f"duplicate attribute in CSV header {header}")
    for a, ty in (types or {}).items():
        registry.declare(a, ty)
    rows = {}
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise SchemeError(f"CSV row {row} does not match header {header}")
        t = Tuple({a: registry.parse_value(a, cell.strip()) for a, cell in zip(attrs, row)})
        d = lattice.parse_degree(row[-1].strip()) if has_rank else lattice.top
        rows[t] = d
    return RankedDataTable(frozenset(attrs), lattice, rows)
