"""Annotated relations and databases.

A K-relation maps rows to nonzero monoid weights (finite support; a missing
row weighs zero).  Rows are plain tuples of constant strings in the
relation's attribute order.  The constant ``*`` is reserved for the chase
and rejected in user input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateAttribute,
    MonoidMismatch,
    ParseError,
    SchemaMismatch,
    StarConstantError,
    UnknownAttribute,
    UnknownRelation,
)
from .monoid import BOOLEAN, Element, MonoidSpec, parse_monoid

Row = tuple[str, ...]

STAR = "*"


@dataclass(frozen=True)
class Schema:
    """Relation names mapped to their ordered attribute tuples."""

    relations: dict[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        for rel, attrs in self.relations.items():
            if len(attrs) != len(set(attrs)):
                raise DuplicateAttribute(f"relation {rel} repeats an attribute")

    def attributes(self, rel: str) -> tuple[str, ...]:
        try:
            return self.relations[rel]
        except KeyError:
            raise UnknownRelation(f"unknown relation {rel!r}") from None

    def positions(self, rel: str, attrs: Iterable[str]) -> tuple[int, ...]:
        """Index of each requested attribute within the relation's row layout."""
        layout = self.attributes(rel)
        out = []
        for a in attrs:
            try:
                out.append(layout.index(a))
            except ValueError:
                raise UnknownAttribute(f"relation {rel} has no attribute {a!r}") from None
        return tuple(out)


def schema_of(relations: Mapping[str, Iterable[str]]) -> Schema:
    return Schema({rel: tuple(attrs) for rel, attrs in relations.items()})


@dataclass
class KRelation:
    """Finite-support weight assignment over rows of a fixed width."""

    attributes: tuple[str, ...]
    weights: dict[Row, Element] = field(default_factory=dict)

    def support(self) -> set[Row]:
        return set(self.weights)

    def total(self, m: MonoidSpec) -> Element:
        return m.add_all(self.weights.values())


@dataclass
class KDatabase:
    schema: Schema
    monoid: MonoidSpec
    relations: dict[str, KRelation]

    def relation(self, name: str) -> KRelation:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownRelation(f"unknown relation {name!r}") from None

    def copy(self) -> "KDatabase":
        return KDatabase(
            self.schema,
            self.monoid,
            {r: KRelation(kr.attributes, dict(kr.weights)) for r, kr in self.relations.items()},
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, KDatabase)
            and self.schema == other.schema
            and self.monoid == other.monoid
            and {r: kr.weights for r, kr in self.relations.items()}
            == {r: kr.weights for r, kr in other.relations.items()}
        )


def make_database(schema: Schema, monoid: MonoidSpec,
                  weights: Mapping[str, Mapping[Row, Element]] | None = None) -> KDatabase:
    """Build a database, normalizing away zero weights."""
    weights = weights or {}
    for rel in weights:
        schema.attributes(rel)
    relations = {}
    for rel, attrs in schema.relations.items():
        cleaned: dict[Row, Element] = {}
        for row, w in (weights.get(rel) or {}).items():
            if len(row) != len(attrs):
                raise SchemaMismatch(f"row {row} does not fit relation {rel}{attrs}")
            w = monoid.check(w)
            if w != monoid.zero:
                cleaned[tuple(row)] = w
        relations[rel] = KRelation(attrs, cleaned)
    return KDatabase(schema, monoid, relations)


def degree(row: Row) -> int:
    """Number of positions holding a value other than the star constant."""
    return sum(1 for v in row if v != STAR)


def marginalize(rel: KRelation, attrs: Iterable[str], m: MonoidSpec) -> KRelation:
    """Aggregate weights over all rows agreeing on ``attrs``.

    The result is keyed in the order of the query sequence, not the storage
    order, so positional comparison between different relations works.
    """
    attrs = tuple(attrs)
    positions = []
    for a in attrs:
        try:
            positions.append(rel.attributes.index(a))
        except ValueError:
            raise UnknownAttribute(f"no attribute {a!r} in {rel.attributes}") from None
    out: dict[Row, Element] = {}
    for row, w in rel.weights.items():
        key = tuple(row[i] for i in positions)
        prior = out.get(key)
        out[key] = w if prior is None else m.add(prior, w)
    out = {k: v for k, v in out.items() if v != m.zero}
    return KRelation(attrs, out)


def marginal_at(rel: KRelation, positions: tuple[int, ...], point: Row,
                m: MonoidSpec) -> Element:
    """Weight of one marginal point, by direct summation."""
    total = m.zero
    for row, w in rel.weights.items():
        if all(row[i] == v for i, v in zip(positions, point)):
            total = m.add(total, w)
    return total


def support(db: KDatabase) -> KDatabase:
    """The boolean-weighted database of nonzero rows."""
    return make_database(
        db.schema,
        BOOLEAN,
        {rel: {row: 1 for row in kr.weights} for rel, kr in db.relations.items()},
    )


def db_add(a: KDatabase, b: KDatabase) -> KDatabase:
    """Pointwise sum of two databases over the same schema and monoid."""
    if a.schema != b.schema:
        raise SchemaMismatch("cannot add databases over different schemas")
    if a.monoid != b.monoid:
        raise MonoidMismatch("cannot add databases over different monoids")
    m = a.monoid
    merged: dict[str, dict[Row, Element]] = {}
    for rel in a.schema.relations:
        out = dict(a.relations[rel].weights)
        for row, w in b.relations[rel].weights.items():
            prior = out.get(row)
            out[row] = w if prior is None else m.add(prior, w)
        merged[rel] = out
    return make_database(a.schema, m, merged)


def is_balanced(db: KDatabase) -> bool:
    """True iff every relation carries the same total weight."""
    totals = [kr.total(db.monoid) for kr in db.relations.values()]
    return all(t == totals[0] for t in totals[1:])


def adom(db: KDatabase) -> set[str]:
    values: set[str] = set()
    for kr in db.relations.values():
        for row in kr.weights:
            values.update(row)
    return values


# -- JSON interchange ----------------------------------------------------------

def load_database(obj: Union[dict, str], allow_star: bool = False) -> KDatabase:
    """Parse the database interchange format.

    ``{"monoid": name-or-table, "schema": {"R": ["A"]},
       "relations": {"R": [{"tuple": {"A": "a"}, "weight": "5"}]}}``

    Weights are strings parsed per monoid.  The star constant is rejected
    unless ``allow_star`` is set (set when reloading chase output).
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ParseError("database document must be a JSON object")
    try:
        monoid = parse_monoid(obj["monoid"])
        schema = schema_of(obj["schema"])
    except KeyError as exc:
        raise ParseError(f"database document is missing {exc}") from None
    weights: dict[str, dict[Row, Element]] = {}
    for rel, rows in (obj.get("relations") or {}).items():
        attrs = schema.attributes(rel)
        rel_weights: dict[Row, Element] = {}
        for entry in rows:
            try:
                mapping = entry["tuple"]
                raw_weight = entry["weight"]
            except (KeyError, TypeError):
                raise ParseError(f"malformed row entry in relation {rel}: {entry!r}") from None
            if set(mapping) != set(attrs):
                raise ParseError(
                    f"row for {rel} must assign exactly the attributes {list(attrs)}")
            row = tuple(str(mapping[a]) for a in attrs)
            if not allow_star and STAR in row:
                raise StarConstantError(
                    f"the constant {STAR!r} is reserved and cannot appear in input data")
            w = monoid.parse_element(str(raw_weight))
            prior = rel_weights.get(row)
            rel_weights[row] = w if prior is None else monoid.add(prior, w)
        weights[rel] = rel_weights
    return make_database(schema, monoid, weights)


def load_database_file(path: str) -> KDatabase:
    with open(path, "r", encoding="utf-8") as fh:
        return load_database(json.load(fh))


def dump_database(db: KDatabase) -> dict:
    from .monoid import TableMonoid

    monoid_field: Union[str, dict]
    if isinstance(db.monoid, TableMonoid):
        monoid_field = db.monoid.as_dict()
    else:
        monoid_field = db.monoid.name
    return {
        "monoid": monoid_field,
        "schema": {rel: list(attrs) for rel, attrs in sorted(db.schema.relations.items())},
        "relations": {
            rel: [
                {"tuple": dict(zip(kr.attributes, row)),
                 "weight": db.monoid.format_element(w)}
                for row, w in sorted(kr.weights.items())
            ]
            for rel, kr in sorted(db.relations.items())
        },
    }
