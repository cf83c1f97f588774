"""Inclusion dependencies: syntax, parsing, and satisfaction.

An inclusion dependency ``R[A1,..,An] <= S[B1,..,Bn]`` holds in an annotated
database when, for every point, the marginal weight of R over A1..An is below
the marginal weight of S over B1..Bn in the monoid's natural order.  Arity 0
(``R[] <= S[]``) compares total weights.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    ArityMismatch,
    DuplicateAttribute,
    ParseError,
    UnknownAttribute,
)
from .kdb import KDatabase, Schema, marginalize, schema_of

_IND_RE = re.compile(
    r"^\s*(\w+)\s*\[\s*([^\[\]]*?)\s*\]\s*<=\s*(\w+)\s*\[\s*([^\[\]]*?)\s*\]\s*$")


@dataclass(frozen=True, order=True)
class IND:
    lhs_rel: str
    lhs_attrs: tuple[str, ...]
    rhs_rel: str
    rhs_attrs: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.lhs_attrs) != len(self.rhs_attrs):
            raise ArityMismatch(
                f"attribute sequences differ in length: {self.lhs_attrs} vs {self.rhs_attrs}")
        for rel, attrs in ((self.lhs_rel, self.lhs_attrs), (self.rhs_rel, self.rhs_attrs)):
            if len(attrs) != len(set(attrs)):
                raise DuplicateAttribute(f"{rel}{list(attrs)} repeats an attribute")

    @property
    def arity(self) -> int:
        return len(self.lhs_attrs)

    @property
    def is_reflexive(self) -> bool:
        return self.lhs_rel == self.rhs_rel and self.lhs_attrs == self.rhs_attrs

    def __str__(self) -> str:
        return format_ind(self)


def format_ind(sigma: IND) -> str:
    return (f"{sigma.lhs_rel}[{','.join(sigma.lhs_attrs)}] <= "
            f"{sigma.rhs_rel}[{','.join(sigma.rhs_attrs)}]")


def ind_sort_key(sigma: IND) -> str:
    return format_ind(sigma)


def _split_attrs(text: str, rel: str) -> tuple[str, ...]:
    if not text.strip():
        return ()
    parts = [p.strip() for p in text.split(",")]
    if any(not re.fullmatch(r"\w+", p) for p in parts):
        raise ParseError(f"malformed attribute list {text!r} for relation {rel}")
    return tuple(parts)


def parse_ind(text: str, schema: Optional[Schema] = None) -> IND:
    """Parse ``R[A1,..,An] <= S[B1,..,Bn]``; ``R[] <= S[]`` is the arity-0 form.

    When a schema is supplied, relations and attributes are validated
    against it.
    """
    m = _IND_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse inclusion dependency {text!r}")
    lhs_rel, lhs_raw, rhs_rel, rhs_raw = m.groups()
    sigma = IND(lhs_rel, _split_attrs(lhs_raw, lhs_rel),
                rhs_rel, _split_attrs(rhs_raw, rhs_rel))
    if schema is not None:
        validate_ind(sigma, schema)
    return sigma


def validate_ind(sigma: IND, schema: Schema) -> None:
    for rel, attrs in ((sigma.lhs_rel, sigma.lhs_attrs), (sigma.rhs_rel, sigma.rhs_attrs)):
        layout = schema.attributes(rel)
        for a in attrs:
            if a not in layout:
                raise UnknownAttribute(f"relation {rel} has no attribute {a!r}")


def inverse(sigma: IND) -> IND:
    return IND(sigma.rhs_rel, sigma.rhs_attrs, sigma.lhs_rel, sigma.lhs_attrs)


def satisfies(db: KDatabase, sigma: IND) -> bool:
    """Pointwise comparison of the two marginals under the natural order.

    Quantification runs over the union of both marginal supports; elsewhere
    the left side weighs zero and the comparison holds by positivity.
    """
    validate_ind(sigma, db.schema)
    m = db.monoid
    lhs = marginalize(db.relation(sigma.lhs_rel), sigma.lhs_attrs, m)
    rhs = marginalize(db.relation(sigma.rhs_rel), sigma.rhs_attrs, m)
    for point in set(lhs.weights) | set(rhs.weights):
        if not m.leq(lhs.weights.get(point, m.zero), rhs.weights.get(point, m.zero)):
            return False
    return True


def satisfies_all(db: KDatabase, sigmas: Iterable[IND]) -> bool:
    return all(satisfies(db, s) for s in sigmas)


def infer_schema(sigmas: Iterable[IND]) -> Schema:
    """Minimal schema mentioning exactly the relations and attributes of the
    given dependencies, in first-seen order."""
    relations: dict[str, list[str]] = {}
    for s in sigmas:
        for rel, attrs in ((s.lhs_rel, s.lhs_attrs), (s.rhs_rel, s.rhs_attrs)):
            seen = relations.setdefault(rel, [])
            for a in attrs:
                if a not in seen:
                    seen.append(a)
    return schema_of(relations)


def parse_ind_list(text: str, schema: Optional[Schema] = None) -> list[IND]:
    """Parse a newline-separated dependency list; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            out.append(parse_ind(stripped, schema))
    return out


def load_ind_file(path: str, schema: Optional[Schema] = None) -> list[IND]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ind_list(fh.read(), schema)
