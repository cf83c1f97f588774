"""Shared generators and grid definitions for the property and acceptance suites."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from kindb.ind import IND, parse_ind
from kindb.kdb import KDatabase, Schema, make_database, schema_of
from kindb.monoid import (
    BOOLEAN,
    MAX_NATURALS,
    NATURALS,
    NONNEG_RATIONALS,
    MonoidSpec,
    monogenic,
)

MONO23 = monogenic(2, 3)

BUILTIN_MONOIDS = [BOOLEAN, NATURALS, NONNEG_RATIONALS, MAX_NATURALS, MONO23]

WEIGHT_POOLS = {
    "boolean": [1],
    "naturals": [1, 2, 3, 5],
    "nonneg_rationals": [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(3)],
    "max_naturals": [1, 2, 3],
    "monogenic:2,3": [1, 2, 3, 4],
}


def random_database(rng: random.Random, schema: Schema, m: MonoidSpec,
                    consts=("a", "b", "c"), max_rows: int = 4) -> KDatabase:
    pool = WEIGHT_POOLS[m.name]
    weights = {}
    for rel, attrs in schema.relations.items():
        rows = {}
        for _ in range(rng.randint(0, max_rows)):
            row = tuple(rng.choice(consts) for _ in attrs)
            rows[row] = rng.choice(pool)
        weights[rel] = rows
    return make_database(schema, m, weights)


def make_balanced(rng: random.Random, db: KDatabase) -> KDatabase:
    """Pad each relation with a fresh row so all totals agree.

    The target total is any element at least as large as every relation
    total; the padding weight is a witness for the corresponding gap.
    """
    m = db.monoid
    totals = {rel: kr.total(m) for rel, kr in db.relations.items()}
    if m.is_finite:
        target = None
        for cand in m.elements():
            if all(m.leq(t, cand) for t in totals.values()):
                target = cand
                break
        if target is None:
            raise AssertionError(f"no dominating total in {m.name}")
    else:
        target = max(totals.values())  # total numeric order for the builtins
    weights = {}
    for rel, kr in db.relations.items():
        rows = dict(kr.weights)
        if totals[rel] != target:
            if m.is_finite:
                gap = next(c for c in m.elements() if m.add(totals[rel], c) == target)
            elif m.name == "max_naturals":
                gap = target
            else:
                gap = m.monus(target, totals[rel])
            if gap != m.zero:
                pad = tuple(f"pad{rng.randint(0, 10 ** 6)}" for _ in kr.attributes)
                rows[pad] = m.add(rows.get(pad, m.zero), gap)
        weights[rel] = rows
    out = make_database(db.schema, m, weights)
    return out


def ind_universe(schema: Schema, max_arity: int) -> list[IND]:
    """Every dependency over the schema with distinct attribute sequences of
    arity up to the bound."""
    seqs = {}
    for rel, attrs in schema.relations.items():
        seqs[rel] = [seq for length in range(max_arity + 1)
                     for seq in itertools.permutations(attrs, length)]
    out = []
    for lhs_rel in sorted(schema.relations):
        for rhs_rel in sorted(schema.relations):
            for lhs in seqs[lhs_rel]:
                for rhs in seqs[rhs_rel]:
                    if len(lhs) == len(rhs):
                        out.append(IND(lhs_rel, lhs, rhs_rel, rhs))
    return out


# -- the entailment-equivalence grid -----------------------------------------

GRID_SCHEMA = schema_of({"R": ("A", "B"), "S": ("C", "D", "E")})

GRID_SIGMA_POOL = [parse_ind(t) for t in (
    "R[A] <= S[C]",
    "S[C] <= R[A]",
    "R[A,B] <= S[C,D]",
    "S[C,D] <= R[A,B]",
    "R[A] <= R[B]",
    "S[C,D] <= S[D,E]",
    "R[] <= S[]",
    "S[] <= R[]",
    "S[D] <= R[A]",
    "R[A,B] <= R[B,A]",
)]

GRID_TAUS = ind_universe(GRID_SCHEMA, max_arity=2)


def grid_sigmas(max_size: int = 3) -> list[frozenset]:
    out = []
    for size in range(max_size + 1):
        for combo in itertools.combinations(GRID_SIGMA_POOL, size):
            out.append(frozenset(combo))
    return out
