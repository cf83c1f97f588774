"""Brute-force semantic falsifier for entailment claims.

Enumerates annotated databases over a finite search space: rows drawn from a
given active domain, at most ``max_tuples`` rows per relation, and weights
from an explicit pool.  Returns the first database (in enumeration order)
that satisfies the assumptions and violates the query, or None when the
bounded space holds no counterexample.  A None answer refutes nothing
outside the searched space; the oracle is a falsifier, not a decider.

Enumeration order is deterministic: per-relation supports ordered by size
then lexicographically, weight assignments lexicographically over the sorted
nonzero pool, so a found counterexample is the least one in this order and
stable across runs.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Optional

from .entail import Countermodel
from .errors import CountermodelError, SearchSpaceTooLarge
from .ind import IND, format_ind, infer_schema, satisfies, validate_ind
from .kdb import Schema, make_database
from .monoid import Element, MonoidSpec

CONSTRUCTION_ENUMERATION = "enumeration"


def _support_choices(candidates: list[tuple], max_tuples: int) -> list[tuple]:
    out = []
    for size in range(min(max_tuples, len(candidates)) + 1):
        out.extend(itertools.combinations(candidates, size))
    return out


def _space_size(candidate_counts: list[int], pool_size: int, max_tuples: int) -> int:
    total = 1
    for count in candidate_counts:
        per_rel = sum(math.comb(count, k) * pool_size ** k
                      for k in range(min(max_tuples, count) + 1))
        total *= per_rel
    return total


def brute_force_entails(sigma: Iterable[IND], tau: IND, m: MonoidSpec, *,
                        adom: Iterable[str], weight_pool: Iterable[Element],
                        max_tuples: int, schema: Optional[Schema] = None,
                        max_candidates: int = 2_000_000) -> Optional[Countermodel]:
    """Search the bounded space for a database satisfying ``sigma`` and
    violating ``tau``."""
    return _search(sigma, tau, m, adom=adom, weight_pool=weight_pool,
                   max_tuples=max_tuples, schema=schema,
                   max_candidates=max_candidates, balanced=False)


def brute_force_balanced_entails(sigma: Iterable[IND], tau: IND, m: MonoidSpec, *,
                                 adom: Iterable[str], weight_pool: Iterable[Element],
                                 max_tuples: int, schema: Optional[Schema] = None,
                                 max_candidates: int = 2_000_000) -> Optional[Countermodel]:
    """As :func:`brute_force_entails`, restricted to balanced databases."""
    return _search(sigma, tau, m, adom=adom, weight_pool=weight_pool,
                   max_tuples=max_tuples, schema=schema,
                   max_candidates=max_candidates, balanced=True)


def _search(sigma, tau, m, *, adom, weight_pool, max_tuples, schema,
            max_candidates, balanced) -> Optional[Countermodel]:
    sigma = sorted(set(sigma), key=format_ind)
    if schema is None:
        schema = infer_schema(sigma + [tau])
    for s in sigma + [tau]:
        validate_ind(s, schema)

    constants = sorted(str(c) for c in set(adom))
    pool = sorted({m.check(w) for w in weight_pool if m.check(w) != m.zero},
                  key=m.format_element)
    rels = sorted(schema.relations)
    candidates = {rel: sorted(itertools.product(constants, repeat=len(schema.relations[rel])))
                  for rel in rels}

    size = _space_size([len(candidates[r]) for r in rels], len(pool), max_tuples)
    if size > max_candidates:
        raise SearchSpaceTooLarge(
            f"{size} candidate databases exceed the cap of {max_candidates}")
    if not pool:
        return None

    # positions of each dependency side within the relation layouts
    checks = []
    for s in sigma + [tau]:
        checks.append((
            s,
            s.lhs_rel, schema.positions(s.lhs_rel, s.lhs_attrs),
            s.rhs_rel, schema.positions(s.rhs_rel, s.rhs_attrs),
        ))

    # projection groups are shared across weight assignments and reused
    # across support combinations
    group_cache: dict = {}

    def groups(rel: str, rows: tuple, positions: tuple[int, ...]) -> dict:
        key = (rel, rows, positions)
        cached = group_cache.get(key)
        if cached is None:
            cached = {}
            for i, row in enumerate(rows):
                cached.setdefault(tuple(row[p] for p in positions), []).append(i)
            group_cache[key] = cached
        return cached

    zero = m.zero

    def holds(lhs_groups, rhs_groups, lhs_weights, rhs_weights) -> bool:
        for point, lhs_rows in lhs_groups.items():
            lhs_total = zero
            for i in lhs_rows:
                lhs_total = m.add(lhs_total, lhs_weights[i])
            rhs_total = zero
            for i in rhs_groups.get(point, ()):
                rhs_total = m.add(rhs_total, rhs_weights[i])
            if not m.leq(lhs_total, rhs_total):
                return False
        return True

    support_lists = [_support_choices(candidates[rel], max_tuples) for rel in rels]
    for supports in itertools.product(*support_lists):
        by_rel = dict(zip(rels, supports))
        prepared = [
            (s,
             groups(lrel, by_rel[lrel], lpos), lrel,
             groups(rrel, by_rel[rrel], rpos), rrel)
            for s, lrel, lpos, rrel, rpos in checks
        ]
        weight_axes = [itertools.product(pool, repeat=len(by_rel[rel])) for rel in rels]
        for assignment in itertools.product(*weight_axes):
            weights = dict(zip(rels, assignment))
            if balanced:
                totals = [m.add_all(weights[rel]) for rel in rels]
                if any(t != totals[0] for t in totals[1:]):
                    continue
            ok = True
            for s, lhs_groups, lrel, rhs_groups, rrel in prepared[:-1]:
                if not holds(lhs_groups, rhs_groups, weights[lrel], weights[rrel]):
                    ok = False
                    break
            if not ok:
                continue
            s, lhs_groups, lrel, rhs_groups, rrel = prepared[-1]
            if holds(lhs_groups, rhs_groups, weights[lrel], weights[rrel]):
                continue  # tau satisfied, not a counterexample
            db = make_database(schema, m, {
                rel: dict(zip(by_rel[rel], weights[rel])) for rel in rels
            })
            # re-verify through the marginalization path before returning
            if (any(not satisfies(db, member) for member in sigma)
                    or satisfies(db, tau)):
                raise CountermodelError(
                    "incremental check and marginal semantics disagree")
            return Countermodel(db, CONSTRUCTION_ENUMERATION, {})
    return None
