"""Entailment of inclusion dependencies, decided by monoid class.

For a weakly cancellative monoid, the standard rules plus weak symmetry are
sound and complete, and entailment coincides with satisfaction of the query
dependency in the additive chase of its canonical start by the weak-symmetry
closure of the assumptions.  For a weakly absorptive monoid, the standard
rules alone are sound and complete, and the classical chase decides.  Each
negative answer carries a countermodel built by the matching construction
and re-verified before it is returned; each positive answer carries a
checked derivation.

Entailment over balanced databases reduces to the unrestricted problem by
augmenting the assumptions with every arity-0 dependency between relations
mentioned in the input; countermodels then come out balanced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    ChaseBudgetExceeded,
    CountermodelError,
    DominanceFailure,
    ElementError,
    InvalidChain,
    InvalidPair,
    NoCountermodel,
    NotEventuallyPeriodic,
    UnclassifiedMonoid,
    UnsupportedMonoid,
)
from .chase import (
    ChaseConfig,
    canonical_start_classical,
    canonical_start_plus,
    classical_chase,
    plus_chase,
)
from .ind import IND, format_ind, infer_schema, satisfies, validate_ind
from .infer import (
    RULE_AXIOM,
    RULE_BALANCE,
    DerivationProof,
    RuleSystem,
    derives,
    proof_to_json,
    saturate,
)
from .kdb import KDatabase, Schema, db_add, degree, dump_database, is_balanced, make_database
from .monoid import (
    BOOLEAN,
    Element,
    MonoidSpec,
    NATURALS,
    PropertyReport,
    embed_naturals,
    find_eventual_period,
    find_wa_pair,
)

METHOD_PLUS_CHASE = "plus_chase"
METHOD_CLASSICAL_CHASE = "classical_chase"
METHOD_BALANCED = "balanced_augmentation"

CONSTRUCTION_WC_EMBED = "plus_chase_embedding"
CONSTRUCTION_SA = "sa_embedding"
CONSTRUCTION_CA = "ca_stratified"
CONSTRUCTION_WA_CASE1 = "wa_case1"
CONSTRUCTION_WA_CASE2 = "wa_case2"


@dataclass
class Countermodel:
    database: KDatabase
    construction: str
    params: dict = field(default_factory=dict)
    verified: bool = True

    def to_json(self) -> dict:
        m = self.database.monoid
        params = {}
        for key, value in self.params.items():
            if isinstance(value, (list, tuple)):
                params[key] = [m.format_element(v) for v in value]
            else:
                params[key] = m.format_element(value)
        return {
            "construction": self.construction,
            "params": params,
            "verified": self.verified,
            "database": dump_database(self.database),
        }


@dataclass
class EntailmentVerdict:
    entailed: bool
    method: str
    proof: Optional[DerivationProof] = None
    countermodel: Optional[Countermodel] = None

    def to_json(self) -> dict:
        out: dict = {"entailed": self.entailed, "method": self.method}
        if self.proof is not None:
            out["proof"] = proof_to_json(self.proof)
        if self.countermodel is not None:
            out["countermodel"] = self.countermodel.to_json()
        return out


def balance_instances(sigma: Iterable[IND], tau: IND) -> set[IND]:
    """All arity-0 dependencies between relations mentioned by the input."""
    mentioned: set[str] = set()
    for s in list(sigma) + [tau]:
        mentioned.add(s.lhs_rel)
        mentioned.add(s.rhs_rel)
    return {IND(a, (), b, ()) for a in mentioned for b in mentioned if a != b}


def _relabel_balance(proof: DerivationProof, balance: set[IND]) -> DerivationProof:
    if proof.rule == RULE_AXIOM and proof.conclusion in balance:
        return DerivationProof(RULE_BALANCE, proof.conclusion)
    if not proof.premises:
        return proof
    return DerivationProof(
        proof.rule, proof.conclusion,
        tuple(_relabel_balance(p, balance) for p in proof.premises),
        proof.indices)


def _verify(db: KDatabase, sigma: Iterable[IND], tau: IND, balanced: bool) -> bool:
    return (all(satisfies(db, s) for s in sigma)
            and not satisfies(db, tau)
            and (not balanced or is_balanced(db)))


def decide_entailment(sigma: Iterable[IND], tau: IND, m: MonoidSpec,
                      balanced: bool = False,
                      config: Optional[ChaseConfig] = None,
                      schema: Optional[Schema] = None,
                      report: Optional[PropertyReport] = None) -> EntailmentVerdict:
    """Decide whether the assumptions entail ``tau`` over databases
    annotated in ``m`` (optionally restricted to balanced databases).

    Dispatch follows the monoid's property report; pass ``report`` to
    override the declared classification of a builtin.
    """
    sigma = set(sigma)
    cfg = config or ChaseConfig()
    if schema is None:
        schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    for s in sigma | {tau}:
        validate_ind(s, schema)
    # work over the mentioned relations only, so countermodels (and the
    # balance check) ignore unrelated parts of a wider schema
    mentioned = {r for s in sigma | {tau} for r in (s.lhs_rel, s.rhs_rel)}
    schema = Schema({r: schema.attributes(r) for r in sorted(mentioned)})
    if report is None:
        try:
            report = m.classify()
        except UnsupportedMonoid as exc:
            raise UnclassifiedMonoid(f"cannot classify {m.name}: {exc}") from exc
    if m.is_finite and sum(1 for _ in m.elements()) == 1:
        raise UnsupportedMonoid("entailment requires a non-trivial monoid")

    balance_added = balance_instances(sigma, tau) - sigma if balanced else set()
    sigma_star = sigma | balance_added
    method = METHOD_BALANCED if balanced else (
        METHOD_PLUS_CHASE if report.weakly_cancellative else METHOD_CLASSICAL_CHASE)

    if report.weakly_cancellative:
        closed = saturate(sigma_star, RuleSystem.STANDARD_WS, schema)
        trace = plus_chase(canonical_start_plus(tau, schema), closed, cfg)
        if not trace.terminated:
            raise ChaseBudgetExceeded(
                "additive chase exceeded its budget on a weak-symmetry-closed set")
        entailed = satisfies(trace.result, tau)
        proof_system = RuleSystem.STANDARD_WS
    else:
        closed = saturate(sigma_star, RuleSystem.STANDARD, schema)
        result, _ = classical_chase(canonical_start_classical(tau, schema), closed)
        entailed = satisfies(result, tau)
        proof_system = RuleSystem.STANDARD

    if entailed:
        ok, proof = derives(sigma_star, tau, proof_system, schema)
        if not ok:
            raise CountermodelError(
                f"chase and saturation disagree on {format_ind(tau)}")
        if balance_added:
            proof = _relabel_balance(proof, balance_added)
        return EntailmentVerdict(True, method, proof=proof)

    if report.weakly_cancellative:
        cm = build_countermodel_wc(sigma_star, tau, m, m.some_nonzero(),
                                   config=cfg, schema=schema)
    else:
        cm = _wa_countermodel(sigma_star, tau, m, cfg, schema)
    if not _verify(cm.database, sigma, tau, balanced):
        raise CountermodelError(
            f"countermodel failed verification for {format_ind(tau)}")
    return EntailmentVerdict(False, method, countermodel=cm)


def _wa_countermodel(sigma_star: set[IND], tau: IND, m: MonoidSpec,
                     cfg: ChaseConfig, schema: Schema) -> Countermodel:
    idem = m.nonzero_idempotent()
    if idem is not None:
        chain = [idem] * (tau.arity + 1)
        return build_countermodel_ca(sigma_star, tau, m, chain, schema=schema)
    # Weakly absorptive without a nonzero idempotent: impossible for the
    # finite and builtin carriers this package can represent, but the two
    # constructions below stay available for direct use.
    pair = find_wa_pair(m)
    if pair is None:
        raise UnsupportedMonoid(
            f"no countermodel construction applies to {m.name}")
    a, b = pair
    try:
        return build_countermodel_wa_case2(sigma_star, tau, m, b, schema=schema)
    except (NotEventuallyPeriodic, UnsupportedMonoid):
        return build_countermodel_wa_case1(sigma_star, tau, m, a, b,
                                           config=cfg, schema=schema)


def build_countermodel_wc(sigma: Iterable[IND], tau: IND, m: MonoidSpec,
                          b: Element,
                          config: Optional[ChaseConfig] = None,
                          schema: Optional[Schema] = None) -> Countermodel:
    """Countermodel for a weakly cancellative target: the additive chase of
    the canonical start, with each count n re-weighted to the n-fold sum of
    the nonzero generator ``b``."""
    sigma = set(sigma)
    cfg = config or ChaseConfig()
    if schema is None:
        schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    b = m.check(b)
    if b == m.zero:
        raise ElementError("the embedding generator must be nonzero")
    closed = saturate(sigma, RuleSystem.STANDARD_WS, schema)
    trace = plus_chase(canonical_start_plus(tau, schema), closed, cfg)
    if not trace.terminated:
        raise ChaseBudgetExceeded(
            "additive chase exceeded its budget on a weak-symmetry-closed set")
    if satisfies(trace.result, tau):
        raise NoCountermodel(f"{format_ind(tau)} holds in the chased canonical start")
    weights = {
        rel: {row: embed_naturals(m, b, n) for row, n in kr.weights.items()}
        for rel, kr in trace.result.relations.items()
    }
    db = make_database(schema, m, weights)
    if not _verify(db, sigma, tau, balanced=False):
        raise CountermodelError("embedded chase result failed verification")
    return Countermodel(db, CONSTRUCTION_WC_EMBED, {"generator": b})


def build_countermodel_ca(sigma: Iterable[IND], tau: IND, m: MonoidSpec,
                          chain: Iterable[Element],
                          schema: Optional[Schema] = None) -> Countermodel:
    """Countermodel from an absorption chain a_0..a_n: chase the canonical
    start classically, then weight each tuple a_{n - degree}."""
    sigma = set(sigma)
    if schema is None:
        schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    chain = [m.check(c) for c in chain]
    n = tau.arity
    if len(chain) < n + 1:
        raise InvalidChain(f"need {n + 1} chain values for an arity-{n} dependency")
    for c in chain:
        if c == m.zero:
            raise InvalidChain("chain values must be nonzero")
    for lo, hi in zip(chain, chain[1:]):
        if m.add(lo, hi) != hi:
            raise InvalidChain(
                f"{m.format_element(lo)} + {m.format_element(hi)} "
                f"!= {m.format_element(hi)}")
    result, _ = classical_chase(canonical_start_classical(tau, schema),
                                sorted(sigma, key=format_ind))
    if satisfies(result, tau):
        raise NoCountermodel(f"{format_ind(tau)} holds in the chased canonical start")
    weights = {
        rel: {row: chain[n - degree(row)] for row in kr.weights}
        for rel, kr in result.relations.items()
    }
    db = make_database(schema, m, weights)
    if not _verify(db, sigma, tau, balanced=False):
        raise CountermodelError("stratified chase weighting failed verification")
    construction = CONSTRUCTION_SA if len(set(chain)) == 1 else CONSTRUCTION_CA
    return Countermodel(db, construction, {"chain": chain})


def _check_wa_pair(m: MonoidSpec, a: Element, b: Element) -> tuple[Element, Element]:
    a, b = m.check(a), m.check(b)
    if a == m.zero or b == m.zero:
        raise InvalidPair("both pair members must be nonzero")
    if m.add(a, b) != b:
        raise InvalidPair(
            f"{m.format_element(a)} + {m.format_element(b)} != {m.format_element(b)}")
    if m.is_finite:
        for c in m.elements():
            if m.add(b, c) == c:
                raise InvalidPair(
                    f"{m.format_element(b)} is absorbed by {m.format_element(c)}")
    return a, b


def build_countermodel_wa_case1(sigma: Iterable[IND], tau: IND, m: MonoidSpec,
                                a: Element, b: Element,
                                config: Optional[ChaseConfig] = None,
                                schema: Optional[Schema] = None) -> Countermodel:
    """Countermodel for a weakly absorptive target along an unbounded
    generator tail.

    The classically chased canonical start is split by degree: full-degree
    tuples keep the absorbed weight ``a``; the lower-degree part is chased
    classically and then additively under the weak-symmetry closure, with
    counts carried over to multiples of ``b``.  The sum of the two parts is
    verified and returned.
    """
    sigma = set(sigma)
    cfg = config or ChaseConfig()
    if schema is None:
        schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    a, b = _check_wa_pair(m, a, b)

    closed_standard = saturate(sigma, RuleSystem.STANDARD, schema)
    chased, _ = classical_chase(canonical_start_classical(tau, schema), closed_standard)
    if satisfies(chased, tau):
        raise NoCountermodel(f"{format_ind(tau)} holds in the chased canonical start")

    n = tau.arity
    full = {rel: {row for row in kr.weights if degree(row) == n}
            for rel, kr in chased.relations.items()}
    lower = {rel: {row for row in kr.weights if degree(row) < n}
             for rel, kr in chased.relations.items()}

    closed_ws = saturate(sigma, RuleSystem.STANDARD_WS, schema)
    lower_db = make_database(schema, BOOLEAN,
                             {rel: {row: 1 for row in rows} for rel, rows in lower.items()})
    lower_closed, _ = classical_chase(lower_db, closed_ws)
    counts = make_database(schema, NATURALS,
                           {rel: {row: 1 for row in kr.weights}
                            for rel, kr in lower_closed.relations.items()})
    trace = plus_chase(counts, closed_ws, cfg)
    if not trace.terminated:
        raise ChaseBudgetExceeded(
            "additive chase exceeded its budget on a weak-symmetry-closed set")

    part_a = make_database(schema, m,
                           {rel: {row: a for row in rows} for rel, rows in full.items()})
    part_b = make_database(schema, m,
                           {rel: {row: embed_naturals(m, b, k) for row, k in kr.weights.items()}
                            for rel, kr in trace.result.relations.items()})
    db = db_add(part_a, part_b)
    if not _verify(db, sigma, tau, balanced=False):
        raise CountermodelError("degree-split construction failed verification")
    return Countermodel(db, CONSTRUCTION_WA_CASE1, {"a": a, "b": b})


def build_countermodel_wa_case2(sigma: Iterable[IND], tau: IND, m: MonoidSpec,
                                b: Element,
                                schema: Optional[Schema] = None) -> Countermodel:
    """Countermodel along an eventually periodic generator tail.

    With index*b = (index+period)*b, the element d = index*b dominates every
    multiple of ``b``; full-degree tuples of the chased canonical start get
    weight ``b`` and lower-degree tuples get ``d``.  Verification is always
    attempted and its outcome recorded on the returned countermodel.
    """
    sigma = set(sigma)
    if schema is None:
        schema = infer_schema(sorted(sigma | {tau}, key=format_ind))
    b = m.check(b)
    if b == m.zero:
        raise ElementError("the generator must be nonzero")
    try:
        index, period = find_eventual_period(m, b)
    except UnsupportedMonoid as exc:
        raise NotEventuallyPeriodic(str(exc)) from exc
    d = embed_naturals(m, b, index)
    for k in range(index + period):
        c = embed_naturals(m, b, k)
        if not m.leq(c, d):
            raise DominanceFailure(
                f"{m.format_element(c)} is not below {m.format_element(d)}")

    closed_standard = saturate(sigma, RuleSystem.STANDARD, schema)
    chased, _ = classical_chase(canonical_start_classical(tau, schema), closed_standard)
    if satisfies(chased, tau):
        raise NoCountermodel(f"{format_ind(tau)} holds in the chased canonical start")

    n = tau.arity
    weights = {
        rel: {row: (b if degree(row) == n else d) for row in kr.weights}
        for rel, kr in chased.relations.items()
    }
    db = make_database(schema, m, weights)
    verified = _verify(db, sigma, tau, balanced=False)
    return Countermodel(db, CONSTRUCTION_WA_CASE2, {"b": b, "d": d}, verified=verified)
