from fractions import Fraction

import pytest

from kindb.errors import (
    InvalidChain,
    InvalidPair,
    NoCountermodel,
    NotEventuallyPeriodic,
    UnsupportedMonoid,
)
from kindb.entail import (
    CONSTRUCTION_CA,
    CONSTRUCTION_SA,
    CONSTRUCTION_WA_CASE1,
    CONSTRUCTION_WA_CASE2,
    CONSTRUCTION_WC_EMBED,
    balance_instances,
    build_countermodel_ca,
    build_countermodel_wa_case1,
    build_countermodel_wa_case2,
    build_countermodel_wc,
    decide_entailment,
)
from kindb.ind import parse_ind, satisfies
from kindb.kdb import degree, is_balanced
from kindb.monoid import (
    BOOLEAN,
    MAX_NATURALS,
    NATURALS,
    NONNEG_RATIONALS,
    monogenic,
)

MONO23 = monogenic(2, 3)

C1 = parse_ind("Expense[proj,year] <= Budget[proj,year]")
C2 = parse_ind("Budget[proj] <= Grant[proj]")
C3 = parse_ind("Grant[proj] <= Budget[proj]")
C4 = parse_ind("Grant[] <= Budget[]")

DICH_SIGMA = {parse_ind("R[A] <= S[B]"), parse_ind("S[] <= R[]")}
DICH_TAU = parse_ind("S[B] <= R[A]")


def test_weak_symmetry_entailment_over_naturals():
    verdict = decide_entailment({C2, C4}, C3, NATURALS)
    assert verdict.entailed
    assert verdict.proof is not None and verdict.proof.rule == "weak_symmetry"
    assert verdict.method == "plus_chase"


def test_reflexive_always_entailed():
    tau = parse_ind("R[A] <= R[A]")
    for m in (NATURALS, BOOLEAN, MAX_NATURALS, MONO23, NONNEG_RATIONALS):
        assert decide_entailment(set(), tau, m).entailed


def test_dichotomy_witness():
    entailed_monoids = [NATURALS, NONNEG_RATIONALS]
    refuted_monoids = [BOOLEAN, MAX_NATURALS, MONO23]
    for m in entailed_monoids:
        assert decide_entailment(DICH_SIGMA, DICH_TAU, m).entailed
    for m in refuted_monoids:
        verdict = decide_entailment(DICH_SIGMA, DICH_TAU, m)
        assert not verdict.entailed
        cm = verdict.countermodel
        assert cm is not None and cm.verified
        assert all(satisfies(cm.database, s) for s in DICH_SIGMA)
        assert not satisfies(cm.database, DICH_TAU)


def test_boolean_countermodel_shape():
    # same asymmetry as the warehouse/orders table: one point lives only on
    # the larger side
    verdict = decide_entailment(DICH_SIGMA, DICH_TAU, BOOLEAN)
    db = verdict.countermodel.database
    lhs = db.relation("S").support()
    rhs = db.relation("R").support()
    assert ("1",) in {r for r in lhs} and ("1",) not in rhs


def test_entailment_is_schema_insensitive_to_extra_attributes():
    from kindb.kdb import schema_of

    wide = schema_of({"R": ("A", "Z"), "S": ("B", "W")})
    assert decide_entailment(DICH_SIGMA, DICH_TAU, NATURALS, schema=wide).entailed
    verdict = decide_entailment(DICH_SIGMA, DICH_TAU, BOOLEAN, schema=wide)
    assert not verdict.entailed and verdict.countermodel.verified


def test_unmentioned_relations_do_not_break_balanced_countermodels():
    from kindb.kdb import schema_of

    wide = schema_of({"R": ("A",), "S": ("B",), "T": ("C", "D")})
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    verdict = decide_entailment(sigma, tau, BOOLEAN, balanced=True, schema=wide)
    assert not verdict.entailed
    db = verdict.countermodel.database
    assert set(db.schema.relations) == {"R", "S"}
    assert is_balanced(db)


def test_balanced_entailment_symmetry():
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    # unbalanced: not entailed even over the naturals
    assert not decide_entailment(sigma, tau, NATURALS).entailed
    # balanced: weak symmetry kicks in through the balance axioms
    verdict = decide_entailment(sigma, tau, NATURALS, balanced=True)
    assert verdict.entailed and verdict.method == "balanced_augmentation"
    rules = set()

    def collect(node):
        rules.add(node.rule)
        for p in node.premises:
            collect(p)

    collect(verdict.proof)
    assert "balance" in rules and "weak_symmetry" in rules


def test_balanced_entailment_wa_countermodel_is_balanced():
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    verdict = decide_entailment(sigma, tau, BOOLEAN, balanced=True)
    assert not verdict.entailed
    assert is_balanced(verdict.countermodel.database)


def test_balanced_reduction_equivalence():
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    for m in (NATURALS, BOOLEAN, MONO23):
        direct = decide_entailment(sigma, tau, m, balanced=True)
        star = sigma | balance_instances(sigma, tau)
        reduced = decide_entailment(star, tau, m, balanced=False)
        assert direct.entailed == reduced.entailed


def test_balance_axiom_only_valid_when_balanced():
    tau = parse_ind("R[] <= S[]")
    assert decide_entailment(set(), tau, NATURALS, balanced=True).entailed
    verdict = decide_entailment(set(), tau, NATURALS, balanced=False)
    assert not verdict.entailed and verdict.countermodel.verified


def test_wc_countermodel_embedding():
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    identity = build_countermodel_wc(sigma, tau, NATURALS, 1)
    assert identity.construction == CONSTRUCTION_WC_EMBED
    halved = build_countermodel_wc(sigma, tau, NONNEG_RATIONALS, Fraction(1, 2))
    for rel, kr in identity.database.relations.items():
        for row, n in kr.weights.items():
            assert halved.database.relation(rel).weights[row] == Fraction(n, 2)
    assert all(satisfies(halved.database, s) for s in sigma)
    assert not satisfies(halved.database, tau)


def test_wc_countermodel_requires_refutable_tau():
    with pytest.raises(NoCountermodel):
        build_countermodel_wc({C2, C4}, C3, NATURALS, 1)


def test_ca_countermodel_on_boolean():
    sigma = {parse_ind("R[A] <= S[B]")}
    tau = parse_ind("S[B] <= R[A]")
    cm = build_countermodel_ca(sigma, tau, BOOLEAN, [1, 1])
    assert cm.construction == CONSTRUCTION_SA
    assert all(satisfies(cm.database, s) for s in sigma)
    assert not satisfies(cm.database, tau)


def test_ca_countermodel_stratified_chain_on_monogenic():
    # 1 + 2 = 3 != 2, so [1, 2] is not a chain; 2 is absorbed by nothing;
    # use the valid consecutive chain 1 -> absorbing idempotent 3? 1+3 = 4 != 3.
    # the only absorptions into an element are (3,2), (3,3), (3,4): chain [3, 3]
    cm = build_countermodel_ca(DICH_SIGMA, DICH_TAU, MONO23, [3, 3])
    assert cm.construction == CONSTRUCTION_SA
    assert cm.verified
    with pytest.raises(InvalidChain):
        build_countermodel_ca(DICH_SIGMA, DICH_TAU, MONO23, [1, 2])
    with pytest.raises(InvalidChain):
        build_countermodel_ca(DICH_SIGMA, DICH_TAU, MONO23, [3])
    with pytest.raises(InvalidChain):
        build_countermodel_ca(DICH_SIGMA, DICH_TAU, MONO23, [0, 3])


def test_ca_countermodel_mixed_chain():
    # 3 + 2 = 2 in the monogenic quotient, so [3, 2] is a genuine two-step chain
    cm = build_countermodel_ca(DICH_SIGMA, DICH_TAU, MONO23, [3, 2])
    assert cm.construction == CONSTRUCTION_CA
    assert cm.verified


def test_ca_rejects_derivable_tau():
    with pytest.raises(NoCountermodel):
        build_countermodel_ca({parse_ind("R[A] <= S[B]")},
                              parse_ind("R[A] <= S[B]"), BOOLEAN, [1, 1])


def test_wa_case1_trivial_sigma():
    # empty assumptions: the initial tuple keeps the absorbed weight; the
    # arity-0 reflexivity seed pads in an all-star companion at one generator
    tau = parse_ind("S[B] <= R[A]")
    cm = build_countermodel_wa_case1(set(), tau, MONO23, 3, 2)
    assert cm.construction == CONSTRUCTION_WA_CASE1
    assert cm.verified
    db = cm.database
    assert db.relation("S").weights == {("1",): 3, ("*",): 2}
    assert db.relation("R").weights == {}
    assert not satisfies(db, tau)


def test_wa_case1_with_lower_degree_part():
    sigma = {parse_ind("S[B1] <= R[A1]")}
    tau = parse_ind("S[B1,B2] <= R[A1,A2]")
    cm = build_countermodel_wa_case1(sigma, tau, MONO23, 3, 2)
    assert cm.verified
    db = cm.database
    assert db.relation("S").weights[("1", "2")] == 3
    # the chased companion in R carries one copy of the generator
    assert db.relation("R").weights[("1", "*")] == 2
    assert all(satisfies(db, s) for s in sigma)
    assert not satisfies(db, tau)


def test_wa_case1_rejects_bad_pairs():
    with pytest.raises(InvalidPair):
        build_countermodel_wa_case1(set(), DICH_TAU, MONO23, 1, 2)  # 1+2 = 3 != 2
    with pytest.raises(InvalidPair):
        build_countermodel_wa_case1(set(), DICH_TAU, MONO23, 3, 3)  # 3 absorbed by 3
    with pytest.raises(InvalidPair):
        build_countermodel_wa_case1(set(), DICH_TAU, NATURALS, 1, 1)
    with pytest.raises(InvalidPair):
        build_countermodel_wa_case1(set(), DICH_TAU, MONO23, 0, 2)


def test_wa_case1_rejects_derivable_tau():
    with pytest.raises(NoCountermodel):
        build_countermodel_wa_case1({DICH_TAU}, DICH_TAU, MONO23, 3, 2)


def test_wa_case2_monogenic():
    cm = build_countermodel_wa_case2(DICH_SIGMA, DICH_TAU, MONO23, 1)
    assert cm.construction == CONSTRUCTION_WA_CASE2
    assert cm.params["b"] == 1 and cm.params["d"] == 2
    assert cm.verified
    db = cm.database
    for rel, kr in db.relations.items():
        for row, w in kr.weights.items():
            assert w == (1 if degree(row) == DICH_TAU.arity else 2)


def test_wa_case2_boolean_degenerate():
    cm = build_countermodel_wa_case2(DICH_SIGMA, DICH_TAU, BOOLEAN, 1)
    assert cm.params["b"] == 1 and cm.params["d"] == 1
    assert cm.verified
    assert all(w == 1 for kr in cm.database.relations.values() for w in kr.weights.values())


def test_wa_case2_errors():
    from kindb.errors import ElementError

    with pytest.raises(ElementError):
        build_countermodel_wa_case2(DICH_SIGMA, DICH_TAU, BOOLEAN, 0)
    with pytest.raises(NotEventuallyPeriodic):
        build_countermodel_wa_case2(DICH_SIGMA, DICH_TAU, NATURALS, 1)
    with pytest.raises(NoCountermodel):
        build_countermodel_wa_case2({DICH_TAU}, DICH_TAU, MONO23, 1)


def test_classification_override():
    wa_report = BOOLEAN.classify()
    # the override drives dispatch: under the absorptive reading the
    # weak-symmetry conclusion is no longer derivable, and the countermodel
    # constructions rightly refuse a monoid without absorption witnesses
    with pytest.raises(UnsupportedMonoid):
        decide_entailment(DICH_SIGMA, DICH_TAU, NATURALS, report=wa_report)
    # derivable queries stay entailed whatever the dispatch
    member = parse_ind("R[A] <= S[B]")
    verdict = decide_entailment({member}, member, NATURALS, report=wa_report)
    assert verdict.entailed and verdict.method == "classical_chase"


def test_trivial_monoid_rejected():
    from kindb.monoid import TableMonoid

    trivial = TableMonoid(["0"], {("0", "0"): "0"}, "0")
    with pytest.raises(UnsupportedMonoid):
        decide_entailment(DICH_SIGMA, DICH_TAU, trivial)


def test_verdict_json():
    verdict = decide_entailment({C2, C4}, C3, NATURALS)
    doc = verdict.to_json()
    assert doc["entailed"] is True and "proof" in doc
    verdict2 = decide_entailment(DICH_SIGMA, DICH_TAU, BOOLEAN)
    doc2 = verdict2.to_json()
    assert doc2["entailed"] is False
    assert doc2["countermodel"]["verified"] is True
    assert doc2["countermodel"]["construction"] == CONSTRUCTION_SA
