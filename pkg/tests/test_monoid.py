from fractions import Fraction

import pytest

from kindb.errors import (
    ElementError,
    InvalidMonoidTable,
    NotSubtractable,
    ParseError,
    UnsupportedMonoid,
)
from kindb.monoid import (
    BOOLEAN,
    MAX_NATURALS,
    NATURALS,
    NONNEG_RATIONALS,
    UNBOUNDED,
    PropertyReport,
    TableMonoid,
    embed_naturals,
    find_eventual_period,
    find_wa_pair,
    monogenic,
    parse_monoid,
    table_from_dict,
)

MONO23 = monogenic(2, 3)

ALL_BUILTINS = [BOOLEAN, NATURALS, NONNEG_RATIONALS, MAX_NATURALS, MONO23]


def mono_reduce(n, index, period):
    # independent reduction: walk the congruence by subtracting whole periods
    while n >= index + period:
        n -= period
    return n


def test_add_basics():
    assert NATURALS.add(2, 3) == 5
    assert BOOLEAN.add(1, 1) == 1
    assert MAX_NATURALS.add(4, 2) == 4
    assert NONNEG_RATIONALS.add(Fraction(1, 2), 1) == Fraction(3, 2)


def test_monogenic_add_reduces_by_congruence():
    assert MONO23.add(4, 3) == mono_reduce(7, 2, 3) == 4
    assert MONO23.add(3, 2) == mono_reduce(5, 2, 3) == 2
    for a in MONO23.elements():
        for b in MONO23.elements():
            assert MONO23.add(a, b) == mono_reduce(a + b, 2, 3)


def test_add_commutative_associative_identity():
    for m in (BOOLEAN, MONO23):
        els = list(m.elements())
        for a in els:
            assert m.add(a, m.zero) == a
            for b in els:
                assert m.add(a, b) == m.add(b, a)
                for c in els:
                    assert m.add(m.add(a, b), c) == m.add(a, m.add(b, c))


def test_add_rejects_foreign_elements():
    with pytest.raises(ElementError):
        NATURALS.add(2, -1)
    with pytest.raises(ElementError):
        BOOLEAN.add(0, 2)
    with pytest.raises(ElementError):
        MONO23.add(5, 0)


def test_natural_leq():
    assert NATURALS.leq(2, 5)
    assert not NATURALS.leq(5, 2)
    assert BOOLEAN.leq(0, 1) and not BOOLEAN.leq(1, 0)
    # no c with max(3, c) = 2: exhaustive over c <= 3
    assert not any(max(3, c) == 2 for c in range(4))
    assert not MAX_NATURALS.leq(3, 2)
    for m in ALL_BUILTINS:
        a = m.some_nonzero()
        assert m.leq(a, a)
        assert m.leq(m.zero, a)


def test_monogenic_leq_by_witness_search():
    # 2 <= 4 <= 2 in the cycle, an order that is total but not antisymmetric
    assert MONO23.leq(2, 4) and MONO23.leq(4, 2)
    for a in MONO23.elements():
        for b in MONO23.elements():
            expected = any(MONO23.add(a, c) == b for c in MONO23.elements())
            assert MONO23.leq(a, b) == expected


def test_monus():
    assert NATURALS.monus(5, 2) == 3
    assert NONNEG_RATIONALS.monus(Fraction(3, 2), Fraction(1, 2)) == 1
    with pytest.raises(NotSubtractable):
        NATURALS.monus(2, 5)
    with pytest.raises(UnsupportedMonoid):
        BOOLEAN.monus(1, 1)
    with pytest.raises(UnsupportedMonoid):
        MONO23.monus(4, 2)


def test_monus_round_trip():
    cases = [(NATURALS, 7, 3), (NATURALS, 4, 4),
             (NONNEG_RATIONALS, Fraction(9, 4), Fraction(1, 3))]
    for m, a, b in cases:
        assert m.add(b, m.monus(a, b)) == m.check(a)


def test_classify_builtins():
    b = BOOLEAN.classify()
    assert b.weakly_absorptive and b.self_absorptive and not b.weakly_cancellative
    assert b.provenance == "declared"
    n = NATURALS.classify()
    assert n.weakly_cancellative and not n.weakly_absorptive
    q = NONNEG_RATIONALS.classify()
    assert q.weakly_cancellative and q.natural_order_total
    x = MAX_NATURALS.classify()
    assert x.self_absorptive and x.k_absorptive_max == UNBOUNDED


def test_classify_monogenic_computed():
    r = MONO23.classify()
    assert r.provenance == "computed"
    assert r.positive
    assert r.weakly_absorptive and not r.weakly_cancellative
    # 3 is idempotent: 3 + 3 = 6 which reduces to 3
    assert MONO23.add(3, 3) == 3
    assert r.self_absorptive and r.countably_absorptive
    assert r.k_absorptive_max == UNBOUNDED
    assert r.natural_order_total
    assert not r.natural_order_antisymmetric


def test_property_report_invariants_enforced():
    with pytest.raises(ValueError):
        PropertyReport(True, True, True, False, 0, False, True, True, "declared")
    with pytest.raises(ValueError):
        PropertyReport(True, False, True, True, UNBOUNDED, False, True, True, "declared")


def test_find_wa_pair_boolean_none():
    # the only nonzero candidate b = 1 absorbs itself, violating the second condition
    assert find_wa_pair(BOOLEAN) is None


def test_find_wa_pair_monogenic():
    # independent exhaustive scan
    els = list(MONO23.elements())
    expected = None
    for a in els:
        if expected:
            break
        for b in els:
            if a and b and MONO23.add(a, b) == b and all(MONO23.add(b, c) != c for c in els):
                expected = (a, b)
                break
    assert expected == (3, 2)
    assert find_wa_pair(MONO23) == (3, 2)


def test_find_wa_pair_trivial_table_none():
    trivial = TableMonoid(["0"], {("0", "0"): "0"}, "0")
    assert find_wa_pair(trivial) is None


def test_find_wa_pair_infinite_unsupported():
    with pytest.raises(UnsupportedMonoid):
        find_wa_pair(MAX_NATURALS)


def test_find_eventual_period():
    assert find_eventual_period(MONO23, 1) == (2, 3)
    assert find_eventual_period(BOOLEAN, 1) == (1, 1)
    assert find_eventual_period(MAX_NATURALS, 4) == (1, 1)
    assert find_eventual_period(MONO23, 2) == (1, 3)
    with pytest.raises(UnsupportedMonoid):
        find_eventual_period(NATURALS, 2)
    with pytest.raises(UnsupportedMonoid):
        find_eventual_period(NONNEG_RATIONALS, Fraction(1, 2))
    with pytest.raises(ElementError):
        find_eventual_period(BOOLEAN, 0)


def test_embed_naturals():
    assert embed_naturals(NATURALS, 1, 7) == 7
    assert embed_naturals(NATURALS, 3, 4) == 12
    assert embed_naturals(BOOLEAN, 1, 5) == 1
    assert embed_naturals(BOOLEAN, 1, 0) == 0
    assert embed_naturals(NONNEG_RATIONALS, Fraction(1, 2), 3) == Fraction(3, 2)
    assert embed_naturals(MONO23, 1, 9) == mono_reduce(9, 2, 3)


def test_embedding_is_an_order_embedding():
    for m, b in ((NATURALS, 2), (NONNEG_RATIONALS, Fraction(2, 3))):
        values = [embed_naturals(m, b, n) for n in range(101)]
        assert len(set(values)) == 101
        for n in range(0, 101, 7):
            for k in range(0, 101 - n, 11):
                assert embed_naturals(m, b, n + k) == m.add(values[n], values[k])
                assert m.leq(values[n], values[n + k])
                if k:
                    assert not m.leq(values[n + k], values[n])


def test_table_monoid_valid():
    spec = {
        "elements": ["0", "a"],
        "zero": "0",
        "op": {"0,0": "0", "0,a": "a", "a,a": "a"},
    }
    m = table_from_dict(spec)
    assert m.add("a", "a") == "a"
    r = m.classify()
    assert r.positive and r.self_absorptive
    assert m.nonzero_idempotent() == "a"


def test_table_monoid_rejects_broken_axioms():
    with pytest.raises(InvalidMonoidTable, match="identity"):
        TableMonoid(["0", "a"], {("0", "0"): "0", ("0", "a"): "0", ("a", "a"): "a"}, "0")
    with pytest.raises(InvalidMonoidTable, match="positivity"):
        TableMonoid(["0", "a"], {("0", "0"): "0", ("0", "a"): "a", ("a", "a"): "0"}, "0")
    with pytest.raises(InvalidMonoidTable, match="missing"):
        TableMonoid(["0", "a"], {("0", "0"): "0", ("a", "a"): "a"}, "0")
    # a,b and b,a disagree
    with pytest.raises(InvalidMonoidTable, match="commutativity"):
        TableMonoid(
            ["0", "a", "b"],
            {("0", "0"): "0", ("0", "a"): "a", ("0", "b"): "b",
             ("a", "b"): "a", ("b", "a"): "b", ("a", "a"): "a", ("b", "b"): "b"},
            "0")


def test_table_monoid_associativity_check():
    # (a+a)+b = b+b = a while a+(a+b) = a+b = b
    with pytest.raises(InvalidMonoidTable, match="associativity"):
        TableMonoid(
            ["0", "a", "b"],
            {("0", "0"): "0", ("0", "a"): "a", ("0", "b"): "b",
             ("a", "a"): "b", ("a", "b"): "b", ("b", "b"): "a"},
            "0")


def test_table_size_cap():
    els = [str(i) for i in range(5)]
    op = {}
    for i in range(5):
        for j in range(5):
            op[(els[i], els[j])] = els[min(max(i, j), 4)]
    TableMonoid(els, op, "0")  # max semantics, fine
    with pytest.raises(InvalidMonoidTable, match="cap"):
        TableMonoid(els, op, "0", max_elements=3)


def test_parse_monoid_names():
    assert parse_monoid("boolean") is BOOLEAN
    assert parse_monoid("naturals") is NATURALS
    assert parse_monoid("monogenic:2,3") == MONO23
    assert parse_monoid({"elements": ["0"], "zero": "0", "op": {"0,0": "0"}}).is_finite
    with pytest.raises(ParseError):
        parse_monoid("tropical")
    with pytest.raises(ParseError):
        parse_monoid("monogenic:x")


def test_element_codecs_round_trip():
    cases = [
        (NATURALS, "17"),
        (NONNEG_RATIONALS, "3/2"),
        (NONNEG_RATIONALS, "4"),
        (BOOLEAN, "1"),
        (MONO23, "4"),
    ]
    for m, text in cases:
        assert m.format_element(m.parse_element(text)) == text


def test_fig1_style_implication_chain():
    for m in ALL_BUILTINS:
        r = m.classify()
        assert r.weakly_absorptive == (not r.weakly_cancellative)
        if r.self_absorptive:
            assert r.countably_absorptive
        if r.countably_absorptive:
            assert r.weakly_absorptive
            assert r.k_absorptive_max == UNBOUNDED
