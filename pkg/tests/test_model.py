import random

import pytest
from hypothesis import given, strategies as st

from aspexplain.model import (
    AnswerSet,
    Atom,
    CardinalityExpression,
    Program,
    Rule,
    Term,
    is_answer_set,
    reduct,
    satisfies_card,
    supporting_rules,
    supports,
    verify_answer_set,
)
from aspexplain.parser import parse_program

from conftest import answer_sets, random_program


def atoms(*names):
    return tuple(Atom(n) for n in names)


a, b, c, d, e, p, q = atoms("a", "b", "c", "d", "e", "p", "q")


class TestTerm:
    def test_variable_detection(self):
        assert Term("Xv").is_variable
        assert not Term("abc").is_variable
        assert not Term('"ADRB1"').is_variable
        assert not Term("3").is_variable

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError):
            Term("")

    def test_unquoted(self):
        assert Term('"ADRB1"').unquoted == "ADRB1"
        assert Term("x").unquoted == "x"


class TestAtom:
    def test_text(self):
        assert Atom("p", (Term("a"), Term("1"))).text == "p(a,1)"
        assert Atom("p").text == "p"

    def test_structural_identity(self):
        assert Atom("p", (Term("a"),)) == Atom("p", (Term("a"),))


class TestRule:
    def test_equality_ignores_source_text(self):
        r1 = Rule(a, (b,), source_text="a :- b")
        r2 = Rule(a, (b,), source_text="a:-b")
        assert r1 == r2
        assert len({r1, r2}) == 1

    def test_text_forms(self):
        assert Rule(a, (b, c)).text == "a :- b, c"
        assert Rule(a).text == "a"
        assert Rule(None, (b,)).text == ":- b"

    def test_constraint_and_fact_flags(self):
        assert Rule(None, (b,)).is_constraint
        assert Rule(a).is_fact


class TestProgram:
    def test_deduplicated_keeps_first_source(self):
        P = Program((Rule(a, (b,), source_text="first"),
                     Rule(a, (b,), source_text="second")))
        D = P.deduplicated()
        assert len(D) == 1
        assert D.rules[0].display == "first"

    def test_herbrand_base_ground(self):
        P = parse_program("p(x) :- q(x). q(x).")
        assert P.herbrand_base == {Atom("p", (Term("x"),)),
                                   Atom("q", (Term("x"),))}

    def test_herbrand_base_nonground(self):
        P = parse_program("q(x). q(y). p(Xv) :- q(Xv).")
        assert len(P.herbrand_base) == 4


class TestAnswerSet:
    def test_rejects_non_ground(self):
        with pytest.raises(ValueError, match="non-ground atom"):
            AnswerSet.of([Atom("p", (Term("Xv"),))])

    def test_membership(self):
        X = AnswerSet.of([a, b])
        assert a in X and c not in X and len(X) == 2


class TestSatisfiesCard:
    def test_within_bounds(self):
        C = CardinalityExpression(1, 2, (b, c))
        assert satisfies_card({a, b, c, d}, C)

    def test_zero_bounds_empty_set(self):
        assert satisfies_card(set(), CardinalityExpression(0, 0, (p,)))

    def test_lower_bound_unmet(self):
        assert not satisfies_card({p, q}, CardinalityExpression(3, None, (p, q)))

    def test_non_ground_rejected(self):
        C = CardinalityExpression(0, None, (Atom("p", (Term("Xv"),)),))
        with pytest.raises(ValueError, match="non-ground cardinality"):
            satisfies_card(set(), C)

    def test_bad_bounds_rejected(self):
        with pytest.raises(ValueError):
            CardinalityExpression(3, 1, (p,))


class TestReduct:
    def test_drops_blocked_rules(self):
        P = parse_program("p :- not q.")
        assert reduct(P, {p}).rules == (Rule(p),)

    def test_identity_without_negation(self):
        P = parse_program("p.")
        assert reduct(P, set()).rules == (Rule(p),)

    def test_strips_negative_bodies(self):
        P = parse_program("a :- b, not c. c.")
        R = reduct(P, {c})
        assert R.rules == (Rule(c),)
        assert all(not r.body_neg for r in R.rules)


class TestIsAnswerSet:
    def test_positive_case(self):
        P = parse_program("p :- not q.")
        assert is_answer_set(P, {p})

    def test_unsatisfied_rule(self):
        P = parse_program("p :- not q.")
        ok, reason = verify_answer_set(P, set())
        assert not ok and "unsatisfied rule" in reason

    def test_not_minimal(self):
        P = parse_program("p :- not q.")
        ok, reason = verify_answer_set(P, {p, q})
        assert not ok and "not subset-minimal" in reason

    def test_cap(self):
        facts = ".\n".join("p%d" % i for i in range(25)) + "."
        P = parse_program(facts)
        with pytest.raises(ValueError, match="too large"):
            is_answer_set(P, P.herbrand_base)

    def test_cardinality_rejected(self):
        P = parse_program("a :- 1 {b; c} 2. b. c.")
        with pytest.raises(ValueError, match="cardinality"):
            is_answer_set(P, {a, b, c})

    def test_agrees_with_oracle(self):
        rng = random.Random(7)
        for _ in range(50):
            P = random_program(rng, max_atoms=5, max_rules=8)
            expected = set(answer_sets(P))
            base = sorted(P.herbrand_base)
            for mask in range(2 ** len(base)):
                I = frozenset(x for i, x in enumerate(base) if mask >> i & 1)
                assert is_answer_set(P, I) == (I in expected)


class TestSupports:
    X41 = frozenset([a, b, c, d])

    def test_plain_support(self):
        assert supports(Rule(a, (d,)), a, self.X41, frozenset())

    def test_blocked_by_negation(self):
        assert not supports(Rule(a, (d,), (b,)), a, self.X41, frozenset())

    def test_blocked_by_exclusion(self):
        assert not supports(Rule(b, (c,)), b, self.X41, frozenset([c]))

    def test_shrinking_exclusion_preserves_support(self):
        r = Rule(a, (d,))
        Z = frozenset([b, c])
        assert supports(r, a, self.X41, Z)
        assert supports(r, a, self.X41, frozenset([b]))
        assert supports(r, a, self.X41, frozenset())


class TestSupportingRules:
    def test_example_root(self):
        P = parse_program("a :- b, c. a :- d. d. b :- c. c.")
        rs = supporting_rules(P, a, frozenset([a, b, c, d]), frozenset())
        assert [r.text for r in rs] == ["a :- b, c", "a :- d"]

    def test_single_fact(self):
        P = parse_program("a :- b, c. a :- d. d. b :- c. c.")
        rs = supporting_rules(P, c, frozenset([a, b, c, d]), frozenset())
        assert [r.text for r in rs] == ["c"]

    def test_no_matching_head(self):
        P = parse_program("a :- b.")
        assert supporting_rules(P, q, frozenset([a, b, q]), frozenset()) == ()


@given(st.sets(st.sampled_from([a, b, c, d, e])),
       st.sets(st.sampled_from([a, b, c, d, e])),
       st.integers(min_value=0, max_value=3))
def test_lower_bound_monotone_under_supersets(x1, extra, lower):
    C = CardinalityExpression(lower, None, (a, b, c))
    if satisfies_card(x1, C):
        assert satisfies_card(x1 | extra, C)
