from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from strategies import NAMES, classical_formulas, credences, formulas
from trivalent.consequence import ConditionalNotAllowed, Sequent, entails_c, entails_ss, entails_u, is_theorem_c, parse_sequent
from trivalent.formula import BOT, TOP, And, Cond, Not, Or, parse, random_formula
from trivalent.probability import (
    Credence,
    CredenceError,
    UndefinedOdds,
    ZeroProbability,
    c_probabilistic_countermodel,
    check_adams,
    conditional_probability,
    decimal_odds,
    find_credence,
    mcgee_demo,
    nested_total_probability,
    partition,
    probability,
    random_credence,
    search_probabilistic_countermodel,
    ss_probabilistic_countermodel,
    total_probability,
    triviality_witness,
)
from trivalent.semantics import Mode, Valuation, value_column

F = Fraction


def _nowhere_classical(f, c):
    return partition(f, c).indeterminate_mass == 1


def _equality_condition(a, b, c):
    """No world of the support makes both true, and both are 1/2 at the same
    worlds, which are not all of the mass."""
    ca, cb = value_column(a, c.atoms, mode=c.mode), value_column(b, c.atoms, mode=c.mode)
    rows = c.rows()
    disjoint = not any(ca[r] == 2 and cb[r] == 2 for r in rows)
    same_gaps = all((ca[r] == 1) == (cb[r] == 1) for r in rows)
    return disjoint and same_gaps and not _nowhere_classical(a, c)


uniform_ab = Credence.uniform(["a", "b"])


def cr(weights, atoms=("a", "b"), mode=Mode.BIVALENT):
    return Credence.of(atoms, mode, weights)


class TestCredence:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(CredenceError, match="sum"):
            cr({"a=1,b=1": "1/2"})

    def test_negative_weight(self):
        with pytest.raises(CredenceError):
            cr({"a=1,b=1": "3/2", "a=0,b=0": "-1/2"})

    def test_world_must_cover_atoms(self):
        with pytest.raises(CredenceError):
            cr({"a=1": 1})
        with pytest.raises(CredenceError):
            cr({"a=1,c=0": 1})

    def test_bivalent_rejects_half(self):
        with pytest.raises(CredenceError):
            cr({"a=1/2,b=0": 1})

    def test_float_weights_rejected(self):
        with pytest.raises(CredenceError):
            cr({"a=1,b=0": 0.5, "a=0,b=0": 0.5})

    def test_normalize(self):
        c = Credence.of(("a", "b"), Mode.BIVALENT, {"a=1,b=0": 3, "a=0,b=0": 1}, normalize=True)
        assert c[Valuation.of({"a": 2, "b": 0}, Mode.BIVALENT)] == F(3, 4)

    def test_json_round_trip(self, tmp_path):
        c = cr({"a=1,b=0": "9/10", "a=0,b=0": "1/10"})
        path = tmp_path / "c.json"
        c.dump(path)
        assert json.loads(path.read_text()) == {
            "atoms": ["a", "b"],
            "mode": "bivalent",
            "weights": {"a=0,b=0": "1/10", "a=1,b=0": "9/10"},
        }
        assert Credence.load(path) == c

    def test_json_errors(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(CredenceError):
            Credence.load(bad)
        with pytest.raises(CredenceError):
            Credence.from_dict({"atoms": ["a"]})
        with pytest.raises(CredenceError):
            Credence.from_dict({"atoms": ["a"], "mode": "fuzzy", "weights": {"a=1": "1"}})
        with pytest.raises(CredenceError):
            Credence.from_dict({"atoms": ["a"], "weights": {"a:1": "1"}})


class TestPartition:
    def test_single_atom(self):
        p = partition(parse("a"), Credence.uniform(["a"]))
        assert (p.true_mass, p.indeterminate_mass, p.false_mass) == (F(1, 2), 0, F(1, 2))

    def test_conditional_uniform(self):
        p = partition(parse("a -> b"), uniform_ab)
        assert (p.true_mass, p.indeterminate_mass, p.false_mass) == (F(1, 4), F(1, 2), F(1, 4))

    def test_bottom_to_top_is_indeterminate(self):
        p = partition(parse("F -> T"), uniform_ab)
        assert (p.true_mass, p.indeterminate_mass, p.false_mass) == (0, 1, 0)

    def test_unassigned_atom(self):
        with pytest.raises(KeyError):
            partition(parse("z"), uniform_ab)


class TestProbability:
    def test_examples(self):
        assert probability(parse("a -> b"), uniform_ab) == F(1, 2)
        assert probability(parse("F -> T"), uniform_ab) == 1
        c = Credence.of(["a"], Mode.BIVALENT, {"a=1": "2/3", "a=0": "1/3"})
        assert probability(parse("~a"), c) == F(1, 3)

    def test_decimal_odds(self):
        assert decimal_odds(parse("a -> b"), uniform_ab) == 2
        assert decimal_odds(parse("T"), uniform_ab) == 1
        assert decimal_odds(parse("a & ~a"), uniform_ab) == math.inf
        with pytest.raises(UndefinedOdds):
            decimal_odds(parse("F -> a"), uniform_ab)

    @given(formulas(), credences(mode=Mode.TRIVALENT))
    @settings(max_examples=200, deadline=None)
    def test_matches_oracle(self, f, c):
        assert probability(f, c) == oracles.probability(f, c)

    @given(formulas(), credences(mode=Mode.TRIVALENT))
    @settings(max_examples=200, deadline=None)
    def test_odds_are_inverse_probability(self, f, c):
        part = partition(f, c)
        assume(part.true_mass + part.false_mass > 0)
        odds = decimal_odds(f, c)
        assert (0 if odds == math.inf else 1 / odds) == probability(f, c)

    @given(formulas(), formulas(), credences(mode=Mode.TRIVALENT))
    @settings(max_examples=300, deadline=None)
    def test_axioms(self, a, b, c):
        assert probability(TOP, c) == 1 and probability(BOT, c) == 0
        if not _nowhere_classical(a, c):
            assert probability(a, c) == 1 - probability(Not(a), c)
        assert probability(Or(a, b), c) <= probability(a, c) + probability(b, c)

    def test_complement_needs_a_classical_world(self):
        # both a sentence and its negation get the degenerate value 1
        c = Credence.of(["a"], Mode.TRIVALENT, {"a=1/2": 1})
        assert probability(parse("a"), c) == probability(parse("~a"), c) == 1

    def test_subadditivity_equality_only_if(self):
        rng = random.Random(8)
        hits = 0
        for _ in range(3000):
            mode = rng.choice(list(Mode))
            c = random_credence(NAMES, mode, rng, 6)
            a, b = random_formula(rng, NAMES, 3), random_formula(rng, NAMES, 3)
            pa, pb = probability(a, c), probability(b, c)
            if pa > 0 and pb > 0 and probability(Or(a, b), c) == pa + pb:
                hits += 1
                ca, cb = value_column(a, NAMES, mode=mode), value_column(b, NAMES, mode=mode)
                for row in c.rows():
                    assert not (ca[row] == 2 and cb[row] == 2)
                    assert (ca[row] == 1) == (cb[row] == 1)
        assert hits > 20

    @given(formulas(), formulas(), credences(mode=Mode.TRIVALENT))
    @settings(max_examples=300, deadline=None)
    def test_subadditivity_equality_if(self, a, b, c):
        if _equality_condition(a, b, c):
            assert probability(Or(a, b), c) == probability(a, c) + probability(b, c)

    @given(classical_formulas, classical_formulas, classical_formulas, credences())
    @settings(max_examples=200, deadline=None)
    def test_subadditivity_equality_same_antecedent(self, x, y, z, c):
        # incompatible consequents under one antecedent meet the condition
        a, b = Cond(x, And(y, z)), Cond(x, Not(y))
        assume(probability(x, c) > 0)
        assert _equality_condition(a, b, c)
        assert probability(Or(a, b), c) == probability(a, c) + probability(b, c)

    @given(formulas(), credences(mode=Mode.TRIVALENT), st.integers(2, 9))
    @settings(max_examples=150, deadline=None)
    def test_rescaling_invariance(self, f, c, k):
        scaled = Credence.of(c.atoms, c.mode, {v: w * k for v, w in c.weights.items()}, normalize=True)
        assert probability(f, scaled) == probability(f, c)

    def test_and_drop_failure_reachable(self):
        x, y = parse("(a -> b) & c"), parse("a -> b")
        found = find_credence((x, y), lambda ms: ms[0].p > ms[1].p, mode=Mode.BIVALENT)
        assert found is not None
        c, (px, py) = found
        assert probability(x, c) == px > py == probability(y, c)


class TestConditionalProbability:
    c = cr({"a=1,b=1": "3/10", "a=1,b=0": "2/10", "a=0,b=1": "1/10", "a=0,b=0": "4/10"})

    def test_ratio(self):
        assert conditional_probability(parse("b"), parse("a"), self.c) == F(3, 5)
        assert conditional_probability(parse("a"), parse("a"), self.c) == 1
        assert conditional_probability(parse("b"), TOP, self.c) == probability(parse("b"), self.c)

    def test_errors(self):
        with pytest.raises(ZeroProbability):
            conditional_probability(parse("b"), parse("a & ~a"), self.c)
        with pytest.raises(ConditionalNotAllowed):
            conditional_probability(parse("a -> b"), parse("a"), self.c)
        tri = Credence.uniform(["a", "b"], Mode.TRIVALENT)
        with pytest.raises(CredenceError):
            conditional_probability(parse("b"), parse("a"), tri)


class TestAdams:
    def test_uniform(self):
        assert check_adams(parse("a"), parse("c"), Credence.uniform(["a", "c"])) == 0

    def test_certain_antecedent(self):
        c = Credence.of(["a", "c"], Mode.BIVALENT, {"a=1,c=1": "2/5", "a=1,c=0": "3/5"})
        assert check_adams(parse("a"), parse("c"), c) == 0
        assert probability(parse("a -> c"), c) == probability(parse("c"), c)

    def test_skewed(self):
        c = Credence.of(["a", "c"], Mode.BIVALENT, {"a=1,c=1": "1/7", "a=1,c=0": "2/7", "a=0,c=0": "4/7"})
        assert probability(parse("a -> c"), c) == F(1, 3)
        assert check_adams(parse("a"), parse("c"), c) == 0

    @given(classical_formulas, classical_formulas, credences())
    @settings(max_examples=300, deadline=None)
    def test_thesis(self, a, c, cred):
        assume(probability(a, cred) > 0)
        assert check_adams(a, c, cred) == 0
        assert probability(Cond(a, c), cred) == oracles.classical_conditional(c, a, cred)


class TestRandomCredence:
    def test_deterministic(self):
        assert random_credence(["a"], Mode.BIVALENT, 42, 10) == random_credence(["a"], Mode.BIVALENT, 42, 10)

    def test_bound_one_is_point_mass(self):
        for seed in range(20):
            assert len(random_credence(["a", "b"], Mode.TRIVALENT, seed, 1).weights) == 1

    def test_denominators_and_sum(self):
        for seed in range(200):
            c = random_credence(["a", "b"], Mode.TRIVALENT, seed, 7)
            assert sum(c.weights.values()) == 1
            assert all(w.denominator <= 7 for w in c.weights.values())

    def test_point_masses_occur(self):
        sizes = [len(random_credence(["a", "b", "c"], Mode.BIVALENT, s, 12).weights) for s in range(300)]
        assert sizes.count(1) > 10

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            random_credence(["a"], Mode.BIVALENT, 0, 0)


class TestSearch:
    def test_or_to_if(self):
        s = parse_sequent("~a | b |- a -> b")
        c = Credence.of(["a", "b"], Mode.BIVALENT, {"a=0,b=0": "9/10", "a=1,b=0": "1/10"})
        assert probability(s.premises[0], c) == F(9, 10)
        assert probability(s.conclusion, c) == 0
        found = search_probabilistic_countermodel(s, budget=50, mode=Mode.BIVALENT)
        assert found is not None
        assert [cert.subset for cert in found.certificates] == [(), (0,)]
        for cert in found.certificates:
            assert probability(cert.conjunction, cert.credence) == cert.p_conjunction > cert.p_conclusion

    def test_valid_sequent_inconclusive(self):
        assert search_probabilistic_countermodel(parse_sequent("a; b |- a"), budget=300) is None

    def test_monotonicity(self):
        s = parse_sequent("a -> c |- (a & b) -> c")
        found = search_probabilistic_countermodel(s, budget=100, mode=Mode.BIVALENT)
        assert found is not None
        cert = found.certificates[-1]
        assert cert.subset == (0,)
        assert probability(s.premises[0], cert.credence) > probability(s.conclusion, cert.credence)

    def test_monotonicity_hand_credence(self):
        c = Credence.of(
            ["a", "b", "c"], Mode.BIVALENT,
            {"a=1,b=0,c=1": "45/100", "a=1,b=1,c=1": "45/100", "a=1,b=1,c=0": "10/100"},
        )
        assert probability(parse("a -> c"), c) == F(9, 10)
        assert probability(parse("(a & b) -> c"), c) == F(45, 55)

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            search_probabilistic_countermodel(parse_sequent("a |- a"), budget=-1)


def _random_sequent(rng, max_premises=3):
    names = ("a", "b", "c")
    premises = [random_formula(rng, names, rng.randint(0, 3)) for _ in range(rng.randint(0, max_premises))]
    return Sequent(premises, random_formula(rng, names, rng.randint(0, 3)))


class TestCrossValidation:
    """Smaller versions of the acceptance harness, plus the possibility logic."""

    def test_certain_inference(self):
        rng = random.Random(3)
        for _ in range(300):
            s = _random_sequent(rng)
            valid = entails_c(s).valid
            assert (c_probabilistic_countermodel(s, budget=5, seed=rng.randrange(1000)) is None) == valid

    def test_possibility_preservation(self):
        rng = random.Random(4)
        for _ in range(300):
            s = _random_sequent(rng, 1)
            if not s.premises or is_theorem_c(s.conclusion).valid:
                continue
            a, b = s.premises[0], s.conclusion
            valid = entails_ss(a, b).valid
            assert (ss_probabilistic_countermodel(a, b) is None) == valid

    def test_uncertain_inference(self):
        rng = random.Random(5)
        for _ in range(200):
            s = _random_sequent(rng)
            v = entails_u(s)
            found = search_probabilistic_countermodel(s, budget=10, seed=1)
            assert (found is None) == v.valid

    def test_lifted_countermodel(self):
        s = parse_sequent("~a |- a -> b")
        v = entails_c(s)
        c = Credence.point_mass(v.countermodel)
        assert probability(s.premises[0], c) == 1
        assert probability(s.conclusion, c) == 0


class TestDemos:
    def test_mcgee_default(self):
        r = mcgee_demo()
        assert (r.p_major, r.p_minor, r.p_conclusion) == (1, F(86, 100), F(1, 15))
        assert r.decompositions_hold
        assert r.p_imported == r.p_major

    def test_mcgee_other_weights(self):
        assert mcgee_demo((60, 30, 10)).p_conclusion == F(1, 4)

    @given(credences(), classical_formulas, classical_formulas)
    @settings(max_examples=150, deadline=None)
    def test_total_probability(self, c, a, b):
        lhs, rhs = total_probability(b, a, c)
        assert lhs == rhs

    @given(credences(), classical_formulas, classical_formulas, classical_formulas)
    @settings(max_examples=150, deadline=None)
    def test_nested_total_probability(self, cred, a, b, c):
        assume(probability(b, cred) > 0)
        lhs, rhs = nested_total_probability(a, b, c, cred)
        assert lhs == rhs

    def test_triviality(self):
        r = triviality_witness(300, seed=2)
        assert (r.p_conditional, r.p_consequent) == (F(1, 2), F(4, 5))
        assert r.compatible and r.witnessed
        assert r.preservation_triggered > 0 and not r.preservation_violations

    def test_degenerate_antecedent_allows_equality(self):
        c = Credence.of(["a", "c"], Mode.BIVALENT, {"a=1,c=1": "1/3", "a=1,c=0": "2/3"})
        assert probability(parse("a -> c"), c) == probability(parse("c"), c)
