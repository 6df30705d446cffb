import itertools
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from possprob.multinomial import (
    BeliefState,
    Prop,
    TrialSequence,
    belief_closure,
    checkpoints,
    count_vector,
    count_vectors,
    exchangeability_check,
    iid_joint,
    multinomial_pmf,
    proportion_estimate,
    simulate,
)


def test_count_vector_examples():
    assert count_vector(TrialSequence(2, (1, 2, 1))) == (2, 1)
    assert count_vector(TrialSequence(3, ())) == (0, 0, 0)
    assert count_vector(TrialSequence(3, (2,) * 5)) == (0, 5, 0)


def test_out_of_range_value_names_position():
    with pytest.raises(ValueError, match="position 3"):
        TrialSequence(2, (1, 2, 3))


def test_proportion_estimates():
    assert proportion_estimate(TrialSequence(2, (2, 2, 2))).theta == (0, 1)
    est = proportion_estimate(TrialSequence(2, (1, 2, 1, 2)))
    assert est.theta == (F(1, 2), F(1, 2)) and est.k == 4
    assert proportion_estimate(TrialSequence(2, (1, 1, 2))).theta == (F(2, 3), F(1, 3))
    with pytest.raises(ValueError):
        proportion_estimate(TrialSequence(2, ()))


def test_pmf_fair_coin_two_tosses():
    # 4 equally likely sequences, (1,2) and (2,1) have one of each
    matches = sum(1 for s in itertools.product((1, 2), repeat=2) if sorted(s) == [1, 2])
    assert multinomial_pmf((1, 1), 2, (F(1, 2), F(1, 2))) == F(matches, 4)


def test_pmf_degenerate_theta():
    assert multinomial_pmf((5, 0), 5, (1, 0)) == 1
    assert multinomial_pmf((4, 1), 5, (1, 0)) == 0


def test_pmf_count_mismatch():
    with pytest.raises(ValueError, match="does not sum"):
        multinomial_pmf((1, 1), 3, (F(1, 2), F(1, 2)))


def test_count_vectors_enumeration():
    brute = {tuple(Counter(s)[a] for a in (1, 2, 3))
             for s in itertools.product((1, 2, 3), repeat=4)}
    assert set(count_vectors(3, 4)) == brute
    assert len(list(count_vectors(3, 4))) == len(brute)


theta_strategy = st.integers(2, 3).flatmap(
    lambda m: st.lists(st.integers(0, 4), min_size=m, max_size=m).filter(any)
).map(lambda raw: tuple(F(r, sum(raw)) for r in raw))


@given(theta_strategy, st.integers(0, 6))
@settings(max_examples=60)
def test_pmf_normalizes(theta, k):
    assert sum(multinomial_pmf(n, k, theta) for n in count_vectors(len(theta), k)) == 1


@given(theta_strategy, st.integers(0, 5))
@settings(max_examples=40)
def test_pmf_matches_sequence_aggregation(theta, k):
    m = len(theta)
    totals = Counter()
    for seq in itertools.product(range(1, m + 1), repeat=k):
        p = F(1)
        for x in seq:
            p *= theta[x - 1]
        totals[tuple(seq.count(a) for a in range(1, m + 1))] += p
    for n in count_vectors(m, k):
        assert multinomial_pmf(n, k, theta) == totals[n]


def test_exchangeability_iid_passes():
    assert exchangeability_check(iid_joint((F(1, 3), F(2, 3)), 3), 2, 3)


def test_exchangeability_counterexample():
    joint = {(1, 2): F(1, 2), (2, 1): F(1, 4), (1, 1): F(1, 4)}
    result = exchangeability_check(joint, 2, 2)
    assert not result and result.counterexample == ((1, 2), (2, 1))


def test_exchangeability_k1_always_passes():
    assert exchangeability_check({(1,): F(1, 5), (2,): F(4, 5)}, 2, 1)


def test_exchangeability_requires_normalized():
    with pytest.raises(ValueError, match="sums to"):
        exchangeability_check({(1, 1): F(1, 2)}, 2, 2)


@given(theta_strategy, st.integers(1, 4))
@settings(max_examples=30)
def test_every_iid_product_is_exchangeable(theta, k):
    assert exchangeability_check(iid_joint(theta, k), len(theta), k)


def closed(*props, exchangeable=True):
    return belief_closure(BeliefState(frozenset(props), exchangeable))


def test_belief_impossible_exchangeable():
    c = closed(Prop.IMPOSSIBLE)
    assert Prop.PROB_ZERO in c.state.propositions
    assert Prop.THETA_ZERO_SURE in c.state.propositions
    assert c.consistent
    assert [d.rule for d in c.trace] == ["R1", "R2"]


def test_belief_possible_but_null_contradicts():
    c = closed(Prop.POSSIBLE, Prop.PROB_ZERO)
    assert Prop.IMPOSSIBLE in c.state.propositions
    assert (Prop.POSSIBLE, Prop.IMPOSSIBLE) in c.contradictions


def test_belief_empty_state():
    c = closed()
    assert c.state.propositions == frozenset() and not c.trace and c.consistent


def test_r4_needs_exchangeability():
    c = closed(Prop.POSSIBLE, Prop.PROB_ZERO, exchangeable=False)
    assert c.consistent and Prop.IMPOSSIBLE not in c.state.propositions


ALL_STATES = [
    BeliefState(frozenset(props), exch)
    for r in range(len(Prop) + 1)
    for props in itertools.combinations(list(Prop), r)
    for exch in (False, True)
]


@pytest.mark.parametrize("state", ALL_STATES[::7])
def test_closure_idempotent_sample(state):
    once = belief_closure(state)
    assert belief_closure(once.state).state == once.state


def test_closure_monotone():
    for a in ALL_STATES:
        for b in ALL_STATES:
            if a.exchangeable == b.exchangeable and a.propositions <= b.propositions:
                assert (belief_closure(a).state.propositions
                        <= belief_closure(b).state.propositions)


def test_checkpoints():
    assert checkpoints(1) == [1]
    assert checkpoints(8) == [1, 2, 4, 8]
    assert checkpoints(10) == [1, 2, 4, 8, 10]


def test_simulate_degenerate():
    result = simulate((1, 0), 100, seed=3)
    assert set(result.sequence.values) == {1}
    assert all(est == (1.0, 0.0) for _, est in result.table)


def test_simulate_deterministic():
    a = simulate((F(1, 2), F(1, 2)), 1000, seed=11)
    b = simulate((F(1, 2), F(1, 2)), 1000, seed=11)
    assert a.sequence == b.sequence and a.table_text() == b.table_text()
    assert a.sequence != simulate((F(1, 2), F(1, 2)), 1000, seed=12).sequence


def test_simulate_fair_coin_converges():
    result = simulate((F(1, 2), F(1, 2)), 10 ** 5, seed=0)
    assert all(abs(e - 0.5) < 0.01 for e in result.final_estimate)
    assert result.table[-1][0] == 10 ** 5


def test_simulate_skips_null_middle_category():
    result = simulate((F(1, 2), F(0), F(1, 2)), 5000, seed=1)
    assert 2 not in result.sequence.values


def test_table_text_format():
    text = simulate((F(1, 2), F(1, 2)), 4, seed=0).table_text()
    lines = text.splitlines()
    assert lines[0] == "k,theta_1,theta_2"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "4"]
