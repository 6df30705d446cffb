import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from possprob.events import OutcomeSpace, SigmaField
from possprob.measure import validate_measure
from possprob.possibility import (
    PossibilitySpace,
    classify_modal,
    conditional_possibility,
    hacking_mismatch,
    possibility,
)

S2 = OutcomeSpace(("s1", "s2"))
S3 = OutcomeSpace(("s1", "s2", "s3"))


def powerset(space):
    items = space.outcomes
    return [frozenset(c) for r in range(len(items) + 1)
            for c in itertools.combinations(items, r)]


def test_possibility_examples():
    w = PossibilitySpace(S3, frozenset({"s1"}))
    assert possibility(w, {"s1", "s2"}) == 1
    assert possibility(w, {"s2", "s3"}) == 0
    assert possibility(w, set()) == 0


def test_classify_modal_full_space():
    w = PossibilitySpace(S3, S3.full)
    c = classify_modal(w, S3.full)
    assert c.certain and c.possible


def test_classify_modal_partial():
    w = PossibilitySpace(S3, frozenset({"s1", "s2"}))
    c = classify_modal(w, {"s1", "s2"})
    assert c.certain and c.possible
    c = classify_modal(w, {"s3"})
    assert c.impossible and c.uncertain
    c = classify_modal(w, {"s1", "s3"})
    assert c.possible and c.uncertain


def test_empty_possibility_space_warns_and_is_degenerate():
    with pytest.warns(UserWarning, match="empty possibility space"):
        w = PossibilitySpace(S3, frozenset())
    for e in powerset(S3):
        c = classify_modal(w, e)
        assert c.impossible and c.certain


def test_conditional_possibility_examples():
    w = PossibilitySpace(S3, frozenset({"s1", "s2"}))
    for e in powerset(S3):
        assert conditional_possibility(w, e, S3.full) == possibility(w, e)
    assert conditional_possibility(w, {"s1"}, {"s2"}) == 0
    assert conditional_possibility(w, {"s1"}, {"s1"}) == 1


def test_hacking_mismatch_two_outcomes():
    w = PossibilitySpace(S2, S2.full)
    m = validate_measure(SigmaField.discrete(S2), [F(1, 2), F(1, 2)])
    witness = hacking_mismatch(w, m)
    assert witness.event == {"s1"} and witness.condition == {"s2"}
    assert witness.probability == F(1, 2)
    assert conditional_possibility(w, witness.event, witness.condition) == 0


def test_hacking_mismatch_single_possible_outcome():
    w = PossibilitySpace(S3, frozenset({"s2"}))
    m = validate_measure(SigmaField.discrete(S3), [F(0), F(1), F(0)])
    assert hacking_mismatch(w, m) is None


def brute_force_mismatch_exists(w, m):
    measurable = [e for e in powerset(m.space) if m.field.contains(e)]
    inside = [e for e in measurable if e and e <= w.possible]
    return any(m.prob(e) > 0 and not e & c for e in inside for c in inside)


@given(st.data())
@settings(max_examples=80)
def test_hacking_mismatch_heavy_atom(data):
    n = data.draw(st.integers(1, 4))
    space = OutcomeSpace(tuple(f"s{i}" for i in range(1, n + 1)))
    heavy = data.draw(st.integers(0, n - 1))
    m = validate_measure(SigmaField.discrete(space),
                         [F(int(i == heavy)) for i in range(n)])
    w = PossibilitySpace(space, frozenset(
        data.draw(st.sets(st.sampled_from(space.outcomes), min_size=1))))
    found = hacking_mismatch(w, m)
    expected = (space.outcomes[heavy] in w.possible and len(w.possible) >= 2)
    assert (found is not None) == expected == brute_force_mismatch_exists(w, m)


def test_exhaustive_modal_properties():
    space = OutcomeSpace(("a", "b", "c", "d"))
    events = powerset(space)
    for possible in events:
        w = PossibilitySpace(space, possible) if possible else None
        if w is None:
            continue
        for a in events:
            ca = classify_modal(w, a)
            cc = classify_modal(w, space.complement(a))
            assert ca.certain == cc.impossible
            assert ca.possible == (not cc.certain)
            for b in events:
                pa, pb = possibility(w, a), possibility(w, b)
                assert possibility(w, a | b) == max(pa, pb)
                if a <= b:
                    assert pa <= pb
                cp = conditional_possibility(w, a, b)
                assert cp <= pa and cp <= pb
