from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from possprob.events import OutcomeSpace, SigmaField
from possprob.measure import (
    AxiomViolationError,
    ConditioningOnNullError,
    NonMeasurableEventError,
    SignificanceClass,
    check_axioms,
    classify,
    condition,
    is_reduction,
    prob,
    theorem1_oracle,
    validate_measure,
)
from possprob.sampling import discrete_measure

from strategies import measures

S3 = OutcomeSpace(("s1", "s2", "s3"))
D3 = SigmaField.discrete(S3)


def test_validate_uniform():
    sigma = SigmaField.discrete(OutcomeSpace(("s1", "s2")))
    m = validate_measure(sigma, [F(1, 2), F(1, 2)])
    assert m.weights == (F(1, 2), F(1, 2))


def test_validate_norming_violation():
    sigma = SigmaField.discrete(OutcomeSpace(("s1", "s2")))
    with pytest.raises(AxiomViolationError) as info:
        validate_measure(sigma, [F(1, 2), F(1, 3)])
    [v] = info.value.violations
    assert v.axiom == "Norming" and "5/6" in v.detail


def test_validate_negativity_violation():
    sigma = SigmaField.discrete(OutcomeSpace(("s1", "s2")))
    with pytest.raises(AxiomViolationError) as info:
        validate_measure(sigma, [F(-1, 4), F(5, 4)])
    [v] = info.value.violations
    assert v.axiom == "Non-negativity" and v.atom == 1


def test_validate_count_mismatch():
    with pytest.raises(ValueError, match="expected 3"):
        check_axioms(D3, [F(1)])


def test_floats_refused():
    with pytest.raises(TypeError):
        validate_measure(D3, [0.5, 0.25, 0.25])


def test_prob_examples():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    assert prob(m, S3.full) == 1
    assert prob(m, set()) == 0
    assert prob(m, {"s2", "s3"}) == F(1, 4) + F(1, 4)


def test_prob_non_measurable():
    sigma = SigmaField(S3, (frozenset({"s1"}), frozenset({"s2", "s3"})))
    m = validate_measure(sigma, [F(1, 2), F(1, 2)])
    with pytest.raises(NonMeasurableEventError):
        prob(m, {"s2"})


@pytest.mark.parametrize("weights,event,expected", [
    ((F(1), F(0), F(0)), {"s2"}, SignificanceClass.INSIGNIFICANT),
    ((F(1), F(0), F(0)), {"s1"}, SignificanceClass.ALMOST_SURE),
    ((F(1, 2), F(1, 2), F(0)), {"s1"}, SignificanceClass.SIGNIFICANT),
])
def test_classify(weights, event, expected):
    cls = classify(validate_measure(D3, weights), event)
    assert cls is expected
    assert cls.significant == (expected is not SignificanceClass.INSIGNIFICANT)
    assert cls.almost_sure == (expected is SignificanceClass.ALMOST_SURE)


def test_condition_example():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    sub = condition(m, {"s2", "s3"})
    # P(s2)/P({s2,s3}) = (1/4)/(1/2)
    assert sub.weights == (F(1, 2), F(1, 2))
    assert sub.space.outcomes == ("s2", "s3")


def test_condition_on_whole_space_is_identity():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    assert condition(m, S3.full) == m


def test_condition_on_null_event():
    m = validate_measure(D3, [F(1, 2), F(1, 2), F(0)])
    with pytest.raises(ConditioningOnNullError):
        condition(m, {"s3"})


def test_reduction_almost_sure():
    m = validate_measure(D3, [F(1, 2), F(1, 2), F(0)])
    assert is_reduction(condition(m, {"s1", "s2"}), m)


def test_reduction_fails_by_factor_two():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    check = is_reduction(condition(m, {"s2", "s3"}), m)
    assert not check
    assert check.sub_prob == 2 * check.full_prob


def test_reduction_reflexive():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    assert is_reduction(m, m)


def test_reduction_requires_contained_space():
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    # {s1} alone reduces (s1, s2) when s2 is null
    assert is_reduction(discrete_measure([F(1)]), discrete_measure([F(1), F(0)]))
    foreign = validate_measure(SigmaField.discrete(OutcomeSpace(("zz",))), [1])
    check = is_reduction(foreign, m)
    assert not check and check.witness == frozenset({"zz"})


def test_theorem1_examples():
    m = validate_measure(D3, [F(1, 2), F(1, 2), F(0)])
    r = theorem1_oracle(m, {"s1", "s2"})
    assert (r.reduction, r.almost_sure, r.complement_insignificant) == (True, True, True)
    m = validate_measure(D3, [F(1, 2), F(1, 4), F(1, 4)])
    r = theorem1_oracle(m, {"s1", "s2"})
    assert (r.reduction, r.almost_sure, r.complement_insignificant) == (False, False, False)
    assert r.witness.witness is not None
    r = theorem1_oracle(m, S3.full)
    assert (r.reduction, r.almost_sure, r.complement_insignificant) == (True, True, True)


@given(measures())
@settings(max_examples=60)
def test_finite_additivity_and_monotonicity(m):
    events = m.field.enumerate_events()
    for a in events:
        for b in events:
            if not a & b:
                assert m.prob(a | b) == m.prob(a) + m.prob(b)
            if a <= b:
                assert m.prob(a) <= m.prob(b)


@given(measures())
def test_conditioning_yields_a_measure(m):
    for s0 in m.field.iter_events():
        if m.prob(s0) > 0:
            sub = condition(m, s0)
            assert not check_axioms(sub.field, sub.weights)
            assert sub.prob(sub.space.full) == 1


@given(measures(max_atoms=5))
@settings(max_examples=60)
def test_theorem1_never_mixed(m):
    for s0 in m.field.iter_events():
        if m.prob(s0) > 0:
            assert theorem1_oracle(m, s0).consistent
