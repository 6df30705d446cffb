"""Exact probability measures on finite sigma-fields.

Weights live on atoms and are :class:`fractions.Fraction`; every comparison
with 0 or 1 is exact.  Additivity holds by construction because the
probability of an event is the sum over the atoms it contains.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from possprob.events import DEFAULT_MAX_ATOMS, Event, SigmaField


class NonMeasurableEventError(ValueError):
    def __init__(self, e, sigma: SigmaField):
        self.event = frozenset(e)
        super().__init__(
            f"event {sigma.space.format(e)} is not a union of atoms of the field"
        )


class ConditioningOnNullError(ValueError):
    """Conditioning was requested on an insignificant event."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str
    atom: int | None = None

    def __str__(self):
        return f"{self.axiom}: {self.detail}"


class AxiomViolationError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are refused so no rounding sneaks in."""
    if isinstance(value, float):
        raise TypeError(f"weights must be exact, got float {value!r}")
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact weight")


def check_axioms(sigma: SigmaField, weights: Sequence) -> list[Violation]:
    """Axiom violations of ``weights`` as a measure on ``sigma``.

    Raises ``ValueError`` when the number of weights is not the number of
    atoms; that is a usage error, not an axiom violation.
    """
    weights = [as_fraction(w) for w in weights]
    if len(weights) != sigma.n_atoms:
        raise ValueError(
            f"expected {sigma.n_atoms} atom weights, got {len(weights)}"
        )
    violations = []
    for i, w in enumerate(weights):
        if w < 0:
            violations.append(Violation(
                "Non-negativity",
                f"atom {i + 1} {sigma.space.format(sigma.atoms[i])} has weight {w}",
                atom=i + 1,
            ))
    total = sum(weights, Fraction(0))
    if total != 1:
        violations.append(Violation("Norming", f"weights sum to {total}, not 1"))
    return violations


@dataclass(frozen=True)
class ProbabilityMeasure:
    """A validated measure; build it through :func:`validate_measure`."""

    field: SigmaField
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        violations = check_axioms(self.field, self.weights)
        if violations:
            raise AxiomViolationError(violations)
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @property
    def space(self):
        return self.field.space

    def prob(self, e: Iterable[str]) -> Fraction:
        e = frozenset(e)
        if not self.field.contains(e):
            raise NonMeasurableEventError(e, self.field)
        return sum((self.weights[i] for i in self.field.atom_indices(e)),
                   Fraction(0))

    def significant_atoms(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w > 0]

    def outcome_weights(self) -> dict[str, Fraction]:
        """Weights keyed by atom label; only meaningful for singleton atoms."""
        return {",".join(self.space.ordered(a)): w
                for a, w in zip(self.field.atoms, self.weights)}


def validate_measure(sigma: SigmaField, weights: Sequence) -> ProbabilityMeasure:
    """Return the measure or raise :class:`AxiomViolationError` naming each
    violated axiom with a witness."""
    return ProbabilityMeasure(sigma, tuple(weights))


def prob(measure: ProbabilityMeasure, e: Iterable[str]) -> Fraction:
    return measure.prob(e)


class SignificanceClass(enum.Enum):
    INSIGNIFICANT = "insignificant"
    SIGNIFICANT = "significant"
    ALMOST_SURE = "almost sure"

    @property
    def significant(self) -> bool:
        return self is not SignificanceClass.INSIGNIFICANT

    @property
    def almost_sure(self) -> bool:
        return self is SignificanceClass.ALMOST_SURE

    @classmethod
    def of(cls, p: Fraction) -> "SignificanceClass":
        if p == 0:
            return cls.INSIGNIFICANT
        if p == 1:
            return cls.ALMOST_SURE
        return cls.SIGNIFICANT


def classify(measure: ProbabilityMeasure, e: Iterable[str]) -> SignificanceClass:
    return SignificanceClass.of(measure.prob(e))


def condition(measure: ProbabilityMeasure, s0: Iterable[str]) -> ProbabilityMeasure:
    """Conditional measure on ``s0``: atoms inside ``s0`` rescaled by 1/P(s0)."""
    s0 = frozenset(s0)
    p0 = measure.prob(s0)
    if p0 == 0:
        raise ConditioningOnNullError(
            f"cannot condition on {measure.space.format(s0)}: it has probability 0"
        )
    sub = measure.field.restrict(s0)
    lookup = dict(zip(measure.field.atoms, measure.weights))
    return ProbabilityMeasure(sub, tuple(lookup[a] / p0 for a in sub.atoms))


@dataclass(frozen=True)
class ReductionCheck:
    holds: bool
    reason: str = ""
    witness: Event | None = None
    sub_prob: Fraction | None = None
    full_prob: Fraction | None = None

    def __bool__(self):
        return self.holds


def is_reduction(sub: ProbabilityMeasure, full: ProbabilityMeasure,
                 max_atoms: int = DEFAULT_MAX_ATOMS) -> ReductionCheck:
    """Is ``sub`` a reduction of ``full``?

    Checks S0 within S, every event of the sub-field in the full field, and
    equal probabilities on every event of the sub-field.  The first failing
    event (in enumeration order) is returned as the witness.
    """
    outside = [s for s in sub.space if s not in full.space]
    if outside:
        return ReductionCheck(False, "sample space not contained",
                              witness=frozenset(outside))
    for atom in sub.field.atoms:
        if not full.field.contains(atom):
            return ReductionCheck(False, "event not in the full field",
                                  witness=atom)
    for e in sub.field.iter_events(max_atoms):
        p_sub, p_full = sub.prob(e), full.prob(e)
        if p_sub != p_full:
            return ReductionCheck(False, "probabilities differ", witness=e,
                                  sub_prob=p_sub, full_prob=p_full)
    return ReductionCheck(True)


@dataclass(frozen=True)
class Theorem1Report:
    s0: Event
    reduction: bool
    almost_sure: bool
    complement_insignificant: bool
    witness: ReductionCheck

    @property
    def consistent(self) -> bool:
        return self.reduction == self.almost_sure == self.complement_insignificant


def theorem1_oracle(full: ProbabilityMeasure, s0: Iterable[str],
                    max_atoms: int = DEFAULT_MAX_ATOMS) -> Theorem1Report:
    """Evaluate the three clauses: conditioning on ``s0`` is a reduction,
    P(s0) = 1, and the complement of ``s0`` is insignificant."""
    s0 = frozenset(s0)
    check = is_reduction(condition(full, s0), full, max_atoms)
    return Theorem1Report(
        s0=s0,
        reduction=check.holds,
        almost_sure=full.prob(s0) == 1,
        complement_insignificant=full.prob(full.space.complement(s0)) == 0,
        witness=check,
    )
