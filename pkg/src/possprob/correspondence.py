"""Consistency between a possibility space and a probability measure.

Covers the correspondence axiom in its universal and measurable-W forms,
the certain/almost-sure and significant/possible implications it yields,
the bucket decomposition behind the countability argument for partitions,
and the refinement that makes possibility and significance coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from possprob.events import DEFAULT_MAX_ATOMS, Event, SigmaField
from possprob.measure import (
    ProbabilityMeasure,
    ReductionCheck,
    condition,
    is_reduction,
)
from possprob.possibility import PossibilitySpace, classify_modal, possibility

WITNESS_CAP = 10

UNIVERSAL = "universal"
MEASURABLE_W = "measurable-W"


class CorrespondenceError(ValueError):
    """The correspondence axiom fails, so the requested construction is refused."""

    def __init__(self, report: "CorrespondenceReport", space):
        self.report = report
        shown = ", ".join(space.format(e) for e in report.witnesses)
        super().__init__(
            f"correspondence axiom fails ({report.total_witnesses} impossible "
            f"but significant events, e.g. {shown})"
        )


class BrokenInvariantError(AssertionError):
    pass


def _same_space(w: PossibilitySpace, measure: ProbabilityMeasure):
    if w.space != measure.space:
        raise ValueError("possibility space and measure use different outcome spaces")


@dataclass(frozen=True)
class CorrespondenceReport:
    holds: bool
    form_used: str
    witnesses: tuple[Event, ...] = ()
    total_witnesses: int = 0
    prob_w: Fraction | None = None


def check_correspondence(w: PossibilitySpace, measure: ProbabilityMeasure,
                         max_atoms: int = DEFAULT_MAX_ATOMS,
                         witness_cap: int = WITNESS_CAP) -> CorrespondenceReport:
    """Check that no impossible event is significant.

    When W is a union of atoms the verdict is P(W) = 1; otherwise it is the
    quantified statement over every event of the field.  Witnesses (every
    event with possibility 0 and positive probability) are listed in both
    cases, capped at ``witness_cap``.
    """
    _same_space(w, measure)
    witnesses = []
    total = 0
    for e in measure.field.iter_events(max_atoms):
        if possibility(w, e) == 0 and measure.prob(e) > 0:
            total += 1
            if len(witnesses) < witness_cap:
                witnesses.append(e)
    if measure.field.contains(w.possible):
        p_w = measure.prob(w.possible)
        return CorrespondenceReport(p_w == 1, MEASURABLE_W, tuple(witnesses),
                                    total, p_w)
    return CorrespondenceReport(total == 0, UNIVERSAL, tuple(witnesses), total)


@dataclass(frozen=True)
class Theorem3Report:
    applicable: bool
    certain_are_almost_sure: bool = False
    significant_are_possible: bool = False
    certain_not_almost_sure: tuple[Event, ...] = ()
    significant_not_possible: tuple[Event, ...] = ()
    note: str = ""

    @property
    def passed(self) -> bool:
        return (self.applicable and self.certain_are_almost_sure
                and self.significant_are_possible)


def theorem3_oracle(w: PossibilitySpace, measure: ProbabilityMeasure,
                    max_atoms: int = DEFAULT_MAX_ATOMS,
                    witness_cap: int = WITNESS_CAP) -> Theorem3Report:
    """Exhaustively test: certain => almost sure, significant => possible."""
    if not check_correspondence(w, measure, max_atoms).holds:
        return Theorem3Report(False, note="axiom not satisfied; theorem not applicable")
    bad_a, bad_b = [], []
    for e in measure.field.iter_events(max_atoms):
        modal = classify_modal(w, e)
        p = measure.prob(e)
        if modal.certain and p != 1:
            bad_a.append(e)
        if p > 0 and not modal.possible:
            bad_b.append(e)
    return Theorem3Report(
        True,
        certain_are_almost_sure=not bad_a,
        significant_are_possible=not bad_b,
        certain_not_almost_sure=tuple(bad_a[:witness_cap]),
        significant_not_possible=tuple(bad_b[:witness_cap]),
    )


@dataclass(frozen=True)
class BucketDecomposition:
    """Cells grouped by k with 1/(k+1) < P(cell) <= 1/k."""

    buckets: dict[int, tuple[Event, ...]]
    zero_cells: tuple[Event, ...]
    probabilities: dict[Event, Fraction] = field(default_factory=dict)

    def bound_holds(self) -> bool:
        return all(len(cells) <= k for k, cells in self.buckets.items())


def bucket_index(p: Fraction) -> int:
    """The k with 1/(k+1) < p <= 1/k, for 0 < p <= 1."""
    if not 0 < p <= 1:
        raise ValueError(f"bucket index needs 0 < p <= 1, got {p}")
    return (1 / Fraction(p)).__floor__()


def _check_partition(sigma: SigmaField, cells: Sequence[Event]):
    seen: set = set()
    for cell in cells:
        if not cell:
            raise ValueError("partition cells must be non-empty")
        if seen & cell:
            overlap = sigma.space.format(seen & cell)
            raise ValueError(f"partition cells overlap on {overlap}")
        if not sigma.contains(cell):
            raise ValueError(f"cell {sigma.space.format(cell)} is not measurable")
        seen |= cell
    if seen != sigma.space.full:
        missing = sigma.space.format(sigma.space.full - seen)
        raise ValueError(f"partition does not cover {missing}")


def bucket_decomposition(measure: ProbabilityMeasure,
                         partition: Iterable[Iterable[str]]) -> BucketDecomposition:
    cells = [measure.space.event(c) for c in partition]
    _check_partition(measure.field, cells)
    buckets: dict[int, list[Event]] = {}
    zero = []
    probs = {}
    for cell in cells:
        p = measure.prob(cell)
        probs[cell] = p
        if p == 0:
            zero.append(cell)
        else:
            buckets.setdefault(bucket_index(p), []).append(cell)
    decomposition = BucketDecomposition(
        {k: tuple(v) for k, v in sorted(buckets.items())}, tuple(zero), probs
    )
    for k, members in decomposition.buckets.items():
        if len(members) > k:
            # each member exceeds 1/(k+1), so k+1 of them would exceed 1
            raise BrokenInvariantError(
                f"bucket {k} holds {len(members)} cells; Norming is violated"
            )
    return decomposition


@dataclass(frozen=True)
class RefinedSpace:
    measure: ProbabilityMeasure
    possibility: PossibilitySpace
    removed: Event
    reduction: ReductionCheck


def refine_to_correspondence(w: PossibilitySpace, measure: ProbabilityMeasure,
                             max_atoms: int = DEFAULT_MAX_ATOMS) -> RefinedSpace:
    """Condition on the union of significant atoms.

    In the result every non-empty event is significant and possible, and
    the whole space is the only almost sure event (and it is certain).
    """
    _same_space(w, measure)
    if not measure.field.contains(w.possible):
        raise ValueError("refinement needs W to be a union of atoms")
    report = check_correspondence(w, measure, max_atoms)
    if not report.holds:
        raise CorrespondenceError(report, measure.space)
    s0 = measure.field.union_of(measure.significant_atoms())
    refined = condition(measure, s0)
    refined_w = PossibilitySpace(refined.space, w.possible & s0)
    return RefinedSpace(
        measure=refined,
        possibility=refined_w,
        removed=measure.space.full - s0,
        reduction=is_reduction(refined, measure, max_atoms),
    )


@dataclass(frozen=True)
class ExclusionCheck:
    excluded: Event
    almost_sure: bool
    reduction: ReductionCheck


@dataclass(frozen=True)
class Desideratum1Report:
    checks: tuple[ExclusionCheck, ...]
    note: str = ""

    @property
    def holds(self) -> bool:
        return all(c.reduction.holds for c in self.checks)


def desideratum1_demo(w: PossibilitySpace, measure: ProbabilityMeasure,
                      exclude: Iterable[str] | None = None,
                      max_atoms: int = DEFAULT_MAX_ATOMS) -> Desideratum1Report:
    """Show that impossible events can be dropped from the sample space.

    Without ``exclude``, every measurable event containing W is conditioned
    on (equivalently, every measurable impossible event is excluded) and
    each conditional space is checked to be a reduction.  With ``exclude``,
    only that event is dropped, which may be any event; excluding a
    significant one yields a non-reduction and its witness.
    """
    _same_space(w, measure)
    space = measure.space
    if exclude is not None:
        excluded = space.event(exclude)
        keep = space.complement(excluded)
        if measure.prob(keep) == 0:
            raise ValueError(f"excluding {space.format(excluded)} leaves nothing significant")
        sub = condition(measure, keep)
        return Desideratum1Report((ExclusionCheck(
            excluded, measure.prob(keep) == 1, is_reduction(sub, measure, max_atoms)
        ),))
    if not measure.field.contains(w.possible):
        raise ValueError("the demonstration needs W to be a union of atoms")
    if not check_correspondence(w, measure, max_atoms).holds:
        return Desideratum1Report((), note="axiom not satisfied")
    checks = []
    for keep in measure.field.iter_events(max_atoms):
        if not w.possible <= keep or not keep:
            continue
        sub = condition(measure, keep)
        checks.append(ExclusionCheck(space.complement(keep), measure.prob(keep) == 1,
                                     is_reduction(sub, measure, max_atoms)))
    return Desideratum1Report(tuple(checks))
