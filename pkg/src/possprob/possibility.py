"""All-or-nothing possibility on a finite outcome space."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from possprob.events import DEFAULT_MAX_ATOMS, Event, OutcomeSpace
from possprob.measure import ProbabilityMeasure


@dataclass(frozen=True)
class PossibilitySpace:
    """The outcomes ``possible`` not ruled out by what the subject knows.

    ``possible`` need not be measurable with respect to any field.
    """

    space: OutcomeSpace
    possible: frozenset

    def __post_init__(self):
        object.__setattr__(self, "possible", self.space.event(self.possible))
        if not self.possible:
            warnings.warn("empty possibility space: every event is impossible "
                          "and vacuously certain", stacklevel=3)

    @property
    def impossible(self) -> Event:
        return self.space.complement(self.possible)


def possibility(w: PossibilitySpace, e: Iterable[str]) -> int:
    return int(bool(w.space.event(e) & w.possible))


def conditional_possibility(w: PossibilitySpace, e: Iterable[str],
                            c: Iterable[str]) -> int:
    return int(bool(w.space.event(e) & w.possible & w.space.event(c)))


@dataclass(frozen=True)
class ModalClass:
    possible: bool
    certain: bool

    @property
    def impossible(self) -> bool:
        return not self.possible

    @property
    def uncertain(self) -> bool:
        return not self.certain

    def __str__(self):
        return (f"{'possible' if self.possible else 'impossible'}, "
                f"{'certain' if self.certain else 'uncertain'}")


def classify_modal(w: PossibilitySpace, e: Iterable[str]) -> ModalClass:
    e = w.space.event(e)
    return ModalClass(
        possible=possibility(w, e) == 1,
        certain=possibility(w, w.space.complement(e)) == 0,
    )


@dataclass(frozen=True)
class HackingWitness:
    event: Event
    condition: Event
    probability: Fraction


def hacking_mismatch(w: PossibilitySpace, measure: ProbabilityMeasure,
                     max_atoms: int = DEFAULT_MAX_ATOMS) -> HackingWitness | None:
    """Find disjoint measurable E, C inside W with E significant but
    impossible given C.

    Under the conditional reading of possibility, C rules E out even though
    E keeps positive probability, so the correspondence breaks.  Candidates
    are visited in lexicographic declaration order; the first pair wins.
    """
    if measure.space != w.space:
        raise ValueError("possibility space and measure use different outcome spaces")
    space = w.space
    inside = sorted(
        (e for e in measure.field.iter_events(max_atoms) if e and e <= w.possible),
        key=space.sort_key,
    )
    for e in inside:
        p = measure.prob(e)
        if p == 0:
            continue
        for c in inside:
            if not e & c and conditional_possibility(w, e, c) == 0:
                return HackingWitness(e, c, p)
    return None
