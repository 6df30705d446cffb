"""Instance generators for exhaustive and randomized theorem checks."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator, Sequence

from possprob.events import OutcomeSpace, SigmaField
from possprob.measure import ProbabilityMeasure
from possprob.possibility import PossibilitySpace


def labels(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, n + 1))


def discrete_measure(weights: Sequence) -> ProbabilityMeasure:
    space = OutcomeSpace(labels(len(weights)))
    return ProbabilityMeasure(SigmaField.discrete(space), tuple(weights))


def weight_grid(n: int, max_den: int) -> Iterator[tuple[Fraction, ...]]:
    """Distinct non-negative weight vectors of length n summing to 1 whose
    entries share a denominator d <= max_den."""
    seen = set()
    for d in range(1, max_den + 1):
        for cut in itertools.combinations(range(d + n - 1), n - 1):
            bounds = (-1,) + cut + (d + n - 1,)
            w = tuple(Fraction(bounds[i + 1] - bounds[i] - 1, d) for i in range(n))
            if w not in seen:
                seen.add(w)
                yield w


def random_weights(rng: random.Random, n: int, zero_prob: float = 0.3,
                   max_numerator: int = 12) -> tuple[Fraction, ...]:
    raw = [0 if rng.random() < zero_prob else rng.randint(1, max_numerator)
           for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return tuple(Fraction(r, total) for r in raw)


def random_field(rng: random.Random, n_atoms: int, max_extra: int = 2) -> SigmaField:
    """Field with ``n_atoms`` atoms; some atoms get extra outcomes so that
    not every subset is measurable."""
    extra = rng.randint(0, max_extra)
    space = OutcomeSpace(labels(n_atoms + extra))
    owners = list(range(n_atoms)) + [rng.randrange(n_atoms) for _ in range(extra)]
    rng.shuffle(owners)
    # every atom index must own at least one outcome
    groups: dict[int, list[str]] = {}
    for label, owner in zip(space.outcomes, owners):
        groups.setdefault(owner, []).append(label)
    return SigmaField(space, tuple(frozenset(g) for g in groups.values()))


def random_measure(rng: random.Random, n_atoms: int, **kwargs) -> ProbabilityMeasure:
    sigma = random_field(rng, n_atoms)
    return ProbabilityMeasure(sigma, random_weights(rng, n_atoms, **kwargs))


def random_possibility(rng: random.Random, measure: ProbabilityMeasure,
                       p_include: float = 0.7) -> PossibilitySpace:
    """Random W, not necessarily a union of atoms."""
    chosen = [s for s in measure.space if rng.random() < p_include]
    return PossibilitySpace(measure.space, frozenset(chosen))


def correspondent_possibility(rng: random.Random, measure: ProbabilityMeasure
                              ) -> PossibilitySpace:
    """Random W satisfying the correspondence axiom: it contains every
    significant atom, and outcomes of null atoms are coin flips."""
    sigma = measure.field
    chosen = set()
    for atom, w in zip(sigma.atoms, measure.weights):
        if w > 0:
            chosen |= atom
        else:
            chosen |= {s for s in atom if rng.random() < 0.5}
    return PossibilitySpace(measure.space, frozenset(chosen))


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Every partition of ``items`` into non-empty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def random_coarsening(rng: random.Random, sigma: SigmaField) -> list[frozenset]:
    """Partition of the space into random unions of atoms."""
    n_blocks = rng.randint(1, sigma.n_atoms)
    blocks: list[set] = [set() for _ in range(n_blocks)]
    for atom in sigma.atoms:
        blocks[rng.randrange(n_blocks)] |= atom
    return [frozenset(b) for b in blocks if b]
