"""Repeated trials over categories 1..m: counts, proportions, the multinomial
pmf, exchangeability, a belief-implication engine and a seeded simulator."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from possprob.measure import as_fraction

DEFAULT_SEQUENCE_CAP = 4096


@dataclass(frozen=True)
class TrialSequence:
    m: int
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one category")
        values = tuple(self.values)
        for pos, x in enumerate(values, start=1):
            if not (isinstance(x, (int, np.integer)) and 1 <= x <= self.m):
                raise ValueError(
                    f"value {x!r} at position {pos} is outside 1..{self.m}"
                )
        object.__setattr__(self, "values", tuple(int(x) for x in values))

    @property
    def k(self) -> int:
        return len(self.values)


def count_vector(x: TrialSequence) -> tuple[int, ...]:
    counts = [0] * x.m
    for value in x.values:
        counts[value - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class ProportionEstimate:
    """Finite-prefix average n_k / k.  An estimate, not a limit."""

    theta: tuple[Fraction, ...]
    k: int


def proportion_estimate(x: TrialSequence) -> ProportionEstimate:
    if x.k == 0:
        raise ValueError("cannot estimate proportions from an empty prefix")
    return ProportionEstimate(
        tuple(Fraction(n, x.k) for n in count_vector(x)), x.k
    )


def check_theta(theta: Sequence) -> tuple[Fraction, ...]:
    theta = tuple(as_fraction(t) for t in theta)
    if any(t < 0 for t in theta):
        raise ValueError(f"theta has a negative entry: {theta}")
    if sum(theta) != 1:
        raise ValueError(f"theta sums to {sum(theta)}, not 1")
    return theta


def multinomial_coefficient(counts: Sequence[int]) -> int:
    result, running = 1, 0
    for n in counts:
        running += n
        result *= math.comb(running, n)
    return result


def multinomial_pmf(n: Sequence[int], k: int, theta: Sequence) -> Fraction:
    theta = check_theta(theta)
    if len(n) != len(theta):
        raise ValueError("count vector and theta differ in length")
    if any(c < 0 for c in n) or sum(n) != k:
        raise ValueError(f"count vector {tuple(n)} does not sum to k={k}")
    p = Fraction(multinomial_coefficient(n))
    for t, c in zip(theta, n):
        if c:  # 0**0 = 1
            p *= t ** c
    return p


def count_vectors(m: int, k: int):
    """Every non-negative integer vector of length m summing to k."""
    for cut in itertools.combinations(range(k + m - 1), m - 1):
        bounds = (-1,) + cut + (k + m - 1,)
        yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(m))


def iid_joint(theta: Sequence, k: int) -> dict[tuple[int, ...], Fraction]:
    """Joint pmf of k independent draws under theta, over every sequence."""
    theta = check_theta(theta)
    joint = {}
    for seq in itertools.product(range(1, len(theta) + 1), repeat=k):
        p = Fraction(1)
        for x in seq:
            p *= theta[x - 1]
        joint[seq] = p
    return joint


@dataclass(frozen=True)
class ExchangeabilityResult:
    exchangeable: bool
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self):
        return self.exchangeable


def exchangeability_check(joint: Mapping[tuple[int, ...], object], m: int, k: int,
                          cap: int = DEFAULT_SEQUENCE_CAP) -> ExchangeabilityResult:
    """Every sequence must have the probability of each of its permutations.

    Missing sequences have probability 0.  Sequences are walked in
    lexicographic order; the first member of each permutation class is its
    sorted form, and the first later member that differs is reported.
    """
    if m ** k > cap:
        raise ValueError(f"{m}^{k} sequences exceed the enumeration cap {cap}")
    for seq in joint:
        if len(seq) != k or any(not 1 <= x <= m for x in seq):
            raise ValueError(f"sequence {seq} is not in {{1..{m}}}^{k}")
    probs = {seq: as_fraction(p) for seq, p in joint.items()}
    total = sum(probs.values(), Fraction(0))
    if total != 1:
        raise ValueError(f"joint pmf sums to {total}, not 1")
    first_seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for seq in itertools.product(range(1, m + 1), repeat=k):
        key = tuple(sorted(seq))
        rep = first_seen.setdefault(key, seq)
        if probs.get(seq, 0) != probs.get(rep, 0):
            return ExchangeabilityResult(False, (rep, seq))
    return ExchangeabilityResult(True)


class Prop(enum.Enum):
    """Beliefs about one fixed category a."""

    POSSIBLE = "possible(a)"
    IMPOSSIBLE = "impossible(a)"
    PROB_ZERO = "P(x_i=a)=0"
    PROB_POSITIVE = "P(x_i=a)>0"
    THETA_ZERO_SURE = "Pr(theta_a=0)=1"
    THETA_POSITIVE_SIGNIFICANT = "Pr(theta_a>0)>0"

    def __str__(self):
        return self.value

    @property
    def opposite(self) -> "Prop":
        return _OPPOSITES[self]


_OPPOSITES = {
    Prop.POSSIBLE: Prop.IMPOSSIBLE,
    Prop.IMPOSSIBLE: Prop.POSSIBLE,
    Prop.PROB_ZERO: Prop.PROB_POSITIVE,
    Prop.PROB_POSITIVE: Prop.PROB_ZERO,
    Prop.THETA_ZERO_SURE: Prop.THETA_POSITIVE_SIGNIFICANT,
    Prop.THETA_POSITIVE_SIGNIFICANT: Prop.THETA_ZERO_SURE,
}

# (name, premise, conclusion, needs exchangeability)
RULES = (
    ("R1", Prop.IMPOSSIBLE, Prop.PROB_ZERO, False),
    ("R2", Prop.THETA_ZERO_SURE, Prop.PROB_ZERO, True),
    ("R2", Prop.PROB_ZERO, Prop.THETA_ZERO_SURE, True),
    ("R3", Prop.THETA_POSITIVE_SIGNIFICANT, Prop.PROB_POSITIVE, True),
    ("R3", Prop.PROB_POSITIVE, Prop.THETA_POSITIVE_SIGNIFICANT, True),
    ("R4", Prop.PROB_ZERO, Prop.IMPOSSIBLE, True),
)


@dataclass(frozen=True)
class BeliefState:
    propositions: frozenset = frozenset()
    exchangeable: bool = False


@dataclass(frozen=True)
class Derivation:
    rule: str
    premise: Prop
    conclusion: Prop

    def __str__(self):
        return f"{self.rule}: {self.premise} => {self.conclusion}"


@dataclass(frozen=True)
class BeliefClosure:
    state: BeliefState
    trace: tuple[Derivation, ...]
    contradictions: tuple[tuple[Prop, Prop], ...]

    @property
    def consistent(self) -> bool:
        return not self.contradictions


def belief_closure(b: BeliefState) -> BeliefClosure:
    """Apply R1..R4 to a fixed point.

    R1 is the correspondence axiom (impossible outcomes have probability 0).
    R2 and R3 are the multinomial equivalences between the trial
    probability and the long-run proportion; R4 (probability 0 forces
    impossibility) comes from exchangeability.  R2..R4 fire only when the
    state is exchangeable.
    """
    props = set(b.propositions)
    trace = []
    changed = True
    while changed:
        changed = False
        for name, premise, conclusion, needs_exch in RULES:
            if needs_exch and not b.exchangeable:
                continue
            if premise in props and conclusion not in props:
                props.add(conclusion)
                trace.append(Derivation(name, premise, conclusion))
                changed = True
    order = list(Prop)
    contradictions = tuple(
        (p, p.opposite) for p in order
        if p in props and p.opposite in props and order.index(p) < order.index(p.opposite)
    )
    return BeliefClosure(BeliefState(frozenset(props), b.exchangeable),
                         tuple(trace), contradictions)


def parse_prop(token: str) -> Prop:
    try:
        return Prop(token)
    except ValueError:
        known = ", ".join(p.value for p in Prop)
        raise ValueError(f"unknown proposition {token!r}; expected one of {known}") from None


@dataclass(frozen=True)
class SimulationResult:
    seed: int
    theta: tuple[Fraction, ...]
    sequence: TrialSequence
    table: tuple[tuple[int, tuple[float, ...]], ...]

    @property
    def final_estimate(self) -> tuple[float, ...]:
        return self.table[-1][1]

    def table_text(self, delimiter: str = ",") -> str:
        m = len(self.theta)
        lines = [delimiter.join(["k"] + [f"theta_{a}" for a in range(1, m + 1)])]
        for k, est in self.table:
            lines.append(delimiter.join([str(k)] + [f"{e:.6f}" for e in est]))
        return "\n".join(lines) + "\n"


def checkpoints(k: int) -> list[int]:
    """Powers of two up to k, then k itself."""
    points = []
    c = 1
    while c <= k:
        points.append(c)
        c *= 2
    if points[-1] != k:
        points.append(k)
    return points


def simulate(theta: Sequence, k: int, seed: int) -> SimulationResult:
    """Draw k iid trials under theta from a PCG64 stream seeded by ``seed``.

    Each trial inverts the exact cumulative distribution at a uniform draw
    in [0, 1), so zero-probability categories never occur.
    """
    theta = check_theta(theta)
    if k < 1:
        raise ValueError("k must be at least 1")
    cumulative = np.array([float(c) for c in itertools.accumulate(theta)])
    cumulative[-1] = 1.0
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = np.searchsorted(cumulative, rng.random(k), side="right")
    m = len(theta)
    running = np.zeros(m, dtype=np.int64)
    table = []
    start = 0
    for c in checkpoints(k):
        running += np.bincount(draws[start:c], minlength=m)
        start = c
        table.append((c, tuple(float(n) / c for n in running)))
    return SimulationResult(seed, theta, TrialSequence(m, tuple(draws + 1)), tuple(table))
