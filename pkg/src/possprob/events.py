"""Finite outcome spaces, events and atom-represented sigma-fields.

Events are plain ``frozenset`` objects of outcome labels.  A sigma-field on a
finite space is stored by its atoms (the finest partition it induces); the
field itself is every union of atoms, the empty union included.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

Event = frozenset

DEFAULT_MAX_ATOMS = 20


class UnknownOutcomeError(ValueError):
    """An event refers to a label that is not in the outcome space."""

    def __init__(self, label, space: "OutcomeSpace"):
        self.label = label
        super().__init__(
            f"unknown outcome {label!r}; declared outcomes are "
            f"{', '.join(space.outcomes)}"
        )


class EnumerationCapError(ValueError):
    """Exhaustive enumeration requested on a field with too many atoms."""

    def __init__(self, n_atoms: int, cap: int):
        self.n_atoms = n_atoms
        self.cap = cap
        super().__init__(
            f"field has {n_atoms} atoms; enumeration cap is {cap} "
            f"(2^{n_atoms} events)"
        )


@dataclass(frozen=True)
class OutcomeSpace:
    """The sample space: distinct labels in declaration order."""

    outcomes: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        if not outcomes:
            raise ValueError("an outcome space needs at least one outcome")
        seen = set()
        for label in outcomes:
            if label in seen:
                raise ValueError(f"duplicate outcome label {label!r}")
            seen.add(label)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(outcomes)})

    def __len__(self):
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)

    def __contains__(self, label):
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownOutcomeError(label, self) from None

    @property
    def full(self) -> Event:
        return frozenset(self.outcomes)

    def event(self, labels: Iterable[str] = ()) -> Event:
        """Build an event, rejecting labels outside the space."""
        if isinstance(labels, str):
            labels = (labels,)
        labels = frozenset(labels)
        for label in labels:
            if label not in self._index:
                raise UnknownOutcomeError(label, self)
        return labels

    def complement(self, e: Iterable[str]) -> Event:
        return self.full - frozenset(e)

    def ordered(self, e: Iterable[str]) -> list[str]:
        """Members of ``e`` in declaration order."""
        return sorted(e, key=self.index)

    def format(self, e: Iterable[str]) -> str:
        return "{" + ",".join(self.ordered(e)) + "}"

    def sort_key(self, e: Iterable[str]) -> tuple[int, ...]:
        """Lexicographic key over declaration indices."""
        return tuple(sorted(self.index(s) for s in e))


@dataclass(frozen=True)
class SigmaField:
    """A finite sigma-field given by its atoms.

    Atoms are kept in order of their first outcome's declaration index, so
    two fields with the same partition compare equal.
    """

    space: OutcomeSpace
    atoms: tuple[Event, ...]
    _atom_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        atom_of = {}
        for i, atom in enumerate(self.atoms):
            if not atom:
                raise ValueError("atoms must be non-empty")
            for label in atom:
                if label not in self.space:
                    raise UnknownOutcomeError(label, self.space)
                if label in atom_of:
                    raise ValueError(f"atoms overlap at outcome {label!r}")
                atom_of[label] = i
        missing = [s for s in self.space if s not in atom_of]
        if missing:
            raise ValueError(f"atoms do not cover outcomes {', '.join(missing)}")
        atoms = tuple(
            sorted((frozenset(a) for a in self.atoms),
                   key=lambda a: min(self.space.index(s) for s in a))
        )
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(
            self, "_atom_of",
            {s: i for i, atom in enumerate(atoms) for s in atom},
        )

    @classmethod
    def discrete(cls, space: OutcomeSpace) -> "SigmaField":
        """The power set of ``space``: every outcome its own atom."""
        return cls(space, tuple(frozenset([s]) for s in space))

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def atom_indices(self, e: Iterable[str]) -> frozenset[int]:
        """Indices of atoms meeting ``e``."""
        try:
            return frozenset(self._atom_of[s] for s in e)
        except KeyError as err:
            raise UnknownOutcomeError(err.args[0], self.space) from None

    def contains(self, e: Iterable[str]) -> bool:
        e = frozenset(e)
        touched = self.atom_indices(e)
        return sum(len(self.atoms[i]) for i in touched) == len(e)

    def union_of(self, indices: Iterable[int]) -> Event:
        return frozenset().union(*(self.atoms[i] for i in indices))

    def iter_events(self, max_atoms: int = DEFAULT_MAX_ATOMS) -> Iterator[Event]:
        """All unions of atoms; bit ``i`` of the counter selects atom ``i``."""
        n = self.n_atoms
        if n > max_atoms:
            raise EnumerationCapError(n, max_atoms)
        for mask in range(1 << n):
            yield self.union_of(i for i in range(n) if mask >> i & 1)

    def enumerate_events(self, max_atoms: int = DEFAULT_MAX_ATOMS) -> list[Event]:
        return list(self.iter_events(max_atoms))

    def restrict(self, s0: Iterable[str]) -> "SigmaField":
        """The trace field on a measurable ``s0``: atoms lying inside it."""
        s0 = frozenset(s0)
        if not self.contains(s0):
            raise ValueError(f"{self.space.format(s0)} is not in the field")
        sub = OutcomeSpace(tuple(self.space.ordered(s0)))
        return SigmaField(sub, tuple(a for a in self.atoms if a <= s0))


def generate_field(space: OutcomeSpace, generators: Iterable[Iterable[str]] = ()
                   ) -> SigmaField:
    """Coarsest field containing every generator.

    Two outcomes share an atom exactly when they belong to the same
    generators.
    """
    generators = [space.event(g) for g in generators]
    classes: dict[tuple[bool, ...], list[str]] = {}
    for s in space:
        signature = tuple(s in g for g in generators)
        classes.setdefault(signature, []).append(s)
    return SigmaField(space, tuple(frozenset(c) for c in classes.values()))


def contains(sigma: SigmaField, e: Iterable[str]) -> bool:
    return sigma.contains(e)


def enumerate_events(sigma: SigmaField, max_atoms: int = DEFAULT_MAX_ATOMS
                     ) -> list[Event]:
    return sigma.enumerate_events(max_atoms)
