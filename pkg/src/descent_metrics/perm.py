"""Permutations in one-line notation, descent sets, the two metrics and
the value-reflection map.

Everything here is 1-based: ``Permutation((2, 1, 3))`` sends 1 -> 2,
2 -> 1, 3 -> 3, and its descent set is ``{1}``.

>>> p = Permutation.parse("58327164")
>>> descent_set(p).indices
(2, 3, 5, 7)
>>> str(phi(Permutation.parse("2413")))
'3 1 4 2'
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import IncomparablePermutations, InvalidDescentSet, InvalidPermutation

__all__ = [
    "Permutation",
    "DescentSet",
    "MetricKind",
    "descent_set",
    "hamming",
    "linf",
    "distance",
    "phi",
    "complement",
    "all_descent_sets",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """An immutable permutation of ``1..n`` in one-line notation.

    Ordering is lexicographic on ``entries``.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n < 1:
            raise InvalidPermutation("a permutation needs at least one entry")
        if sorted(entries) != list(range(1, n + 1)):
            raise InvalidPermutation(f"{entries!r} is not a rearrangement of 1..{n}")

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read ``"5 8 3 2"`` or, for n <= 9, the compact form ``"5832"``."""
        text = text.strip()
        if " " in text or "," in text:
            parts = text.replace(",", " ").split()
            try:
                return cls(tuple(int(x) for x in parts))
            except ValueError as exc:
                if isinstance(exc, InvalidPermutation):
                    raise
                raise InvalidPermutation(f"cannot parse permutation {text!r}") from exc
        if not text.isdigit():
            raise InvalidPermutation(f"cannot parse permutation {text!r}")
        if len(text) > 9:
            raise InvalidPermutation(
                "compact digit form is ambiguous for n > 9; separate entries with spaces"
            )
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        """1-based entry access."""
        if not 1 <= i <= len(self.entries):
            raise IndexError(i)
        return self.entries[i - 1]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return " ".join(map(str, self.entries))

    def compact(self) -> str:
        """Digit-string form, as printed in tables; spaced form when n > 9."""
        if self.n > 9:
            return str(self)
        return "".join(map(str, self.entries))


@dataclass(frozen=True)
class DescentSet:
    """A subset of ``[n-1]``, stored sorted.

    ``n`` is part of the value: ``{1}`` for n=3 and ``{1}`` for n=4 are
    different descent classes and compare unequal.
    """

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidDescentSet(f"n must be >= 1, got {self.n}")
        indices = tuple(sorted(set(self.indices)))
        if len(indices) != len(tuple(self.indices)):
            raise InvalidDescentSet(f"repeated descent index in {self.indices!r}")
        for i in indices:
            if not 1 <= i <= self.n - 1:
                raise InvalidDescentSet(f"descent index {i} outside [1, {self.n - 1}]")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def parse(cls, text: str, n: int) -> DescentSet:
        """Read the comma-separated form ``"2,3,5,7"``; ``""`` is the empty set."""
        text = text.strip()
        if text in ("", "{}"):
            return cls(n, ())
        text = text.strip("{}")
        try:
            indices = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise InvalidDescentSet(f"cannot parse descent set {text!r}") from exc
        return cls(n, indices)

    @classmethod
    def full(cls, n: int) -> DescentSet:
        return cls(n, tuple(range(1, n)))

    def __contains__(self, i: object) -> bool:
        return i in self.indices

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return ",".join(map(str, self.indices))

    def braces(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"

    @property
    def is_empty(self) -> bool:
        return not self.indices

    @property
    def is_full(self) -> bool:
        return len(self.indices) == self.n - 1

    @property
    def is_proper_nonempty(self) -> bool:
        return not self.is_empty and not self.is_full


class MetricKind(enum.Enum):
    HAMMING = "hamming"
    LINF = "linf"

    @property
    def short(self) -> str:
        return "H" if self is MetricKind.HAMMING else "L"

    @classmethod
    def parse(cls, text: str) -> MetricKind:
        key = text.strip().lower()
        aliases = {"h": cls.HAMMING, "hamming": cls.HAMMING,
                   "l": cls.LINF, "linf": cls.LINF, "chebyshev": cls.LINF}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown metric {text!r}; use hamming or linf") from None


def descent_set(p: Permutation) -> DescentSet:
    e = p.entries
    return DescentSet(len(e), tuple(i + 1 for i in range(len(e) - 1) if e[i] > e[i + 1]))


def _check_lengths(p: Permutation, q: Permutation) -> None:
    if len(p.entries) != len(q.entries):
        raise IncomparablePermutations(
            f"cannot compare permutations of lengths {len(p.entries)} and {len(q.entries)}"
        )


def hamming(p: Permutation, q: Permutation) -> int:
    """Number of positions where ``p`` and ``q`` differ."""
    _check_lengths(p, q)
    return sum(a != b for a, b in zip(p.entries, q.entries))


def linf(p: Permutation, q: Permutation) -> int:
    """Largest absolute entrywise difference."""
    _check_lengths(p, q)
    return max(abs(a - b) for a, b in zip(p.entries, q.entries))


def distance(p: Permutation, q: Permutation, metric: MetricKind) -> int:
    if metric is MetricKind.HAMMING:
        return hamming(p, q)
    return linf(p, q)


def phi(p: Permutation) -> Permutation:
    """Reflect values: entry i becomes n + 1 - p[i]."""
    n1 = len(p.entries) + 1
    return Permutation(tuple(n1 - v for v in p.entries))


def complement(s: DescentSet) -> DescentSet:
    present = set(s.indices)
    return DescentSet(s.n, tuple(i for i in range(1, s.n) if i not in present))


def all_descent_sets(n: int, *, proper_nonempty: bool = False) -> Iterator[DescentSet]:
    """Every subset of ``[n-1]``, by size and then lexicographically."""
    sizes = range(1, n - 1) if proper_nonempty else range(n)
    for k in sizes:
        for indices in itertools.combinations(range(1, n), k):
            yield DescentSet(n, indices)
