"""Enumeration and counting of descent classes D(S;n).

Three independent routes to the same class:

* :func:`enumerate_class` -- direct backtracking generator in lexicographic
  order, with exact pruning so it never explores a dead prefix;
* :func:`enumerate_naive` -- filter of all n! permutations (test oracle);
* :func:`count` -- inclusion-exclusion over compositions of n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import ClassTooLarge, InvalidDescentSet, OracleBoundExceeded
from .perm import DescentSet, Permutation, complement, descent_set

__all__ = [
    "ClassSpec",
    "enumerate_class",
    "enumerate_naive",
    "materialize",
    "count",
    "completion_counts",
    "write_class",
    "read_class",
    "ORACLE_BOUND",
    "MATERIALIZE_CAP",
]

ORACLE_BOUND = 10
MATERIALIZE_CAP = 10**6


@dataclass(frozen=True)
class ClassSpec:
    """Identifies D(S;n): all permutations of ``[n]`` with descent set ``s``."""

    n: int
    s: DescentSet

    def __post_init__(self) -> None:
        if self.s.n != self.n:
            raise InvalidDescentSet(f"descent set built for n={self.s.n}, class has n={self.n}")

    @classmethod
    def of(cls, n: int, indices: Iterable[int] = ()) -> ClassSpec:
        return cls(n, DescentSet(n, tuple(indices)))

    @classmethod
    def parse(cls, n: int, text: str) -> ClassSpec:
        return cls(n, DescentSet.parse(text, n))

    @property
    def indices(self) -> tuple[int, ...]:
        return self.s.indices

    def complement(self) -> ClassSpec:
        return ClassSpec(self.n, complement(self.s))

    def __str__(self) -> str:
        return f"D({self.s.braces()};{self.n})"


def completion_counts(spec: ClassSpec) -> list[list[int]]:
    """``table[p][r]``: ways to fill positions p..n (1-based p) when the entry
    at position p has rank r (1-based) among the values not yet placed.

    Row p has ``n - p + 1`` ranks. The generator uses this to skip any value
    whose rank admits no completion.
    """
    n = spec.n
    desc = set(spec.indices)
    table: list[list[int]] = [[] for _ in range(n + 2)]
    table[n] = [0, 1]  # index 0 unused
    for p in range(n - 1, 0, -1):
        m = n - p + 1
        nxt = table[p + 1]
        # prefix[r] = sum of nxt[1..r]
        prefix = [0] * m
        for r in range(1, m):
            prefix[r] = prefix[r - 1] + nxt[r]
        row = [0] * (m + 1)
        for r in range(1, m + 1):
            if p in desc:
                # next entry smaller: rank among remaining in 1..r-1
                row[r] = prefix[r - 1]
            else:
                # next entry larger: rank among remaining in r..m-1
                row[r] = prefix[m - 1] - prefix[r - 1]
        table[p] = row
    return table


def enumerate_class(spec: ClassSpec) -> Iterator[Permutation]:
    """Yield every member of D(S;n) once, lexicographically.

    Values are placed left to right, smallest first; a value is committed
    only if it respects the required ascent/descent with its predecessor
    and the suffix table says the remaining positions can still be filled.
    """
    n = spec.n
    desc = [False] * (n + 1)
    for i in spec.indices:
        desc[i] = True
    table = completion_counts(spec)
    prefix: list[int] = []
    remaining = list(range(1, n + 1))  # kept sorted

    def extend(pos: int) -> Iterator[Permutation]:
        if pos > n:
            yield Permutation(tuple(prefix))
            return
        row = table[pos]
        last = prefix[-1] if prefix else None
        for idx, v in enumerate(remaining):
            if last is not None:
                if desc[pos - 1] and v > last:
                    break
                if not desc[pos - 1] and v < last:
                    continue
            if row[idx + 1] == 0:
                continue
            prefix.append(v)
            del remaining[idx]
            yield from extend(pos + 1)
            remaining.insert(idx, v)
            prefix.pop()

    yield from extend(1)


def enumerate_naive(spec: ClassSpec, *, bound: int = ORACLE_BOUND) -> list[Permutation]:
    """Filter all n! permutations by descent set. Reference oracle only."""
    if spec.n > bound:
        raise OracleBoundExceeded(
            f"naive filter refuses n={spec.n} > {bound}; use enumerate_class instead"
        )
    out = []
    for entries in itertools.permutations(range(1, spec.n + 1)):
        p = Permutation(entries)
        if descent_set(p) == spec.s:
            out.append(p)
    return out


def materialize(spec: ClassSpec, *, cap: int = MATERIALIZE_CAP) -> list[Permutation]:
    """The whole class as a list, refusing classes with more than ``cap`` members."""
    size = count(spec)
    if size > cap:
        raise ClassTooLarge(f"{spec} has {size} members, above the cap of {cap}")
    return list(enumerate_class(spec))


def _composition(n: int, cuts: Sequence[int]) -> list[int]:
    edges = [0, *cuts, n]
    return [b - a for a, b in zip(edges, edges[1:])]


def _multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for k in parts:
        out //= factorial(k)
    return out


def count(spec: ClassSpec) -> int:
    """|D(S;n)| by inclusion-exclusion.

    The number of permutations whose descent set is contained in T is the
    multinomial coefficient of the composition of n cut at T; Moebius
    inversion over subsets of S gives the exact count.
    """
    s = spec.indices
    total = 0
    for k in range(len(s) + 1):
        sign = -1 if (len(s) - k) % 2 else 1
        for t in itertools.combinations(s, k):
            total += sign * _multinomial(_composition(spec.n, t))
    return total


def write_class(spec: ClassSpec, perms: Iterable[Permutation], stream) -> int:
    """Write the file form: header line then one spaced permutation per line."""
    stream.write(f"# n={spec.n} S={spec.s}\n")
    written = 0
    for p in perms:
        stream.write(f"{p}\n")
        written += 1
    return written


def read_class(lines: Iterable[str]) -> tuple[ClassSpec, list[Permutation]]:
    """Inverse of :func:`write_class`."""
    it = iter(lines)
    header = next(it).strip()
    if not header.startswith("#"):
        raise ValueError(f"missing header line, got {header!r}")
    fields = dict(part.split("=", 1) for part in header.lstrip("# ").split())
    n = int(fields["n"])
    spec = ClassSpec.parse(n, fields.get("S", ""))
    perms = [Permutation.parse(line) for line in it if line.strip()]
    return spec, perms
