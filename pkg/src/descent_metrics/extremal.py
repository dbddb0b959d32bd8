"""Closed forms for the maximum distance inside a descent class, and pairs
of class members that attain them.

Hamming: every nonempty proper S reaches n, except runs touching either end
(``{1..k}`` or ``{k..n-1}``), which stop at n-1 because a forced entry is
shared by the whole class. Pairs are built by six constructions; two of
them extend a pair for n-1 by inserting the value n.

l-infinity: closed forms are known for prefix runs ``[n-i]``, singletons
``{i}`` (n >= 6), and the complements of both families. Everything else
is reported as not covered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classes import ClassSpec
from .errors import DomainError, InvariantViolation
from .perm import MetricKind, Permutation, descent_set, distance, phi

__all__ = [
    "WitnessPair",
    "FormulaResult",
    "NOT_COVERED",
    "NotCovered",
    "hamming_case",
    "hamming_formula",
    "hamming_witness",
    "forced_entries",
    "linf_prefix_formula",
    "linf_prefix_witness",
    "linf_singleton_formula",
    "linf_singleton_witness",
    "linf_formula_via_complement",
    "linf_witness_via_complement",
    "prefix_position_bounds",
    "singleton_position_bounds",
]


@dataclass(frozen=True)
class WitnessPair:
    """Two distinct members of one descent class at a stated distance.

    The invariants are checked on construction, so a broken construction
    fails where it is built rather than where it is used.
    """

    sigma: Permutation
    rho: Permutation
    claimed_distance: int
    metric: MetricKind
    label: str = ""

    def __post_init__(self) -> None:
        if self.sigma == self.rho:
            raise InvariantViolation(f"witness members coincide: {self.sigma}")
        if len(self.sigma) != len(self.rho):
            raise InvariantViolation("witness members have different lengths")
        if descent_set(self.sigma) != descent_set(self.rho):
            raise InvariantViolation(
                f"{self.sigma} and {self.rho} lie in different descent classes"
            )
        actual = distance(self.sigma, self.rho, self.metric)
        if actual != self.claimed_distance:
            raise InvariantViolation(
                f"{self.metric.value} distance of ({self.sigma}, {self.rho}) is {actual}, "
                f"claimed {self.claimed_distance}"
            )

    @property
    def spec(self) -> ClassSpec:
        return ClassSpec(len(self.sigma), descent_set(self.sigma))

    def to_lines(self) -> list[str]:
        meta = f"# metric={self.metric.short} distance={self.claimed_distance}"
        if self.label:
            meta += f" case={self.label}"
        return [str(self.sigma), str(self.rho), meta]

    def to_dict(self) -> dict:
        return {
            "sigma": list(self.sigma.entries),
            "rho": list(self.rho.entries),
            "metric": self.metric.value,
            "distance": self.claimed_distance,
            "case": self.label,
        }

    @classmethod
    def from_lines(cls, lines: list[str]) -> WitnessPair:
        body = [ln for ln in lines if ln.strip()]
        if len(body) != 3 or not body[2].startswith("#"):
            raise ValueError("expected two permutation lines and one metadata line")
        fields = dict(part.split("=", 1) for part in body[2].lstrip("# ").split())
        return cls(
            Permutation.parse(body[0]),
            Permutation.parse(body[1]),
            int(fields["distance"]),
            MetricKind.parse(fields["metric"]),
            fields.get("case", ""),
        )


@dataclass(frozen=True)
class FormulaResult:
    value: int
    case_label: str


class NotCovered:
    """Marker for l-infinity classes with no known closed form."""

    _instance: Optional[NotCovered] = None

    def __new__(cls) -> NotCovered:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_COVERED"

    def __bool__(self) -> bool:
        return False


NOT_COVERED = NotCovered()


# ---------------------------------------------------------------------------
# shape helpers


def _is_run(indices: tuple[int, ...]) -> bool:
    return bool(indices) and indices[-1] - indices[0] == len(indices) - 1


def _prefix_run_length(spec: ClassSpec) -> Optional[int]:
    """k if S = {1..k}, else None."""
    s = spec.indices
    if _is_run(s) and s[0] == 1:
        return s[-1]
    return None


def _suffix_run_start(spec: ClassSpec) -> Optional[int]:
    """k if S = {k..n-1}, else None."""
    s = spec.indices
    if _is_run(s) and s[-1] == spec.n - 1:
        return s[0]
    return None


def _require_hamming_domain(spec: ClassSpec) -> None:
    if spec.n < 3:
        raise DomainError(f"the Hamming closed form needs n >= 3, got n={spec.n}")
    if not spec.s.is_proper_nonempty:
        raise DomainError(f"{spec}: S must be nonempty and proper in [n-1]")


# ---------------------------------------------------------------------------
# Hamming


def hamming_case(spec: ClassSpec) -> int:
    """Which of the six constructions handles ``spec`` (1..6).

    Exactly one applies to every nonempty proper S when n >= 3; anything
    else is an :class:`InvariantViolation`.
    """
    _require_hamming_domain(spec)
    n, s = spec.n, spec.indices
    top = n - 1
    k_pre = _prefix_run_length(spec)
    k_suf = _suffix_run_start(spec)
    head = s[:-1] if s[-1] == top else None
    head_k = head[-1] if head and _is_run(head) and head[0] == 1 else None
    tail_k = s[0] if _is_run(s) and s[-1] == n - 2 else None

    matches = []
    if k_pre is not None and k_pre <= n - 2:
        matches.append(1)
    if k_suf is not None and k_suf >= 2:
        matches.append(2)
    if head_k is not None and head_k <= n - 3:
        matches.append(3)
    if tail_k is not None and 2 <= tail_k <= n - 2:
        matches.append(4)
    if top not in s and 1 not in matches and 4 not in matches:
        matches.append(5)
    if top in s and 2 not in matches and 3 not in matches:
        matches.append(6)
    if len(matches) != 1:
        raise InvariantViolation(f"{spec} matched cases {matches}, expected exactly one")
    return matches[0]


def hamming_formula(spec: ClassSpec) -> FormulaResult:
    """n-1 for runs touching index 1 or n-1, otherwise n."""
    case = hamming_case(spec)
    value = spec.n - 1 if case in (1, 2) else spec.n
    return FormulaResult(value, f"Hamming/Case{case}")


def _case1(n: int, k: int) -> tuple[list[int], list[int]]:
    sigma = [n - j for j in range(k)] + list(range(1, n - k + 1))
    rho = list(range(k + 1, 1, -1)) + [1] + list(range(k + 2, n + 1))
    return sigma, rho


def _case2(n: int, k: int) -> tuple[list[int], list[int]]:
    sigma = list(range(1, k)) + list(range(n, k - 1, -1))
    rho = list(range(n - k + 1, n)) + [n] + list(range(n - k, 0, -1))
    return sigma, rho


def _case3(n: int, k: int) -> tuple[list[int], list[int]]:
    sigma = [n - j for j in range(k)] + list(range(1, n - k - 1)) + [n - k, n - k - 1]
    rho = [n - 1 - j for j in range(k)] + list(range(2, n - k)) + [n, 1]
    return sigma, rho


def _case4(n: int, k: int) -> tuple[list[int], list[int]]:
    sigma = list(range(1, k)) + list(range(n - 1, k - 1, -1)) + [n]
    rho = list(range(n - k, n - 1)) + [n] + list(range(n - k - 1, 0, -1)) + [n - 1]
    return sigma, rho


def _orient(pair: WitnessPair, rho_ok) -> tuple[list[int], list[int]]:
    """Assign roles to a recursive pair so ``rho_ok(rho)`` holds.

    If both orientations work, the lexicographically smaller member is sigma.
    """
    a, b = sorted((pair.sigma, pair.rho))
    a_l, b_l = list(a.entries), list(b.entries)
    if rho_ok(b_l):
        return a_l, b_l
    if rho_ok(a_l):
        return b_l, a_l
    raise InvariantViolation(f"no orientation of ({a}, {b}) satisfies the lift condition")


def _case5(spec: ClassSpec) -> tuple[list[int], list[int]]:
    # pair for (S, n-1) at distance n-1, lifted by appending n
    n = spec.n
    inner = hamming_witness(ClassSpec.of(n - 1, spec.indices))
    sigma, rho = _orient(inner, lambda r: r[-1] != n - 1)
    sigma = sigma + [n]
    rho = [n if v == n - 1 else v for v in rho] + [n - 1]
    return sigma, rho


def _case6(spec: ClassSpec) -> tuple[list[int], list[int]]:
    # S = S' + {n-1}; lift a pair for (S', n-1) by inserting n before the
    # final descent run
    n = spec.n
    inner_s = spec.indices[:-1]
    inner = hamming_witness(ClassSpec.of(n - 1, inner_s))
    if n - 2 in inner_s:
        k = n - 2
        while k - 1 in inner_s:
            k -= 1
        if not 3 <= k <= n - 2:
            raise InvariantViolation(f"{spec}: descent run start {k} outside 3..{n - 2}")
    else:
        k = n - 1
    # positions are 1-based; rho's entry at position k must not be n-1
    sigma, rho = _orient(inner, lambda r: r[k - 1] != n - 1)
    j = rho.index(n - 1) + 1
    if j >= k - 1:
        raise InvariantViolation(f"{spec}: value n-1 at position {j}, expected before {k - 1}")
    sigma = sigma[: k - 1] + [n] + sigma[k - 1 :]
    rho = [n if v == n - 1 else v for v in rho]
    rho = rho[: k - 1] + [n - 1] + rho[k - 1 :]
    return sigma, rho



def hamming_witness(spec: ClassSpec) -> WitnessPair:
    """A pair in D(S;n) whose Hamming distance equals :func:`hamming_formula`."""
    case = hamming_case(spec)
    n, s = spec.n, spec.indices
    if case == 1:
        sigma, rho = _case1(n, s[-1])
    elif case == 2:
        sigma, rho = _case2(n, s[0])
    elif case == 3:
        sigma, rho = _case3(n, s[-2])
    elif case == 4:
        sigma, rho = _case4(n, s[0])
    elif case == 5:
        sigma, rho = _case5(spec)
    else:
        sigma, rho = _case6(spec)
    pair = WitnessPair(
        Permutation(tuple(sigma)),
        Permutation(tuple(rho)),
        n - 1 if case in (1, 2) else n,
        MetricKind.HAMMING,
        f"Hamming/Case{case}",
    )
    if pair.spec != spec:
        raise InvariantViolation(f"case {case} built a pair in {pair.spec}, wanted {spec}")
    return pair


def forced_entries(spec: ClassSpec) -> dict[int, int]:
    """Positions whose value is the same for every member of a run class.

    ``{1..k}`` forces 1 at position k+1; ``{k..n-1}`` forces n at position k.
    """
    out: dict[int, int] = {}
    k = _prefix_run_length(spec)
    if k is not None:
        out[k + 1] = 1
    k = _suffix_run_start(spec)
    if k is not None:
        out[k] = spec.n
    return out


# ---------------------------------------------------------------------------
# l-infinity


def _check_prefix_args(n: int, i: int) -> None:
    if n < 3:
        raise DomainError(f"prefix-run closed form needs n >= 3, got n={n}")
    if not 2 <= i <= n - 1:
        raise DomainError(f"prefix-run closed form needs 2 <= i <= n-1, got i={i}, n={n}")


def linf_prefix_formula(n: int, i: int) -> FormulaResult:
    """Max l-infinity distance in D([n-i];n): max(i-1, n-i)."""
    _check_prefix_args(n, i)
    if i - 1 >= n - i:
        return FormulaResult(i - 1, "LInf/Prefix/i-1")
    return FormulaResult(n - i, "LInf/Prefix/n-i")


def linf_prefix_witness(n: int, i: int) -> WitnessPair:
    _check_prefix_args(n, i)
    m = n - i
    sigma = list(range(m + 1, 1, -1)) + [1] + list(range(m + 2, n + 1))
    rho = list(range(n, i, -1)) + list(range(1, i + 1))
    res = linf_prefix_formula(n, i)
    return WitnessPair(
        Permutation(tuple(sigma)), Permutation(tuple(rho)), res.value, MetricKind.LINF, res.case_label
    )


def _check_singleton_args(n: int, i: int) -> None:
    if n < 6:
        raise DomainError(f"singleton closed form is proved only for n >= 6, got n={n}")
    if not 1 <= i <= n - 1:
        raise DomainError(f"singleton descent index must be in 1..{n - 1}, got {i}")


def linf_singleton_formula(n: int, i: int) -> FormulaResult:
    """Max l-infinity distance in D({i};n) for n >= 6."""
    _check_singleton_args(n, i)
    if i in (1, n - 1):
        return FormulaResult(n - 2, "LInf/Singleton/end")
    if i <= n // 2:
        return FormulaResult(n - i, "LInf/Singleton/lower")
    return FormulaResult(i, "LInf/Singleton/upper")


def linf_singleton_witness(n: int, i: int) -> WitnessPair:
    _check_singleton_args(n, i)
    sigma = list(range(1, i)) + [i + 1, i] + list(range(i + 2, n + 1))
    rho = list(range(n - i + 1, n + 1)) + list(range(1, n - i + 1))
    res = linf_singleton_formula(n, i)
    return WitnessPair(
        Permutation(tuple(sigma)), Permutation(tuple(rho)), res.value, MetricKind.LINF, res.case_label
    )


def _covered_family(spec: ClassSpec) -> Optional[tuple[str, int, bool]]:
    """(family, i, mirrored) for the l-infinity families with a closed form.

    ``mirrored`` means the closed form applies to the complement of S.
    """
    n = spec.n
    for mirrored, target in ((False, spec), (True, spec.complement())):
        k = _prefix_run_length(target)
        if k is not None and k <= n - 2:
            return "prefix", n - k, mirrored
    if n >= 6:
        for mirrored, target in ((False, spec), (True, spec.complement())):
            if len(target.indices) == 1:
                return "singleton", target.indices[0], mirrored
    return None


def linf_formula_via_complement(spec: ClassSpec) -> FormulaResult | NotCovered:
    """Closed-form l-infinity maximum, using that S and its complement share it.

    Returns :data:`NOT_COVERED` when neither S nor its complement is a prefix
    run or (for n >= 6) a singleton.
    """
    if spec.n < 3:
        raise DomainError(f"needs n >= 3, got n={spec.n}")
    if not spec.s.is_proper_nonempty:
        raise DomainError(f"{spec}: S must be nonempty and proper in [n-1]")
    fam = _covered_family(spec)
    if fam is None:
        return NOT_COVERED
    family, i, mirrored = fam
    res = linf_prefix_formula(spec.n, i) if family == "prefix" else linf_singleton_formula(spec.n, i)
    if mirrored:
        return FormulaResult(res.value, res.case_label + "/complement")
    return res


def linf_witness_via_complement(spec: ClassSpec) -> WitnessPair | NotCovered:
    """Witness for a covered l-infinity class, reflected when S is a complement."""
    if not spec.s.is_proper_nonempty or spec.n < 3:
        raise DomainError(f"{spec}: S must be nonempty and proper in [n-1], n >= 3")
    fam = _covered_family(spec)
    if fam is None:
        return NOT_COVERED
    family, i, mirrored = fam
    base = linf_prefix_witness(spec.n, i) if family == "prefix" else linf_singleton_witness(spec.n, i)
    if not mirrored:
        return base
    return WitnessPair(
        phi(base.sigma), phi(base.rho), base.claimed_distance, MetricKind.LINF,
        base.label + "/complement",
    )


def prefix_position_bounds(n: int, i: int) -> list[tuple[int, int]]:
    """Per-position (low, high) value bounds valid for every member of D([n-i];n)."""
    _check_prefix_args(n, i)
    m = n - i
    bounds = []
    for j in range(1, n + 1):
        if j <= m:
            bounds.append((n - (i - 1) - (j - 1), n - (j - 1)))
        elif j == m + 1:
            bounds.append((1, 1))
        else:
            bounds.append((j - m, j))
    return bounds


def singleton_position_bounds(n: int, i: int) -> list[tuple[int, int]]:
    """Per-position (low, high) value bounds valid for every member of D({i};n)."""
    if not 1 <= i <= n - 1:
        raise DomainError(f"descent index must be in 1..{n - 1}, got {i}")
    bounds = []
    for j in range(1, n + 1):
        if j < i:
            bounds.append((j, n - (i - j)))
        elif j == i:
            bounds.append((i + 1, n))
        elif j == i + 1:
            bounds.append((1, i))
        else:
            bounds.append((j - i, j))
    return bounds
