"""Exhaustive min/max distance scans over descent classes, per-class reports,
and the sweep that checks every closed form against the scans.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .classes import MATERIALIZE_CAP, ClassSpec, count, enumerate_class, materialize
from .errors import BudgetExceeded, DegenerateClass
from .extremal import (
    NOT_COVERED,
    FormulaResult,
    NotCovered,
    WitnessPair,
    forced_entries,
    hamming_formula,
    hamming_witness,
    linf_formula_via_complement,
    linf_prefix_formula,
    linf_prefix_witness,
    linf_singleton_formula,
    linf_singleton_witness,
)
from .perm import DescentSet, MetricKind, Permutation, all_descent_sets, complement

__all__ = [
    "DEFAULT_BUDGET",
    "budget_from_env",
    "pair_count",
    "class_array",
    "brute_max",
    "brute_min",
    "ClassReport",
    "class_report",
    "SectionResult",
    "VerificationSummary",
    "verify_sweep",
    "ExploreRow",
    "explore_linf",
]

DEFAULT_BUDGET = 5 * 10**9
BUDGET_ENV = "DESCENT_METRICS_BUDGET"

# rows x columns x n cells materialized per block of the pairwise scan
_BLOCK_CELLS = 1 << 22


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return default
    return int(float(raw))


def pair_count(size: int) -> int:
    return size * (size - 1) // 2


def class_array(spec: ClassSpec, *, cap: int = MATERIALIZE_CAP) -> np.ndarray:
    """Members of the class as rows of an ``(m, n)`` int array, lexicographic."""
    perms = materialize(spec, cap=cap)
    if not perms:
        return np.zeros((0, spec.n), dtype=np.int16)
    return np.array([p.entries for p in perms], dtype=np.int16)


def _row_distances(block: np.ndarray, arr: np.ndarray, metric: MetricKind) -> np.ndarray:
    if metric is MetricKind.HAMMING:
        return (block[:, None, :] != arr[None, :, :]).sum(axis=2, dtype=np.int16)
    return np.abs(block[:, None, :] - arr[None, :, :]).max(axis=2)


def _scan(arr: np.ndarray, metric: MetricKind, want_max: bool, stop_at: Optional[int]):
    """Extreme distance over pairs (a, b), a < b, and the first pair reaching it.

    Rows are visited in order and a block only replaces the incumbent when it
    is strictly better, so the reported pair is the lexicographically first
    one regardless of ``stop_at``.
    """
    m, n = arr.shape
    rows_per_block = max(1, _BLOCK_CELLS // max(1, m * n))
    fill = -1 if want_max else np.iinfo(np.int16).max
    best: Optional[tuple[int, int, int]] = None
    for a0 in range(0, m - 1, rows_per_block):
        a1 = min(m - 1, a0 + rows_per_block)
        # columns start at row a0 + 1; mask b <= a inside the block
        d = _row_distances(arr[a0:a1], arr[a0 + 1 :], metric)
        d[np.arange(d.shape[1])[None, :] < np.arange(a1 - a0)[:, None]] = fill
        per_row = d.max(axis=1) if want_max else d.min(axis=1)
        value = int(per_row.max() if want_max else per_row.min())
        if best is not None and (value <= best[0] if want_max else value >= best[0]):
            continue
        r = int(np.flatnonzero(per_row == value)[0])
        b = a0 + 1 + int(np.flatnonzero(d[r] == value)[0])
        best = (value, a0 + r, b)
        if stop_at is not None and value == stop_at:
            break
    assert best is not None
    return best


def _prepare(spec: ClassSpec, budget: Optional[int]) -> np.ndarray:
    size = count(spec)
    if size < 2:
        raise DegenerateClass(f"{spec} has {size} member(s): no distinct pairs")
    pairs = pair_count(size)
    limit = budget_from_env() if budget is None else budget
    if pairs > limit:
        raise BudgetExceeded(
            f"{spec} needs {pairs} comparisons, budget is {limit}; raise it with --budget"
        )
    return class_array(spec)


def _extreme(spec, metric, want_max, budget, early_exit, arr=None):
    if arr is None:
        arr = _prepare(spec, budget)
    n = spec.n
    if early_exit:
        if want_max:
            stop = n if metric is MetricKind.HAMMING else n - 1
        else:
            stop = 2 if metric is MetricKind.HAMMING else 1
    else:
        stop = None
    value, a, b = _scan(arr, metric, want_max, stop)
    sigma = Permutation(tuple(int(x) for x in arr[a]))
    rho = Permutation(tuple(int(x) for x in arr[b]))
    label = "brute/max" if want_max else "brute/min"
    return value, WitnessPair(sigma, rho, value, metric, label)


def brute_max(
    spec: ClassSpec,
    metric: MetricKind,
    *,
    budget: Optional[int] = None,
    early_exit: bool = True,
) -> tuple[int, WitnessPair]:
    """Exact maximum distance over distinct pairs of the class.

    The witness is the lexicographically first pair (sigma < rho) attaining it.
    """
    return _extreme(spec, metric, True, budget, early_exit)


def brute_min(
    spec: ClassSpec,
    metric: MetricKind,
    *,
    budget: Optional[int] = None,
    early_exit: bool = True,
) -> tuple[int, WitnessPair]:
    """Exact minimum distance over distinct pairs of the class."""
    return _extreme(spec, metric, False, budget, early_exit)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ClassReport:
    spec: ClassSpec
    cardinality: int
    max_hamming: Optional[int] = None
    max_linf: Optional[int] = None
    min_hamming: Optional[int] = None
    min_linf: Optional[int] = None
    witness_max_h: Optional[WitnessPair] = None
    witness_max_l: Optional[WitnessPair] = None
    predicted_hamming: Optional[FormulaResult] = None
    # None: outside the domain (empty or full S); NOT_COVERED: no closed form
    predicted_linf: FormulaResult | NotCovered | None = None

    @property
    def agree_hamming(self) -> Optional[bool]:
        if self.predicted_hamming is None or self.max_hamming is None:
            return None
        return self.predicted_hamming.value == self.max_hamming

    @property
    def agree_linf(self) -> Optional[bool]:
        if not isinstance(self.predicted_linf, FormulaResult) or self.max_linf is None:
            return None
        return self.predicted_linf.value == self.max_linf

    @property
    def covered_linf(self) -> bool:
        return isinstance(self.predicted_linf, FormulaResult)

    def to_dict(self) -> dict:
        def formula(f):
            if isinstance(f, FormulaResult):
                return {"value": f.value, "case": f.case_label}
            if f is NOT_COVERED:
                return "not-covered"
            return None

        return {
            "n": self.spec.n,
            "S": list(self.spec.indices),
            "cardinality": self.cardinality,
            "max_hamming": self.max_hamming,
            "predicted_hamming": formula(self.predicted_hamming),
            "agree_hamming": self.agree_hamming,
            "max_linf": self.max_linf,
            "predicted_linf": formula(self.predicted_linf),
            "agree_linf": self.agree_linf,
            "min_hamming": self.min_hamming,
            "min_linf": self.min_linf,
            "witness_max_h": self.witness_max_h.to_dict() if self.witness_max_h else None,
            "witness_max_l": self.witness_max_l.to_dict() if self.witness_max_l else None,
        }

    def csv_row(self) -> dict:
        def opt(v):
            return "" if v is None else v

        def flag(v):
            return "" if v is None else str(v).lower()

        pred_l = self.predicted_linf
        return {
            "n": self.spec.n,
            "S": str(self.spec.s),
            "cardinality": self.cardinality,
            "max_h": opt(self.max_hamming),
            "pred_h": opt(self.predicted_hamming.value if self.predicted_hamming else None),
            "agree_h": flag(self.agree_hamming),
            "max_l": opt(self.max_linf),
            "pred_l": pred_l.value if isinstance(pred_l, FormulaResult) else "",
            "covered_l": flag(self.covered_linf if pred_l is not None else None),
            "min_h": opt(self.min_hamming),
            "min_l": opt(self.min_linf),
        }


CSV_COLUMNS = ("n", "S", "cardinality", "max_h", "pred_h", "agree_h",
               "max_l", "pred_l", "covered_l", "min_h", "min_l")


def class_report(
    spec: ClassSpec,
    *,
    budget: Optional[int] = None,
    metrics: Iterable[MetricKind] = (MetricKind.HAMMING, MetricKind.LINF),
    minima: bool = True,
) -> ClassReport:
    """Cardinality, brute-force extremes, closed-form predictions and witnesses."""
    metrics = tuple(metrics)
    report = ClassReport(spec, count(spec))
    in_domain = spec.n >= 3 and spec.s.is_proper_nonempty
    if in_domain:
        report.predicted_hamming = hamming_formula(spec)
        report.predicted_linf = linf_formula_via_complement(spec)
    if report.cardinality < 2:
        return report
    arr = _prepare(spec, budget)
    for metric in metrics:
        hi, w = _extreme(spec, metric, True, budget, True, arr)
        lo = _extreme(spec, metric, False, budget, True, arr)[0] if minima else None
        if metric is MetricKind.HAMMING:
            report.max_hamming, report.witness_max_h, report.min_hamming = hi, w, lo
        else:
            report.max_linf, report.witness_max_l, report.min_linf = hi, w, lo
    return report


def _scan_cost(spec: ClassSpec, scans: int = 4) -> int:
    return scans * pair_count(count(spec))


# ---------------------------------------------------------------------------
# verification sweep


@dataclass
class SectionResult:
    name: str
    description: str
    checked: int = 0
    disagreements: list[str] = field(default_factory=list)
    informational: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def check(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.disagreements.append(message)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "checked": self.checked,
            "disagreements": list(self.disagreements),
            "informational": list(self.informational),
        }


SECTIONS = {
    "hamming_max": "max Hamming distance equals the closed form and its constructed pair",
    "linf_prefix_run": "max l-inf over D([n-i];n) equals max(i-1, n-i) and its constructed pair",
    "linf_singleton": "max l-inf over D({i};n), n >= 6, equals the piecewise form and its pair",
    "linf_complement_families": "max l-inf over complements of prefix runs and singletons",
    "linf_complement_symmetry": "max l-inf of D(S;n) equals that of the complement class",
    "min_distance": "min Hamming distance is 2 and min l-inf distance is 1",
    "forced_entries": "run classes carry the forced value in every member",
}


@dataclass
class VerificationSummary:
    n_min: int
    n_max: int
    sections: dict[str, SectionResult]
    truncated: list[str] = field(default_factory=list)
    comparisons: int = 0

    @property
    def disagreements(self) -> int:
        return sum(len(s.disagreements) for s in self.sections.values())

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and not self.truncated

    def to_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "comparisons": self.comparisons,
            "truncated": list(self.truncated),
            "sections": [s.to_dict() for s in self.sections.values()],
        }

    def render(self) -> str:
        lines = [f"verification sweep n={self.n_min}..{self.n_max}"]
        for sec in self.sections.values():
            status = "ok" if sec.ok else "DISAGREE"
            lines.append(
                f"{sec.name:<26} checked={sec.checked:<5} disagreements={len(sec.disagreements):<3} {status}"
            )
            for msg in sec.disagreements:
                lines.append(f"  ! {msg}")
            for msg in sec.informational:
                lines.append(f"  informational (outside theorem domain): {msg}")
        for msg in self.truncated:
            lines.append(f"TRUNCATED: {msg}")
        lines.append(f"total disagreements: {self.disagreements}")
        return "\n".join(lines)


def _singleton_expression(n: int, i: int) -> int:
    """The piecewise singleton expression evaluated without its n >= 6 guard."""
    if i in (1, n - 1):
        return n - 2
    if i <= n // 2:
        return n - i
    return i


def _check_instance(spec: ClassSpec, budget: Optional[int]) -> ClassReport:
    return class_report(spec, budget=budget)


def verify_sweep(
    n_min: int = 3,
    n_max: int = 8,
    *,
    budget: Optional[int] = None,
    threads: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> VerificationSummary:
    """Check every closed form against exhaustive scans for each n in range.

    ``budget`` caps the total number of pair comparisons for the sweep. When
    the next n would exceed it, the sweep stops and records the truncation.
    """
    if n_min < 3:
        n_min = 3
    limit = budget_from_env() if budget is None else budget
    sections = {name: SectionResult(name, desc) for name, desc in SECTIONS.items()}
    summary = VerificationSummary(n_min, n_max, sections)
    sec = sections

    for n in range(n_min, n_max + 1):
        specs = [ClassSpec(n, s) for s in all_descent_sets(n, proper_nonempty=True)]
        cost = sum(_scan_cost(sp) for sp in specs)
        if summary.comparisons + cost > limit:
            summary.truncated.append(
                f"n={n}..{n_max} skipped: needs {cost} comparisons, "
                f"{limit - summary.comparisons} left of budget {limit}"
            )
            break
        summary.comparisons += cost
        if progress:
            progress(f"n={n}: {len(specs)} classes")
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                reports = list(pool.map(lambda sp: _check_instance(sp, limit), specs))
        else:
            reports = [_check_instance(sp, limit) for sp in specs]
        by_set = {r.spec.indices: r for r in reports}

        for r in reports:
            sp = r.spec
            tag = f"n={n} S={sp.s.braces()}"

            pred = hamming_formula(sp).value
            w = hamming_witness(sp)
            sec["hamming_max"].check(
                r.max_hamming == pred == w.claimed_distance,
                f"{tag}: brute {r.max_hamming}, formula {pred}, witness {w.claimed_distance}",
            )

            sec["min_distance"].check(
                r.min_hamming == 2 and r.min_linf == 1,
                f"{tag}: min Hamming {r.min_hamming}, min l-inf {r.min_linf}",
            )

            other = by_set[complement(sp.s).indices]
            sec["linf_complement_symmetry"].check(
                r.max_linf == other.max_linf,
                f"{tag}: {r.max_linf} vs complement {other.max_linf}",
            )

            s = sp.indices
            if s == tuple(range(1, len(s) + 1)):
                i = n - len(s)
                f = linf_prefix_formula(n, i).value
                pw = linf_prefix_witness(n, i)
                sec["linf_prefix_run"].check(
                    r.max_linf == f == pw.claimed_distance,
                    f"{tag} (i={i}): brute {r.max_linf}, formula {f}, witness {pw.claimed_distance}",
                )

            if len(s) == 1:
                i = s[0]
                if n >= 6:
                    f = linf_singleton_formula(n, i).value
                    sw = linf_singleton_witness(n, i)
                    sec["linf_singleton"].check(
                        r.max_linf == f == sw.claimed_distance,
                        f"{tag}: brute {r.max_linf}, formula {f}, witness {sw.claimed_distance}",
                    )
                else:
                    would = _singleton_expression(n, i)
                    sec["linf_singleton"].informational.append(
                        f"{tag}: brute {r.max_linf}, expression would give {would} "
                        f"({'match' if would == r.max_linf else 'differs'})"
                    )

            pl = r.predicted_linf
            if isinstance(pl, FormulaResult) and pl.case_label.endswith("/complement"):
                sec["linf_complement_families"].check(
                    r.max_linf == pl.value,
                    f"{tag}: brute {r.max_linf}, {pl.case_label} gives {pl.value}",
                )

            forced = forced_entries(sp)
            if forced:
                members = list(enumerate_class(sp))
                bad = [p for p in members if any(p[pos] != v for pos, v in forced.items())]
                sec["forced_entries"].check(
                    not bad, f"{tag}: {len(bad)} members miss forced entries {forced}"
                )
    return summary


# ---------------------------------------------------------------------------
# open-problem data


@dataclass(frozen=True)
class ExploreRow:
    s: DescentSet
    complement: DescentSet
    max_linf: int
    covered: bool
    predicted: Optional[int]
    witness: WitnessPair

    def to_dict(self) -> dict:
        return {
            "n": self.s.n,
            "S": list(self.s.indices),
            "complement": list(self.complement.indices),
            "max_linf": self.max_linf,
            "covered": self.covered,
            "predicted": self.predicted,
            "witness": self.witness.to_dict(),
        }


def explore_linf(
    n: int, *, budget: Optional[int] = None, threads: int = 1
) -> list[ExploreRow]:
    """Brute max l-inf for each nonempty proper S, one row per {S, complement} pair.

    Each row is keyed by the lexicographically smaller index sequence of the
    two sets; the other set is carried in ``complement``.
    """
    limit = budget_from_env() if budget is None else budget
    reps = []
    for s in all_descent_sets(n, proper_nonempty=True):
        c = complement(s)
        if c.indices == s.indices:
            raise AssertionError(f"{s} equals its own complement")
        if s.indices < c.indices:
            reps.append((s, c))
    reps.sort(key=lambda sc: (len(sc[0]), sc[0].indices))
    cost = sum(pair_count(count(ClassSpec(n, s))) for s, _ in reps)
    if cost > limit:
        raise BudgetExceeded(f"explore n={n} needs {cost} comparisons, budget is {limit}")

    def row(sc):
        s, c = sc
        spec = ClassSpec(n, s)
        value, w = brute_max(spec, MetricKind.LINF, budget=limit)
        pred = linf_formula_via_complement(spec) if n >= 3 else NOT_COVERED
        covered = isinstance(pred, FormulaResult)
        return ExploreRow(s, c, value, covered, pred.value if covered else None, w)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, reps))
    return [row(sc) for sc in reps]
