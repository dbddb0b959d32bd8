"""Exit criteria for the package. Each test logs one PASS/FAIL line that is
printed in the terminal summary.

Tolerances are exact throughout; wall-clock limits are single-threaded.
"""

import math
import random
import time
from pathlib import Path

import pytest

from descent_metrics.classes import ClassSpec, count, enumerate_class, enumerate_naive
from descent_metrics.cli import main
from descent_metrics.extremal import (
    FormulaResult,
    forced_entries,
    hamming_formula,
    hamming_witness,
    linf_formula_via_complement,
    linf_prefix_witness,
    linf_singleton_witness,
)
from descent_metrics.perm import (
    MetricKind,
    Permutation,
    all_descent_sets,
    complement,
    descent_set,
    hamming,
    linf,
    phi,
)
from descent_metrics.solver import brute_max, class_report, explore_linf

H, L = MetricKind.HAMMING, MetricKind.LINF
GOLDEN = Path(__file__).parent / "golden" / "table_n4.txt"


def report(log, number, title, ok, detail=""):
    log(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return ok


@pytest.fixture(scope="module")
def sweep():
    """Class reports for every nonempty proper S, n = 3..8, with timing."""
    t0 = time.perf_counter()
    reports = {}
    for n in range(3, 9):
        for s in all_descent_sets(n, proper_nonempty=True):
            reports[(n, s.indices)] = class_report(ClassSpec(n, s))
    return reports, time.perf_counter() - t0


def test_c1_table_reproduction(acceptance_log, tmp_path, capsys):
    t0 = time.perf_counter()
    target = tmp_path / "table.txt"
    code = main(["table", "-n", "4", "-o", str(target)])
    elapsed = time.perf_counter() - t0
    same = target.read_bytes() == GOLDEN.read_bytes()
    ok = code == 0 and same and elapsed < 1.0
    report(acceptance_log, 1, "table -n 4 matches the n=4 golden table byte for byte", ok,
           f"{elapsed:.2f}s")
    assert code == 0
    assert same
    assert elapsed < 1.0


def test_c2_hamming_closed_form(acceptance_log, sweep):
    reports, elapsed = sweep
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for (n, s), r in reports.items():
        spec = ClassSpec.of(n, s)
        pred = hamming_formula(spec).value
        w = hamming_witness(spec)
        checked += 1
        if not (r.max_hamming == pred == w.claimed_distance == hamming(w.sigma, w.rho)):
            bad.append((n, s, r.max_hamming, pred))
    elapsed += time.perf_counter() - t0
    ok = checked == 240 and not bad and elapsed < 60
    report(acceptance_log, 2, "max Hamming = closed form, witness attains it, n=3..8", ok,
           f"{checked} instances, {len(bad)} disagreements, {elapsed:.1f}s")
    assert checked == 2 + 6 + 14 + 30 + 62 + 126
    assert bad == []
    assert elapsed < 60


def test_c3_linf_prefix_runs(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for n in range(3, 10):
        for i in range(2, n):
            spec = ClassSpec.of(n, range(1, n - i + 1))
            value, _ = brute_max(spec, L)
            w = linf_prefix_witness(n, i)
            checked += 1
            if not (value == max(i - 1, n - i) == linf(w.sigma, w.rho)) or w.spec != spec:
                bad.append((n, i, value))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report(acceptance_log, 3, "max l-inf on D([n-i];n) = max(i-1, n-i), n=3..9", ok,
           f"{checked} instances, {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 120


def _singleton_piecewise(n, i):
    if i in (1, n - 1):
        return n - 2
    if 2 <= i <= n // 2:
        return n - i
    assert math.ceil(n / 2) <= i <= n - 2
    return i


def test_c4_linf_singletons(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for n in range(6, 10):
        for i in range(1, n):
            spec = ClassSpec.of(n, [i])
            value, _ = brute_max(spec, L)
            w = linf_singleton_witness(n, i)
            checked += 1
            if not (value == _singleton_piecewise(n, i) == linf(w.sigma, w.rho)) or w.spec != spec:
                bad.append((n, i, value))
    informational = []
    for n in range(3, 6):
        for i in range(1, n):
            value, _ = brute_max(ClassSpec.of(n, [i]), L)
            informational.append(f"n={n} i={i}: {value}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    report(acceptance_log, 4, "max l-inf on D({i};n) = piecewise form, n=6..9", ok,
           f"{checked} instances, {elapsed:.1f}s; n<6 recorded: {', '.join(informational)}")
    assert bad == []
    assert elapsed < 300


def test_c5_linf_complement_symmetry(acceptance_log, sweep):
    reports, elapsed = sweep
    bad = []
    for (n, s), r in reports.items():
        other = reports[(n, complement(ClassSpec.of(n, s).s).indices)]
        if r.max_linf != other.max_linf:
            bad.append((n, s))
    ok = len(reports) == 240 and not bad and elapsed < 120
    report(acceptance_log, 5, "max l-inf of D(S;n) equals that of D(complement;n), n=3..8", ok,
           f"{len(reports)} instances, shared sweep {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 120


def test_c6_minimum_distances(acceptance_log, sweep):
    reports, _ = sweep
    bad = [(k, r.min_hamming, r.min_linf) for k, r in reports.items()
           if (r.min_hamming, r.min_linf) != (2, 1)]
    # classes for n <= 2 and empty/full S have one member, so no pairs exist
    for n in range(1, 9):
        for s in all_descent_sets(n):
            if not s.is_proper_nonempty:
                assert count(ClassSpec(n, s)) == 1
    ok = not bad
    report(acceptance_log, 6, "min Hamming = 2 and min l-inf = 1 on every class of size >= 2, n<=8",
           ok, f"{len(reports)} classes")
    assert bad == []


def test_c7_forced_entries(acceptance_log):
    checked = 0
    bad = []
    for n in range(2, 9):
        for k in range(1, n):
            for s in (range(1, k + 1), range(k, n)):
                spec = ClassSpec.of(n, s)
                forced = forced_entries(spec)
                if s == range(1, k + 1):
                    assert forced.get(k + 1) == 1
                else:
                    assert forced.get(k) == n
                for p in enumerate_class(spec):
                    checked += 1
                    if any(p[pos] != v for pos, v in forced.items()):
                        bad.append((n, tuple(s), p))
    ok = not bad
    report(acceptance_log, 7, "run classes carry 1 at k+1 / n at k in every member, n<=8", ok,
           f"{checked} members checked")
    assert bad == []


def test_c8_property_suites(acceptance_log):
    rng = random.Random(20241016)
    failures = []
    per_n = 10_000
    for n in range(3, 11):
        base = list(range(1, n + 1))
        for _ in range(per_n):
            a = base[:]
            rng.shuffle(a)
            b = base[:]
            rng.shuffle(b)
            c = base[:]
            rng.shuffle(c)
            p, q, r = Permutation(tuple(a)), Permutation(tuple(b)), Permutation(tuple(c))
            if phi(phi(p)) != p:
                failures.append(("involution", p))
            if linf(p, q) != linf(phi(p), phi(q)):
                failures.append(("isometry", p, q))
            if descent_set(phi(p)) != complement(descent_set(p)):
                failures.append(("descent complement", p))
            for d in (hamming, linf):
                if not (d(p, q) == d(q, p) and (d(p, q) == 0) == (p == q) and d(p, q) >= 0
                        and d(p, r) <= d(p, q) + d(q, r)):
                    failures.append((d.__name__, p, q, r))
    props_ok = not failures

    oracle_ok = all(
        list(enumerate_class(ClassSpec(n, s))) == enumerate_naive(ClassSpec(n, s))
        for n in range(1, 8) for s in all_descent_sets(n)
    )
    count_ok = True
    partition_ok = True
    for n in range(1, 9):
        sizes = []
        for s in all_descent_sets(n):
            spec = ClassSpec(n, s)
            size = sum(1 for _ in enumerate_class(spec))
            count_ok &= count(spec) == size
            sizes.append(size)
        partition_ok &= sum(sizes) == math.factorial(n)

    ok = props_ok and oracle_ok and count_ok and partition_ok
    report(acceptance_log, 8, "property suites", ok,
           f"random {per_n}/n for n=3..10: {props_ok}; generator==oracle n<=7: {oracle_ok}; "
           f"count==|class| n<=8: {count_ok}; sizes sum to n! n<=8: {partition_ok}")
    assert failures == []
    assert oracle_ok and count_ok and partition_ok


def test_c9_explore_tables(acceptance_log):
    t0 = time.perf_counter()
    problems = []
    rows_total = 0
    for n in range(3, 9):
        rows = explore_linf(n)
        rows_total += len(rows)
        expected = (2 ** (n - 1) - 2) // 2
        if len(rows) != expected:
            problems.append(f"n={n}: {len(rows)} rows, expected {expected}")
        covered = {r.s.indices for r in rows} | {r.complement.indices for r in rows}
        if covered != {s.indices for s in all_descent_sets(n, proper_nonempty=True)}:
            problems.append(f"n={n}: rows do not cover every S")
        for r in rows:
            pred = linf_formula_via_complement(ClassSpec(n, r.s))
            if r.covered != isinstance(pred, FormulaResult):
                problems.append(f"n={n} {r.s}: covered flag mismatch")
            if r.covered and r.predicted != r.max_linf:
                problems.append(f"n={n} {r.s}: predicted {r.predicted}, brute {r.max_linf}")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 300
    report(acceptance_log, 9, "explore emits complete l-inf tables for n<=8", ok,
           f"{rows_total} rows, {elapsed:.1f}s")
    assert problems == []
    assert elapsed < 300
