import io
import math

import pytest

from descent_metrics.classes import (
    ClassSpec,
    completion_counts,
    count,
    enumerate_class,
    enumerate_naive,
    materialize,
    read_class,
    write_class,
)
from descent_metrics.errors import ClassTooLarge, InvalidDescentSet, OracleBoundExceeded
from descent_metrics.perm import DescentSet, Permutation, all_descent_sets, descent_set, phi

from oracles import naive_class


def compact(perms):
    return ["".join(map(str, p.entries)) for p in perms]


@pytest.mark.parametrize(
    "s,expected",
    [
        ("2", ["1324", "1423", "2314", "2413", "3412"]),
        ("", ["1234"]),
        ("1,3", ["2143", "3142", "3241", "4132", "4231"]),
        ("3", ["1243", "1342", "2341"]),
        ("1,2,3", ["4321"]),
    ],
)
def test_table_rows_n4(s, expected):
    spec = ClassSpec.parse(4, s)
    assert compact(enumerate_class(spec)) == expected
    assert compact(enumerate_naive(spec)) == expected
    assert count(spec) == len(expected)


def test_spec_checks_n():
    with pytest.raises(InvalidDescentSet):
        ClassSpec(4, DescentSet(5, (1,)))


def test_small_n():
    assert compact(enumerate_class(ClassSpec.of(1))) == ["1"]
    assert compact(enumerate_class(ClassSpec.of(2, [1]))) == ["21"]
    assert count(ClassSpec.of(1)) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_generator_matches_filter_oracle(n):
    for s in all_descent_sets(n):
        spec = ClassSpec(n, s)
        got = [p.entries for p in enumerate_class(spec)]
        assert got == naive_class(n, s.indices)
        assert got == [p.entries for p in enumerate_naive(spec)]


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_and_count(n):
    total = 0
    seen = set()
    for s in all_descent_sets(n):
        spec = ClassSpec(n, s)
        members = list(enumerate_class(spec))
        assert all(descent_set(p) == s for p in members)
        assert count(spec) == len(members)
        assert count(spec) == count(spec.complement())
        assert sum(completion_counts(spec)[1]) == len(members)
        seen.update(p.entries for p in members)
        total += len(members)
    assert total == math.factorial(n) == len(seen)


def test_complement_bijection_on_members():
    spec = ClassSpec.of(7, [2, 3, 5])
    mirrored = sorted(phi(p) for p in enumerate_class(spec))
    assert mirrored == list(enumerate_class(spec.complement()))


def test_count_uses_exact_integers():
    # alternating class of n=20 is the Euler zigzag number E_20
    spec = ClassSpec.of(20, range(2, 20, 2))
    assert count(spec) == 370371188237525


def test_generator_is_lazy():
    gen = enumerate_class(ClassSpec.of(30, [15]))
    first = next(gen)
    assert first.entries[:16] == tuple(range(1, 15)) + (16, 15)


def test_naive_bound():
    with pytest.raises(OracleBoundExceeded, match="enumerate_class"):
        enumerate_naive(ClassSpec.of(11, [3]))
    assert len(enumerate_naive(ClassSpec.of(5, [2]), bound=5)) == 9


def test_materialize_cap():
    spec = ClassSpec.of(8, [2, 4, 6])
    assert len(materialize(spec)) == count(spec)
    with pytest.raises(ClassTooLarge):
        materialize(spec, cap=10)


def test_file_round_trip():
    spec = ClassSpec.of(5, [1, 3])
    buf = io.StringIO()
    write_class(spec, enumerate_class(spec), buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == "# n=5 S=1,3"
    assert text.splitlines()[1] == "2 1 4 3 5"
    spec2, perms = read_class(text.splitlines())
    assert spec2 == spec
    assert perms == list(enumerate_class(spec))
    assert all(isinstance(p, Permutation) for p in perms)


def test_empty_set_header():
    buf = io.StringIO()
    write_class(ClassSpec.of(3), enumerate_class(ClassSpec.of(3)), buf)
    assert buf.getvalue() == "# n=3 S=\n1 2 3\n"
