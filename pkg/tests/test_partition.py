import pytest

from lp_lab.errors import GroundSetMismatch, LpLabError
from lp_lab.partition import Partition, all_partitions, is_function_of


def test_bell_counts():
    for n, bell in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)]:
        assert sum(1 for _ in all_partitions(n)) == bell


def test_enumeration_starts_trivial_ends_discrete():
    parts = list(all_partitions(3))
    assert parts[0] == Partition.trivial(3)
    assert parts[-1] == Partition.discrete(3)
    assert len(set(parts)) == len(parts)


def test_of_validates():
    with pytest.raises(LpLabError):
        Partition.of(3, [[0, 1]])
    with pytest.raises(LpLabError):
        Partition.of(3, [[0, 1], [1, 2]])
    with pytest.raises(LpLabError):
        Partition.of(2, [[0, 1], []])


def test_refines_and_function_of():
    coarse = Partition.of(4, [[0, 1], [2, 3]])
    other = Partition.of(4, [[0, 3], [1, 2]])
    assert is_function_of(coarse, Partition.discrete(4))
    assert is_function_of(Partition.trivial(4), other)
    assert not is_function_of(coarse, other)


def test_join():
    a = Partition.of(4, [[0, 1], [2, 3]])
    b = Partition.of(4, [[0, 3], [1, 2]])
    assert a.join(b) == Partition.trivial(4)
    assert a.join(a) == a
    assert a.join(Partition.discrete(4)) == a


def test_ground_set_mismatch():
    with pytest.raises(GroundSetMismatch):
        Partition.trivial(3).refines(Partition.trivial(4))


def test_from_labels_groups_equal_values():
    p = Partition.from_labels(["a", "b", "a", "c"])
    assert p == Partition.of(4, [[0, 2], [1], [3]])
