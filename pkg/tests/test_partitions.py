import pytest

from divstrata.errors import BudgetExceeded, InputError
from divstrata.partitions import BranchPartition, bell, enumerate_partitions, mobius


@pytest.mark.parametrize("r,count", [(1, 0), (2, 1), (3, 4), (4, 14)])
def test_nontrivial_counts(r, count):
    assert len(enumerate_partitions(r)) == count
    assert len(enumerate_partitions(r, include_trivial=True)) == count + 1


def test_bell_numbers():
    assert [bell(r) for r in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    for r in range(1, 8):
        assert len(enumerate_partitions(r, include_trivial=True)) == bell(r)


def test_canonical_order():
    ps = [str(p) for p in enumerate_partitions(3, include_trivial=True)]
    assert ps == ["1,2,3", "1|2,3", "1,2|3", "1,3|2", "1|2|3"]


def test_blocks_normalized():
    p = BranchPartition.of([4, 3], [2], [1])
    assert str(p) == "1|2|3,4"
    assert BranchPartition.parse("3,4|1|2") == p
    assert p.length == 3 and not p.is_trivial()


def test_refinement():
    fine = BranchPartition.finest(4)
    mid = BranchPartition.parse("1,2|3|4")
    coarse = BranchPartition.parse("1,2|3,4")
    top = BranchPartition.trivial(4)
    assert fine.refines(mid) and mid.refines(coarse) and coarse.refines(top)
    assert not coarse.refines(mid)
    assert mid.strictly_refines(coarse) and not mid.strictly_refines(mid)
    assert not BranchPartition.parse("1,3|2|4").refines(coarse)
    assert not BranchPartition.finest(3).refines(top)


def test_mobius_values():
    fine = BranchPartition.finest(4)
    assert mobius(fine, fine) == 1
    assert mobius(fine, BranchPartition.parse("1,2|3|4")) == -1
    assert mobius(fine, BranchPartition.parse("1,2,3|4")) == 2
    assert mobius(fine, BranchPartition.trivial(4)) == -6
    assert mobius(fine, BranchPartition.parse("1,2|3,4")) == 1
    assert mobius(BranchPartition.parse("1,2|3,4"), BranchPartition.parse("1,3|2|4")) == 0


def test_mobius_inverts_zeta():
    ps = enumerate_partitions(4, include_trivial=True)
    for a in ps:
        for c in ps:
            s = sum(mobius(a, b) for b in ps if a.refines(b) and b.refines(c))
            assert s == (1 if a == c else 0)


def test_errors():
    with pytest.raises(BudgetExceeded):
        enumerate_partitions(13)
    with pytest.raises(InputError):
        enumerate_partitions(0)
    with pytest.raises(InputError):
        BranchPartition.of([1, 2], [2])
    with pytest.raises(InputError):
        BranchPartition.parse("1,x")
