import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divstrata.errors import EnumerationTooLarge, InvalidModulus, ShapeError
from divstrata.lattice import (
    IntMatrix,
    enumerate_quotient,
    hermite_normal_form,
    integer_kernel,
    inverse_unimodular,
    is_saturated,
    kernel_of_hom_on_subgroup,
    residue_image_order,
    same_lattice,
    smith_normal_form,
    subgroup_quotient_order,
)

import oracles

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


def check_smith(A):
    s = smith_normal_form(A)
    A = IntMatrix(A)
    assert s.U @ A @ s.V == s.D
    assert s.U.det() in (1, -1) and s.V.det() in (1, -1)
    D = s.D
    for i in range(D.nrows):
        for j in range(D.ncols):
            if i != j:
                assert D[i, j] == 0
    d = s.invariant_factors
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return d


def test_identity_smith():
    s = smith_normal_form(IntMatrix.identity(3))
    assert s.D == s.U == s.V == IntMatrix.identity(3)


def test_known_invariant_factors():
    # frozen from the determinantal-divisor oracle
    assert check_smith([[2, 4], [6, 8]]) == (2, 4)
    assert check_smith([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (2, 6, 12)


def test_zero_matrix():
    s = smith_normal_form([[0, 0], [0, 0]])
    assert s.D.is_zero() and s.U == s.V == IntMatrix.identity(2)


def test_empty_shapes():
    assert smith_normal_form(IntMatrix((), ncols=3)).rank == 0
    assert subgroup_quotient_order(IntMatrix((), ncols=4), 7) == 1
    assert enumerate_quotient(IntMatrix((), ncols=2), 7) == {(0, 0)}


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_matches_determinantal_divisors(A):
    d = check_smith(A)
    assert list(d) == oracles.invariant_factors(A)


def test_big_entries_do_not_overflow():
    A = [[10**30 + 1, 3 * 10**30], [7, 2**100]]
    check_smith(A)


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(2, 5))
def test_image_order_matches_enumeration(A, n):
    got = enumerate_quotient(A, n)
    assert got == oracles.span_mod(A, n)
    assert len(got) == residue_image_order(A, n)


def test_quotient_order_vs_image_for_nonsaturated():
    # (2) spans 2Z: |L/2L| = 2 but its residues mod 2 are just {0}
    assert subgroup_quotient_order([[2]], 2) == 2
    assert residue_image_order([[2]], 2) == 1
    assert len(enumerate_quotient([[2]], 2)) == 1


def test_spec_examples():
    assert subgroup_quotient_order([[1, -1, 1, 0, 0, 0]], 5) == 5
    gl4 = [[1, -1, 1, 0, 0, 0], [-1, 0, 0, 1, -1, 0], [0, 0, -1, 0, 1, 1]]
    assert subgroup_quotient_order(gl4, 2) == 8 == len(oracles.span_mod(gl4, 2))
    assert len(enumerate_quotient(gl4[:2], 3)) == 9
    assert enumerate_quotient([[1, 0]], 2) == {(0, 0), (1, 0)}


def test_invalid_modulus():
    for n in (0, 1, -3):
        with pytest.raises(InvalidModulus):
            subgroup_quotient_order([[1]], n)


def test_budget_is_enforced():
    with pytest.raises(EnumerationTooLarge):
        enumerate_quotient(IntMatrix.identity(4), 10, budget=9999)
    assert len(enumerate_quotient(IntMatrix.identity(4), 10, budget=10**4)) == 10**4


def test_hnf_canonical():
    A = [[2, 4], [3, 5]]
    B = [[1, 1], [0, 2], [5, 7]]
    assert same_lattice(A, B)
    assert hermite_normal_form(A) == IntMatrix([[1, 1], [0, 2]])
    assert not same_lattice([[2, 0]], [[1, 0]])


def test_integer_kernel_is_saturated():
    K = integer_kernel([[2, 4, 6]])
    assert K.nrows == 2 and is_saturated(K)
    for row in K.rows:
        assert 2 * row[0] + 4 * row[1] + 6 * row[2] == 0


def test_inverse_unimodular():
    U = IntMatrix([[2, 3], [1, 2]])
    assert U @ inverse_unimodular(U) == IntMatrix.identity(2)
    with pytest.raises(ShapeError):
        inverse_unimodular([[2, 0], [0, 1]])


def test_kernel_hom_trivial_cases():
    T = IntMatrix.identity(3)
    assert kernel_of_hom_on_subgroup(T, IntMatrix.zeros(2, 3), 4) == (64, 1)
    assert kernel_of_hom_on_subgroup(T, IntMatrix.identity(3), 4) == (1, 64)
    with pytest.raises(ShapeError):
        kernel_of_hom_on_subgroup(T, IntMatrix.identity(2), 4)


def test_kernel_hom_against_brute_force():
    rng = random.Random(20261019)
    for _ in range(60):
        n = rng.randint(2, 9)
        m = rng.randint(1, 3)
        T = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(rng.randint(1, 3))]
        phi = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(rng.randint(1, 3))]
        k, img = kernel_of_hom_on_subgroup(T, phi, n)
        assert (k, img) == oracles.kernel_image_brute(T, phi, n, m)[:2]


def test_matrix_basics():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A.T == IntMatrix([[1, 3], [2, 4]])
    assert A.det() == -2
    assert A.apply((1, 1)) == (3, 7)
    assert hash(A) == hash(IntMatrix([[1, 2], [3, 4]]))
    with pytest.raises(ShapeError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        A @ IntMatrix([[1, 2, 3]])
