import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from pdgroups.linalg import (AbelianGroupInvariants, CompositionNonzero, IntMatrix, Lattice, cokernel_invariants,
                             complex_homology, kernel_basis, smith_normal_form, solve_integer)


def determinantal_divisors(A: IntMatrix) -> list[int]:
    """d_k = gcd of the k x k minors; the invariant factors are d_k / d_{k-1}."""
    rows = A.tolist()
    out = []
    for k in range(1, min(A.rows, A.cols) + 1):
        g = 0
        for ri in itertools.combinations(range(A.rows), k):
            for ci in itertools.combinations(range(A.cols), k):
                g = gcd(g, IntMatrix.from_rows([[rows[i][j] for j in ci] for i in ri], k).determinant())
        if g == 0:
            break
        out.append(g)
    return out


def invariants_from_minors(A: IntMatrix) -> list[int]:
    d = determinantal_divisors(A)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def random_matrix(rng, max_dim=6, lo=-9, hi=9):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)], n)


def test_snf_matches_determinantal_divisors_on_1000_random_matrices():
    rng = random.Random(20240501)
    for _ in range(1000):
        A = random_matrix(rng)
        snf = smith_normal_form(A)
        nonzero = [d for d in snf.diagonal if d]
        assert nonzero == invariants_from_minors(A), A.tolist()
        assert all(nonzero[i + 1] % nonzero[i] == 0 for i in range(len(nonzero) - 1))
        assert snf.left @ A @ snf.right == snf.diagonal_matrix()
        assert abs(snf.left.determinant()) == 1 and abs(snf.right.determinant()) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_snf_transforms_property(rows):
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    assert snf.left @ A @ snf.right == snf.diagonal_matrix()


def test_snf_known_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == (0, 0)
    assert smith_normal_form([[6]]).diagonal == (6,)


def test_cokernel_sparse_path_agrees_with_dense():
    rng = random.Random(7)
    for _ in range(200):
        m, n = rng.randint(15, 30), rng.randint(15, 30)
        A = IntMatrix.from_rows([[rng.choice([0] * 8 + [1, -1, 2, -3]) for _ in range(n)] for _ in range(m)], n)
        snf = smith_normal_form(A)
        nz = [d for d in snf.diagonal if d]
        dense = AbelianGroupInvariants(A.rows - len(nz), tuple(d for d in nz if d > 1))
        assert cokernel_invariants(A) == dense


def test_invariants_canonical_form():
    assert AbelianGroupInvariants.from_factors([4, 6, 0, 1]) == AbelianGroupInvariants(1, (2, 12))
    assert str(AbelianGroupInvariants(2, (2, 2))) == "Z + Z + Z/2 + Z/2"
    assert str(AbelianGroupInvariants()) == "0"
    with pytest.raises(ValueError):
        AbelianGroupInvariants(0, (4, 2))


def test_complex_homology_of_circle_and_rp2():
    # circle: one vertex, one edge
    assert complex_homology([[[0]]]) == [AbelianGroupInvariants(1), AbelianGroupInvariants(1)]
    # cellular chains of RP^2: Z <-0- Z <-2- Z
    h = complex_homology([[[0]], [[2]]])
    assert h == [AbelianGroupInvariants(1), AbelianGroupInvariants(0, (2,)), AbelianGroupInvariants(0)]


def test_complex_rejects_noncomposable():
    with pytest.raises(CompositionNonzero):
        complex_homology([[[1]], [[1]]])


def test_kernel_basis_and_solver():
    rng = random.Random(3)
    for _ in range(100):
        A = random_matrix(rng, 5)
        for v in kernel_basis(A):
            assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A.tolist())
        x = [rng.randint(-3, 3) for _ in range(A.cols)]
        b = [sum(a * y for a, y in zip(row, x)) for row in A.tolist()]
        sol = solve_integer(A, b)
        assert sol is not None
        assert [sum(a * y for a, y in zip(row, sol)) for row in A.tolist()] == b
    assert solve_integer([[2]], [1]) is None


def test_lattice_membership():
    L = Lattice(3)
    L.add([2, 0, 0])
    L.add([0, 3, 3])
    assert L.contains([4, 6, 6])
    assert not L.contains([1, 0, 0])
    assert not L.add([2, 3, 3])
    assert len(L) == 2
