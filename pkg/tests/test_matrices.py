import random
from fractions import Fraction

import pytest

from ietlab.matrices import (
    charpoly,
    det,
    extgcd,
    hnf_column,
    identity,
    inverse,
    inverse_int,
    is_primitive,
    kernel_int,
    mat_mul,
    mat_pow,
    mat_vec,
    rank_int,
    solve,
    transpose,
    unimodular_completion,
)
from ietlab.polynomials import IntPoly


def rand_mat(rng, m, n, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def test_mat_mul_and_identity():
    A = [[1, 2], [3, 4]]
    assert mat_mul(A, identity(2)) == A
    assert mat_mul(identity(2), A) == A
    assert mat_vec(A, [1, 1]) == [3, 7]
    assert transpose(A) == [[1, 3], [2, 4]]


def test_mat_pow():
    A = [[1, 1], [1, 0]]
    assert mat_pow(A, 10)[0][0] == 89  # Fibonacci
    assert mat_pow(A, 0) == identity(2)


def test_det_known_values():
    assert det([[2, 0], [0, 3]]) == 6
    assert det([[1, 2], [2, 4]]) == 0
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[Fraction(1, 2), 0], [0, Fraction(1, 3)]]) == Fraction(1, 6)


def test_det_matches_expansion_randomized():
    rng = random.Random(7)

    def det_cofactor(M):
        n = len(M)
        if n == 1:
            return M[0][0]
        return sum(
            (-1) ** j * M[0][j] * det_cofactor([row[:j] + row[j + 1:] for row in M[1:]])
            for j in range(n)
        )

    for _ in range(40):
        n = rng.randint(1, 5)
        A = rand_mat(rng, n, n)
        assert det(A) == det_cofactor(A)


def test_inverse_and_solve():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 5)
        A = rand_mat(rng, n, n)
        if det(A) == 0:
            continue
        Ainv = inverse(A)
        assert mat_mul(A, Ainv) == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        x = solve(A, b)
        assert mat_vec(A, x) == [Fraction(v) for v in b]


def test_inverse_singular_raises():
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 4]])


def test_inverse_int_unimodular():
    U = [[2, 1], [1, 1]]
    assert inverse_int(U) == [[1, -1], [-1, 2]]
    with pytest.raises(ValueError):
        inverse_int([[2, 0], [0, 1]])


def test_charpoly_companion():
    # companion matrix of x^3 - 2x^2 + 5x - 7
    C = [[0, 0, 7], [1, 0, -5], [0, 1, 2]]
    assert charpoly(C) == IntPoly((-7, 5, -2, 1))


def test_charpoly_diagonal_and_cayley_hamilton():
    assert charpoly([[2, 0], [0, 3]]) == IntPoly((6, -5, 1))
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 4)
        A = rand_mat(rng, n, n, -3, 3)
        p = charpoly(A)
        acc = [[0] * n for _ in range(n)]
        for k, c in enumerate(p.coeffs):
            Ak = mat_pow(A, k)
            acc = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, Ak)]
        assert acc == [[0] * n for _ in range(n)]


def test_extgcd():
    for a, b in [(12, 18), (-5, 3), (0, 7), (4, 0), (-6, -9), (1, 1)]:
        g, s, t = extgcd(a, b)
        assert g == s * a + t * b
        assert g >= 0
        assert (a or b) == 0 or (a % g == 0 and b % g == 0)


def test_hnf_properties_randomized():
    rng = random.Random(19)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = rand_mat(rng, m, n)
        H, U = hnf_column(A)
        assert det(U) in (1, -1)
        assert mat_mul(A, U) == H
        r = rank_int(A)
        # columns past the rank are zero
        for j in range(r, n):
            assert all(H[i][j] == 0 for i in range(m))
        # pivots positive, zeros to the right of each pivot
        prow = -1
        for j in range(r):
            i = next(i for i in range(m) if H[i][j])
            assert i > prow
            assert H[i][j] > 0
            assert all(H[i][jj] == 0 for jj in range(j + 1, n))
            assert all(0 <= H[i][jj] < H[i][j] for jj in range(j))
            prow = i


def test_kernel_int():
    A = [[1, 2, 3], [2, 4, 6]]
    ker = kernel_int(A)
    assert len(ker) == 2
    for v in ker:
        assert mat_vec(A, v) == [0, 0]
    assert kernel_int([[1, 0], [0, 1]]) == []


def test_kernel_spans_integer_solutions():
    # x + 2y + 4z = 0 has integer solutions like (2, -3, 1); the kernel
    # basis must reach them with integer coefficients
    A = [[1, 2, 4]]
    ker = kernel_int(A)
    assert len(ker) == 2
    target = [2, -3, 1]
    K = transpose(ker)  # 3x2, columns are the basis
    rows = [i for i in range(3)]
    for i in rows:
        for j in rows:
            if i < j and det([[K[i][0], K[i][1]], [K[j][0], K[j][1]]]) != 0:
                c = solve([[K[i][0], K[i][1]], [K[j][0], K[j][1]]], [target[i], target[j]])
                assert all(x.denominator == 1 for x in c)
                assert mat_vec(K, c) == [Fraction(t) for t in target]
                return
    raise AssertionError("kernel basis degenerate")


def test_is_primitive():
    assert is_primitive([[1, 1], [1, 0]])
    assert not is_primitive([[0, 1], [1, 0]])  # periodic
    assert not is_primitive([[1, 1], [0, 1]])  # reducible
    assert is_primitive([[1, 1, 1, 1], [0, 2, 1, 0], [1, 2, 2, 1], [1, 1, 1, 2]])


def test_unimodular_completion():
    rng = random.Random(23)
    from math import gcd

    done = 0
    while done < 25:
        n = rng.randint(1, 5)
        v = [rng.randint(-6, 6) for _ in range(n)]
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            continue
        W = unimodular_completion(v)
        assert det(W) in (1, -1)
        assert [W[i][0] for i in range(n)] == v
        done += 1
    with pytest.raises(ValueError):
        unimodular_completion([2, 4])
