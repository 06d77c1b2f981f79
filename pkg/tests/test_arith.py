from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from polyslope.arith import (GenFn, binomial_identity_check, det, elementary_from_power_sums, expand_rational_gf,
                             face_count_inclusion_exclusion, lcm, nullspace, power_sums_from_elementary, rank, smith_invariants)
from polyslope.errors import DimensionError, InexactDivisionError, SingularMatrixError


def cofactor_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def test_det_examples():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det([[0, 0, -2], [1, 0, -2], [0, 1, 1]]) == -2
    assert det([[2, 0], [0, 3]]) == 6


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


small_square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n))


@given(small_square)
def test_det_matches_cofactor_expansion(M):
    assert det(M) == cofactor_det(M)


def test_smith_examples():
    assert smith_invariants([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (1, 1, 1)
    assert smith_invariants([[2, 0], [0, 3]]) == (1, 6)
    assert smith_invariants([[0, 0, -2], [1, 0, -2], [0, 1, 1]]) == (1, 1, 2)


def test_smith_singular():
    with pytest.raises(SingularMatrixError):
        smith_invariants([[1, 2], [2, 4]])


def _unimodular(n, ops):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, c in ops:
        if i != j:
            for k in range(n):
                U[i][k] += c * U[j][k]
    return U


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@given(small_square, st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6))
def test_smith_chain_product_and_invariance(M, row_ops, col_ops):
    d = det(M)
    if d == 0:
        return
    inv = smith_invariants(M)
    assert all(x >= 1 for x in inv)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    prod = 1
    for x in inv:
        prod *= x
    assert prod == abs(d)
    n = len(M)
    U = _unimodular(n, [(i % n, j % n, c) for i, j, c in row_ops])
    V = _unimodular(n, [(i % n, j % n, c) for i, j, c in col_ops])
    assert smith_invariants(_matmul(_matmul(U, M), V)) == inv


def test_rank_and_nullspace():
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 1, -1]])
    assert len(ns) == 2
    for v in ns:
        assert v[0] + v[1] - v[2] == 0


def test_lcm():
    assert lcm(2, 3) == 6
    assert lcm() == 1
    assert lcm(4, 6, 10) == 60


def test_newton_examples():
    assert elementary_from_power_sums([5], 1) == [5]
    assert elementary_from_power_sums([-1, -3], 2) == [-1, 2]
    assert elementary_from_power_sums([-1, -1], 2) == [-1, 1]


def test_newton_inexact():
    with pytest.raises(InexactDivisionError, match="inconsistent with integral polynomial"):
        elementary_from_power_sums([1, 0], 2)


def poly_power_sums(coeffs, count):
    """Power sums of reciprocal roots of 1 + c_1 T + ... via the log-derivative recurrence."""
    c = [1, *coeffs]
    P = []
    for k in range(1, count + 1):
        # P_k = -k c_k - sum_{i<k} c_i P_{k-i}
        acc = -k * (c[k] if k < len(c) else 0)
        for i in range(1, k):
            if i < len(c):
                acc -= c[i] * P[k - i - 1]
        P.append(acc)
    return P


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_newton_round_trip(coeffs):
    m = len(coeffs)
    P = poly_power_sums(coeffs, m + 3)
    e = elementary_from_power_sums(P, m)
    assert [(-1) ** j * x for j, x in enumerate(e, start=1)] == coeffs
    assert power_sums_from_elementary(e, m + 3) == P


def test_expand_examples():
    assert expand_rational_gf([(3, 1)], [1], 5).dense() == [1, 1, 1, 0, 0, 0]
    assert expand_rational_gf([(3, 1), (3, 1)], [1, 1], 4).dense() == [1, 2, 3, 2, 1]
    assert expand_rational_gf([(2, 1), (4, 1)], [1, 1], 4).dense() == [1, 2, 2, 2, 1]


def _series_mul(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        for j, y in enumerate(b[: N + 1 - i]):
            out[i + j] += x * y
    return out


@given(st.lists(st.integers(1, 6), max_size=4), st.lists(st.integers(1, 6), max_size=4), st.integers(0, 25))
def test_expand_times_denominator_is_numerator(num, den, N):
    G = expand_rational_gf([(e, 1) for e in num], den, N).dense()
    for e in den:
        G = _series_mul(G, [1] + [0] * (e - 1) + [-1], N)
    target = [1] + [0] * N
    for e in num:
        target = _series_mul(target, [1] + [0] * (e - 1) + [-1], N)
    assert G == target


def test_genfn_sparse_and_bounded():
    g = GenFn.from_dense([1, 0, 2, 0])
    assert dict(g.coeffs) == {0: 1, 2: 2}
    assert g[1] == 0 and g[2] == 2
    assert (g * g).dense() == [1, 0, 4, 0]
    h = GenFn.from_dense([1, 0, 2, 0, 0])
    assert (h * h).dense() == [1, 0, 4, 0, 4]


def test_binomial_identity_examples():
    assert binomial_identity_check((2, 2))
    assert binomial_identity_check((1,))
    assert binomial_identity_check((1, 2))


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first, *rest)


def test_face_count_inclusion_exclusion_exhaustive():
    for n in range(1, 13):
        for part in _partitions(n):
            expected = 1
            for ni in part:
                expected *= 1 + ni
            assert face_count_inclusion_exclusion(part) == expected, part


def test_binomial_identity_holds_for_at_most_two_blocks():
    for n in range(1, 13):
        for part in _partitions(n):
            if len(part) <= 2:
                for perm in set(itertools.permutations(part)):
                    assert binomial_identity_check(perm), perm


def test_binomial_identity_drops_higher_order_terms():
    # the two-term form ignores groups left intact in pairs; it fails exactly
    # when those higher-order inclusion-exclusion terms are nonzero
    assert not binomial_identity_check((1, 1, 1, 1))      # 10 vs 16
    assert not binomial_identity_check((2, 1, 1))         # 11 vs 12
    assert binomial_identity_check((1, 1, 1))
    failing = [p for n in range(1, 6) for p in _partitions(n) if not binomial_identity_check(p)]
    assert failing == [(2, 1, 1), (1, 1, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]
