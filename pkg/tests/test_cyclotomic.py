from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from polyslope.cyclotomic import INF, CycInt, complex_embed, cyc_norm, ord_q, resultant
from polyslope.errors import InexactDivisionError

PRIMES = [2, 3, 5, 7]


def z(p, k=1):
    return CycInt.zeta(p, k)


def test_ring_examples():
    one_plus = CycInt.from_int(3, 1) + z(3)
    assert one_plus * one_plus == z(3)
    assert CycInt.from_int(3, 1) + z(3) + z(3, 2) == 0
    assert CycInt.from_int(2, -1) * CycInt.from_int(2, -1) == 1


def test_mismatched_primes():
    with pytest.raises(ValueError):
        z(3) + z(5)


def test_exact_div():
    assert (CycInt(5, [2, 4, 0, 6])).exact_div(2) == CycInt(5, [1, 2, 0, 3])
    with pytest.raises(InexactDivisionError):
        CycInt(5, [2, 3, 0, 6]).exact_div(2)


def test_norm_examples():
    assert cyc_norm(1 - z(3)) == 3
    assert cyc_norm(CycInt.from_int(3, 2)) == 4
    assert cyc_norm(1 - z(5)) == 5


def test_resultant_simple():
    # Res(x - 2, x - 3) = (2 - 3) up to sign convention: Res(f, g) = prod g(roots of f)
    assert abs(resultant([-2, 1], [-3, 1])) == 1
    assert resultant([-2, 1], [0, 0, 1]) == 4


def test_ord_examples():
    assert ord_q(CycInt.from_int(3, 3), 3) == 1
    assert ord_q(1 - z(3), 3) == Fraction(1, 2)
    assert ord_q(CycInt.from_int(2, 0), 2) == INF
    assert ord_q(CycInt.from_int(5, 25), 25) == 1


def test_embed_examples():
    assert complex_embed(CycInt.from_int(2, -1), 1) == -1
    assert abs(complex_embed(CycInt.from_int(3, 1) + z(3) + z(3, 2), 1)) < 1e-12
    assert abs(abs(complex_embed(1 - z(3), 1)) - math.sqrt(3)) < 1e-9


def cyc(p):
    return st.lists(st.integers(-3, 3), min_size=p - 1, max_size=p - 1).map(lambda c: CycInt(p, c))


def pair(p):
    return st.tuples(cyc(p), cyc(p))


any_pair = st.sampled_from(PRIMES).flatmap(pair)


@given(any_pair)
def test_norm_multiplicative(xy):
    x, y = xy
    assert cyc_norm(x * y) == cyc_norm(x) * cyc_norm(y)


@given(any_pair)
def test_valuation_additive_and_ultrametric(xy):
    x, y = xy
    q = x.p
    assert ord_q(x * y, q) == ord_q(x, q) + ord_q(y, q)
    assert ord_q(x + y, q) >= min(ord_q(x, q), ord_q(y, q))


@given(st.sampled_from(PRIMES), st.integers(1, 3))
def test_ord_of_q_is_one(p, a):
    assert ord_q(CycInt.from_int(p, p ** a), p ** a) == 1


@given(any_pair, st.integers(1, 6))
def test_embedding_is_a_ring_map(xy, s):
    x, y = xy
    s = 1 + (s - 1) % (x.p - 1) if x.p > 2 else 1
    ex, ey = complex_embed(x, s), complex_embed(y, s)
    scale = 1 + abs(ex) * abs(ey)
    assert abs(complex_embed(x * y, s) - ex * ey) <= 1e-9 * scale
    assert abs(complex_embed(x + y, s) - (ex + ey)) <= 1e-9 * scale


@given(any_pair)
def test_norm_is_product_of_embeddings(xy):
    x, _ = xy
    prod = mpmath.mpc(1)
    for s in range(1, x.p):
        prod *= complex_embed(x, s)
    assert abs(prod - cyc_norm(x)) <= 1e-9 * (1 + abs(cyc_norm(x)))


@given(any_pair, st.integers(1, 6))
def test_conjugation_is_a_ring_map_and_preserves_valuation(xy, s):
    x, y = xy
    p = x.p
    if p == 2:
        return
    s = 1 + (s - 1) % (p - 1)
    assert (x * y).conjugate(s) == x.conjugate(s) * y.conjugate(s)
    assert ord_q(x.conjugate(s), p) == ord_q(x, p)


def test_from_char_counts():
    # counts (1, 1, 1) over F_3 -> 1 + zeta + zeta^2 = 0
    assert CycInt.from_char_counts(3, [1, 1, 1]) == 0
    assert CycInt.from_char_counts(3, [0, 2, 0], s=2) == z(3, 2) * 2
    assert CycInt.from_char_counts(2, [3, 5]) == -2
