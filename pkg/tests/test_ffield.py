from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyslope.ffield import (embed_base, enumerate_units, field, find_irreducible, is_irreducible, trace_to_prime,
                              unit_chunks)


def brute_irreducible(coeffs, p):
    """No monic factor of degree 1..m/2 divides, checked by trial division over all monics."""
    m = len(coeffs) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            r = list(coeffs)
            for shift in range(m - d, -1, -1):
                c = r[shift + d]
                if c:
                    for i in range(d + 1):
                        r[shift + i] = (r[shift + i] - c * g[i]) % p
            if not any(r[:d]):
                return False
    return True


def brute_smallest(p, m):
    # lexicographic in (c0, c1, ..., c_{m-1}): low-degree coefficients compared first
    for c in sorted(itertools.product(range(p), repeat=m)):
        f = tuple(c) + (1,)
        if m == 1 or brute_irreducible(f, p):
            return f


def test_find_irreducible_examples():
    assert find_irreducible(2, 1) == (0, 1)
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("p,m", [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_find_irreducible_matches_exhaustive_scan(p, m):
    f = find_irreducible(p, m)
    assert f == brute_smallest(p, m)
    assert is_irreducible(f, p)


def test_large_modulus_is_fast():
    f = find_irreducible(2, 20)
    assert len(f) == 21 and is_irreducible(f, 2)


def test_trace_examples():
    F4 = field(2, 2)
    w = F4.from_coords([0, 1])
    assert trace_to_prime(F4, w) == 1
    assert trace_to_prime(F4, 1) == 0
    F9 = field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert trace_to_prime(F9, 1) == 2


@pytest.mark.parametrize("p,m", [(2, 1), (2, 4), (2, 8), (3, 3), (3, 5), (5, 2), (5, 3), (7, 2)])
def test_frobenius_and_trace_tables(p, m):
    F = field(p, m)
    table = F.trace_table
    for x in range(F.q):
        t = trace_to_prime(F, x)
        assert t == table[x] == F.trace(x)
        assert trace_to_prime(F, F.pow(x, p)) == t


@pytest.mark.parametrize("p,m", [(2, 8), (3, 4)])
def test_log_multiplication_exhaustive(p, m):
    F = field(p, m)
    exp, log = F.exp_table, F.log_table
    order = F.q - 1
    xs = np.arange(1, F.q)
    for x in range(1, F.q):
        via_tables = exp[(log[x] + log[xs]) % order]
        direct = np.array([F.mul(x, int(y)) for y in xs])
        assert np.array_equal(via_tables, direct)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 2), (3, 3), (2, 6), (5, 2)])
def test_enumerate_units(p, m):
    F = field(p, m)
    units = list(enumerate_units(F))
    assert len(units) == F.q - 1 == len(set(units))
    assert 0 not in units
    chunks = unit_chunks(F, 4)
    assert chunks[0][0] == 0 and chunks[-1][1] == F.q - 1
    assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))


def test_zech_table():
    for p, m in [(2, 4), (3, 3), (5, 2)]:
        F = field(p, m)
        for e in range(F.q - 1):
            g_e = int(F.exp_table[e])
            s = F.add(1, g_e)
            assert F.zech_table[e] == (-1 if s == 0 else F.log_table[s])


def test_inverse_and_generator():
    F = field(3, 4)
    for x in range(1, F.q):
        assert F.mul(x, F.inv(x)) == 1
    orders = {F.pow(F.generator, e) for e in range(F.q - 1)}
    assert len(orders) == F.q - 1


def test_embed_base_examples():
    assert embed_base(3, 1, 4, 2) == 2
    assert embed_base(2, 1, 2, 1) == 1
    F4, F16 = field(2, 2), field(2, 4)
    g = F4.from_coords([0, 1])
    img = embed_base(2, 2, 2, g)
    # image is a root of the base modulus x^2 + x + 1, and the smallest one by coordinates
    assert F16.add(F16.add(F16.mul(img, img), img), 1) == 0
    roots = [y for y in range(F16.q) if F16.add(F16.add(F16.mul(y, y), y), 1) == 0]
    assert img == min(roots, key=lambda y: F16.coords(y))


@given(st.sampled_from([(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2)]), st.data())
def test_embed_base_is_a_ring_homomorphism(params, data):
    p, a, k = params
    base, ext = field(p, a), field(p, a * k)
    x = data.draw(st.integers(0, base.q - 1))
    y = data.draw(st.integers(0, base.q - 1))
    e = lambda v: embed_base(p, a, k, v)
    assert e(1) == 1
    assert e(base.add(x, y)) == ext.add(e(x), e(y))
    assert e(base.mul(x, y)) == ext.mul(e(x), e(y))
