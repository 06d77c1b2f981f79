"""Finite fields F_{p^m} in a polynomial basis.

An element is stored as its *code*: the little-endian base-p packing
``sum c_i p^i`` of its coordinate vector ``(c_0, ..., c_{m-1})`` in the
basis 1, x, ..., x^(m-1) modulo the field's modulus.  The modulus is the
lexicographically smallest monic irreducible of degree m, comparing
coefficient tuples low degree first.

Fields with at most ``LOG_TABLE_LIMIT`` elements also carry discrete
log / antilog / Zech tables built from the smallest primitive element.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

LOG_TABLE_LIMIT = 2 ** 20

Poly = list[int]  # coefficients over F_p, low degree first


# ---------------------------------------------------------------- F_p[x] helpers
def _trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        coef = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return _trim(q), a


def _pmod(a: Poly, b: Poly, p: int) -> Poly:
    return _pdivmod(a, b, p)[1]


def _pgcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Poly, e: int, mod: Poly, p: int) -> Poly:
    out: Poly = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return out


def _peval(f: Poly, t: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * t + c) % p
    return acc


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p ** m, f, p) != _pmod(x, f, p):
        return False
    for ell in _prime_factors(m):
        h = _padd(_ppowmod(x, p ** (m // ell), f, p), [0, p - 1], p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, coefficients low degree first."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    if m == 1:
        return (0, 1)
    # constant term 0 means x | f, so that whole lexicographic block is skipped
    for c0 in range(1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if p <= 64 and any(_peval(f, t, p) == 0 for t in range(p)):
                continue
            if is_irreducible(f, p):
                return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------- field context
class FieldCtx:
    """The field F_{p^m}; immutable once built (tables are built lazily)."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = find_irreducible(p, m)
        self._mod = list(self.modulus)
        self._pw = [p ** i for i in range(m)]

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m})"

    # encoding ------------------------------------------------------------
    def coords(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, c: Sequence[int]) -> int:
        if len(c) > self.m:
            raise ValueError(f"coordinate vector longer than extension degree {self.m}")
        return sum((v % self.p) * w for v, w in zip(c, self._pw))

    def _poly(self, x: int) -> Poly:
        return _trim(list(self.coords(x)))

    def _code(self, poly: Poly) -> int:
        return sum(v * w for v, w in zip(poly, self._pw))

    # arithmetic (definitional: polynomial arithmetic mod the modulus) ------
    def add(self, x: int, y: int) -> int:
        return self.from_coords([a + b for a, b in zip(self.coords(x), self.coords(y))])

    def neg(self, x: int) -> int:
        return self.from_coords([-a for a in self.coords(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        return self._code(_pmod(_pmul(self._poly(x), self._poly(y), self.p), self._mod, self.p))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        return self._code(_ppowmod(self._poly(x), e, self._mod, self.p))

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.has_tables:
            lg = self.log_table[x]
            return int(self.exp_table[(-lg) % (self.q - 1)])
        return self.pow(x, self.q - 2)

    @property
    def has_tables(self) -> bool:
        return self.q <= LOG_TABLE_LIMIT

    # multiplicative structure --------------------------------------------
    @cached_property
    def generator(self) -> int:
        """Smallest code generating the unit group."""
        order = self.q - 1
        if order == 1:
            return 1
        primes = _prime_factors(order)
        for g in range(2, self.q):
            if all(self.pow(g, order // ell) != 1 for ell in primes):
                return g
        raise AssertionError("unit group has no generator")  # unreachable

    def _mult_matrix(self, h: int) -> np.ndarray:
        """Matrix of y -> h*y acting on coordinate row vectors (y_row @ M)."""
        # basis element x^i has code p^i
        rows = [self.coords(self.mul(h, self._pw[i])) for i in range(self.m)]
        return np.array(rows, dtype=np.int64)

    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[e] = code of g^e for 0 <= e < q - 1."""
        if not self.has_tables:
            raise MemoryError(f"log tables are limited to fields of size <= {LOG_TABLE_LIMIT}")
        order = self.q - 1
        g = self.generator
        B = max(1, int(np.ceil(np.sqrt(order))))
        baby = [1]
        for _ in range(B - 1):
            baby.append(self.mul(baby[-1], g))
        baby_digits = np.array([self.coords(c) for c in baby], dtype=np.int64)
        pw = np.array(self._pw, dtype=np.int64)
        giant = self.pow(g, B)
        M = self._mult_matrix(giant)
        out = np.empty(B * ((order + B - 1) // B), dtype=np.int64)
        cur = baby_digits
        for i in range((order + B - 1) // B):
            out[i * B:(i + 1) * B] = cur @ pw
            cur = (cur @ M) % self.p
        return out[:order].copy()

    @cached_property
    def log_table(self) -> np.ndarray:
        """log_table[code] = discrete log base the generator; -1 for zero."""
        lg = np.full(self.q, -1, dtype=np.int64)
        lg[self.exp_table] = np.arange(self.q - 1, dtype=np.int64)
        return lg

    @cached_property
    def digits_table(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // w) % self.p for w in self._pw], axis=1)

    @cached_property
    def zech_table(self) -> np.ndarray:
        """zech[e] = log(1 + g^e), or -1 when 1 + g^e = 0."""
        codes = self.exp_table
        bumped = np.where(codes % self.p == self.p - 1, codes - (self.p - 1), codes + 1)
        return self.log_table[bumped]

    @cached_property
    def log_minus_one(self) -> int:
        return int(self.log_table[self.neg(1)])

    def mul_tables(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        lg = self.log_table
        return int(self.exp_table[(lg[x] + lg[y]) % (self.q - 1)])

    # trace -----------------------------------------------------------------
    @cached_property
    def _basis_traces(self) -> tuple[int, ...]:
        return tuple(trace_to_prime(self, self._pw[i]) for i in range(self.m))

    def trace(self, x: int) -> int:
        """Absolute trace to F_p via linearity over the basis traces."""
        return sum(c * t for c, t in zip(self.coords(x), self._basis_traces)) % self.p

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace_table[code] = absolute trace of that element."""
        t = np.array(self._basis_traces, dtype=np.int64)
        return (self.digits_table @ t) % self.p


@lru_cache(maxsize=64)
def field(p: int, m: int) -> FieldCtx:
    """Shared, cached field context."""
    return FieldCtx(p, m)


def trace_to_prime(ctx: FieldCtx, x: int) -> int:
    """sum_{i<m} x^(p^i), computed by repeated Frobenius."""
    acc = 0
    y = x
    for _ in range(ctx.m):
        acc = ctx.add(acc, y)
        y = ctx.pow(y, ctx.p)
    if acc >= ctx.p:
        raise AssertionError("trace left the prime field")
    return acc


def enumerate_units(ctx: FieldCtx) -> Iterator[int]:
    """Each unit exactly once: generator-power order if tabled, else by code."""
    if ctx.has_tables:
        yield from (int(c) for c in ctx.exp_table)
    else:
        yield from range(1, ctx.q)


def unit_chunks(ctx: FieldCtx, n_chunks: int) -> list[tuple[int, int]]:
    """Split the unit index range [0, q-1) into contiguous, near-equal pieces."""
    total = ctx.q - 1
    n_chunks = max(1, min(n_chunks, total))
    bounds = [total * i // n_chunks for i in range(n_chunks + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(n_chunks)]


def _subfield_elements(ext: FieldCtx, a: int) -> list[int]:
    sub_order = ext.p ** a - 1
    if ext.has_tables:
        step = (ext.q - 1) // sub_order
        return [0] + [int(ext.exp_table[j * step]) for j in range(sub_order)]
    return list(range(ext.q))


@lru_cache(maxsize=64)
def base_root(p: int, a: int, k: int) -> int:
    """Smallest root (by coordinate tuple) of the degree-a modulus inside F_{p^(ak)}."""
    base = field(p, a)
    ext = field(p, a * k)
    roots = []
    for y in _subfield_elements(ext, a):
        acc = 0
        for c in reversed(base.modulus):
            acc = ext.add(ext.mul(acc, y), c % p)
        if acc == 0:
            roots.append(y)
    if not roots:
        raise AssertionError(f"modulus of F_{p}^{a} has no root in F_{p}^{a * k}")
    return min(roots, key=ext.coords)


def embed_base(p: int, a: int, k: int, elem: int) -> int:
    """Image of ``elem`` in F_{p^a} under the fixed embedding into F_{p^(ak)}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    base = field(p, a)
    ext = field(p, a * k)
    if a == 1:
        return elem % p
    rho = base_root(p, a, k)
    acc = 0
    for c in reversed(base.coords(elem)):
        acc = ext.add(ext.mul(acc, rho), c)
    return acc
