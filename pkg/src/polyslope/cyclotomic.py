"""Arithmetic in Z[zeta_p] and q-adic valuations of its elements.

Elements are stored in the power basis 1, zeta, ..., zeta^(p-2); for p = 2
this is just an integer.  Valuations go through the norm: p is totally
ramified in Q(zeta_p), so ord_p(x) = ord_p(N(x)) / (p - 1).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .arith import det
from .errors import InexactDivisionError

INF = math.inf


def _reduce(p: int, poly: Iterable[int]) -> tuple[int, ...]:
    folded = [0] * p
    for i, c in enumerate(poly):
        folded[i % p] += c
    top = folded[p - 1]
    return tuple(c - top for c in folded[: p - 1])


class CycInt:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int] = ()):
        if p < 2:
            raise ValueError(f"p must be a prime, got {p}")
        c = tuple(int(x) for x in coeffs)
        if len(c) != p - 1:
            c = _reduce(p, c)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, power: int = 1) -> "CycInt":
        poly = [0] * p
        poly[power % p] = 1
        return cls(p, _reduce(p, poly))

    @classmethod
    def from_char_counts(cls, p: int, counts: Sequence[int], s: int = 1) -> "CycInt":
        """sum_t counts[t] * zeta^(s t): an additive character sum from trace counts."""
        poly = [0] * p
        for t, n in enumerate(counts):
            poly[(s * t) % p] += int(n)
        return cls(p, _reduce(p, poly))

    # ring structure ---------------------------------------------------
    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        prod = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[(i + j) % p] += a * b
        return CycInt(p, _reduce(p, prod))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycInt":
        if e < 0:
            raise ValueError("negative powers are not in Z[zeta]")
        out, base = CycInt.from_int(self.p, 1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def exact_div(self, k: int) -> "CycInt":
        if any(a % k for a in self.coeffs):
            raise InexactDivisionError(f"{self} is not divisible by {k}")
        return CycInt(self.p, tuple(a // k for a in self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) or "0"

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def conjugate(self, s: int) -> "CycInt":
        """Image under the Galois automorphism zeta -> zeta^s."""
        if s % self.p == 0:
            raise ValueError("s must be prime to p")
        poly = [0] * self.p
        for i, c in enumerate(self.coeffs):
            poly[(i * s) % self.p] += c
        return CycInt(self.p, _reduce(self.p, poly))

    # norm, valuation, embedding --------------------------------------
    def norm(self) -> int:
        return cyc_norm(self)

    def ord_q(self, a: int = 1) -> Fraction | float:
        return ord_q(self, self.p ** a)

    def embed(self, s: int = 1, dps: int = 30) -> mpmath.mpc:
        return complex_embed(self, s, dps)


def cyclotomic_polynomial(p: int) -> list[int]:
    """Coefficients (low degree first) of 1 + x + ... + x^(p-1)."""
    return [1] * p


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix (coefficients low first)."""
    f = _trim(f)
    g = _trim(g)
    if not f or not g:
        return 0
    m, n = len(f) - 1, len(g) - 1
    if n == 0:
        return g[0] ** m
    if m == 0:
        return f[0] ** n
    size = m + n
    fh, gh = f[::-1], g[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - i - n - 1))
    return det(rows)


def _trim(c: Sequence[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def cyc_norm(x: CycInt) -> int:
    """Product of all Galois conjugates of ``x``."""
    if x.p == 2:
        return x.coeffs[0]
    return resultant(cyclotomic_polynomial(x.p), x.coeffs)


def _vp(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ord_q(x: CycInt, q: int) -> Fraction | float:
    """q-adic valuation normalised so that ord_q(q) = 1; +inf for zero."""
    p = x.p
    a = round(math.log(q, p))
    if p ** a != q:
        raise ValueError(f"q={q} is not a power of p={p}")
    if not x:
        return INF
    return Fraction(_vp(cyc_norm(x), p), (p - 1) * a)


def complex_embed(x: CycInt, s: int = 1, dps: int = 30) -> mpmath.mpc:
    if not 1 <= s <= x.p - 1:
        raise ValueError(f"character index must lie in [1, {x.p - 1}]")
    with mpmath.workdps(dps):
        z = mpmath.expj(2 * mpmath.pi * s / x.p)
        acc = mpmath.mpc(0)
        for c in reversed(x.coeffs):
            acc = acc * z + c
        return +acc
