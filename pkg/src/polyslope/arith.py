"""Exact integer/rational primitives.

Matrices are plain sequences of rows of Python ints; rationals are
:class:`fractions.Fraction`.  Everything here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Any, Iterable, Mapping, Sequence

from .errors import DimensionError, InexactDivisionError, SingularMatrixError

Matrix = Sequence[Sequence[int]]


def _square(M: Matrix) -> list[list[int]]:
    rows = [list(r) for r in M]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise DimensionError(f"expected a non-empty square matrix, got {len(rows)} rows "
                             f"of lengths {[len(r) for r in rows]}")
    return rows


def det(M: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = _square(M)
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def smith_invariants(M: Matrix) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... | d_n of a nonsingular integer matrix."""
    A = _square(M)
    n = len(A)
    if det(A) == 0:
        raise SingularMatrixError("Smith invariants requested for a singular matrix")
    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            piv = None
            for i in range(t, n):
                for j in range(t, n):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            i0, j0 = piv
            A[t], A[i0] = A[i0], A[t]
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            a = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = A[i][t] // a
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // a
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if A[i][j] % a), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
    return tuple(abs(A[i][i]) for i in range(n))


def rank(M: Sequence[Sequence[Any]]) -> int:
    rows = [[Fraction(x) for x in r] for r in M]
    return len(_rref(rows)[1])


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(M: Sequence[Sequence[Any]]) -> list[list[Fraction]]:
    """Basis of the right null space of ``M`` over Q."""
    rows = [[Fraction(x) for x in r] for r in M]
    ncols = len(rows[0])
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to coprime integers (sign kept)."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [x // g for x in ints]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def _div_exact(x: Any, k: int) -> Any:
    if isinstance(x, int):
        if x % k:
            raise InexactDivisionError(f"{x} is not divisible by {k}")
        return x // k
    return x.exact_div(k)


def elementary_from_power_sums(P: Sequence[Any], m: int) -> list[Any]:
    """Newton's identities: e_1..e_m from power sums P_1..P_m.

    Ring elements must support ``+``, ``-``, ``*`` with each other and with
    ints, and exact integer division (``int`` or an ``exact_div`` method).
    """
    if len(P) < m:
        raise ValueError(f"need {m} power sums, got {len(P)}")
    e: list[Any] = [1]
    for k in range(1, m + 1):
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * P[i - 1]
            acc = acc + term if i % 2 else acc - term
        try:
            e.append(_div_exact(acc, k))
        except InexactDivisionError as exc:
            raise InexactDivisionError(
                f"power sums inconsistent with integral polynomial (step k={k}): {exc}") from exc
    return e[1:]


def power_sums_from_elementary(e: Sequence[Any], count: int) -> list[Any]:
    """Inverse of :func:`elementary_from_power_sums` (e_j = 0 for j > len(e))."""
    ee = [1, *e]
    P: list[Any] = []
    for k in range(1, count + 1):
        acc = k * ee[k] if k < len(ee) else 0
        for i in range(1, k):
            if k - i < len(ee):
                term = ee[k - i] * P[i - 1]
                acc = acc - term if i % 2 else acc + term
        P.append(acc if k % 2 else -acc)
    return P


@dataclass(frozen=True)
class GenFn:
    """Truncated power series with integer coefficients, stored sparsely."""

    N: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {e: c for e, c in self.coeffs.items() if c != 0}
        if any(e < 0 or e > self.N for e in clean):
            raise ValueError("exponent outside [0, N]")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_dense(cls, dense: Sequence[int], N: int | None = None) -> "GenFn":
        N = len(dense) - 1 if N is None else N
        return cls(N, {i: c for i, c in enumerate(dense[: N + 1]) if c})

    def __getitem__(self, k: int) -> int:
        if k > self.N:
            raise IndexError(f"coefficient {k} beyond truncation bound {self.N}")
        return self.coeffs.get(k, 0)

    def dense(self) -> list[int]:
        return [self.coeffs.get(i, 0) for i in range(self.N + 1)]

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __mul__(self, other: "GenFn") -> "GenFn":
        N = min(self.N, other.N)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                if e1 + e2 <= N:
                    out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return GenFn(N, out)

    def total(self) -> int:
        return sum(self.coeffs.values())


def expand_rational_gf(numerator_factors: Iterable[tuple[int, int]],
                       denominator_factors: Iterable[int], N: int) -> GenFn:
    """Expand a product of ``(1 - x^e)^(+-1)`` factors up to degree ``N``.

    ``numerator_factors`` holds ``(e, s)`` pairs standing for ``(1 - x^e)^s``
    with ``s`` in {+1, -1}; each entry of ``denominator_factors`` contributes
    ``1/(1 - x^e)``.
    """
    c = [0] * (N + 1)
    c[0] = 1

    def mul(e: int) -> None:
        for j in range(N, e - 1, -1):
            c[j] -= c[j - e]

    def div(e: int) -> None:
        for j in range(e, N + 1):
            c[j] += c[j - e]

    for e, s in numerator_factors:
        if e <= 0:
            raise ValueError(f"exponents must be positive, got {e}")
        if s == 1:
            mul(e)
        elif s == -1:
            div(e)
        else:
            raise ValueError(f"factor power must be +1 or -1, got {s}")
    for e in denominator_factors:
        if e <= 0:
            raise ValueError(f"exponents must be positive, got {e}")
        div(e)
    return GenFn.from_dense(c, N)


def binomial_identity_check(partition: Sequence[int]) -> bool:
    """Face-count identity C(n+r, n) - sum C(n+r-n_i-1, n-n_i-1) == prod(1+n_i)."""
    if not partition or any(x < 1 for x in partition):
        raise ValueError("partition must be a non-empty sequence of positive ints")
    n, r = sum(partition), len(partition)
    lhs = comb(n + r, n) - sum(_binom(n + r - ni - 1, n - ni - 1) for ni in partition)
    rhs = 1
    for ni in partition:
        rhs *= 1 + ni
    return lhs == rhs


def face_count_inclusion_exclusion(partition: Sequence[int]) -> int:
    """Number of ways to drop exactly r of the n + r non-apex vertices so that
    every group (block i plus its extra vertex) loses at least one member,
    by full inclusion-exclusion over the groups left intact."""
    n, r = sum(partition), len(partition)
    total = 0
    for size in range(r + 1):
        for S in combinations(partition, size):
            total += (-1) ** size * _binom(n + r - sum(ni + 1 for ni in S), r)
    return total


def _binom(a: int, b: int) -> int:
    # C(a, b) = 0 for b < 0 (happens when r == 1: n - n_1 - 1 = -1)
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)
