"""Exact linear programming over Q.

Two-phase primal simplex on ``min c.x  s.t.  A x = b, x >= 0`` with
Bland's rule, so it never cycles.  Problem sizes here are tiny (tens of
columns), which is why a dense Fraction tableau is fine.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    inv = 1 / T[r][c]
    T[r] = [v * inv for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], allowed: int) -> bool:
    """Minimise the objective in the last row; return False if unbounded."""
    m = len(T) - 1
    while True:
        obj = T[m]
        # Bland: lowest-index column with negative reduced cost
        c = next((j for j in range(allowed) if obj[j] < 0), None)
        if c is None:
            return True
        best = None
        for i in range(m):
            if T[i][c] > 0:
                ratio = T[i][-1] / T[i][c]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], c)


def solve(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Solve ``min c.x`` subject to ``A x = b``, ``x >= 0`` exactly."""
    m, n = len(A), len(c)
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    # phase 1: minimise the sum of artificials
    obj = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T = rows + [obj]
    basis = list(range(n, n + m))
    _run(T, basis, n + m)
    if T[m][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive any artificial still in the basis (at zero level) out of it
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, basis, i, j)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    obj = [Fraction(v) for v in c] + [Fraction(0)]
    for i, bj in enumerate(basis):
        if obj[bj] != 0:
            f = obj[bj]
            obj = [a - f * v for a, v in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, n):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    return LPResult(OPTIMAL, -T[-1][-1], tuple(x))


def feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    return solve([0] * len(A[0]), A, b).status == OPTIMAL
