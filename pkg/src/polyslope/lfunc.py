"""Brute-force exponential sums and exact L-polynomial reconstruction.

For the family with coefficients a_i in F_q the k-th sum is

    S_k = sum over x in (F*_{q^k})^n with sum_i a_i / prod_l x_l^{b_l} = 1
          of zeta_p^{Tr(x_1 + ... + x_n)}.

The enumeration only records how many solutions have each trace value
(a :class:`CharCountVector`); the cyclotomic arithmetic happens once per k.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import elementary_from_power_sums, power_sums_from_elementary
from .cyclotomic import CycInt
from .errors import InexactDivisionError, RangeError, ResourceError
from .family import FamilySpec
from .ffield import embed_base, field as gf, trace_to_prime
from .polygon import Polygon, lower_hull
from .polytope import HodgeData

DEFAULT_BUDGET = 5 * 10 ** 8
METHODS = ("direct", "blocked", "reference")

SlopeMultiset = dict[Fraction, int]


@dataclass(frozen=True)
class CharCountVector:
    """counts[t] = number of solutions with trace t, for t = 0..p-1."""

    p: int
    k: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.p:
            raise ValueError(f"expected {self.p} trace bins, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __add__(self, other: "CharCountVector") -> "CharCountVector":
        if (self.p, self.k) != (other.p, other.k):
            raise ValueError("cannot merge count vectors of different fields")
        return CharCountVector(self.p, self.k, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def to_cycint(self, s: int = 1) -> CycInt:
        """sum_t N_t zeta^(s t)."""
        return CycInt.from_char_counts(self.p, self.counts, s)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _ext_coeffs(spec: FamilySpec, k: int) -> list[int]:
    return [embed_base(spec.p, spec.a, k, c) for c in spec.coeff_codes()]


def enumeration_cost(spec: FamilySpec, k: int, method: str = "direct") -> int:
    """Rough count of inner-loop operations for one value of k."""
    Q = spec.q ** k
    order = Q - 1
    if method == "blocked":
        middle = max(spec.r - 2, 0) * order * Q * spec.p * spec.p
        return spec.n * order * order * spec.p + middle + order * spec.p * spec.p
    return order ** spec.n


def total_cost(spec: FamilySpec, k_max: int, method: str = "direct") -> int:
    return sum(enumeration_cost(spec, k, method) for k in range(1, k_max + 1))


def _require_tables(F) -> None:
    if not F.has_tables:
        raise ResourceError(f"F_{F.q} is beyond the log-table regime", F.q, None)


def _direct(spec: FamilySpec, k: int, threads: int, chunks: int | None) -> CharCountVector:
    from . import _kernels

    F = gf(spec.p, spec.a * k)
    _require_tables(F)
    order = F.q - 1
    log = F.log_table
    block_of = np.array([i for i, blk in enumerate(spec.blocks) for _ in blk], np.int64)
    bmod = np.array([b % order for b in spec.flat_b], np.int64)
    coeff_log = np.array([log[c] for c in _ext_coeffs(spec, k)], np.int64)
    trace_log = np.ascontiguousarray(F.trace_table[F.exp_table])
    zech = np.ascontiguousarray(F.zech_table)
    lm1 = F.log_minus_one
    n_chunks = chunks if chunks is not None else (1 if threads == 1 else 4 * threads)
    lo = 0
    bounds = []
    for i in range(1, n_chunks + 1):
        hi = order * i // n_chunks
        if hi > lo:
            bounds.append((lo, hi))
        lo = hi

    def work(rng):
        return _kernels.count_chunk(rng[0], rng[1], order, spec.p, block_of, bmod,
                                    coeff_log, trace_log, zech, lm1)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    total = np.zeros(spec.p, np.int64)
    for part in parts:
        total += part
    return CharCountVector(spec.p, k, tuple(total))


def _conv_trace(S: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Cyclic convolution over the last (trace) axis."""
    out = np.zeros_like(S)
    for t in np.nonzero(h)[0]:
        out += h[t] * np.roll(S, int(t), axis=-1)
    return out


def _blocked(spec: FamilySpec, k: int) -> CharCountVector:
    """Exact dynamic programme over per-block (log-product, trace) histograms."""
    F = gf(spec.p, spec.a * k)
    _require_tables(F)
    p, Q = spec.p, F.q
    order = Q - 1
    exp = F.exp_table
    log = F.log_table
    tr = F.trace_table[exp]
    dig = F.digits_table
    pw = np.array([p ** i for i in range(F.m)], np.int64)
    e = np.arange(order)
    dt = np.int64 if order ** spec.n < 2 ** 62 else object

    hists = []
    for row in spec.b:
        H = np.zeros((order, p), dt)
        H[0, 0] = 1
        for b in row:
            K = np.zeros((order, p), dt)
            np.add.at(K, ((b * e) % order, tr), 1)
            new = np.zeros_like(H)
            for v in np.nonzero(K.any(axis=1))[0]:
                new += np.roll(_conv_trace(H, K[v]), int(v), axis=0)
            H = new
        hists.append(H)

    clog = [int(log[c]) for c in _ext_coeffs(spec, k)]
    if spec.r == 1:
        return CharCountVector(p, k, tuple(hists[0][clog[0] % order]))

    def term_codes(i):
        return exp[(clog[i] - e) % order]

    S = np.zeros((Q, p), dt)
    np.add.at(S, term_codes(0), hists[0])
    for i in range(1, spec.r - 1):
        new = np.zeros_like(S)
        codes = term_codes(i)
        for u in np.nonzero(hists[i].any(axis=1))[0]:
            shifted = ((dig + dig[codes[u]]) % p) @ pw      # s -> s + term
            new[shifted] += _conv_trace(S, hists[i][u])
        S = new
    one_minus = ((dig[1] - dig) % p) @ pw
    codes = term_codes(spec.r - 1)
    out = np.zeros(p, dt)
    for u in np.nonzero(hists[-1].any(axis=1))[0]:
        out += _conv_trace(S[one_minus[codes[u]]], hists[-1][u])
    return CharCountVector(p, k, tuple(out))


def _reference(spec: FamilySpec, k: int) -> CharCountVector:
    """Definitional enumeration with polynomial-basis field arithmetic."""
    F = gf(spec.p, spec.a * k)
    coeffs = _ext_coeffs(spec, k)
    counts = [0] * spec.p
    for x in itertools.product(range(1, F.q), repeat=spec.n):
        tot = 0
        for blk, row, c in zip(spec.blocks, spec.b, coeffs):
            prod = 1
            for l, b in zip(blk, row):
                prod = F.mul(prod, F.pow(x[l], b))
            tot = F.add(tot, F.mul(c, F.inv(prod)))
        if tot == 1:
            s = 0
            for v in x:
                s = F.add(s, v)
            counts[trace_to_prime(F, s)] += 1
    return CharCountVector(spec.p, k, tuple(counts))


def exp_sum(spec: FamilySpec, k: int, threads: int | None = None, method: str = "direct",
            chunks: int | None = None) -> CharCountVector:
    """Trace histogram of the solutions over F_{q^k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    threads = threads or spec.threads or 1
    if method == "direct":
        return _direct(spec, k, threads, chunks)
    if method == "blocked":
        return _blocked(spec, k)
    return _reference(spec, k)


def star_sum_from_sum(spec: FamilySpec, k: int, S: CycInt) -> CycInt:
    """S*_k = q^k S_k - (-1)^n."""
    return S * spec.q ** k - (-1) ** spec.n


# ---------------------------------------------------------------------------
# polynomials over Z[zeta_p]
# ---------------------------------------------------------------------------

def _poly_mul(A: Sequence[CycInt], B: Sequence[CycInt]) -> list[CycInt]:
    p = A[0].p
    out = [CycInt.from_int(p, 0)] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a:
            for j, b in enumerate(B):
                out[i + j] = out[i + j] + a * b
    return out


def _trim_poly(A: Sequence[CycInt]) -> list[CycInt]:
    A = list(A)
    while len(A) > 1 and not A[-1]:
        A.pop()
    return A


def divide_linear(A: Sequence[CycInt], c: int) -> list[CycInt]:
    """Exact quotient of A(T) by (1 - cT); raises if the remainder is nonzero."""
    A = _trim_poly(A)
    if len(A) < 2:
        raise InexactDivisionError(f"(1 - {c}T) does not divide a constant")
    B = [A[0]]
    for j in range(1, len(A) - 1):
        B.append(A[j] + B[-1] * c)
    if A[-1] + B[-1] * c:
        raise InexactDivisionError(f"(1 - {c}T) does not divide the polynomial")
    return B


def linear_power(p: int, c: int, e: int) -> list[CycInt]:
    """(1 - cT)^e."""
    return [CycInt.from_int(p, (-c) ** j * math.comb(e, j)) for j in range(e + 1)]


def factor_multiplicity(A: Sequence[CycInt], c: int) -> int:
    """Largest e with (1 - cT)^e dividing A."""
    e = 0
    cur = _trim_poly(A)
    while True:
        try:
            cur = divide_linear(cur, c)
        except InexactDivisionError:
            return e
        e += 1


@dataclass(frozen=True)
class LPolynomial:
    """1 + c_1 T + ... with coefficients in Z[zeta_p].

    ``sign`` records which power of the L-function this is: the polynomial
    equals L^sign with sign = (-1)^n.
    """

    p: int
    q: int
    coeffs: tuple[CycInt, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        c = tuple(_trim_poly(self.coeffs))
        if c[0] != 1:
            raise ValueError("constant term must be 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def int_coeffs(self) -> list[int] | None:
        return [c.coeffs[0] for c in self.coeffs] if self.is_rational() else None

    def elementary(self) -> list[CycInt]:
        """e_j with L = sum (-1)^j e_j T^j."""
        return [c if j % 2 == 0 else -c for j, c in enumerate(self.coeffs)][1:]

    def power_sums(self, count: int) -> list[CycInt]:
        return power_sums_from_elementary(self.elementary(), count)

    def scaled(self, factor: int) -> "LPolynomial":
        """L(factor * T)."""
        return LPolynomial(self.p, self.q, tuple(c * factor ** j for j, c in enumerate(self.coeffs)), self.sign)

    def __str__(self) -> str:
        ints = self.int_coeffs()
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(ints[j]) if ints is not None else f"({c})"
            parts.append(s if j == 0 else f"{s}*T" + (f"^{j}" if j > 1 else ""))
        return " + ".join(parts)


def _from_elementary(p: int, e: Sequence[CycInt]) -> list[CycInt]:
    out = [CycInt.from_int(p, 1)]
    for j, ej in enumerate(e, start=1):
        out.append(ej if j % 2 == 0 else -ej)
    return out


def lstar_from_l(L: LPolynomial) -> LPolynomial:
    """L*(T) = (1 - T) L(qT)."""
    body = L.scaled(L.q).coeffs
    return LPolynomial(L.p, L.q, tuple(_poly_mul(linear_power(L.p, 1, 1), body)), L.sign)


def choose_max_k(spec: FamilySpec, max_k: int | None = None, method: str = "direct",
                 budget: int | None = None) -> int:
    """Largest k in [d - r, d] affordable within the budget (or the requested max_k)."""
    budget = spec.point_budget if budget is None else budget
    need = spec.d - spec.r
    if max_k is not None:
        if max_k < need:
            raise RangeError(f"max_k={max_k} is below the {need} power sums needed")
        cost = total_cost(spec, max_k, method)
        if cost > budget:
            raise ResourceError(f"k <= {max_k} needs about {cost:.3g} evaluations (budget {budget})", cost, budget)
        return max_k
    cost = total_cost(spec, need, method)
    if cost > budget:
        raise ResourceError(f"k <= {need} needs about {cost:.3g} evaluations (budget {budget})", cost, budget)
    K = need
    while K < spec.d and total_cost(spec, K + 1, method) <= budget:
        K += 1
    return K


@dataclass
class LReconstruction:
    """Everything produced while rebuilding L from brute-force sums."""

    spec: FamilySpec
    character: int
    counts: list[CharCountVector]
    sums: list[CycInt]                 # S_k(a), k = 1..K
    mode: str = ""                     # "full" (degree d-1 directly) or "peeled"
    k_used: int = 0
    poly: LPolynomial | None = None
    trivial_factor: str = "unknown"    # verified | failed | assumed
    consistency: list[tuple[int, bool]] = field(default_factory=list)
    lstar: LPolynomial | None = None
    lstar_direct: LPolynomial | None = None
    error: str | None = None

    @property
    def k_max(self) -> int:
        return len(self.sums)

    @property
    def power_sums(self) -> list[CycInt]:
        s = (-1) ** (self.spec.n + 1)
        return [S * s for S in self.sums]

    @property
    def star_sums(self) -> list[CycInt]:
        return [star_sum_from_sum(self.spec, k, S) for k, S in enumerate(self.sums, start=1)]


def reconstruct(spec: FamilySpec, counts: Sequence[CharCountVector], character: int = 1) -> LReconstruction:
    """Rebuild L(a, T)^((-1)^n) from trace histograms for k = 1..K."""
    if not 1 <= character <= max(spec.p - 1, 1):
        raise ValueError(f"character index must lie in [1, {spec.p - 1}]")
    p, d, r, n = spec.p, spec.d, spec.r, spec.n
    sums = [cv.to_cycint(character) for cv in counts]
    rec = LReconstruction(spec, character, list(counts), sums)
    K = len(sums)
    P = rec.power_sums
    sign = (-1) ** n
    try:
        if K >= d - 1:
            rec.mode, rec.k_used = "full", d - 1
            coeffs = _from_elementary(p, elementary_from_power_sums(P, d - 1))
            rec.poly = LPolynomial(p, spec.q, tuple(coeffs), sign)
            rec.trivial_factor = "verified" if factor_multiplicity(coeffs, 1) >= r - 1 else "failed"
        else:
            if K < d - r:
                raise RangeError(f"need {d - r} power sums, have {K}")
            rec.mode, rec.k_used = "peeled", d - r
            peeled = [x - (r - 1) for x in P]
            rest = _from_elementary(p, elementary_from_power_sums(peeled, d - r))
            coeffs = _poly_mul(rest, linear_power(p, 1, r - 1))
            rec.poly = LPolynomial(p, spec.q, tuple(coeffs), sign)
            rec.trivial_factor = "assumed"
    except InexactDivisionError as exc:
        rec.error = f"factorization hypothesis violated: {exc}"
        return rec

    predicted = rec.poly.power_sums(K)
    rec.consistency = [(k, predicted[k - 1] == P[k - 1]) for k in range(rec.k_used + 1, K + 1)]
    rec.lstar = lstar_from_l(rec.poly)
    if K >= d:
        Pstar = [x * (-1) ** (n + 1) for x in rec.star_sums]
        try:
            coeffs = _from_elementary(p, elementary_from_power_sums(Pstar, d))
            rec.lstar_direct = LPolynomial(p, spec.q, tuple(coeffs), sign)
        except InexactDivisionError:
            rec.lstar_direct = None
    return rec


def compute_counts(spec: FamilySpec, K: int, threads: int | None = None,
                   method: str = "direct") -> list[CharCountVector]:
    return [exp_sum(spec, k, threads=threads, method=method) for k in range(1, K + 1)]


def l_polynomial(spec: FamilySpec, max_k: int | None = None, threads: int | None = None,
                 method: str = "direct", budget: int | None = None, character: int = 1) -> LReconstruction:
    """Brute-force the sums for k = 1..K and rebuild the L-polynomial."""
    K = choose_max_k(spec, max_k if max_k is not None else spec.max_k, method, budget)
    return reconstruct(spec, compute_counts(spec, K, threads, method), character)


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

def newton_polygon_of(L: LPolynomial) -> tuple[Polygon, SlopeMultiset]:
    """Lower hull of (j, ord_q c_j) over the nonzero coefficients."""
    if L.coeffs[0] != 1:
        raise ValueError("constant term must be 1")
    a = round(math.log(L.q, L.p))
    pts = [(j, c.ord_q(a)) for j, c in enumerate(L.coeffs) if c]
    poly = Polygon(tuple(lower_hull(pts)))
    return poly, poly.slope_multiset()


def l_hodge_polygon(H: HodgeData) -> Polygon:
    """Hodge bound for L from that of L*: drop one slope-0 side unit and shift slopes down by 1."""
    slopes = dict(H.slope_multiset())
    if slopes.get(Fraction(0), 0) < 1:
        raise ValueError("Hodge data has no slope-0 part to remove")
    slopes[Fraction(0)] -= 1
    return Polygon.from_sides((s - 1, m) for s, m in slopes.items() if m)


@dataclass(frozen=True)
class PolygonComparison:
    lies_above: bool
    endpoints_equal: bool
    coincide: bool
    diffs: tuple[tuple[Fraction, Fraction], ...]   # (x, NP(x) - HP(x)) at every breakpoint

    def as_dict(self) -> dict:
        return {
            "lies_above": self.lies_above,
            "endpoints_equal": self.endpoints_equal,
            "coincide": self.coincide,
            "diffs": [[f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"] for x, y in self.diffs],
        }


def compare_polygons(NP: Polygon, HP: Polygon) -> PolygonComparison:
    """Pointwise comparison at every breakpoint of either polygon."""
    width = min(NP.width, HP.width)
    xs = sorted({x for x, _ in NP.breakpoints} | {x for x, _ in HP.breakpoints})
    diffs = tuple((x, NP(x) - HP(x)) for x in xs if x <= width)
    above = all(dv >= 0 for _, dv in diffs)
    ends = NP.endpoint == HP.endpoint
    return PolygonComparison(above, ends, ends and all(dv == 0 for _, dv in diffs), diffs)
