"""Closed-form statements about the exponential-sum family.

The family is indexed by a prime p, q = p^a, a partition n = n_1 + ... + n_r,
positive exponents b_ij (one per variable, grouped in blocks) and nonzero
coefficients a_i in F_q.  The toric Laurent polynomial in n + 1 variables is

    f = x_1 + ... + x_n + x_{n+1} * (sum_i a_i / prod_{l in block i} x_l^{b_l} - 1).

Nothing in this module calls the geometric oracles in ``polytope``; the two
are compared elsewhere.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .arith import GenFn, expand_rational_gf, lcm
from .errors import SpecError
from .ffield import field as gf
from .polytope import LaurentPoly


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class FamilySpec:
    p: int
    a: int
    partition: tuple[int, ...]
    b: tuple[tuple[int, ...], ...]
    coeffs: tuple[tuple[int, ...], ...]      # a_i as F_p coordinate vectors in F_q
    max_k: int | None = None
    threads: int | None = None
    point_budget: int = 5 * 10 ** 8
    box_guard: int = 10 ** 8

    def __post_init__(self) -> None:
        object.__setattr__(self, "partition", tuple(int(x) for x in self.partition))
        object.__setattr__(self, "b", tuple(tuple(int(x) for x in row) for row in self.b))
        object.__setattr__(self, "coeffs", tuple(tuple(int(x) for x in c) for c in self.coeffs))
        if not is_prime(self.p):
            raise SpecError(f"p={self.p} is not prime")
        if self.a < 1:
            raise SpecError("a must be a positive integer")
        if not self.partition or any(x < 1 for x in self.partition):
            raise SpecError("partition must be a non-empty list of positive integers")
        if len(self.b) != len(self.partition) or any(
                len(row) != ni for row, ni in zip(self.b, self.partition)):
            raise SpecError(f"b rows {[len(r) for r in self.b]} do not match partition {list(self.partition)}")
        if any(x < 1 for row in self.b for x in row):
            raise SpecError("exponents b_ij must be positive")
        bad = [x for row in self.b for x in row if x % self.p == 0]
        if bad:
            raise SpecError(f"p={self.p} divides exponent(s) {bad}; the family assumes p does not divide any b_ij")
        if len(self.coeffs) != self.r:
            raise SpecError(f"expected {self.r} coefficients a_i, got {len(self.coeffs)}")
        for c in self.coeffs:
            if len(c) > self.a or len(c) == 0:
                raise SpecError(f"coefficient {list(c)} must have between 1 and a={self.a} coordinates")
            if any(not 0 <= x < self.p for x in c):
                raise SpecError(f"coefficient coordinates must lie in [0, {self.p})")
            if not any(c):
                raise SpecError("coefficients a_i must be nonzero")
        if self.max_k is not None and self.max_k < 1:
            raise SpecError("max_k must be positive")
        if self.threads is not None and self.threads < 1:
            raise SpecError("threads must be positive")

    @property
    def n(self) -> int:
        return sum(self.partition)

    @property
    def r(self) -> int:
        return len(self.partition)

    @property
    def q(self) -> int:
        return self.p ** self.a

    @property
    def flat_b(self) -> tuple[int, ...]:
        return tuple(x for row in self.b for x in row)

    @property
    def blocks(self) -> list[range]:
        out, start = [], 0
        for ni in self.partition:
            out.append(range(start, start + ni))
            start += ni
        return out

    @property
    def d(self) -> int:
        return math.prod(1 + sum(row) for row in self.b)

    @property
    def D_lcm(self) -> int:
        return lcm(*self.flat_b)

    @property
    def all_b_one(self) -> bool:
        return all(x == 1 for x in self.flat_b)

    def coeff_codes(self) -> tuple[int, ...]:
        """The a_i as element codes of F_q."""
        F = gf(self.p, self.a)
        return tuple(F.from_coords(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "p": self.p, "a": self.a, "partition": list(self.partition),
            "b": [list(r) for r in self.b], "coeffs": [list(c) for c in self.coeffs],
            "max_k": self.max_k, "threads": self.threads,
        }


def build_family_poly(spec: FamilySpec) -> LaurentPoly:
    """The toric Laurent polynomial; coefficients are F_q element codes."""
    n = spec.n
    F = gf(spec.p, spec.a)
    terms = []
    for i in range(n):
        e = [0] * (n + 1)
        e[i] = 1
        terms.append((tuple(e), 1))
    for blk, row, c in zip(spec.blocks, spec.b, spec.coeff_codes()):
        e = [0] * (n + 1)
        for l, bl in zip(blk, row):
            e[l] = -bl
        e[n] = 1
        terms.append((tuple(e), c))
    terms.append((tuple([0] * n + [1]), F.neg(1)))
    return LaurentPoly(n + 1, tuple(terms))


def family_vertices(spec: FamilySpec) -> list[tuple[int, ...]]:
    """V_0 = 0, V_1..V_n = e_l, V_{n+1} = e_{n+1}, then one vertex per block."""
    n = spec.n
    out = [tuple([0] * (n + 1))]
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = 1
        out.append(tuple(e))
    for blk, row in zip(spec.blocks, spec.b):
        v = [0] * (n + 1)
        for l, bl in zip(blk, row):
            v[l] = -bl
        v[n] = 1
        out.append(tuple(v))
    return out


@dataclass(frozen=True)
class PredictedFace:
    replaced: tuple[tuple[int, int], ...]   # (variable index, block index) pairs swapped out
    form: tuple[Fraction, ...]
    vertices: tuple[tuple[int, ...], ...]


def predicted_faces(spec: FamilySpec) -> tuple[int, list[PredictedFace]]:
    """Faces away from the origin: choose at most one replaced variable per block."""
    n = spec.n
    V = family_vertices(spec)
    count = math.prod(1 + ni for ni in spec.partition)
    faces = []
    choices = [[None, *blk] for blk in spec.blocks]
    for pick in itertools.product(*choices):
        form = [Fraction(1)] * (n + 1)
        replaced = []
        verts = {V[n + 1]}
        verts.update(V[1 + l] for l in range(n))
        for j, il in enumerate(pick):
            if il is None:
                continue
            bsum = sum(spec.b[j])
            bil = spec.flat_b[il]
            form[il] = -Fraction(bsum - bil, bil)
            replaced.append((il, j))
            verts.discard(V[1 + il])
            verts.add(V[n + 2 + j])
        faces.append(PredictedFace(tuple(replaced), tuple(form), tuple(sorted(verts))))
    return count, faces


class FamilyConstants(NamedTuple):
    D_lcm: int
    d: int
    normalized_volume: int     # (n+1)! Vol(Delta)


def predicted_constants(spec: FamilySpec) -> FamilyConstants:
    return FamilyConstants(spec.D_lcm, spec.d, spec.d)


def _gf_factors(spec: FamilySpec) -> tuple[list[tuple[int, int]], list[int]]:
    D = spec.D_lcm
    num = [(D, 1)] * (spec.n - spec.r)
    den = []
    for row in spec.b:
        top = D + sum(D // x for x in row)     # (1 + sum 1/b_ij) D
        num.append((top, 1))
        den.extend(D // x for x in row)
    return num, den


def closed_form_G(spec: FamilySpec, N: int | None = None) -> GenFn:
    """Hodge-number generating function (coefficient of x^k is H(k) at D = lcm b)."""
    N = (spec.n + 1) * spec.D_lcm if N is None else N
    num, den = _gf_factors(spec)
    return expand_rational_gf(num, den, N)


def closed_form_g(spec: FamilySpec, N: int) -> GenFn:
    """Weight-count generating function: G(x) / (1 - x^D)^(n+1)."""
    num, den = _gf_factors(spec)
    den = den + [spec.D_lcm] * (spec.n + 1)
    return expand_rational_gf(num, den, N)


def closed_form_G1(spec: FamilySpec, N: int | None = None) -> GenFn:
    """prod_i (1 + x + ... + x^{n_i}); only meaningful when every b_ij = 1."""
    if not spec.all_b_one:
        raise ValueError("G1 is defined only for b_ij = 1")
    N = spec.n if N is None else N
    return expand_rational_gf([(ni + 1, 1) for ni in spec.partition], [1] * spec.r, N)


def closed_form_hodge(spec: FamilySpec) -> dict[int, int]:
    G = closed_form_G(spec)
    return {k: c for k, c in G.coeffs.items()}


def predicted_slopes(spec: FamilySpec) -> dict[Fraction, int]:
    """Slope m/D has multiplicity [x^(m+D)] G for m = 0..nD."""
    D = spec.D_lcm
    G = closed_form_G(spec, (spec.n + 1) * D)
    out = {}
    for m in range(spec.n * D + 1):
        c = G[m + D]
        if c:
            out[Fraction(m, D)] = c
    return out


def ordinary_hypothesis(spec: FamilySpec) -> bool:
    """p = 1 (mod D) with D = lcm b_ij."""
    return spec.p % spec.D_lcm == 1 % spec.D_lcm


def cor_even_applies(spec: FamilySpec) -> bool:
    return spec.all_b_one and all(ni % 2 == 0 for ni in spec.partition)


def predicted_factor_shape(spec: FamilySpec) -> dict:
    """Trivial factors forced on L and L* (plus the even-block (1 - qT) block)."""
    r, d = spec.r, spec.d
    shape = {
        "L_trivial_one_power": r - 1,          # (1 - T)^(r-1)
        "L_remainder_degree": d - r,
        "L_degree": d - 1,
        "Lstar_one_power": 1,                   # (1 - T)
        "Lstar_q_power": r - 1,                 # (1 - qT)^(r-1)
        "Lstar_degree": d,
        "even_block_q_power": None,
    }
    if cor_even_applies(spec):
        shape["even_block_q_power"] = (r * r - r) // 2   # (1 - qT)^((r^2-r)/2) divides L
    return shape


@dataclass(frozen=True)
class Prediction:
    D_lcm: int
    d: int
    face_count: int
    G: tuple[int, ...]
    slopes: dict[Fraction, int]
    factor_shape: dict
    ordinary_hypothesis: bool

    @property
    def slope_total(self) -> int:
        return sum(self.slopes.values())


def predict(spec: FamilySpec) -> Prediction:
    count, _ = predicted_faces(spec)
    return Prediction(
        D_lcm=spec.D_lcm,
        d=spec.d,
        face_count=count,
        G=tuple(closed_form_G(spec).dense()),
        slopes=predicted_slopes(spec),
        factor_shape=predicted_factor_shape(spec),
        ordinary_hypothesis=ordinary_hypothesis(spec),
    )


def family_spec(p: int, partition: Sequence[int], b: Sequence[Sequence[int]] | None = None,
                coeffs: Sequence[int | Sequence[int]] | None = None, a: int = 1, **options) -> FamilySpec:
    """Convenience constructor: b defaults to all ones, coefficients to 1."""
    partition = tuple(partition)
    if b is None:
        b = tuple((1,) * ni for ni in partition)
    if coeffs is None:
        coeffs = [1] * len(partition)
    coeffs = tuple((c,) if isinstance(c, int) else tuple(c) for c in coeffs)
    return FamilySpec(p, a, partition, tuple(tuple(r) for r in b), coeffs, **options)
