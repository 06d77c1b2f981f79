"""Newton polytopes, weight functions, Hodge numbers and facial decomposition.

All geometry is exact.  Facets are found by scanning every dim-subset of
the vertices for a supporting hyperplane; at the sizes this package deals
with (a dozen vertices in dimension <= 7) that is cheap and leaves nothing
to floating point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Mapping, Sequence

import numpy as np

from . import lp
from .arith import det, lcm, nullspace, primitive_integer_vector, rank, smith_invariants
from .errors import DimensionError, GeometryError, InvalidHodgeError, RangeError, ResourceError
from .polygon import Polygon

BOX_GUARD = 10 ** 8

IntPoint = tuple[int, ...]


@dataclass(frozen=True)
class LaurentPoly:
    """sum of coeff * x^exponent over ``terms``; coefficients are opaque nonzero values."""

    nvars: int
    terms: tuple[tuple[IntPoint, Any], ...]

    def __post_init__(self) -> None:
        terms = tuple((tuple(int(v) for v in e), c) for e, c in self.terms)
        exps = [e for e, _ in terms]
        if len(set(exps)) != len(exps):
            raise ValueError("exponent vectors must be pairwise distinct")
        if any(len(e) != self.nvars for e in exps):
            raise ValueError(f"exponent vectors must have length {self.nvars}")
        if any(not c for _, c in terms):
            raise ValueError("coefficients must be nonzero")
        object.__setattr__(self, "terms", terms)

    @property
    def support(self) -> list[IntPoint]:
        return [e for e, _ in self.terms]

    def coefficient(self, exponent: Sequence[int]) -> Any:
        return dict(self.terms).get(tuple(exponent), 0)


@dataclass(frozen=True)
class Facet:
    form: tuple[Fraction, ...]      # c with c.x = 1 on the facet, c.x <= 1 on the polytope
    vertex_ids: tuple[int, ...]     # indices into RatPolytope.vertices

    @property
    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.form))


@dataclass(frozen=True)
class RatPolytope:
    dim: int
    vertices: tuple[IntPoint, ...]
    facets: tuple[Facet, ...]                       # facets not containing the origin
    cone_normals: tuple[tuple[int, ...], ...] = ()  # h with h.x <= 0 on the polytope, h.0 = 0

    def facet_vertices(self, facet: Facet) -> list[IntPoint]:
        return [self.vertices[i] for i in facet.vertex_ids]


def _affine_dim(points: Sequence[IntPoint]) -> int:
    base = points[0]
    return rank([[a - b for a, b in zip(pt, base)] for pt in points[1:]]) if len(points) > 1 else 0


def _in_hull(target: IntPoint, others: Sequence[IntPoint]) -> bool:
    if not others:
        return False
    N = len(target)
    A = [[pt[i] for pt in others] for i in range(N)] + [[1] * len(others)]
    return lp.feasible(A, list(target) + [1])


def extreme_points(points: Sequence[IntPoint]) -> list[IntPoint]:
    pts = sorted(set(tuple(p) for p in points))
    return [pt for i, pt in enumerate(pts) if not _in_hull(pt, pts[:i] + pts[i + 1:])]


def newton_polytope(f: LaurentPoly) -> RatPolytope:
    """Convex hull of the origin and the support of ``f``."""
    if not f.terms:
        raise ValueError("support is empty")
    return polytope_from_points([(0,) * f.nvars, *f.support])


def polytope_from_points(points: Sequence[Sequence[int]]) -> RatPolytope:
    pts = [tuple(int(v) for v in p) for p in points]
    N = len(pts[0])
    adim = _affine_dim(pts)
    if adim != N:
        raise DimensionError(f"polytope is not full-dimensional: affine hull has dimension {adim} < {N}")
    verts = extreme_points(pts)
    facets: dict[tuple[int, ...], Facet] = {}
    cone: set[tuple[int, ...]] = set()
    for subset in itertools.combinations(range(len(verts)), N):
        rows = [list(verts[i]) + [-1] for i in subset]
        ns = nullspace(rows)
        if len(ns) != 1:
            continue
        *a, beta = primitive_integer_vector(ns[0])
        vals = [sum(x * y for x, y in zip(a, v)) - beta for v in verts]
        if all(s <= 0 for s in vals):
            pass
        elif all(s >= 0 for s in vals):
            a, beta, vals = [-x for x in a], -beta, [-s for s in vals]
        else:
            continue
        on = tuple(i for i, s in enumerate(vals) if s == 0)
        if beta == 0:
            cone.add(tuple(a))
        else:
            # beta > 0 since the origin lies in the polytope
            form = tuple(Fraction(x, beta) for x in a)
            facets.setdefault(form, Facet(form, on))
    ordered = tuple(sorted(facets.values(), key=lambda fc: fc.vertex_ids))
    return RatPolytope(N, tuple(verts), ordered, tuple(sorted(cone)))


def denominator(P: RatPolytope) -> int:
    """lcm of the coefficient denominators of all facet equations c.x = 1."""
    return lcm(*(fc.denominator for fc in P.facets))


def in_cone(P: RatPolytope, u: Sequence[int]) -> bool:
    """Exact LP feasibility of u = sum lambda_i V_i with lambda >= 0."""
    gens = [v for v in P.vertices if any(v)]
    A = [[v[i] for v in gens] for i in range(P.dim)]
    return lp.feasible(A, list(u))


def weight(P: RatPolytope, u: Sequence[int], D_scale: int | None = None) -> Fraction | float:
    """Smallest c >= 0 with u in c*P; +inf outside the cone over P."""
    u = tuple(u)
    if not any(u):
        return Fraction(0)
    if not in_cone(P, u):
        return math.inf
    w = max(Fraction(0), max(sum(c * x for c, x in zip(fc.form, u)) for fc in P.facets))
    if D_scale is not None and (w * D_scale).denominator != 1:
        raise RangeError(f"weight {w} is not a multiple of 1/{D_scale}")
    return w


def weight_lp(P: RatPolytope, u: Sequence[int]) -> Fraction | float:
    """Weight as the LP optimum min sum(lambda) s.t. sum lambda_i V_i = u."""
    gens = [v for v in P.vertices if any(v)]
    A = [[v[i] for v in gens] for i in range(P.dim)]
    res = lp.solve([1] * len(gens), A, list(u))
    return res.value if res.status == lp.OPTIMAL else math.inf


@dataclass(frozen=True)
class WeightTable:
    D: int
    counts: tuple[int, ...]     # counts[k] = #{u : w(u) = k/D}

    @property
    def k_max(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, k: int) -> int:
        if k < 0:
            return 0
        if k > self.k_max:
            raise RangeError(f"weight count {k} beyond computed range {self.k_max}")
        return self.counts[k]


def _box(P: RatPolytope, scale: Fraction) -> list[range]:
    out = []
    for i in range(P.dim):
        lo = min(v[i] for v in P.vertices) * scale
        hi = max(v[i] for v in P.vertices) * scale
        out.append(range(math.floor(lo), math.floor(hi) + 1))
    return out


def weight_counts(P: RatPolytope, D_scale: int, k_max: int, guard: int = BOX_GUARD) -> WeightTable:
    """Count lattice points of each weight k/D_scale, 0 <= k <= k_max, by box enumeration."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    D_def = denominator(P)
    if D_scale % D_def:
        raise RangeError(f"D_scale={D_scale} is not a multiple of the polytope denominator {D_def}")
    box = _box(P, Fraction(k_max, D_scale))
    size = math.prod(len(r) for r in box)
    if size > guard:
        raise ResourceError(f"weight enumeration box has {size} points (guard {guard})", size, guard)
    C = np.array([[int(c * D_scale) for c in fc.form] for fc in P.facets], dtype=np.int64)
    H = np.array(P.cone_normals, dtype=np.int64).reshape(-1, P.dim)
    counts = np.zeros(k_max + 1, dtype=np.int64)
    # chunk by the leading coordinate; each chunk is an independent count
    rest = np.array(list(itertools.product(*box[1:])), dtype=np.int64).reshape(-1, P.dim - 1)
    for x0 in box[0]:
        U = np.concatenate([np.full((len(rest), 1), x0, dtype=np.int64), rest], axis=1)
        ok = np.all(U @ H.T <= 0, axis=1) if len(H) else np.ones(len(U), dtype=bool)
        lev = np.maximum((U[ok] @ C.T).max(axis=1), 0)
        counts += np.bincount(lev[lev <= k_max], minlength=k_max + 1)[: k_max + 1]
    return WeightTable(D_scale, tuple(int(c) for c in counts))


@dataclass(frozen=True)
class HodgeData:
    D: int
    dim: int
    H: Mapping[int, int]

    def __getitem__(self, k: int) -> int:
        return self.H.get(k, 0)

    def total(self) -> int:
        return sum(self.H.values())

    def slope_multiset(self) -> dict[Fraction, int]:
        return {Fraction(k, self.D): h for k, h in sorted(self.H.items()) if h}


def hodge_numbers(W: WeightTable, ambient_dim: int) -> HodgeData:
    """Alternating binomial transform of the weight counts."""
    D, n = W.D, ambient_dim
    if W.k_max < n * D:
        raise RangeError(f"need weight counts up to {n * D}, have {W.k_max}")
    H = {}
    for k in range(n * D + 1):
        h = sum((-1) ** i * comb(n, i) * W[k - i * D] for i in range(n + 1))
        if h:
            H[k] = h
    return HodgeData(D, n, H)


def hodge_polygon(H: HodgeData) -> Polygon:
    bad = {k: h for k, h in H.H.items() if h < 0}
    if bad:
        raise InvalidHodgeError(f"negative Hodge numbers {bad}")
    return Polygon.from_sides((Fraction(k, H.D), h) for k, h in H.H.items())


@dataclass(frozen=True)
class FacetRecord:
    facet_id: int
    vertices: tuple[IntPoint, ...]
    matrix: tuple[tuple[int, ...], ...]   # facet vertices as columns
    abs_det: int
    invariants: tuple[int, ...]
    nondegenerate: bool | None            # p does not divide det (None if no p given)
    d_max: int
    ordinary_criterion: bool | None       # nondegenerate and p = 1 mod d_max

    def as_dict(self) -> dict:
        return {
            "facet_id": self.facet_id,
            "vertices": [list(v) for v in self.vertices],
            "abs_det": self.abs_det,
            "invariants": list(self.invariants),
            "nondegenerate": self.nondegenerate,
            "d_max": self.d_max,
            "ordinary_criterion": self.ordinary_criterion,
        }


def facial_decomposition(P: RatPolytope, p: int | None = None) -> list[FacetRecord]:
    """Per-facet vertex matrix, volume, Smith invariants and diagonal criteria."""
    out = []
    for idx, fc in enumerate(P.facets):
        verts = P.facet_vertices(fc)
        if len(verts) != P.dim:
            raise GeometryError(f"facet {idx} has {len(verts)} vertices; only simplices are supported")
        M = tuple(tuple(v[i] for v in verts) for i in range(P.dim))
        dt = abs(det(M))
        inv = smith_invariants(M)
        nondeg = None if p is None else dt % p != 0
        ordinary = None if p is None else bool(nondeg and (p - 1) % inv[-1] == 0)
        out.append(FacetRecord(idx, tuple(verts), M, dt, inv, nondeg, inv[-1], ordinary))
    return out
