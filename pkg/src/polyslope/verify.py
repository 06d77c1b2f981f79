"""Assemble closed-form predictions, geometric oracles and brute force into one verdict."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from . import family as fam
from .arith import binomial_identity_check
from .cyclotomic import CycInt
from .errors import PolyslopeError
from .family import FamilySpec
from .lfunc import (LPolynomial, LReconstruction, compare_polygons, divide_linear, factor_multiplicity,
                    l_hodge_polygon,
                    l_polynomial, newton_polygon_of, reconstruct)
from .polygon import Polygon
from .polytope import (HodgeData, denominator, facial_decomposition, hodge_numbers, hodge_polygon,
                       newton_polytope, weight_counts)

PASS, FAIL, NA = "pass", "fail", "n/a"
MAX_CHARACTER_SWEEP = 13


def rat(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def slopes_json(m: dict[Fraction, int]) -> dict[str, int]:
    return {rat(s): int(c) for s, c in sorted(m.items())}


def cyc_json(x: CycInt) -> dict:
    return {"p": x.p, "coords": list(x.coeffs)}


def poly_json(L: LPolynomial) -> list[dict]:
    return [cyc_json(c) for c in L.coeffs]


@dataclass
class Check:
    name: str
    status: str
    inputs: dict = field(default_factory=dict)
    asserted: bool = True

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "asserted": self.asserted, "inputs": self.inputs}


@dataclass
class VerdictReport:
    spec: dict
    polytope: dict = field(default_factory=dict)
    hodge: dict = field(default_factory=dict)
    prediction: dict = field(default_factory=dict)
    lfunction: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    archimedean: dict | None = None
    timings: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "ERROR"
        if any(c.asserted and c.status == FAIL for c in self.checks):
            return "MISMATCH"
        return "PASS"

    @property
    def exit_code(self) -> int:
        return {"PASS": 0, "MISMATCH": 2, "ERROR": 1}[self.verdict]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {
            "spec": self.spec,
            "polytope": self.polytope,
            "hodge": self.hodge,
            "prediction": self.prediction,
            "lfunction": self.lfunction,
            "comparison": {c.name: c.as_dict() for c in self.checks},
        }
        if self.archimedean is not None:
            out["archimedean"] = self.archimedean
        out["verdict"] = self.verdict
        out["error"] = self.error
        out["timings"] = self.timings
        return out


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

@dataclass
class Geometry:
    P: Any
    facets: list
    D_def: int


def polytope_section(spec: FamilySpec) -> tuple[Geometry, dict]:
    P = newton_polytope(fam.build_family_poly(spec))
    recs = facial_decomposition(P, spec.p)
    geo = Geometry(P, recs, denominator(P))
    count, _ = fam.predicted_faces(spec)
    return geo, {
        "vertices": [list(v) for v in P.vertices],
        "facets": [{"form": [rat(c) for c in fc.form], **r.as_dict()} for fc, r in zip(P.facets, recs)],
        "D_def": geo.D_def,
        "D_lcm": spec.D_lcm,
        "face_count": len(P.facets),
        "predicted_face_count": count,
        "volume_sum": sum(r.abs_det for r in recs),
        "all_facets_ordinary": all(r.ordinary_criterion for r in recs),
    }


def hodge_section(spec: FamilySpec, geo: Geometry | None, mode: str = "both") -> tuple[HodgeData | None, dict]:
    """Oracle and/or closed-form Hodge numbers, both tabulated against D = lcm b."""
    D = spec.D_lcm
    dim = spec.n + 1
    out: dict[str, Any] = {"D": D, "mode": mode}
    oracle = None
    if mode in ("oracle", "both"):
        W = weight_counts(geo.P, D, dim * D, guard=spec.box_guard)
        oracle = hodge_numbers(W, dim)
        out["W"] = list(W.counts)
        out["H_oracle"] = {str(k): h for k, h in sorted(oracle.H.items())}
        out["HP_oracle"] = hodge_polygon(oracle).as_lists()
    if mode in ("closed", "both"):
        G = fam.closed_form_G(spec)
        out["H_closed"] = {str(k): c for k, c in sorted(G.coeffs.items())}
    if mode == "both":
        out["agree"] = dict(oracle.H) == dict(fam.closed_form_hodge(spec))
    return oracle, out


def prediction_section(spec: FamilySpec) -> dict:
    pr = fam.predict(spec)
    return {
        "D_lcm": pr.D_lcm,
        "d": pr.d,
        "face_count": pr.face_count,
        "G": list(pr.G),
        "slopes": slopes_json(pr.slopes),
        "slope_total": pr.slope_total,
        "factor_shape": pr.factor_shape,
        "ordinary_hypothesis": pr.ordinary_hypothesis,
    }


def lfunction_section(rec: LReconstruction) -> dict:
    out: dict[str, Any] = {
        "character": rec.character,
        "k_max": rec.k_max,
        "mode": rec.mode,
        "counts": [list(c.counts) for c in rec.counts],
        "sums": [cyc_json(S) for S in rec.sums],
        "power_sums": [cyc_json(P) for P in rec.power_sums],
        "trivial_factor": rec.trivial_factor,
        "consistency": [[k, ok] for k, ok in rec.consistency],
        "error": rec.error,
    }
    if rec.poly is not None:
        NP, slopes = newton_polygon_of(rec.poly)
        out.update({
            "degree": rec.poly.degree,
            "sign": rec.poly.sign,
            "coefficients": poly_json(rec.poly),
            "integer_coefficients": rec.poly.int_coeffs(),
            "NP": NP.as_lists(),
            "slopes": slopes_json(slopes),
        })
    return out


# ---------------------------------------------------------------------------
# numeric checks
# ---------------------------------------------------------------------------

def katz_bound(spec: FamilySpec, sums: list[CycInt], dps: int = 30) -> tuple[bool, list[dict]]:
    """|S_k| <= (d - 1) q^((n-1)k/2) under every complex embedding."""
    rows = []
    ok = True
    chars = range(1, spec.p) if spec.p > 2 else [1]
    with mpmath.workdps(dps):
        for k, S in enumerate(sums, start=1):
            bound = (spec.d - 1) * mpmath.power(spec.q, mpmath.mpf(spec.n - 1) * k / 2)
            worst = max(abs(S.embed(s, dps)) for s in chars)
            good = worst <= bound * (1 + mpmath.mpf(10) ** (-dps // 2))
            ok &= bool(good)
            rows.append({"k": k, "max_abs": mpmath.nstr(worst, 12), "bound": mpmath.nstr(bound, 12), "ok": bool(good)})
    return ok, rows


@dataclass
class ArchimedeanReport:
    ok: bool
    moduli: list[float]
    weights: list[int | None]
    katz_ok: bool | None = None
    katz: list[dict] = field(default_factory=list)
    error: str | None = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "moduli": [f"{m:.15g}" for m in self.moduli], "weights": self.weights,
                "katz_ok": self.katz_ok, "katz": self.katz, "error": self.error}


def archimedean_check(L: LPolynomial, tol: float = 1e-9, n: int | None = None, s: int = 1,
                      k_max: int | None = None, dps: int = 50) -> ArchimedeanReport:
    """Reciprocal-root moduli must be q^(w/2) with integral w in [0, 2n]."""
    w_max = 2 * n if n is not None else 2 * L.degree
    if L.degree == 0:
        return ArchimedeanReport(True, [], [])
    with mpmath.workdps(dps):
        coeffs = [c.embed(s, dps) for c in L.coeffs]
        try:
            roots = mpmath.polyroots(coeffs[::-1], maxsteps=500, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence as exc:
            return ArchimedeanReport(False, [], [], error=f"root finder did not converge: {exc}")
        moduli, weights, ok = [], [], True
        lq = mpmath.log(L.q)
        for z in roots:
            m = 1 / abs(z)
            w = int(mpmath.nint(2 * mpmath.log(m) / lq))
            good = 0 <= w <= w_max and abs(m - mpmath.power(L.q, mpmath.mpf(w) / 2)) <= tol * mpmath.power(L.q, mpmath.mpf(w) / 2)
            moduli.append(float(m))
            weights.append(w if good else None)
            ok &= bool(good)
    rep = ArchimedeanReport(ok, moduli, weights)
    if n is not None:
        K = k_max or L.degree + 1
        sign = (-1) ** (n + 1)
        sums = [P * sign for P in L.power_sums(K)]
        c1 = L.degree
        chars = range(1, L.p) if L.p > 2 else [1]
        rows, kok = [], True
        with mpmath.workdps(dps):
            for k, S in enumerate(sums, start=1):
                bound = c1 * mpmath.power(L.q, mpmath.mpf(n - 1) * k / 2)
                worst = max(abs(S.embed(t, dps)) for t in chars)
                good = bool(worst <= bound * (1 + mpmath.mpf(tol)))
                kok &= good
                rows.append({"k": k, "max_abs": mpmath.nstr(worst, 12), "bound": mpmath.nstr(bound, 12), "ok": good})
        rep.katz_ok, rep.katz = kok, rows
        rep.ok = rep.ok and kok
    return rep


# ---------------------------------------------------------------------------
# the verifier
# ---------------------------------------------------------------------------

def _status(flag: bool) -> str:
    return PASS if flag else FAIL


def _geometry_checks(spec: FamilySpec, geo: Geometry, poly_sec: dict) -> list[Check]:
    P = geo.P
    count, faces = fam.predicted_faces(spec)
    oracle_forms = sorted(fc.form for fc in P.facets)
    predicted_forms = sorted(f.form for f in faces)
    checks = [
        Check("vertices", _status(sorted(P.vertices) == sorted(fam.family_vertices(spec))),
              {"oracle": poly_sec["vertices"], "predicted": [list(v) for v in fam.family_vertices(spec)]}),
        Check("face_count", _status(len(P.facets) == count),
              {"oracle": len(P.facets), "predicted": count}),
        Check("facet_equations", _status(oracle_forms == predicted_forms),
              {"oracle": [[rat(c) for c in f] for f in oracle_forms],
               "predicted": [[rat(c) for c in f] for f in predicted_forms]}, asserted=False),
        Check("volume", _status(poly_sec["volume_sum"] == spec.d),
              {"sum_abs_det": poly_sec["volume_sum"], "d": spec.d}),
        Check("denominator_divides", _status(spec.D_lcm % geo.D_def == 0),
              {"D_def": geo.D_def, "D_lcm": spec.D_lcm}),
        Check("binomial_identity", _status(binomial_identity_check(spec.partition)),
              {"partition": list(spec.partition)}),
    ]
    return checks


def _lfunction_checks(spec: FamilySpec, rec: LReconstruction, HP_L: Polygon | None,
                      all_ordinary: bool, extra: list[LReconstruction]) -> list[Check]:
    checks: list[Check] = []
    if rec.poly is None:
        checks.append(Check("reconstruction", FAIL, {"error": rec.error}))
        return checks
    L = rec.poly
    NP, slopes = newton_polygon_of(L)
    predicted = fam.predicted_slopes(spec)
    hyp = fam.ordinary_hypothesis(spec)
    checks.append(Check("reconstruction", PASS, {"mode": rec.mode, "k_used": rec.k_used}))
    checks.append(Check("slopes_match_prediction", _status(slopes == predicted) if hyp else NA,
                        {"computed": slopes_json(slopes), "predicted": slopes_json(predicted),
                         "p_equiv_1_mod_D": hyp}))
    checks.append(Check("degree", _status(L.degree == spec.d - 1), {"degree": L.degree, "expected": spec.d - 1}))
    status = {"verified": PASS, "failed": FAIL}.get(rec.trivial_factor, NA)
    checks.append(Check("trivial_factor_L", status,
                        {"power_of_1_minus_T": spec.r - 1, "status": rec.trivial_factor,
                         "multiplicity": factor_multiplicity(L.coeffs, 1)}))
    if rec.lstar_direct is not None:
        Ls = rec.lstar_direct
        m1 = factor_multiplicity(Ls.coeffs, 1)
        mq = factor_multiplicity(divide_linear(Ls.coeffs, 1), spec.q) if m1 else 0
        checks.append(Check("lstar_relation", _status(Ls == rec.lstar),
                            {"from_star_sums": poly_json(Ls), "from_relation": poly_json(rec.lstar)}))
        checks.append(Check("lstar_factor_shape", _status(m1 >= 1 and mq >= spec.r - 1),
                            {"one_multiplicity": m1, "q_multiplicity": mq, "expected_q": spec.r - 1}))
    else:
        checks.append(Check("lstar_relation", NA, {"reason": f"needs k up to {spec.d}"}))
        checks.append(Check("lstar_factor_shape", NA, {"reason": f"needs k up to {spec.d}"}))
    if HP_L is not None:
        cmp = compare_polygons(NP, HP_L)
        checks.append(Check("np_above_hp", _status(cmp.lies_above and cmp.endpoints_equal),
                            {"NP": NP.as_lists(), "HP": HP_L.as_lists(), **cmp.as_dict()}))
        checks.append(Check("np_equals_hp_when_ordinary", _status(cmp.coincide) if all_ordinary else NA,
                            {"all_facets_ordinary": all_ordinary, "coincide": cmp.coincide}))
    shape = fam.predicted_factor_shape(spec)
    if shape["even_block_q_power"] is not None:
        mq = factor_multiplicity(L.coeffs, spec.q)
        checks.append(Check("even_block_factor", _status(mq >= shape["even_block_q_power"]),
                            {"q_multiplicity": mq, "expected_at_least": shape["even_block_q_power"]}))
    else:
        checks.append(Check("even_block_factor", NA, {}))
    cons = [ok for _, ok in rec.consistency]
    checks.append(Check("power_sum_consistency", (_status(all(cons)) if cons else NA),
                        {"checked": [[k, ok] for k, ok in rec.consistency]}))
    kok, rows = katz_bound(spec, rec.sums)
    checks.append(Check("katz_bound", _status(kok), {"rows": rows}))
    if extra:
        ref = slopes_json(slopes)
        per = {str(x.character): (slopes_json(newton_polygon_of(x.poly)[1]) if x.poly else None) for x in extra}
        checks.append(Check("character_independence", _status(all(v == ref for v in per.values())),
                            {"reference": ref, "per_character": per}))
    return checks


def verify_prediction(spec: FamilySpec, max_k: int | None = None, threads: int | None = None,
                      method: str = "direct", budget: int | None = None, hodge_mode: str = "both",
                      check_archimedean: bool = False, tol: float = 1e-9) -> VerdictReport:
    """Run every comparison; failures become verdict entries, tool errors set ``error``."""
    report = VerdictReport(spec=spec.to_json())
    clock = time.perf_counter
    try:
        t0 = clock()
        geo, report.polytope = polytope_section(spec)
        report.timings["polytope"] = clock() - t0
        t0 = clock()
        oracle, report.hodge = hodge_section(spec, geo, hodge_mode)
        report.timings["hodge"] = clock() - t0
        report.prediction = prediction_section(spec)
        report.checks.extend(_geometry_checks(spec, geo, report.polytope))
        if hodge_mode == "both":
            report.checks.append(Check("hodge_closed_vs_oracle", _status(report.hodge["agree"]),
                                       {"H_oracle": report.hodge["H_oracle"], "H_closed": report.hodge["H_closed"]}))
        if oracle is not None:
            H_for_L = oracle
        else:
            G = fam.closed_form_G(spec)
            H_for_L = HodgeData(spec.D_lcm, spec.n + 1, dict(G.coeffs))
        try:
            HP_L = l_hodge_polygon(H_for_L)
        except (ValueError, PolyslopeError):
            HP_L = None
        t0 = clock()
        rec = l_polynomial(spec, max_k, threads, method, budget)
        report.timings["lfunction"] = clock() - t0
        extra = []
        if 2 < spec.p <= MAX_CHARACTER_SWEEP:
            extra = [reconstruct(spec, rec.counts, s) for s in range(2, spec.p)]
        report.lfunction = lfunction_section(rec)
        report.checks.extend(_lfunction_checks(spec, rec, HP_L, report.polytope["all_facets_ordinary"], extra))
        if check_archimedean and rec.poly is not None:
            arch = archimedean_check(rec.poly, tol, n=spec.n)
            report.archimedean = arch.as_dict()
            report.checks.append(Check("archimedean", _status(arch.ok), {"tol": tol}))
    except PolyslopeError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    return report
