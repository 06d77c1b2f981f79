from __future__ import annotations

import json
import math

import pytest

from polyslope.family import family_spec
from polyslope.lfunc import LPolynomial, l_polynomial
from polyslope.cyclotomic import CycInt
from polyslope.verify import FAIL, NA, PASS, Check, VerdictReport, archimedean_check, katz_bound, verify_prediction


def statuses(report):
    return {c.name: c.status for c in report.checks}


def test_kloosterman_passes():
    rep = verify_prediction(family_spec(2, [2]), check_archimedean=True)
    assert rep.verdict == "PASS" and rep.exit_code == 0
    st = statuses(rep)
    for name in ("vertices", "face_count", "volume", "slopes_match_prediction", "degree", "np_above_hp",
                 "np_equals_hp_when_ordinary", "katz_bound", "archimedean", "hodge_closed_vs_oracle"):
        assert st[name] == PASS, name


def test_mismatch_for_non_unit_exponent():
    rep = verify_prediction(family_spec(3, [1], [[2]]))
    assert rep.verdict == "MISMATCH" and rep.exit_code == 2
    st = statuses(rep)
    assert st["slopes_match_prediction"] == FAIL
    assert st["hodge_closed_vs_oracle"] == FAIL
    assert st["np_above_hp"] == PASS and st["np_equals_hp_when_ordinary"] == PASS
    c = rep.check("slopes_match_prediction")
    assert c.inputs["computed"] == {"0/1": 2} and c.inputs["predicted"] == {"0/1": 1}


def test_mixed_partition_all_checks():
    rep = verify_prediction(family_spec(3, [1, 2], coeffs=[2, 1]))
    st = statuses(rep)
    assert rep.verdict == "PASS"
    assert st["trivial_factor_L"] == PASS
    assert st["lstar_relation"] == PASS and st["lstar_factor_shape"] == PASS
    assert st["character_independence"] == PASS
    assert st["even_block_factor"] == NA


def test_unmet_hypothesis_is_not_applicable():
    rep = verify_prediction(family_spec(5, [2], [[2, 3]]), max_k=5, method="blocked")
    assert statuses(rep)["slopes_match_prediction"] == NA


def test_binomial_identity_failure_is_reported():
    rep = verify_prediction(family_spec(2, [2, 1, 1]), method="blocked")
    st = statuses(rep)
    assert st.pop("binomial_identity") == FAIL
    assert rep.verdict == "MISMATCH"
    # the geometry and the L-function itself behave as predicted
    assert all(v in (PASS, NA) for v in st.values())


def test_resource_error_becomes_verdict_error():
    rep = verify_prediction(family_spec(2, [2, 2]), budget=10)
    assert rep.verdict == "ERROR" and rep.exit_code == 1
    assert rep.error.startswith("ResourceError")


def test_report_json_is_serializable_and_deterministic():
    a = verify_prediction(family_spec(3, [1, 2])).to_json()
    b = verify_prediction(family_spec(3, [1, 2]), threads=3).to_json()
    a.pop("timings"), b.pop("timings")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert set(a) >= {"spec", "polytope", "hodge", "prediction", "lfunction", "comparison", "verdict"}


def test_verdict_logic():
    rep = VerdictReport(spec={})
    rep.checks.append(Check("x", FAIL, asserted=False))
    assert rep.verdict == "PASS"
    rep.checks.append(Check("y", FAIL))
    assert rep.verdict == "MISMATCH"
    rep.error = "boom"
    assert rep.exit_code == 1
    with pytest.raises(KeyError):
        rep.check("z")


def test_archimedean_kloosterman_root_moduli():
    rec = l_polynomial(family_spec(2, [2]))
    arch = archimedean_check(rec.poly, n=2)
    assert arch.ok and arch.katz_ok
    assert all(abs(m - math.sqrt(2)) < 1e-9 for m in arch.moduli)
    assert arch.weights == [1, 1]


def test_archimedean_rejects_bad_moduli():
    L = LPolynomial(2, 2, (CycInt.from_int(2, 1), CycInt.from_int(2, 3)))
    assert not archimedean_check(L, n=1).ok


def test_katz_bound_rows():
    spec = family_spec(3, [1, 2])
    rec = l_polynomial(spec)
    ok, rows = katz_bound(spec, rec.sums)
    assert ok and len(rows) == rec.k_max
