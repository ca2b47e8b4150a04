import json

import numpy as np
import pytest

from intreg.datasets import bundled_ids, load_bundled
from intreg.exceptions import DimensionMismatch, UnknownRegressor
from intreg.interval import Interval
from intreg.regressors import METHODS, TABLE_ORDER, FittedModel, fit, method_id, predict, symbol

from test_boxcox import NEEDS_BOX_COX


@pytest.mark.parametrize("name,canon", [("cm", "CM"), ("MINMAX", "MinMax"), (" lmw ", "LMw"),
                                        ("lmc", "LMc"), ("Pm", "PM")])
def test_method_ids(name, canon):
    assert method_id(name) == canon


def test_unknown_method():
    with pytest.raises(UnknownRegressor):
        method_id("ridge")


def test_table_order():
    assert TABLE_ORDER == ("CM", "MinMax", "CRM", "CCRM", "CIM", "PM", "LMc", "LMw")
    assert set(TABLE_ORDER) | {"LM"} == set(METHODS)


@pytest.mark.parametrize("key,text", [("beta_c_0", "β^c_0"), ("beta_lo_1", "β^-_1"), ("beta_hi_0", "β^+_0"),
                                      ("beta_r_1", "β^r_1"), ("beta_1", "β_1"), ("alpha_lo_2", "α^-_2"),
                                      ("omega_hi_1", "ω^+_1"), ("eta", "η"), ("theta", "θ"), ("gamma_3", "γ_3")])
def test_symbols(key, text):
    assert symbol(key) == text


def test_coefficient_containers():
    ds = load_bundled("set-1")
    keys = {m: list(fit(m, ds).coefficients) for m in METHODS}
    assert keys["CM"] == ["beta_c_0", "beta_c_1"]
    assert keys["MinMax"] == ["beta_lo_0", "beta_lo_1", "beta_hi_0", "beta_hi_1"]
    assert keys["CCRM"] == ["beta_c_0", "beta_c_1", "beta_r_0", "beta_r_1"]
    assert keys["CIM"] == ["beta_0", "beta_1"]
    assert keys["LMc"] == ["eta", "alpha_1", "beta_1", "theta", "gamma_1"]
    assert keys["PM"] == ["beta_lo_0", "alpha_lo_1", "omega_lo_1", "beta_hi_0", "alpha_hi_1", "omega_hi_1"]


def test_container_checked():
    with pytest.raises(DimensionMismatch):
        FittedModel("CM", {"beta_c_0": 1.0}, p=1, names=("x",))
    with pytest.raises(DimensionMismatch):
        FittedModel("CM", {"beta_c_0": 1.0, "beta_c_1": 1.0, "theta": 0.0}, p=1, names=("x",))


def test_model_is_immutable():
    m = fit("CM", load_bundled("set-1"))
    with pytest.raises(TypeError):
        m.coefficients["beta_c_0"] = 0.0
    with pytest.raises(AttributeError):
        m.method = "PM"


def test_predict_single_observation():
    m = FittedModel("CM", {"beta_c_0": 1.256, "beta_c_1": 0.43}, p=1, names=("x",))
    pr = predict(m, [Interval(0.6, 0.95)])
    assert pr.lo[0] == pytest.approx(1.514) and pr.hi[0] == pytest.approx(1.6645)
    assert pr.all_coherent
    assert predict(m, Interval(0.6, 0.95)).lo[0] == pr.lo[0]


def test_predict_reports_flips_without_swapping():
    m = fit("CRM", load_bundled("set-1"))
    pr = predict(m, [Interval(2.0, 2.1)])
    assert not pr.all_coherent and pr.lo[0] > pr.hi[0]


def test_predict_dimension_mismatch():
    m = fit("CM", load_bundled("set-1"))
    with pytest.raises(DimensionMismatch):
        predict(m, [Interval(0, 1), Interval(0, 1)])


@pytest.mark.parametrize("method", list(METHODS))
def test_json_round_trip_bit_identical(method):
    ds = load_bundled("set-7")
    m = fit(method, ds)
    again = FittedModel.from_dict(json.loads(json.dumps(m.to_dict())))
    a, b = predict(m, ds), predict(again, ds)
    assert a.lo.tobytes() == b.lo.tobytes() and a.hi.tobytes() == b.hi.tobytes()
    assert dict(again.coefficients) == dict(m.coefficients)


def test_json_round_trip_box_cox():
    m = fit("PM", NEEDS_BOX_COX)
    assert m.diagnostics["box_cox"] == "applied"
    again = FittedModel.from_dict(json.loads(json.dumps(m.to_dict())))
    assert predict(again, NEEDS_BOX_COX).lo.tobytes() == predict(m, NEEDS_BOX_COX).lo.tobytes()


def test_fit_options_forwarded():
    m = fit("LMc", load_bundled("set-1"), strategy="joint")
    assert all(v >= 0 for k, v in m.coefficients.items() if k == "theta" or k.startswith("gamma"))


def test_fit_deterministic():
    ds = load_bundled("set-6")
    for method in METHODS:
        assert fit(method, ds).to_dict()["coefficients"] == fit(method, ds).to_dict()["coefficients"]


@pytest.mark.parametrize("sid", bundled_ids())
def test_in_sample_coherence_lmw_pm(sid):
    ds = load_bundled(sid)
    for method in ("LMw", "PM"):
        pr = predict(fit(method, ds), ds)
        assert np.all(pr.lo <= pr.hi + 1e-9)


def test_constraint_invariants():
    for sid in bundled_ids():
        ds = load_bundled(sid)
        c = fit("CCRM", ds).coefficients
        assert c["beta_r_0"] >= 0 and c["beta_r_1"] >= 0
        c = fit("LMc", ds).coefficients
        assert c["theta"] >= 0 and c["gamma_1"] >= 0
