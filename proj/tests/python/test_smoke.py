import json

import pytest

import crlab


def series(K, coeffs):
    out = [{"re": "0", "im": "0"} for _ in range(K + 1)]
    for k, c in enumerate(coeffs):
        out[k] = {"re": str(c), "im": "0"}
    return {"K": K, "coeffs": out}


def test_series_ops():
    tt = series(4, [0, 1, 1])
    assert series_values(crlab.series_mul(tt, tt)) == ["0", "0", "1", "2", "1"]
    assert crlab.series_pow(tt, 2) == crlab.series_mul(tt, tt)
    assert series_values(crlab.series_compose([1, 2], series(2, [0, 1, 1]))) == ["0", "1", "3"]
    assert crlab.series_valuation(series(10, [])) == ">=11"


def series_values(s):
    return [c["re"] for c in s["coeffs"]]


def test_family_and_spikes():
    fam = crlab.gen_sequences(1, [2, 4], 6)
    assert fam["a"][0][1] == "69"
    assert fam["eps"][0][1] == 69
    assert crlab.verify_spike_conditions(fam)["pass"] is True
    fam["a"][0][1] = "68"
    assert crlab.verify_spike_conditions(fam)["pass"] is False


def test_numerics():
    mild = crlab.gen_sequences(1, [], 6)
    assert crlab.chi(0.1) == 1.0
    assert crlab.lambda_profile(0.0, 2) > 0
    assert crlab.constant_C()["C"] > 0
    assert crlab.eval_f(mild, 1, 0.01, 6) == pytest.approx(sum(m * 0.01**m for m in range(1, 7)), rel=1e-12)
    reports = crlab.check_subharmonic(mild, 6, samples=50)
    assert all(r["pass"] for r in reports)
    assert not all(r["pass"] for r in crlab.check_subharmonic(mild, 6, samples=50, c_scale=1e-3))
    assert crlab.taylor_extract(mild, 1, 5, 3) == pytest.approx(3.0, rel=1e-10)


def test_tangency_and_obstruction():
    fam = crlab.gen_sequences(1, [2, 4, 6], 8)
    curve = {"K": 4, "g": series(4, [0, -1]), "h": [series(4, [0, 1])]}
    t = crlab.tangency(fam, curve)
    assert t["order"] == 2
    assert crlab.xm_check(fam, 3)["pass"] is True
    cert = crlab.obstruct(fam, {"K": 6, "g": series(6, []), "h": [series(6, [0, 1])]})
    assert cert["spike_hit"] == 2
    assert cert["bound_respected"] is True

    fam36 = crlab.gen_sequences(2, [3, 6, 9, 12], 36)
    batch = crlab.obstruct_batch(fam36, seed=42, count=10)
    assert len(batch) == 10
    assert all(e["certificate"]["bound_respected"] for e in batch)
    assert batch == crlab.obstruct_batch(fam36, seed=42, count=10)


def test_types():
    z4 = [{"alpha": [2], "beta": [2], "coeff": {"re": "1", "im": "0"}}]
    assert crlab.bg_type(z4, 20)["bg_type"] == 4
    fam = crlab.gen_sequences(2, [3, 6], 20)
    model = crlab.model_from_family(fam, 20)
    assert crlab.bg_type(model, 20)["bg_type"] == ">=21"
    assert crlab.dangelo_bound(model, 3, 20)["dangelo_lower"] == ">=21"


def test_errors():
    with pytest.raises(crlab.ParseError):
        crlab.tangency(crlab.gen_sequences(1, [2], 2), {"K": 2, "h": []})
    with pytest.raises(crlab.CrlabError):
        crlab.gen_sequences(2, [3, 5], 6)
    code, out, err = crlab.run_cli("xm-check", "--family", "/nonexistent.json", "--m", "1")
    assert code == 2
    assert "nonexistent" in err


def test_cli_report():
    code, out, _ = crlab.run_cli("gen-seq", "--n", "1", "--spikes", "2", "--mmax", "3")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "gen-seq"
