import json
import subprocess
import sys

import pytest

from fdrelay.cli import (
    CSV_HEADER,
    ResultRow,
    Sweep,
    apply_sweep_value,
    emit,
    load_scenario,
    main,
    rows_from_csv,
    rows_from_json,
    _parse_sweep_flag,
)
from fdrelay.errors import ScenarioError
from fdrelay.outage import outage_af, outage_df
from fdrelay.presets import preset_config

GOOD_CONFIG = {
    "source_power": 1.0,
    "hop1_distance": 5.0, "hop2_distance": 5.0,
    "hop1_pathloss": 2.0, "hop2_pathloss": 2.0,
    "hop1_fading": {"alpha": 2.0, "mu": 1.0, "r_hat": 1.0},
    "hop2_fading": {"alpha": 2.0, "mu": 1.0, "r_hat": 1.0},
    "lbi_fading": {"alpha": 2.0, "mu": 1.0, "r_hat": 1.0},
    "noise_antenna_var": 5e-5, "noise_conversion_var": 5e-5,
    "noise_dest_var": 1e-4,
    "eh_efficiency": 1.0, "eh_time_fraction": 0.5,
    "target_rate": 1.0,
}


# ----------------------------------------------------------------------
# presets

def test_preset_families():
    r = preset_config("rayleigh")
    assert (r.hop1_fading.alpha, r.hop1_fading.mu) == (2.0, 1.0)
    w = preset_config("weibull")
    assert (w.hop1_fading.alpha, w.hop1_fading.mu) == (3.0, 1.0)
    n = preset_config("nakagami")
    assert (n.hop1_fading.alpha, n.hop1_fading.mu) == (2.0, 2.0)
    for cfg in (r, w, n):
        assert cfg.hop1_distance == cfg.hop2_distance == 5.0
        assert cfg.hop1_pathloss == cfg.hop2_pathloss == 2.0
        assert cfg.noise_relay_var == pytest.approx(1e-4)
        assert cfg.noise_dest_var == pytest.approx(1e-4)
        assert cfg.noise_antenna_var == cfg.noise_conversion_var
        assert cfg.eh_efficiency == 1.0
        assert cfg.eh_time_fraction == 0.5
    with pytest.raises(ScenarioError):
        preset_config("rice")


# ----------------------------------------------------------------------
# scenario files

def test_load_scenario_roundtrip(tmp_path):
    path = tmp_path / "rayleigh.json"
    path.write_text(json.dumps({"id": "ray", "config": GOOD_CONFIG}))
    sc = load_scenario(str(path))
    assert sc.id == "ray"
    assert sc.config == preset_config("rayleigh")
    assert sc.sweep is None


def test_load_scenario_missing_eta_defaults_with_warning(tmp_path, capsys):
    cfg = {k: v for k, v in GOOD_CONFIG.items() if k != "eh_time_fraction"}
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"id": "s", "config": cfg}))
    sc = load_scenario(str(path))
    assert sc.config.eh_time_fraction == 0.5
    assert "eh_time_fraction" in capsys.readouterr().err


def test_load_scenario_strictness(tmp_path):
    bad = dict(GOOD_CONFIG)
    bad["unexpected_key"] = 1.0
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"id": "s", "config": bad}))
    with pytest.raises(ScenarioError, match="unexpected_key"):
        load_scenario(str(path))

    low_mu = json.loads(json.dumps(GOOD_CONFIG))
    low_mu["hop1_fading"]["mu"] = 0.3
    path.write_text(json.dumps({"id": "s", "config": low_mu}))
    with pytest.raises(ScenarioError, match="mu"):
        load_scenario(str(path))

    path.write_text("{not json")
    with pytest.raises(ScenarioError, match="line 1"):
        load_scenario(str(path))

    with pytest.raises(ScenarioError, match="cannot read"):
        load_scenario(str(tmp_path / "missing.json"))


def test_load_scenario_with_sweep(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({
        "id": "s", "config": GOOD_CONFIG,
        "sweep": {"parameter": "target_rate", "start": 0.5, "stop": 6.0, "step": 0.5}}))
    sc = load_scenario(str(path))
    assert len(sc.sweep.values()) == 12
    path.write_text(json.dumps({
        "id": "s", "config": GOOD_CONFIG,
        "sweep": {"parameter": "bandwidth", "start": 1, "stop": 2, "step": 1}}))
    with pytest.raises(ScenarioError, match="bandwidth"):
        load_scenario(str(path))


# ----------------------------------------------------------------------
# sweeps

def test_sweep_grammar():
    sw = _parse_sweep_flag("0.5:6:0.5", "target_rate")
    vals = sw.values()
    assert len(vals) == 12
    assert vals[0] == pytest.approx(0.5)
    assert vals[-1] == pytest.approx(6.0)
    assert _parse_sweep_flag("10:10:1", "source_power").values() == [10.0]
    with pytest.raises(ScenarioError):
        _parse_sweep_flag("1:2", "target_rate")
    with pytest.raises(ScenarioError):
        _parse_sweep_flag("a:b:c", "target_rate")
    with pytest.raises(ScenarioError):
        Sweep("target_rate", 2.0, 1.0, 0.5).values()


def test_apply_sweep_value_touches_all_branches():
    cfg = preset_config("rayleigh")
    swept = apply_sweep_value(cfg, "alpha", 3.5)
    assert swept.hop1_fading.alpha == 3.5
    assert swept.hop2_fading.alpha == 3.5
    assert swept.lbi_fading.alpha == 3.5
    swept = apply_sweep_value(cfg, "mu", 2.0)
    assert swept.lbi_fading.mu == 2.0
    swept = apply_sweep_value(cfg, "source_power", 10.0)
    assert swept.source_power == 10.0
    with pytest.raises(ScenarioError):
        apply_sweep_value(cfg, "bandwidth", 1.0)


# ----------------------------------------------------------------------
# emission

ROW = ResultRow(scenario_id="ray", sweep_value=1.0, mode="df", method="analytic",
                outage=0.8129524963713193, err=1e-12, n_samples=0, seed=42,
                runtime_ms=0)


def test_emit_csv_header_and_shape(tmp_path):
    out = tmp_path / "r.csv"
    emit([ROW], "csv", str(out))
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == CSV_HEADER
    assert lines[0] == ("scenario_id,sweep_value,mode,method,outage,err,"
                        "n_samples,seed,runtime_ms")
    # 17 significant digits survive the round trip
    assert f"{ROW.outage:.17g}" in lines[1]
    assert float(lines[1].split(",")[4]) == ROW.outage


def test_emit_roundtrip(tmp_path):
    csv_path = tmp_path / "r.csv"
    json_path = tmp_path / "r.json"
    emit([ROW], "csv", str(csv_path))
    emit([ROW], "json", str(json_path))
    assert rows_from_csv(csv_path.read_text()) == [ROW]
    assert rows_from_json(json_path.read_text()) == [ROW]
    with pytest.raises(ScenarioError):
        emit([], "csv", str(csv_path))


# ----------------------------------------------------------------------
# end-to-end runs

def run_cli(args, tmp_path):
    out = tmp_path / "out.csv"
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def test_main_analytic_rate_sweep(tmp_path):
    code, text = run_cli(
        ["--preset", "rayleigh", "--mode", "df", "--method", "analytic",
         "--rate-sweep", "0.5:6:0.5"], tmp_path)
    assert code == 0
    rows = rows_from_csv(text)
    assert len(rows) == 12
    assert all(r.mode == "df" and r.method == "analytic" for r in rows)
    values = [r.outage for r in rows]
    assert values == sorted(values)  # outage grows with the rate


def test_main_both_methods_row_count(tmp_path):
    code, text = run_cli(
        ["--preset", "rayleigh", "--mode", "df", "--method", "both",
         "--rate-sweep", "1:3:1", "--samples", "20000"], tmp_path)
    assert code == 0
    rows = rows_from_csv(text)
    assert len(rows) == 6  # 3 sweep points x {analytic, mc}
    for r in rows:
        if r.method == "mc":
            assert r.n_samples == 20000
        else:
            assert r.n_samples == 0


def test_main_rows_are_sorted(tmp_path):
    code, text = run_cli(
        ["--preset", "nakagami", "--mode", "both", "--method", "analytic",
         "--rate-sweep", "1:2:1"], tmp_path)
    assert code == 0
    rows = rows_from_csv(text)
    keys = [(r.scenario_id, r.sweep_value, r.mode, r.method) for r in rows]
    assert keys == sorted(keys)


def test_main_high_snr_power_sweep(tmp_path):
    code, text = run_cli(
        ["--preset", "rayleigh", "--mode", "df", "--method", "high-snr",
         "--power-sweep", "1000:3000:1000"], tmp_path)
    assert code == 0
    rows = rows_from_csv(text)
    assert len(rows) == 3
    assert all(r.method == "high_snr" for r in rows)
    # the floor ignores the swept power entirely
    assert len({r.outage for r in rows}) == 1


def test_main_config_file_and_overrides(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"id": "custom", "config": GOOD_CONFIG}))
    code, text = run_cli(
        ["--config", str(path), "--mode", "af", "--method", "analytic",
         "--eta", "0.4", "--lbi-r-hat", "0.5"], tmp_path)
    assert code == 0
    rows = rows_from_csv(text)
    assert rows[0].scenario_id == "custom"


def test_main_error_exit_codes(tmp_path):
    assert main(["--preset", "rayleigh", "--rate-sweep", "bogus"]) == 2
    assert main(["--preset", "rayleigh", "--alpha-sweep", "0:1:0.5"]) == 2
    assert main(["--preset", "rayleigh", "--rate-sweep", "1:2:1",
                 "--power-sweep", "1:2:1"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["--config", str(bad)]) == 2
    assert main(["--preset", "rayleigh", "--method", "mc", "--samples", "100"]) == 2


def test_analytic_rows_regenerate_from_fields(tmp_path):
    code, text = run_cli(
        ["--preset", "weibull", "--mode", "both", "--method", "analytic",
         "--rate-sweep", "1:2:0.5"], tmp_path)
    assert code == 0
    for r in rows_from_csv(text):
        cfg = preset_config(r.scenario_id, target_rate=r.sweep_value)
        ref = outage_df(cfg) if r.mode == "df" else outage_af(cfg)
        assert r.outage == ref.value


def test_cli_subprocess_deterministic(tmp_path):
    args = [sys.executable, "-m", "fdrelay.cli", "--preset", "rayleigh",
            "--mode", "both", "--method", "both", "--rate-sweep", "1:2:0.5",
            "--samples", "20000", "--seed", "9"]
    runs = []
    for _ in range(2):
        proc = subprocess.run(args, capture_output=True, text=True, check=True)
        runs.append(proc.stdout)
    assert runs[0] == runs[1]
    assert runs[0].splitlines()[0] == CSV_HEADER
