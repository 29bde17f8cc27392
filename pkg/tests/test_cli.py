import csv
import json

import numpy as np
import pytest

from mbsim.cli import main
from mbsim.config import parse_config, resolve_config
from mbsim.experiment import ScenarioConfig, synthesize_trace, write_trace


def write_config(tmp_path, doc):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return path


class TestConfig:
    def test_empty_config_gets_defaults(self, tmp_path):
        plan = parse_config(write_config(tmp_path, {}))
        assert plan.users == tuple(range(1, 17))
        assert plan.budget.carrier_hz == 26e9
        assert plan.budget.bandwidth_hz == 20e6
        assert plan.budget.tx_power_dbm == 3.0
        assert plan.budget.distance_m == 5.0
        assert plan.budget.noise_density_dbmhz == -174.0
        assert plan.budget.noise_figure_db == 9.0
        assert plan.theta_bs_range_deg == 60.0
        assert plan.theta_k_deg == 4.0
        assert plan.tau_ratio == 1.0
        assert plan.realizations == 1000
        assert plan.estimations == 100

    def test_unknown_key_named(self):
        with pytest.raises(ValueError, match="bandwidht_hz"):
            resolve_config({"bandwidht_hz": 1e6})

    def test_out_of_range_users(self):
        with pytest.raises(ValueError, match=r"\[1, 16\]"):
            resolve_config({"users": 17})

    def test_partial_override(self, tmp_path):
        plan = parse_config(write_config(tmp_path, {"distance_m": 10}))
        assert plan.budget.distance_m == 10.0
        assert plan.budget.carrier_hz == 26e9

    def test_single_user_int(self):
        plan = resolve_config({"users": 4})
        assert plan.users == (4,)

    def test_scenarios_matrix(self):
        plan = resolve_config({"users": [1, 2], "frontends": ["butler"],
                               "realizations": 3, "estimations": 2})
        scenarios = list(plan.scenarios())
        assert len(scenarios) == 2
        assert all(isinstance(s, ScenarioConfig) for s in scenarios)


def read_rows(path):
    with open(path) as f:
        return list(csv.DictReader(f))


class TestPatternsCommand:
    @pytest.fixture(scope="class")
    def outputs(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("patterns")
        assert main(["patterns", "--out", str(out), "--resolution-deg", "0.1"]) == 0
        return out

    def test_summary_has_16_beams_with_quoted_gain(self, outputs):
        summary = json.loads((outputs / "patterns_summary.json").read_text())
        beams = summary["butler"]
        assert len(beams) == 16
        # broadside-adjacent beams reach the full array gain, the outermost
        # pair loses some to element roll-off
        assert all(14.0 <= b["peak_gain_dbi"] <= 16.5 for b in beams)
        assert max(b["peak_gain_dbi"] for b in beams) == pytest.approx(16.0, abs=0.5)

    def test_patch_peaks_at_broadside(self, outputs):
        summary = json.loads((outputs / "patterns_summary.json").read_text())
        for b in summary["patch"]:
            assert abs(b["peak_angle_deg"]) < 0.1

    def test_grid_rows(self, outputs):
        rows = read_rows(outputs / "patterns_butler.csv")
        assert len(rows) == 1801 * 16
        assert set(rows[0]) == {"theta_deg", "port", "gain_dbi", "phase_rad"}


CAMPAIGN_DOC = {
    "users": [1, 2],
    "realizations": 3,
    "estimations": 2,
    "seed": 5,
    "frontends": ["butler", "patch"],
    "precoders": ["analog", "mr", "zf", "rzf"],
}


class TestCampaignCommand:
    @pytest.fixture(scope="class")
    def outputs(self, tmp_path_factory):
        tmp = tmp_path_factory.mktemp("campaign")
        cfg = write_config(tmp, CAMPAIGN_DOC)
        out = tmp / "out"
        assert main(["campaign", "--config", str(cfg), "--out", str(out)]) == 0
        return out

    def test_aggregate_arity(self, outputs):
        rows = read_rows(outputs / "aggregate.csv")
        assert len(rows) == 2 * 2 * 4  # K values x frontends x precoders

    def test_results_schema(self, outputs):
        rows = read_rows(outputs / "results.csv")
        assert set(rows[0]) == {"K", "frontend", "precoder", "realization", "user",
                                "theta_bs_deg", "se_bpshz", "sum_se_bpshz"}
        # one row per (K, frontend, precoder, realization, user)
        assert len(rows) == (1 + 2) * 2 * 4 * 3

    def test_metadata_reproducibility_fields(self, outputs):
        meta = json.loads((outputs / "metadata.json").read_text())
        assert meta["seed"] == 5
        assert meta["config"]["users"] == [1, 2]
        assert meta["config_sha256"]
        assert meta["skip_rate"] == 0

    def test_rerun_byte_identical(self, outputs, tmp_path):
        cfg = write_config(tmp_path, CAMPAIGN_DOC)
        out2 = tmp_path / "out2"
        assert main(["campaign", "--config", str(cfg), "--out", str(out2),
                     "--threads", "3"]) == 0
        assert (out2 / "results.csv").read_bytes() == (outputs / "results.csv").read_bytes()
        assert (out2 / "aggregate.csv").read_bytes() == (outputs / "aggregate.csv").read_bytes()

    def test_seed_override_changes_results(self, outputs, tmp_path):
        cfg = write_config(tmp_path, CAMPAIGN_DOC)
        out3 = tmp_path / "out3"
        assert main(["campaign", "--config", str(cfg), "--out", str(out3),
                     "--seed", "99"]) == 0
        assert (out3 / "results.csv").read_bytes() != (outputs / "results.csv").read_bytes()
        meta = json.loads((out3 / "metadata.json").read_text())
        assert meta["seed"] == 99


class TestSimulateCommand:
    def test_single_scenario(self, tmp_path):
        cfg = write_config(tmp_path, {"users": 2, "realizations": 2, "estimations": 2,
                                      "frontends": ["butler"], "precoders": ["zf"]})
        out = tmp_path / "out"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 0
        rows = read_rows(out / "results.csv")
        assert {r["K"] for r in rows} == {"2"}


class TestReplayCommand:
    def test_end_to_end(self, tmp_path):
        trace = synthesize_trace(ScenarioConfig(seed=3), num_angles=20)
        trace_path = tmp_path / "trace.csv"
        write_trace(trace_path, trace)
        cfg = write_config(tmp_path, {"users": 2, "realizations": 2, "estimations": 2,
                                      "frontends": ["butler"], "precoders": ["zf"]})
        out = tmp_path / "out"
        assert main(["replay", "--config", str(cfg), "--out", str(out),
                     "--trace", str(trace_path)]) == 0
        rows = read_rows(out / "results.csv")
        assert len(rows) == 2 * 2
        meta = json.loads((out / "metadata.json").read_text())
        assert meta["config"]["mode"] == "replay"

    def test_missing_trace_fails(self, tmp_path):
        assert main(["replay", "--out", str(tmp_path / "o"),
                     "--trace", str(tmp_path / "nope.csv")]) == 1


class TestErrorPaths:
    def test_bad_config_key_exit_code(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"userz": 2})
        assert main(["campaign", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 1
        assert "userz" in capsys.readouterr().err

    def test_numeric_output_locale_independent(self, tmp_path):
        cfg = write_config(tmp_path, {"users": 1, "realizations": 1, "estimations": 1,
                                      "frontends": ["butler"], "precoders": ["mr"]})
        out = tmp_path / "out"
        assert main(["campaign", "--config", str(cfg), "--out", str(out)]) == 0
        text = (out / "results.csv").read_text()
        assert "," in text and ";" not in text
