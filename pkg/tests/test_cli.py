"""End-to-end CLI behavior through click's test runner."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from biframekit.app import load, save
from biframekit.app.cli import main
from biframekit.app.fixtures import fixture, fixture_record


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def manifests(tmp_path):
    """Write the reference systems used below to disk, claims included."""
    paths = {}
    for name in ("example-3-3", "example-3-4", "example-3-11",
                 "example-5-3-left", "example-5-3-right"):
        rec = fixture_record(name)
        path = tmp_path / f"{name}.json"
        save(rec.system, path, claimed_bounds=rec.claimed_bounds, label=name)
        paths[name] = str(path)
    bare = tmp_path / "bare.json"
    save(fixture("example-3-3"), bare)  # no claim, no label
    paths["bare"] = str(bare)
    return paths


class TestBounds:
    def test_valid_system_reports_and_exits_zero(self, runner, manifests):
        result = runner.invoke(main, ["bounds", manifests["example-3-11"]])
        assert result.exit_code == 0
        assert "optimal lower: 1.25" in result.output
        assert "optimal upper: 11" in result.output
        assert "valid: yes" in result.output
        assert "lower witness:" in result.output

    def test_invalid_system_exits_one_with_witness(self, runner, manifests):
        result = runner.invoke(main, ["bounds", manifests["example-3-4"]])
        assert result.exit_code == 1
        assert "valid: no" in result.output
        assert "negative-form witness:" in result.output

    def test_json_report(self, runner, manifests):
        result = runner.invoke(main, ["--format", "json", "bounds",
                                      manifests["example-3-11"]])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["lower"] == pytest.approx(1.25, abs=1e-9)
        assert payload["upper"] == pytest.approx(11.0, abs=1e-9)
        assert payload["valid"] is True
        assert isinstance(payload["witness"], list)

    def test_missing_file_is_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["bounds", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_malformed_manifest_is_usage_error(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"format_version": 1,')
        result = runner.invoke(main, ["bounds", str(bad)])
        assert result.exit_code == 2


class TestVerify:
    def test_manifest_claim_verifies(self, runner, manifests):
        result = runner.invoke(main, ["verify", manifests["example-3-3"]])
        assert result.exit_code == 0
        assert "verdict: verified" in result.output

    def test_refuted_claim_prints_witness(self, runner, manifests):
        result = runner.invoke(main, ["verify", manifests["example-3-3"],
                                      "--lower", "3", "--upper", "4"])
        assert result.exit_code == 1
        assert "verdict: REFUTED" in result.output
        assert "lower holds: no" in result.output
        assert "witness:" in result.output

    def test_flags_override_one_side(self, runner, manifests):
        # upper from the manifest claim (5), lower tightened to the optimum
        result = runner.invoke(main, ["verify", manifests["example-3-3"],
                                      "--lower", "2"])
        assert result.exit_code == 0

    def test_no_claim_anywhere_is_usage_error(self, runner, manifests):
        result = runner.invoke(main, ["verify", manifests["bare"]])
        assert result.exit_code == 2

    def test_malformed_pair_is_usage_error(self, runner, manifests):
        result = runner.invoke(main, ["verify", manifests["example-3-3"],
                                      "--lower", "0", "--upper", "1"])
        assert result.exit_code == 2

    def test_json_report_carries_margins(self, runner, manifests):
        result = runner.invoke(main, ["--format", "json", "verify",
                                      manifests["example-3-3"]])
        payload = json.loads(result.output)
        assert payload["ok"] is True
        assert payload["lower_margin"] >= 0
        assert payload["upper_margin"] >= 0


class TestConstruct:
    def test_sandwich_is_certified_and_dominates(self, runner, manifests, tmp_path):
        out = tmp_path / "sandwiched.json"
        result = runner.invoke(main, [
            "construct", manifests["example-3-11"], "--op", "sandwich",
            "--operator", "[[2,0,0],[0,2,0],[0,0,2]]", "-o", str(out),
        ])
        assert result.exit_code == 0
        assert "rule: sandwich (certified)" in result.output
        assert "dominance: ok" in result.output
        rec = load(out)
        assert rec.label == "example-3-11 [sandwich]"
        assert rec.claimed_bounds is not None
        lo, hi = rec.claimed_bounds
        assert lo == pytest.approx(0.3125, abs=1e-9)
        assert hi == pytest.approx(44.0, abs=1e-9)

    def test_operator_may_come_from_a_file(self, runner, manifests, tmp_path):
        op = tmp_path / "op.json"
        op.write_text("[[2,0,0],[0,2,0],[0,0,2]]")
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "sandwich", "--operator", str(op)])
        assert result.exit_code == 0

    def test_commute_dominates(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "commute",
                                      "--operator", "[[3,0,0],[0,3,0],[0,0,3]]"])
        assert result.exit_code == 0
        assert "guaranteed lower: 11.25" in result.output
        assert "guaranteed upper: 99" in result.output

    def test_stated_sum_rule_can_violate_dominance(self, runner, manifests):
        # two same-target unit-coefficient terms: the stated constant
        # exceeds what the summed system actually achieves
        k_rows = json.dumps(np.diag([2.0, -2.0, -2.0]).tolist())
        term = json.dumps({"coeff": 1.0, "target": json.loads(k_rows)})
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "sum", "--term", term, "--term", term])
        assert result.exit_code == 1
        assert "stated claim" in result.output
        assert "dominance: VIOLATED" in result.output

    def test_perturb_rejects_indefinite_operator(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "perturb",
                                      "--operator", "[[-1,0,0],[0,1,0],[0,0,1]]"])
        assert result.exit_code == 1
        assert "construction failed:" in result.stderr

    def test_operator_json_garbage_is_usage_error(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "apply", "--operator", "[[1,2"])
        assert result.exit_code == 2

    def test_operator_wrong_shape_is_usage_error(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "apply", "--operator", "[[1,0],[0,1]]"])
        assert result.exit_code == 2

    def test_missing_operator_is_usage_error(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "dual"])
        assert result.exit_code == 2

    def test_sum_needs_terms(self, runner, manifests):
        result = runner.invoke(main, ["construct", manifests["example-3-11"],
                                      "--op", "sum"])
        assert result.exit_code == 2


class TestTensor:
    def test_combines_and_writes_manifest(self, runner, manifests, tmp_path):
        out = tmp_path / "combined.json"
        result = runner.invoke(main, ["tensor", manifests["example-5-3-left"],
                                      manifests["example-5-3-right"], "-o", str(out)])
        assert result.exit_code == 0
        assert "product law: ok" in result.output
        assert "combined optimal: (2, 6)" in result.output
        rec = load(out)
        assert rec.system.dim == 64
        assert "tensor of" in rec.label

    def test_output_flag_required(self, runner, manifests):
        result = runner.invoke(main, ["tensor", manifests["example-5-3-left"],
                                      manifests["example-5-3-right"]])
        assert result.exit_code == 2

    def test_invalid_factor_fails(self, runner, manifests, tmp_path):
        out = tmp_path / "combined.json"
        result = runner.invoke(main, ["tensor", manifests["example-3-4"],
                                      manifests["example-3-3"], "-o", str(out)])
        assert result.exit_code == 1
        assert "tensor check failed:" in result.stderr


class TestDemo:
    def test_passing_demo(self, runner):
        result = runner.invoke(main, ["demo", "example-3-11"])
        assert result.exit_code == 0
        assert "verdict: PASS" in result.output
        assert "optimal lower: 1.25" in result.output
        assert "optimal upper: 11" in result.output

    def test_refuted_demo_prints_the_witness_direction(self, runner):
        result = runner.invoke(main, ["demo", "example-3-4"])
        assert result.exit_code == 1
        assert "verdict: FAIL" in result.output
        assert "witness (scaled):" in result.output
        assert "form at witness: -0.333333333333" in result.output

    def test_tensor_demo_passes(self, runner):
        result = runner.invoke(main, ["demo", "example-5-3"])
        assert result.exit_code == 0
        assert "verdict: PASS" in result.output

    def test_quadrature_resolution_does_not_change_the_verdict(self, runner):
        result = runner.invoke(main, ["--quad-nodes", "2", "demo", "example-3-4"])
        assert result.exit_code == 1

    def test_unknown_demo_is_usage_error(self, runner):
        result = runner.invoke(main, ["demo", "example-0-0"])
        assert result.exit_code == 2

    def test_json_failure_payload(self, runner):
        result = runner.invoke(main, ["--format", "json", "demo", "example-3-4"])
        assert result.exit_code == 1
        payload = json.loads(result.output)
        assert payload["ok"] is False
        assert payload["form_at_witness"] == pytest.approx(-1.0 / 3.0, abs=1e-9)
        scaled = np.array(payload["witness_scaled"])
        np.testing.assert_allclose(np.abs(scaled), [1.0, 1.0, 0.0], atol=1e-9)
