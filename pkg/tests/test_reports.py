# tests/test_reports.py

import io
import json

import pandas as pd
import pytest

from src.multipliers.verdicts import VerdictReport
from src.reports import cli
from src.reports.registry import DOMAIN_MODULES, RegisteredCheck, assert_registry_complete, registered_checks
from src.reports.run_config import RunConfig
from src.reports.writer import CSV_COLUMNS, ReportWriter
from src.utils.errors import CapExceededError, CertificateError, ConfigError, DomainError

ENTRY = {
    "check_id": "demo.check",
    "anchor": "a <= b",
    "space": "torus(m=1,n=1)",
    "m": 1,
    "n": 1,
    "p": 1.0,
    "lhs": 0.5,
    "constant": 1.0,
    "bracket_lower": 1.0,
    "bracket_upper": 1.0,
    "verdict": "verified",
    "seed": 0,
    "inputs": {"k": [1, 2]},
    "provenance": {},
    "notes": ["first note"],
}


def run_cli(*argv):
    stream = io.StringIO()
    status = cli.run([*argv, "--no-store"], stream=stream)
    return status, stream.getvalue()


class TestRunConfig:
    def test_defaults_validate(self):
        cfg = RunConfig().validate()
        assert cfg.output_format == "json-lines"
        assert cfg.seed == 0

    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "run.env"
        path.write_text("seed=7\nquick=true\nbudget=3\n")
        cfg = RunConfig.load(path, budget=5)
        assert (cfg.seed, cfg.quick, cfg.budget) == (7, True, 5)

    def test_integral_float_accepted_for_int(self):
        assert RunConfig().with_overrides({"grid_cap": "1e6"}).grid_cap == 1_000_000

    @pytest.mark.parametrize(
        "overrides",
        [{"seed": -1}, {"delta": 0.7}, {"output_format": "xml"}, {"workers": 0}, {"nope": 1}, {"budget": "many"}],
    )
    def test_invalid_values(self, overrides):
        with pytest.raises(ConfigError):
            RunConfig().with_overrides(overrides)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            RunConfig.load(tmp_path / "absent.env")


class TestWriter:
    def test_json_lines(self):
        stream = io.StringIO()
        with ReportWriter("json-lines", stream=stream) as writer:
            writer.write_all([ENTRY, ENTRY])
        lines = stream.getvalue().splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0]) == ENTRY
        assert writer.written == 2

    def test_human(self):
        stream = io.StringIO()
        with ReportWriter("human", stream=stream) as writer:
            writer.write(ENTRY)
        text = stream.getvalue()
        assert text.startswith("[verified] demo.check")
        assert "- first note" in text

    def test_csv(self):
        stream = io.StringIO()
        with ReportWriter("csv", stream=stream) as writer:
            writer.write(ENTRY)
            assert stream.getvalue() == ""
        frame = pd.read_csv(io.StringIO(stream.getvalue()))
        assert list(frame.columns) == CSV_COLUMNS
        assert json.loads(frame.loc[0, "inputs"]) == {"k": [1, 2]}

    def test_file_output(self, tmp_path):
        path = tmp_path / "out.jsonl"
        with ReportWriter("json-lines", out=path) as writer:
            writer.write(ENTRY)
        assert writer.stream.closed
        assert json.loads(path.read_text())["check_id"] == "demo.check"

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            ReportWriter("yaml")


class TestRegistry:
    def test_every_domain_module_registers(self):
        assert_registry_complete()
        modules = {c.module for c in registered_checks()}
        assert modules == set(DOMAIN_MODULES)

    def test_order_is_fixed(self):
        ids = [c.check_id for c in registered_checks()]
        assert ids == [c.check_id for c in registered_checks()]
        assert ids[0].startswith("index_sets.")
        assert len(ids) == len(set(ids))


class TestCli:
    def test_count(self):
        status, out = run_cli("count", "--kind", "lambda-le", "--m", "2", "--n", "3")
        assert status == cli.EXIT_OK
        assert out.strip() == "10"

    def test_count_with_certificate(self):
        status, out = run_cli("count", "--kind", "lambda-le", "--m", "3", "--n", "4", "--certificate", "--seed", "11")
        lines = out.strip().splitlines()
        assert status == cli.EXIT_OK
        assert lines[0] == "35"
        entry = json.loads(lines[1])
        assert entry["verdict"] == "verified"
        assert entry["seed"] == 11

    def test_enumerate(self):
        status, out = run_cli("count", "--kind", "subsets-eq", "--m", "2", "--n", "3", "--enumerate")
        assert status == cli.EXIT_OK
        assert len(out.strip().splitlines()) == 4

    def test_walsh_exact(self):
        status, out = run_cli("walsh", "--majority", "3", "--exact")
        entry = json.loads(out)
        assert status == cli.EXIT_OK
        assert entry["verdict"] == "verified"
        assert entry["inputs"]["coefficients"] == {"1": "1/2", "2": "1/2", "4": "1/2", "7": "-1/2"}
        assert entry["seed"] == 0

    def test_mon_uses_classification(self):
        status, out = run_cli("mon", "--generator", "power", "--sigma", "0.5", "--c", "0.8", "--J", "10000")
        assert status == cli.EXIT_OK
        assert json.loads(out)["verdict"] == "member"

    def test_ksz_trial_is_inconclusive(self):
        status, out = run_cli("ksz", "--m", "1", "--n", "1", "--trials", "5", "--seed", "3")
        entry = json.loads(out)
        assert status == cli.EXIT_OK
        assert entry["verdict"] == "inconclusive"
        assert entry["seed"] == 3

    def test_ksz_sweep_is_csv(self):
        status, out = run_cli("ksz", "--sweep", "--ms", "1", "--ns", "1,2", "--trials", "4")
        frame = pd.read_csv(io.StringIO(out))
        assert status == cli.EXIT_OK
        assert len(frame) == 2
        assert out.splitlines()[0] == "m,n,trials,seed,c_norm,mean_ratio,max_ratio,stddev"

    def test_multiplier_default_mode(self):
        status, out = run_cli("multiplier", "--m", "1", "--n", "2", "--format", "human")
        assert status == cli.EXIT_OK
        assert out.startswith("[verified] multipliers.torus")

    def test_usage_errors(self):
        assert run_cli("count", "--kind", "bogus", "--m", "1", "--n", "1")[0] == cli.EXIT_USAGE
        assert run_cli("count", "--kind", "lambda-le")[0] == cli.EXIT_USAGE
        assert run_cli("count", "--kind", "t-set", "--m", "1", "--n", "1", "--certificate")[0] == cli.EXIT_USAGE
        assert run_cli("bohr", "--m", "1", "--n", "1", "--delta", "0.9")[0] == cli.EXIT_USAGE
        assert run_cli("multiplier", "--m", "1", "--n", "2", "--xi", "missing-file.txt")[0] == cli.EXIT_USAGE
        assert run_cli("multiplier", "--m", "1", "--n", "2", "--mode", "cube")[0] == cli.EXIT_USAGE

    def test_counterexample_exit(self, monkeypatch):
        monkeypatch.setitem(cli.COMMANDS, "count", lambda args, cfg, writer: [{"verdict": "counterexample"}])
        assert run_cli("count", "--kind", "lambda-le", "--m", "1", "--n", "1")[0] == cli.EXIT_COUNTEREXAMPLE

    def test_internal_failure_exit(self, monkeypatch):
        def fail(args, cfg, writer):
            raise CertificateError("upper", "forced")

        monkeypatch.setitem(cli.COMMANDS, "count", fail)
        assert run_cli("count", "--kind", "lambda-le", "--m", "1", "--n", "1")[0] == cli.EXIT_INTERNAL

    def test_cap_exceeded_in_verify_all_is_inconclusive(self, quick_config):
        def capped(cfg):
            raise CapExceededError("grid", 10, 5)

        (entry,) = cli._run_check(RegisteredCheck("demo.capped", "demo", "x <= y", capped), quick_config)
        assert entry["verdict"] == "inconclusive"
        assert entry["inputs"] == {"would_be": 10, "cap": 5}

    def test_failing_check_becomes_error_entry(self, monkeypatch):
        def broken(cfg):
            raise DomainError("forced")

        def fine(cfg):
            return [VerdictReport.exact(True, lhs=0, rhs=0)]

        checks = [
            RegisteredCheck("demo.broken", "demo", "x <= y", broken),
            RegisteredCheck("demo.fine", "demo", "y <= z", fine),
        ]
        monkeypatch.setattr(cli, "registered_checks", lambda: checks)
        status, out = run_cli("verify-all", "--quick", "--seed", "7")
        broken_entry, fine_entry = (json.loads(line) for line in out.strip().splitlines())
        assert status == cli.EXIT_INTERNAL
        assert broken_entry["verdict"] == cli.ERROR_VERDICT
        assert broken_entry["check_id"] == "demo.broken"
        assert broken_entry["anchor"] == "x <= y"
        assert broken_entry["seed"] == 7
        assert broken_entry["inputs"]["error"] == "DomainError"
        assert fine_entry["verdict"] == "verified"
        assert fine_entry["check_id"] == "demo.fine"
