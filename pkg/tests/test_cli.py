import json
import math
import os
import subprocess
import sys

import pytest

RR21 = {"rows": [[2 / 3, 1 / 3], [1 / 3, 2 / 3]], "tol": {"sum_tol": 1e-9}}


def run_cli(*args, stdin=None, env_extra=None, cwd=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "privmech", *args],
        input=stdin,
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
    )


class TestAnalyze:
    def test_binary_randomized_response(self):
        res = run_cli("analyze", json.dumps(RR21))
        assert res.returncode == 0, res.stderr
        payload = json.loads(res.stdout)
        report = payload["report"]
        assert abs(report["eta_tv"] - 1 / 3) <= 1e-12
        assert abs(report["ldp_level_bits"] - 1.0) <= 1e-12
        assert abs(report["maxl_bits"] - math.log2(4 / 3)) <= 1e-12
        assert all(c["passed"] for c in payload["checks"])
        assert payload["version"] and "seed" in payload

    def test_identity_serializes_infinite_level(self):
        channel = {"rows": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
        res = run_cli("analyze", json.dumps(channel))
        assert res.returncode == 0, res.stderr
        payload = json.loads(res.stdout)
        assert payload["report"]["ldp_level_bits"] == "inf"
        assert payload["report"]["eta_tv"] == 1.0
        assert abs(payload["report"]["maxl_bits"] - math.log2(3)) <= 1e-12

    def test_malformed_json_exits_two(self):
        res = run_cli("analyze", "{not json")
        assert res.returncode == 2
        assert res.stdout == ""
        assert res.stderr.strip()

    def test_invalid_channel_exits_two_and_names_the_row(self):
        res = run_cli("analyze", json.dumps({"rows": [[0.5, 0.6], [0.2, 0.8]]}))
        assert res.returncode == 2
        assert "row 0" in res.stderr

    def test_reads_from_file_and_stdin(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps(RR21))
        assert run_cli("analyze", str(path)).returncode == 0
        assert run_cli("analyze", "-", stdin=json.dumps(RR21)).returncode == 0


class TestConstruct:
    def test_rr_three(self):
        res = run_cli("construct", "rr", "--k", "3", "--alpha", "1")
        assert res.returncode == 0
        rows = json.loads(res.stdout)["rows"]
        assert rows[0][0] == pytest.approx(0.5, abs=1e-15)
        assert rows[0][1] == pytest.approx(0.25, abs=1e-15)

    def test_z_out_of_range_exits_two(self):
        res = run_cli("construct", "z", "--alpha", "1.5")
        assert res.returncode == 2

    def test_staircase_boundary(self):
        res = run_cli("construct", "staircase", "--k", "2", "--alpha", "1")
        rows = json.loads(res.stdout)["rows"]
        assert rows == [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]

    def test_missing_k_exits_two(self):
        assert run_cli("construct", "rr", "--alpha", "1").returncode == 2

    def test_round_trip_into_analyze(self, tmp_path):
        out = tmp_path / "chan.json"
        res = run_cli("construct", "rr", "--k", "4", "--alpha", "0.5", "-o", str(out))
        assert res.returncode == 0
        res2 = run_cli("analyze", str(out))
        assert res2.returncode == 0, res2.stderr


class TestBoundsCheck:
    def test_one_json_object_per_verdict(self):
        res = run_cli("bounds-check", json.dumps(RR21))
        assert res.returncode == 0
        lines = res.stdout.strip().splitlines()
        assert len(lines) == 9
        names = [json.loads(line)["name"] for line in lines]
        assert names[0] == "thm1" and names[-1] == "lemma1"
        for line in lines:
            record = json.loads(line)
            assert record["version"] and "seed" in record

    def test_exit_zero_iff_applicable_pass(self):
        channel = {"rows": [[1, 0], [0, 1]]}  # some checks inapplicable, none fail
        assert run_cli("bounds-check", json.dumps(channel)).returncode == 0


class TestSimulate:
    def test_mean_near_closed_form(self):
        res = run_cli(
            "simulate", "--k", "3", "--alpha", "1", "--n", "100",
            "--replicates", "2000", "--seed", "1",
        )
        assert res.returncode == 0, res.stderr
        payload = json.loads(res.stdout)
        assert payload["closed_form"] == pytest.approx(1 / 60, rel=1e-12)
        assert abs(payload["mean_risk"] - 1 / 60) <= 4 * payload["std_error"]

    def test_custom_source_inline(self):
        res = run_cli(
            "simulate", "--k", "2", "--alpha", "0.5", "--n", "50",
            "--replicates", "100", "--seed", "2",
            "--source", json.dumps({"probs": [0.8, 0.2]}),
        )
        assert res.returncode == 0, res.stderr
        assert json.loads(res.stdout)["source"] == [0.8, 0.2]

    def test_vacuous_budget_exits_two(self):
        res = run_cli(
            "simulate", "--k", "2", "--alpha", "1.5", "--n", "10",
            "--replicates", "10", "--seed", "0",
        )
        assert res.returncode == 2
        assert "vacuous" in res.stderr

    def test_seed_echoed(self):
        res = run_cli(
            "simulate", "--k", "2", "--alpha", "1", "--n", "10",
            "--replicates", "10", "--seed", "9",
        )
        assert json.loads(res.stdout)["seed"] == 9


class TestSweep:
    def test_csv_schema(self):
        res = run_cli(
            "sweep", "--k", "3", "--alpha", "1", "--n-grid", "50,100",
            "--replicates", "200", "--seed", "3",
        )
        assert res.returncode == 0, res.stderr
        lines = res.stdout.strip().splitlines()
        assert lines[0].startswith("# privmech")
        assert lines[1] == (
            "k,alpha_bits,n,replicates,seed,mean_risk,std_error,"
            "closed_form,upper_bound,lecam_lower,normalized_risk"
        )
        assert len(lines) == 4
        for line in lines[2:]:
            fields = line.split(",")
            assert int(fields[0]) == 3
            # every float column round-trips through repr exactly
            for tok in fields[5:]:
                assert repr(float(tok)) == tok

    def test_json_format(self):
        res = run_cli(
            "sweep", "--k", "3", "--alpha", "1", "--n-grid", "50",
            "--replicates", "100", "--seed", "0", "--format", "json",
        )
        payload = json.loads(res.stdout)
        assert len(payload["rows"]) == 1 and payload["rows"][0]["n"] == 50


class TestDeterminismAndEnvironment:
    def test_byte_identical_reruns(self, tmp_path):
        invocations = [
            ("analyze", json.dumps(RR21)),
            ("construct", "staircase", "--k", "3", "--alpha", "1"),
            ("bounds-check", json.dumps(RR21)),
            ("simulate", "--k", "3", "--alpha", "1", "--n", "100", "--replicates", "300", "--seed", "4"),
            ("sweep", "--k", "3", "--alpha", "1", "--n-grid", "50,100", "--replicates", "200", "--seed", "4"),
        ]
        for argv in invocations:
            first = run_cli(*argv, cwd=tmp_path)
            second = run_cli(*argv, cwd=tmp_path)
            assert first.returncode == second.returncode
            assert first.stdout == second.stdout, argv

    def test_thread_cap_env_validated(self):
        good = run_cli("construct", "z", "--alpha", "1", env_extra={"PRIVMECH_THREADS": "4"})
        assert good.returncode == 0
        bad = run_cli("construct", "z", "--alpha", "1", env_extra={"PRIVMECH_THREADS": "lots"})
        assert bad.returncode == 2

    def test_no_subcommand_exits_two(self):
        assert run_cli().returncode == 2
