import numpy as np
import pytest
import yaml

from jchsim.cli import build_parser, main, write_csv


def run_cli(args):
    return main(args)


def read_rows(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def body_bytes(path):
    return "\n".join(l for l in path.read_text().splitlines()
                     if not l.startswith("#"))


def test_lambda_statevector_csv(tmp_path):
    out = tmp_path / "lam.csv"
    code = run_cli(["lambda", "--output", str(out),
                    "--set", "detunings=[1e-5]",
                    "--set", "plan.n_time_steps=5"])
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 6
    assert rows[0]["experiment"] == "lambda"
    assert float(rows[-1]["time_over_T"]) == 1.0


def test_csv_schema_columns(tmp_path):
    out = tmp_path / "lam.csv"
    run_cli(["lambda", "--output", str(out), "--set", "detunings=[1.0]",
             "--set", "plan.n_time_steps=2"])
    header = [l for l in out.read_text().splitlines()
              if not l.startswith("#")][0]
    assert header == ("experiment,delta_over_g,time_over_T,value,ci,"
                      "shots,n_trotter,run_index,seed,flags")


def test_rerun_byte_identical_body(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["order-parameter", "--set", "detunings=[0.5, 5.0]",
            "--set", "protocol=vacuum", "--shots", "128", "--seed", "3",
            "--set", "plan.n_time_steps=4"]
    run_cli(args + ["--output", str(a)])
    run_cli(args + ["--output", str(b)])
    assert body_bytes(a) == body_bytes(b)
    assert a.read_text() != ""  # timestamp comment present
    assert a.read_text().splitlines()[0].startswith("# generated")


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(yaml.safe_dump({
        "detunings": [2.0], "plan": {"n_time_steps": 3},
        "protocol": "vacuum", "shots": 64}))
    out = tmp_path / "x.csv"
    code = run_cli(["lambda", "--config", str(cfg), "--shots", "32",
                    "--set", "n_runs=2", "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert all(r["shots"] == "32" for r in rows)
    assert {r["run_index"] for r in rows} == {"0", "1", "-1"}


def test_dotted_flag_override(tmp_path):
    out = tmp_path / "x.csv"
    code = run_cli(["lambda", "--plan.n-time-steps", "2",
                    "--detunings", "[1.0]", "--output", str(out)])
    assert code == 0
    assert len(read_rows(out)) == 3


def test_invalid_config_exit_code(capsys):
    code = run_cli(["lambda", "--set", "detunings=[-2.0]"])
    assert code == 2
    assert "detunings" in capsys.readouterr().err


def test_bad_type_exit_code(capsys):
    code = run_cli(["lambda", "--set", "shots=banana"])
    assert code == 2
    assert "shots" in capsys.readouterr().err


def test_validate_subcommand_ok(capsys):
    assert run_cli(["validate"]) == 0
    assert "config ok" in capsys.readouterr().out


def test_validate_subcommand_diagnostics(capsys):
    code = run_cli(["validate", "--set", "params.J=-1"])
    assert code == 2
    assert "params.J" in capsys.readouterr().out


def test_benchmark_prints_table(capsys):
    code = run_cli(["benchmark-uv"])
    assert code == 0
    out = capsys.readouterr().out
    assert "U (exact):" in out
    assert "rel_err = 0.0710" in out
    assert "-0.757" in out


def test_gate_scaling_csv(tmp_path):
    out = tmp_path / "g.csv"
    code = run_cli(["gate-scaling", "--set", "scaling_l_max=5",
                    "--output", str(out)])
    assert code == 0
    rows = read_rows(out)
    assert [r["flags"] for r in rows] == [f"L={l}" for l in range(2, 6)]
    counts = [int(r["value"]) for r in rows]
    assert counts == sorted(counts)


def test_singular_rows_written_as_inf(tmp_path):
    out = tmp_path / "s.csv"
    run_cli(["lambda", "--set", "detunings=[1e5]", "--set", "protocol=vacuum",
             "--shots", "64", "--seed", "5", "--output", str(out)])
    rows = read_rows(out)
    singular = [r for r in rows if "singular" in r["flags"]]
    assert singular, "expected singular rows near the cusp at 64 shots"
    assert all(r["value"] == "inf" for r in singular)


def test_parser_has_canonical_flags():
    parser = build_parser()
    text = parser.format_help()
    for sub in ("lambda", "variance", "order-parameter", "benchmark-uv",
                "gate-scaling", "validate"):
        assert sub in text


def test_numerical_failure_exit_code(monkeypatch, capsys):
    from jchsim import service
    from jchsim.sim import NumericalError

    def boom(config):
        raise NumericalError("norm drift 2.0e-03 exceeds 1.0e-10")

    monkeypatch.setattr(service, "run_experiment", boom)
    code = run_cli(["lambda", "--set", "detunings=[1.0]"])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_write_csv_formats(tmp_path):
    path = tmp_path / "w.csv"
    write_csv(str(path), ("a", "b"), [{"a": 1.5, "b": float("inf")},
                                      {"a": "", "b": "x"}])
    lines = path.read_text().splitlines()
    assert lines[1] == "a,b"
    assert lines[2] == "1.5,inf"
    assert lines[3] == ",x"
