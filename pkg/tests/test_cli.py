import json

from nuceft.cli import main

BENCH_ARGS = ["--model", "pionless", "--encoding", "vc", "--task", "evolve",
              "--L", "10", "--aL-fm", "2.2", "--eta", "40",
              "--Ekin-MeV", "10", "--eps", "0.1", "--order", "1",
              "--convention", "fault-tolerant"]


def test_estimate_benchmark(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["estimate", *BENCH_ARGS, "--output", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema-version"] == 1
    assert report["depth_total"] == 604039280
    assert report["qubits"] == 6000
    assert abs(report["depth_total"] / 6.2e8 - 1) < 1.0  # within factor 2


def test_estimate_stdout(capsys):
    assert main(["estimate", *BENCH_ARGS]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["r"] == 1161614


def test_missing_eta_is_usage_error(capsys):
    args = [a for a in BENCH_ARGS]
    i = args.index("--eta")
    del args[i:i + 2]
    code = main(["estimate", *args])
    assert code == 1
    assert "eta" in capsys.readouterr().err


def test_domain_error_exit_code(capsys):
    code = main(["estimate", "--model", "dynpi", "--aL-fm", "0.3",
                 "--eta", "2", "--eps", "0.1"])
    assert code == 2
    err = capsys.readouterr().err
    assert "domain error" in err


def test_unknown_flag_exit_code(capsys):
    assert main(["estimate", "--eta", "4", "--frobnicate", "1"]) == 1


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({
        "model": "pionless", "encoding": "vc", "task": "evolve", "L": 10,
        "aL_fm": 2.2, "eta": 40, "Ekin_MeV": 10.0, "eps": 0.1, "order": 1,
        "convention": "fault-tolerant"}))
    assert main(["estimate", "--config", str(cfg)]) == 0
    base = json.loads(capsys.readouterr().out)
    assert base["qubits"] == 6000
    # flags win over the config file
    assert main(["estimate", "--config", str(cfg),
                 "--encoding", "compact"]) == 0
    over = json.loads(capsys.readouterr().out)
    assert over["qubits"] == 10000


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"eta": 40, "flux_capacitor": 1.21}))
    assert main(["estimate", "--config", str(cfg)]) == 1
    assert "flux_capacitor" in capsys.readouterr().err


def test_config_invalid_json(tmp_path, capsys):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    assert main(["estimate", "--config", str(cfg)]) == 1
    assert "line" in capsys.readouterr().err


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", *BENCH_ARGS, "--axis", "eta",
                 "--from", "2", "--to", "40", "--step", "2",
                 "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "axis,value,r,depth,rz,T,qubits,ell_or_nb,notes"
    assert len(lines) == 21  # header + 20 grid points


def test_sweep_roundtrips_numeric_fields(tmp_path):
    import csv
    out = tmp_path / "sweep.csv"
    assert main(["sweep", *BENCH_ARGS, "--axis", "epsilon",
                 "--from", "0.05", "--to", "0.1", "--step", "0.05",
                 "--output", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        assert float(row["T"]) > 0
        assert int(row["r"]) >= 1


def test_sweep_byte_identical_reruns(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["sweep", *BENCH_ARGS, "--axis", "eta",
            "--from", "2", "--to", "20", "--step", "2"]
    assert main([*args, "--output", str(a)]) == 0
    assert main([*args, "--jobs", "4", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_estimate_byte_identical_reruns(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["estimate", *BENCH_ARGS, "--output", str(a)]) == 0
    assert main(["estimate", *BENCH_ARGS, "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_empty_grid(capsys):
    code = main(["sweep", *BENCH_ARGS, "--axis", "eta",
                 "--from", "10", "--to", "2", "--step", "2"])
    assert code == 1
    assert "empty sweep grid" in capsys.readouterr().err


def test_verify_suites(capsys):
    assert main(["verify", "pauli"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out
    assert main(["verify", "nonsense"]) == 1


def test_verify_trotter(capsys):
    assert main(["verify", "trotter"]) == 0
    assert "ok" in capsys.readouterr().out
