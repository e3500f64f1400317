import json

from hvlab.cli import main

ROUTE_CFG = """\
scenario = route_agreement
state = 0 0 1
n = 1 0 0
m = 0 1 0
"""

SANDWICH_CFG = """\
scenario = sandwich
n = 1 0 0
m = 0 1 0
"""

# a generic triple whose route integrals carry one ulp of roundoff (error
# ~3e-17), so a 1e-18 tolerance makes the scenario fail deterministically
ROUNDOFF_CFG = """\
scenario = route_agreement
state = 0.18881711923692265 -0.19839032737660414 0.9617636786063786
n = 0.16021416297716448 -0.818128926665578 0.5522648652001644
m = 0.7415052042025201 0.5385471155343273 -0.4001712589507583
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_run_passing_scenario(tmp_path, capsys):
    config = write(tmp_path, "route.cfg", ROUTE_CFG)
    assert main(["run", str(config)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["scenario"] == "route_agreement"
    assert report["pass"] is True


def test_run_exit_code_one_on_failure(tmp_path, capsys):
    config = write(tmp_path, "roundoff.cfg", ROUNDOFF_CFG)
    assert main(["run", str(config), "--tolerance", "1e-18"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["pass"] is False
    assert report["max_abs_error"] > 0.0


def test_run_writes_report_to_out_dir(tmp_path, capsys):
    config = write(tmp_path, "route.cfg", ROUTE_CFG)
    out = tmp_path / "reports"
    assert main(["run", str(config), "--out", str(out)]) == 0
    capsys.readouterr()
    written = json.loads((out / "route_agreement__report.json").read_text())
    assert written["pass"] is True


def test_run_honors_out_env_var(tmp_path, capsys, monkeypatch):
    config = write(tmp_path, "route.cfg", ROUTE_CFG)
    out = tmp_path / "env_reports"
    monkeypatch.setenv("HVLAB_OUT", str(out))
    assert main(["run", str(config)]) == 0
    capsys.readouterr()
    assert (out / "route_agreement__report.json").exists()


def test_run_config_error_exits_two(tmp_path, capsys):
    config = write(tmp_path, "bad.cfg", "scenario = not_a_thing\n")
    assert main(["run", str(config)]) == 2
    assert "error:" in capsys.readouterr().err


def test_run_missing_file_exits_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.cfg")]) == 2


def test_sweep_command(capsys):
    assert main(["sweep", "--seed", "5", "--trials", "100"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["scenario"] == "sweep"
    assert report["pass"] is True
    assert report["inputs"]["seed"] == 5


def test_manifest_runs_sorted_configs(tmp_path, capsys):
    write(tmp_path, "b_route.cfg", ROUTE_CFG)
    write(tmp_path, "a_sandwich.cfg", SANDWICH_CFG)
    out = tmp_path / "out"
    assert main(["manifest", str(tmp_path), "--out", str(out)]) == 0
    aggregate = json.loads(capsys.readouterr().out)
    assert [r["config"] for r in aggregate["reports"]] == ["a_sandwich.cfg", "b_route.cfg"]
    assert aggregate["pass"] is True
    assert (out / "manifest__report.json").exists()
    assert (out / "sandwich__report.json").exists()
    assert (out / "route_agreement__report.json").exists()


def test_manifest_exit_code_reflects_failures(tmp_path, capsys):
    write(tmp_path, "route.cfg", ROUNDOFF_CFG)
    assert main(["manifest", str(tmp_path), "--tolerance", "1e-18"]) == 1
    aggregate = json.loads(capsys.readouterr().out)
    assert aggregate["pass"] is False


def test_manifest_empty_directory_exits_two(tmp_path, capsys):
    assert main(["manifest", str(tmp_path)]) == 2


def test_trace_writes_files(tmp_path, capsys):
    config = write(tmp_path, "route.cfg", ROUTE_CFG)
    out = tmp_path / "traces"
    assert main(["trace", str(config), "--out", str(out), "--grid-points", "21"]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert sorted(listing["files"]) == [
        "route_agreement__difference.csv",
        "route_agreement__route_a.csv",
        "route_agreement__route_b.csv",
    ]
    for name in listing["files"]:
        assert (out / name).read_text().startswith("omega,value\n")


def test_trace_without_out_exits_two(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("HVLAB_OUT", raising=False)
    config = write(tmp_path, "route.cfg", ROUTE_CFG)
    assert main(["trace", str(config)]) == 2


def test_trace_no_functions_notice(tmp_path, capsys):
    config = write(tmp_path, "sandwich.cfg", SANDWICH_CFG)
    assert main(["trace", str(config), "--out", str(tmp_path / "traces")]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert "no omega traces" in listing["notice"]


def test_normalize_all_levels_flag(tmp_path, capsys):
    config = write(
        tmp_path,
        "chain.cfg",
        "scenario = branching_chain\nstate = 0 0 1\nn = 1 0 0\nm = 0 1 0\n",
    )
    assert main(["run", str(config), "--normalize-all-levels"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["inputs"]["normalize_all_levels"] is True
    assert report["qm_values"]["normalized_total"] == 1.0
