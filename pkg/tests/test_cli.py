import json
import pathlib
import subprocess
import sys

import pytest

from tdbie.cli import main

CONFIGS = pathlib.Path(__file__).parents[1] / "configs"
SIN2 = {"type": "sine_power", "power": 2, "omega": 1.5707963267948966, "lobes": 1}
SIN4 = {"type": "sine_power", "power": 4, "omega": 1.5707963267948966, "lobes": 1}
SMALL = {
    "T_end": 3.0, "dt": 0.1,
    "density": [{"mode": 0, "profile": SIN2}, {"mode": 2, "profile": SIN2, "amplitude": [0.5, 0.5]}],
    "phi": [{"mode": 1, "profile": SIN4}],
    "constants": {"samples": 8, "n_max": 8},
    "resolution": {"panel": 0.5, "order": 6},
}


def run(tmp_path, sub, cfg=None, *extra, out="out"):
    argv = [sub, "--out", str(tmp_path / out), *extra]
    if cfg is not None:
        p = tmp_path / f"{out}.json"
        p.write_text(json.dumps(cfg))
        argv += ["--config", str(p)]
    return main(argv)


def artefacts(path):
    return {p.name: p.read_bytes() for p in sorted(pathlib.Path(path).iterdir())}


def test_table1_without_config(tmp_path, capsys):
    assert run(tmp_path, "table1") == 0
    text = capsys.readouterr().out
    assert "t^2 max{1,t} D_4" in text and len(text.splitlines()) == 9
    lines = (tmp_path / "out" / "table1.csv").read_text().splitlines()
    assert lines[0].startswith("# scenario_hash: ")
    assert lines[1] == "F,X,Y,mu,C_F,k,E,n,growth"
    assert json.loads((tmp_path / "out" / "summary.json").read_text())["passed"] is True


def test_verify_bounds_zero_density(tmp_path):
    cfg = {**SMALL, "density": [], "phi": []}
    assert run(tmp_path, "verify-bounds", cfg) == 0
    summ = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert len(summ["reports"]) == 8
    for rep in summ["reports"].values():
        assert rep["min_margin"] == 0.0 and rep["max_lhs"] == 0.0


def test_verify_bounds_pass(tmp_path):
    assert run(tmp_path, "verify-bounds", SMALL) == 0
    summ = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summ["passed"] and summ["constants"]["C_Gamma"] > 0


@pytest.mark.parametrize("cfg, path", [
    ({"dt": 0}, "dt"),
    ({"density": [{"mode": 0, "profile": {"type": "sine_power", "power": 1.5}}]}, "density[0].profile.power"),
    ({"geometry": {"R": 0.5}}, "geometry.R"),
])
def test_config_error_exit_two(tmp_path, capsys, cfg, path):
    assert run(tmp_path, "cq-run", cfg) == 2
    assert path in capsys.readouterr().err


def test_bad_flags_exit_two(tmp_path):
    assert run(tmp_path, "table1", None, "--threads", "0") == 2
    assert run(tmp_path, "table1", None, "--tolerance", "-1") == 2
    assert run(tmp_path, "direct-run", {"direct": {"points": [[2.0, 0.0, 0.0]]},
                                        "density": SMALL["density"]}) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_numerical_failure_exit_one(tmp_path, capsys):
    # W needs more temporal smoothness than sin^2 provides
    cfg = {**SMALL, "phi": SMALL["density"], "bounds": {"families": ["double_layer"]}}
    assert run(tmp_path, "verify-bounds", cfg) == 1
    assert "numerical failure" in capsys.readouterr().err


def test_unresolved_wave_mode_exit_one(tmp_path, capsys):
    cfg = {"T_end": 1.0, "wave": {"basis": {"type": "disk", "rho": 2.0, "max_angular": 1, "max_radial": 1},
                                  "forcing": [{"label": [3, 1, 0], "profile": SIN2}], "samples": 11}}
    assert run(tmp_path, "wave-run", cfg) == 1
    assert "ResolutionError" in capsys.readouterr().err


@pytest.mark.parametrize("sub", ["symbols", "cq-run", "direct-run", "wave-run", "transfer", "table1",
                                 "propagation", "verify-bounds"])
def test_shipped_configs_are_reproducible(tmp_path, sub):
    cfg = json.loads((CONFIGS / f"{sub}.json").read_text())
    if sub == "verify-bounds":
        cfg.update(T_end=3.0, constants={"samples": 8, "n_max": 8})
    if sub == "direct-run":
        cfg.update(T_end=2.0, dt=0.1)
    if sub == "propagation":
        cfg.update(dt_ladder=[0.02, 0.01], T_end=3.0)
    assert run(tmp_path, sub, cfg, out="a") == 0
    assert run(tmp_path, sub, cfg, "--threads", "2", out="b") == 0
    a, b = artefacts(tmp_path / "a"), artefacts(tmp_path / "b")
    assert a == b
    for name, data in a.items():
        if name.endswith(".csv"):
            assert data.startswith(b"# scenario_hash: ")


def test_seed_changes_hash(tmp_path):
    cfg = {**SMALL, "bounds": {"families": ["single_layer"]}}
    run(tmp_path, "verify-bounds", cfg, "--seed", "1", out="a")
    run(tmp_path, "verify-bounds", cfg, "--seed", "2", out="b")
    ha = json.loads((tmp_path / "a" / "summary.json").read_text())
    hb = json.loads((tmp_path / "b" / "summary.json").read_text())
    assert ha["scenario_hash"] != hb["scenario_hash"]
    assert ha["constants"]["protocol"]["seed"] == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tdbie", "table1", "--out", str(tmp_path / "o")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "DtN" in proc.stdout
