import json
import subprocess
import sys

import pytest

from nonproper.cli import RunConfig, config_from, main, render_text, run
from nonproper.errors import InputError


def _run(doc, **cfg):
    return run(doc, RunConfig(**cfg))


def test_automorphism_example():
    report, status = _run({"P": "x + y^2", "Q": "y"})
    assert status == 0 and report["exit_status"] == 0
    st = report["stages"]
    assert st["normalize"]["jacobian_constant"] == "1"
    assert st["resultant"]["R0"] == "1" and st["resultant"]["A_f_empty"]
    assert st["dicritical"]["components"] == []
    assert report["checks"]["theorem1"] == "VACUOUS"
    assert set(report["checks"].values()) <= {"PASS", "VACUOUS", "N-A"}


def test_nonproper_example():
    report, status = _run({"P": "x", "Q": "x*y"})
    assert status == 0
    st = report["stages"]
    assert st["normalize"]["shear"] == "1" and st["normalize"]["jacobian_constant"] is None
    assert st["resultant"]["R0"] == "-u"
    (comp,) = st["dicritical"]["components"]
    assert comp["f_phi"] == ["0", "-xi"]
    assert st["verify"]["cross_validation"]["residuals"] == ["0"]
    assert report["checks"]["theorem1"] == "N-A"
    assert report["checks"]["cross_validation"] == "PASS"


def test_non_dominant_input():
    report, status = _run({"P": "x", "Q": "x"})
    assert status == 2 and report["error"]["code"] == "poly_core.non_dominant"


@pytest.mark.parametrize("doc", [{"P": "x +", "Q": "y"}, {"P": "x"}, [1, 2], {"P": 3, "Q": "y"},
                                 {"P": "x", "Q": "y", "vars": ["x", "x"]}])
def test_bad_documents(doc):
    report, status = run(doc, RunConfig())
    assert status == 2 and report["error"] is not None


@pytest.mark.parametrize("cfg", [{"precision": 32}, {"tol": 0}, {"depth_cap": 0}, {"mode": "fast"},
                                 {"stages": ("normalize", "bogus")}])
def test_bad_config(cfg):
    with pytest.raises(InputError):
        RunConfig(**cfg)


def test_resource_limit_exit_status():
    report, status = _run({"P": "x", "Q": "x*y^3 + y"}, depth_cap=1)
    assert status == 3 and report["error"]["code"] == "dicritical_search.depth_cap"
    # upstream stages are still reported
    assert "resultant" in report["stages"] and "dicritical" not in report["stages"]


def test_stage_selection_adds_dependencies():
    cfg = RunConfig(stages=("resultant",))
    assert cfg.stages == ("normalize", "resultant")
    report, status = run({"P": "x", "Q": "x*y"}, cfg)
    assert set(report["stages"]) == {"normalize", "resultant"} and status == 0
    assert RunConfig(stages=("verify",)).stages == ("normalize", "resultant", "dicritical", "verify")


def test_puiseux_stage():
    report, status = _run({"P": "x", "Q": "x*y"}, stages=("puiseux",))
    assert status == 0 and report["checks"]["factorization"] == "PASS"
    roots = report["stages"]["puiseux"]["Q"]["roots"]
    assert sorted(r["terms"] for r in roots) == [[], [[0, "-1"]]]


def test_ball_mode_agrees():
    exact, _ = _run({"P": "x", "Q": "y*(x^2 + 1)"})
    ball, status = _run({"P": "x", "Q": "y*(x^2 + 1)"}, mode="ball")
    assert status == 0
    assert len(ball["stages"]["dicritical"]["components"]) == len(exact["stages"]["dicritical"]["components"]) == 2
    assert ball["checks"] == exact["checks"]


def test_deterministic_reports():
    a, _ = _run({"P": "x*y", "Q": "x*y^2 + y"}, seed=3)
    b, _ = _run({"P": "x*y", "Q": "x*y^2 + y"}, seed=3)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_config_from_document_and_flags():
    from nonproper.cli import build_parser

    args = build_parser().parse_args(["--precision", "128", "--stages", "normalize,resultant"])
    cfg = config_from({"P": "x", "Q": "y", "precision": 512, "seed": 4}, args)
    assert cfg.precision == 128 and cfg.seed == 4 and cfg.stages == ("normalize", "resultant")


def test_main_text_output(capsys, tmp_path):
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"P": "x", "Q": "x*y"}))
    assert main([str(path), "--text"]) == 0
    out = capsys.readouterr().out
    assert "component: xi -> (0, -xi)" in out and "exit status 0" in out
    assert render_text(_run({"P": "x", "Q": "x"})[0]).endswith("exit status 2")


def test_main_reports_input_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main([str(path)]) == 2
    assert "error" in capsys.readouterr().err
    assert main([str(tmp_path / "missing.json")]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nonproper", "-", "--stages", "resultant"],
        input=json.dumps({"P": "x + y^2", "Q": "y"}), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["stages"]["resultant"]["R0"] == "1"
    proc = subprocess.run([sys.executable, "-m", "nonproper", "-P", "x", "-Q", "x"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and "non_dominant" in proc.stderr
