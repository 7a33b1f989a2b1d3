import json
import logging
import math
import os

import pytest
import yaml

import hilbert_lab
from hilbert_lab.modules import hilbert_check, hilbert_verify


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = hilbert_lab.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def run_module_main(capsys, main):
    with pytest.raises(SystemExit) as err:
        main()
    return err.value.code, json.loads(capsys.readouterr().out)


def test_usage(capsys):
    assert hilbert_lab.main([]) == 2
    assert hilbert_lab.main(["frobnicate"]) == 2
    assert hilbert_lab.main(["--help"]) == 0
    assert "subcommands" in capsys.readouterr().err


def test_check(capsys, preset_file):
    code, result = run_json(capsys, "check", "--config", preset_file("bump"))
    assert code == 0
    assert result["changed"] is False
    assert result["domain"]["kind"] == "radial_fourier"
    assert result["angle_bound"]["holds"] is True
    assert result["frame"]["omega0"] == pytest.approx(1.0 + 0.05 * math.cos(0.9))
    assert result["frame"]["omega_pi"] == pytest.approx(1.0 - 0.05 * math.cos(0.9))
    assert "invocation" in result


def test_check_yaml(capsys, preset_file):
    code, out = run(capsys, "check", "--config", preset_file("disk2"), "--format", "yaml")
    assert code == 0
    assert yaml.safe_load(out)["frame"]["C"] == pytest.approx(4.0 / 3.0)


def test_o_and_phi_override_the_config(capsys, preset_file):
    code, result = run_json(
        capsys, "check", "--config", preset_file("unit_disk"),
        "--o", "0.5,0", "--phi", "3.141592653589793",
    )
    assert code == 0
    assert result["domain"]["o"] == pytest.approx([0.5, 0.0])
    assert result["domain"]["p"] == pytest.approx([-1.0, 0.0], abs=1e-12)
    assert result["frame"]["omega0"] == pytest.approx(1.5)


def test_module_main_directly(capsys, preset_file, set_module_args):
    set_module_args({"config": preset_file("disk2")})
    code, result = run_module_main(capsys, hilbert_check.main)
    assert code == 0
    assert result["changed"] is False
    assert result["frame"]["C"] == pytest.approx(4.0 / 3.0)


def test_module_phi_alias(capsys, preset_file, set_module_args):
    set_module_args({"config": preset_file("unit_disk"), "phi": math.pi / 2})
    code, result = run_module_main(capsys, hilbert_check.main)
    assert code == 0
    assert result["domain"]["p"] == pytest.approx([0.0, 1.0], abs=1e-12)


def test_dist(capsys, preset_file):
    code, result = run_json(
        capsys, "dist", "--config", preset_file("unit_disk"), "--b", "0.5,0", "--quadrature", "true"
    )
    assert code == 0
    assert result["distance"] == pytest.approx(0.5493061443340549, abs=1e-12)
    assert result["funk"] == pytest.approx({"forward": 0.5, "backward": 0.5})
    assert result["quadrature"]["error"] < 1e-6


def test_tensor(capsys, preset_file):
    code, result = run_json(
        capsys, "tensor", "--config", preset_file("ellipse"), "--x", "0,0.5", "--y", "1,0"
    )
    assert code == 0
    assert result["tensor"]["g22"] == pytest.approx(16.0 / 9.0, abs=1e-8)
    assert result["tensor"]["positive_definite"] is True
    assert result["tensor_fd"]["relative_deviation"] < 1e-5
    assert result["hilbert_norm"] == pytest.approx(1.0 / 1.5 ** 0.5)


def test_sweep(capsys, preset_file, tmp_path):
    code, result = run_json(
        capsys, "sweep", "--config", preset_file("disk2"), "--r-min", "2", "--r-max", "5",
        "--steps", "7", "--fit", "true", "--out", str(tmp_path),
    )
    assert code == 0
    assert result["changed"] is True
    assert len(result["rows"]) == 7
    assert result["errors"] == {}
    assert result["fits"]["k_n"]["rate"] == pytest.approx(2.0, abs=0.2)
    assert os.path.exists(result["csv"])


def test_sweep_check_mode_writes_nothing(capsys, preset_file, tmp_path):
    out = tmp_path / "sweep"
    code, result = run_json(
        capsys, "sweep", "--config", preset_file("disk2"), "--steps", "3",
        "--out", str(out), "--check-mode",
    )
    assert code == 0
    assert result["changed"] is True
    assert result["csv"] == str(out / "sweep.csv")
    assert not out.exists()


def test_normalize(capsys, preset_file):
    code, result = run_json(
        capsys, "normalize", "--config", preset_file("ellipse"), "--expansions", "true"
    )
    assert code == 0
    assert result["normalization"]["omega_hat0"] == pytest.approx(1.0)
    assert result["o_normalized"] == pytest.approx([0.0, 1.0], abs=1e-10)
    assert result["expansions"]["F2_EXACT"]["status"] == "pass"
    assert result["expansions"]["G12_LEAD"]["status"] == "skipped"


def test_verify_subset(capsys, preset_file, tmp_path, monkeypatch):
    monkeypatch.setenv("HILBERT_LAB_SEED", "7")
    monkeypatch.setenv("HILBERT_LAB_OUT", str(tmp_path / "report"))
    code, result = run_json(capsys, "verify", "--config", preset_file("disk2"), "--checks", "GEOM")
    assert code == 0
    assert result["changed"] is True
    assert result["seed"] == 7
    assert result["summary"]["total"] == 3
    assert result["failed_checks"] == []
    assert sorted(os.path.basename(f) for f in result["files"]) == ["report.jsonl", "report.txt"]


def test_verify_check_mode_writes_nothing(capsys, preset_file, tmp_path):
    out = tmp_path / "report"
    code, result = run_json(
        capsys, "verify", "--config", preset_file("disk2"), "--checks", "GEOM",
        "--out", str(out), "--check-mode",
    )
    assert code == 0
    assert result["changed"] is True
    assert "files" not in result
    assert not out.exists()


def test_verify_empty_selection(capsys, preset_file, set_module_args):
    set_module_args({"config": preset_file("unit_disk"), "checks": ""})
    code, result = run_module_main(capsys, hilbert_verify.main)
    assert code == 0
    assert result["summary"]["total"] == 0
    assert "files" not in result


def test_verify_failed_checks_exit_one(capsys, preset_file, monkeypatch):
    from hilbert_lab.module_utils import suite
    from hilbert_lab.module_utils.report import assertion

    monkeypatch.setitem(
        suite.CHECKS, "METRIC_KLEIN", lambda ctx: assertion("METRIC_KLEIN", 1.0, 1e-9)
    )
    code, result = run_json(
        capsys, "verify", "--config", preset_file("unit_disk"), "--checks", "METRIC_KLEIN"
    )
    assert code == 1
    assert result["failed"] is True
    assert result["failed_checks"] == ["METRIC_KLEIN"]
    assert result["msg"] == "1 of 1 checks failed"


def test_verify_unknown_check(capsys, preset_file):
    code, result = run_json(capsys, "verify", "--config", preset_file("disk2"), "--checks", "NOPE")
    assert code == 2
    assert result["failed"] is True
    assert result["msg"].startswith("cannot run suite")


def test_bad_verbosity_is_a_usage_error(capsys, preset_file):
    code, out = run(capsys, "check", "--config", preset_file("unit_disk"), "--verbosity", "5")
    assert code == 2
    assert out == ""


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["check", "--config", "does/not/exist.cfg"], "cannot load config"),
        (["dist", "--config", "{unit_disk}"], "missing required arguments: b"),
        (["dist", "--config", "{unit_disk}", "--b", "2,0"], "cannot compute distance"),
        (["dist", "--config", "{unit_disk}", "--b", "0.1,0,0"], "b needs 2 components"),
        (["check", "--config", "{unit_disk}", "--phi", "abc"], "unable to convert to float"),
        (["check", "--config", "{unit_disk}", "--o", "3,0"], "cannot build domain"),
    ],
)
def test_invalid_input(capsys, preset_file, argv, fragment):
    argv = [a.format(unit_disk=preset_file("unit_disk")) for a in argv]
    code, result = run_json(capsys, *argv)
    assert code == 2
    assert result["failed"] is True
    assert fragment in result["msg"]


def test_nonconvex_config(capsys, tmp_path):
    path = tmp_path / "wavy.cfg"
    path.write_text("kind=radial_fourier a0=1 cos3=0.2\no=0,0\n")
    code, result = run_json(capsys, "check", "--config", str(path))
    assert code == 2
    assert "line 1" in result["msg"]
