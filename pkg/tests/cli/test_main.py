import importlib
from pathlib import Path

import pytest

from stabilityx.cli import ExitCode
from stabilityx.cli import main
from stabilityx.cli import run
from stabilityx.verify import parse_report

HALFSPEED = """
pipeline = "ugas2uges"

[system]
catalog = "halfspeed_1d"

[overrides]
gamma = "r"
signals = 3
contraction_samples = 20
"""


def _write(tmp_path: Path, text: str, name: str = "run.toml") -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_list_machine_output(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["list", "--machine"]) == ExitCode.OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name\tdim_x\tdim_d\tcertificate\tiss_gain"
    assert "halfspeed_1d\t1\t0\tyes\tno" in lines
    assert "iss_scalar\t1\t1\tyes\tyes" in lines
    assert "linear_r2\t2\t0\tyes\tno" in lines


def test_list_human_output(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["list"]) == ExitCode.OK
    out = capsys.readouterr().out
    assert out.startswith("name")
    assert "cubic_1d" in out


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["run"], ["list", "--bogus"]])
def test_usage_errors_exit_with_config_error(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == ExitCode.CONFIG_ERROR
    assert "config error" in capsys.readouterr().err


def test_missing_config_file(tmp_path: Path) -> None:
    assert run(tmp_path / "absent.toml") == ExitCode.CONFIG_ERROR


def test_malformed_config_file(tmp_path: Path) -> None:
    assert run(_write(tmp_path, "pipeline = [\n")) == ExitCode.CONFIG_ERROR


def test_iss_pipeline_without_gain(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, 'pipeline = "iss2ises"\n[system]\ncatalog = "halfspeed_1d"\n')
    assert run(path, out=tmp_path / "out") == ExitCode.CONFIG_ERROR
    assert "needs an ISS gain" in capsys.readouterr().err
    assert not (tmp_path / "out").exists()


def test_construction_failure(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(tmp_path, 'pipeline = "flownorm"\n[system]\ncatalog = "iss_scalar"\n')
    assert run(path, out=tmp_path / "out") == ExitCode.CONSTRUCTION_ERROR
    assert "[normal_form]" in capsys.readouterr().err


@pytest.mark.slow
def test_successful_run_writes_artifacts(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = tmp_path / "out"
    code = main(["run", str(_write(tmp_path, HALFSPEED)), "--out", str(out), "--seed", "3"])
    assert code == ExitCode.OK
    assert capsys.readouterr().out.splitlines()[1].startswith("UGES: PASS")
    assert sorted(p.name for p in (out / "trajectories").iterdir()) == [
        "traj_000.csv",
        "traj_001.csv",
        "traj_002.csv",
    ]
    table = (out / "change_table.csv").read_text(encoding="utf-8").splitlines()
    assert table[0] == "x1,y1"
    assert len(table) == 65
    summary = parse_report((out / "report.txt").read_text(encoding="utf-8"))
    assert summary.passed


@pytest.mark.slow
def test_failing_rate_exits_with_check_failed(tmp_path: Path) -> None:
    path = _write(tmp_path, HALFSPEED + "decay_rate = 2.0\n")
    assert run(path, out=tmp_path / "out") == ExitCode.CHECK_FAILED
    summary = parse_report((tmp_path / "out" / "report.txt").read_text(encoding="utf-8"))
    assert not summary.passed


def test_expression_value_error_exits_with_config_error(
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    module = importlib.import_module("stabilityx.cli.main")

    def broken_gamma(_config: object) -> None:
        msg = "math domain error"
        raise ValueError(msg)

    monkeypatch.setattr(module, "resolve_gamma", broken_gamma)
    assert run(_write(tmp_path, HALFSPEED), out=tmp_path / "out") == ExitCode.CONFIG_ERROR
    err = capsys.readouterr().err
    assert "config error" in err
    assert "math domain error" in err
    assert not (tmp_path / "out").exists()


def test_invalid_signal_override_exits_with_config_error(tmp_path: Path) -> None:
    assert run(_write(tmp_path, HALFSPEED), signals=0) == ExitCode.CONFIG_ERROR
