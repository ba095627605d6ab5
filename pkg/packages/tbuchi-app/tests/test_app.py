import dataclasses
from pathlib import Path
from typing import List

import pytest
from tbuchi_app.app import app
from tbuchi_core.buchi_check import BenchConfig, SearchConfig, SearchResult, build_model, check
from tbuchi_core.ta_model import gen_drifting_loop, gen_fischer, print_model
from typer.testing import CliRunner

runner = CliRunner()

CONDITION_TWO = """\
clocks: x, y
automaton Pinned:
  state q accepting
  trans q -> q guard x >= 1 && y <= 3 reset {x} label a
"""


@pytest.fixture
def drift(tmp_path: Path) -> Path:
    path = tmp_path / "drift.txt"
    path.write_text(print_model(gen_drifting_loop()))
    return path


def test_gen_model_to_stdout() -> None:
    result = runner.invoke(app, ["gen-model", "--family", "fischer", "--n", "1"])
    assert result.exit_code == 0, result.output
    assert result.stdout == print_model(gen_fischer(1))


def test_gen_model_to_file(tmp_path: Path) -> None:
    out = tmp_path / "csma.txt"
    result = runner.invoke(app, ["gen-model", "--family", "csma", "--n", "2", "--fixed", "--nonzeno", "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text().startswith("clocks:")
    assert "automaton" in out.read_text()


def test_gen_model_rejects_unknown_family() -> None:
    result = runner.invoke(app, ["gen-model", "--family", "dining", "--n", "2"])
    assert result.exit_code == 2


def test_check_empty_model_exits_zero(tmp_path: Path) -> None:
    path = tmp_path / "sink.txt"
    path.write_text(print_model(dataclasses.replace(gen_drifting_loop(), accepting=frozenset())))
    result = runner.invoke(app, ["check", str(path), "--mode", "dfss"])
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines()[0] == "Empty"


def test_check_cycle_exits_one(drift: Path) -> None:
    result = runner.invoke(app, ["check", str(drift), "--seed", "7"])
    assert result.exit_code == 1, result.output
    assert result.stdout.splitlines()[0] == "CycleFound"
    assert "iterability" in result.stdout


def test_check_csv_row(drift: Path) -> None:
    result = runner.invoke(app, ["check", str(drift), "--csv"])
    assert result.exit_code == 1, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "model,N,mode,seed,visited,subsumptions,iter_checks,result"
    assert lines[1].startswith("drift,,idfss,0,")
    assert lines[1].endswith(",1,CycleFound")


@pytest.mark.parametrize(
    "options",
    [
        ["--sequence-only"],
        ["--cyan-entry", "shallowest"],
        ["--witness-zone", "concrete"],
    ],
)
def test_check_iterability_options(drift: Path, options: List[str]) -> None:
    result = runner.invoke(app, ["check", str(drift), *options])
    assert result.exit_code == 1, result.output


def test_check_builtin_property(tmp_path: Path) -> None:
    path = tmp_path / "fischer.txt"
    path.write_text(print_model(gen_fischer(1)))
    expected, _ = check(build_model(BenchConfig(family="fischer", n=1, scale=10)), SearchConfig())
    result = runner.invoke(app, ["check", str(path), "--builtin", "fischer", "--n", "1", "--scale", "10"])
    assert result.exit_code == (1 if expected is SearchResult.CYCLE_FOUND else 0), result.output


def test_check_csv_row_with_builtin_property(tmp_path: Path) -> None:
    path = tmp_path / "fischer.txt"
    path.write_text(print_model(gen_fischer(2)))
    result = runner.invoke(app, ["check", str(path), "--builtin", "fischer", "--n", "2", "--scale", "10", "--csv"])
    assert result.exit_code in (0, 1), result.output
    assert result.stdout.splitlines()[1].startswith("fischer,2,idfss,0,")


@pytest.mark.parametrize("family", ["fischer", "fddi"])
def test_check_builtin_property_needs_process_count(tmp_path: Path, family: str) -> None:
    path = tmp_path / "model.txt"
    path.write_text(print_model(gen_fischer(2)))
    result = runner.invoke(app, ["check", str(path), "--builtin", family])
    assert result.exit_code == 2
    assert "--builtin needs --n" in result.output


def test_check_rejects_two_properties(drift: Path) -> None:
    result = runner.invoke(app, ["check", str(drift), "--property", str(drift), "--builtin", "fischer"])
    assert result.exit_code == 2
    assert "mutually exclusive" in result.output


def test_check_missing_file(tmp_path: Path) -> None:
    result = runner.invoke(app, ["check", str(tmp_path / "absent.txt")])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_check_syntax_error(tmp_path: Path) -> None:
    path = tmp_path / "broken.txt"
    path.write_text("clocks: x\nautomaton A:\n  state q $\n")
    result = runner.invoke(app, ["check", str(path)])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_iterability_condition_two(tmp_path: Path) -> None:
    path = tmp_path / "pinned.txt"
    path.write_text(CONDITION_TWO)
    result = runner.invoke(app, ["iterability", str(path), "--path", "t0"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0].startswith("preprocess: NotIterable (condition 2: ")
    assert lines[1].startswith("NotIterable (condition 2: ")
    assert not any(line.startswith("W:") for line in lines)


def test_iterability_prints_zone(drift: Path) -> None:
    result = runner.invoke(app, ["iterability", str(drift), "--path", "t0"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[1].startswith("Iterable (stable after ")
    assert "W: x <= 1" in lines


def test_iterability_lists_transitions(drift: Path) -> None:
    result = runner.invoke(app, ["iterability", str(drift)])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0].startswith("t0: q0 -> q0")
    assert lines[1].startswith("t1: q0 -> q1")


@pytest.mark.parametrize("path", ["t7", "x", "t1,t0"])
def test_iterability_rejects_bad_paths(drift: Path, path: str) -> None:
    result = runner.invoke(app, ["iterability", str(drift), "--path", path])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_bench_csv(tmp_path: Path) -> None:
    out = tmp_path / "fischer.csv"
    args = ["bench", "--family", "fischer", "--n", "1", "--seeds", "2", "--scale", "10", "--out", str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "model,N,mode,seed,visited,subsumptions,iter_checks,result"
    assert [line.split(",")[2:4] for line in lines[1:]] == [
        ["dfss", "0"],
        ["idfss", "0"],
        ["dfss", "1"],
        ["idfss", "1"],
    ]


def test_missing_logging_config(drift: Path, tmp_path: Path) -> None:
    result = runner.invoke(app, ["check", str(drift)], env={"LOGGING_CONFIG": str(tmp_path / "absent.yaml")})
    assert result.exit_code == 2


def test_bad_metrics_port(drift: Path) -> None:
    result = runner.invoke(app, ["check", str(drift)], env={"TBUCHI_METRICS_PORT": "http"})
    assert result.exit_code == 2
    assert "port number" in result.output


@pytest.mark.bench
def test_bench_csma_row(tmp_path: Path, bench_seeds: int) -> None:
    out = tmp_path / "csma.csv"
    args = ["bench", "--family", "csma", "--n", "4", "--seeds", str(bench_seeds), "--workers", "4", "--out", str(out)]
    result = runner.invoke(app, args)
    assert result.exit_code == 0, result.output
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    dfss_visited = [int(row[4]) for row in rows if row[2] == "dfss"]
    assert 5_000 <= sum(dfss_visited) / len(dfss_visited) <= 20_000
