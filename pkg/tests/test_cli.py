import json

import pytest

from steinhaus_lab.cli import (
    EXIT_INCOMPLETE,
    EXIT_OK,
    EXIT_REFUTED,
    EXIT_USAGE,
    run,
)


@pytest.fixture(autouse=True)
def clear_search_env(monkeypatch):
    for name in ("STEINHAUS_THREADS", "STEINHAUS_BUDGET", "STEINHAUS_PROGRESS"):
        monkeypatch.delenv(name, raising=False)


def test_figure_text(capsys):
    assert run(["figure", "triangle", "--mod", "5", "--seq", "2,4,3,1,1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == (
        "2 4 3 1 1\n 1 2 4 2\n  3 1 1\n   4 2\n    1\n"
        "counts: 0,6,4,2,3\nbalanced: False\n"
    )


def test_figure_json(capsys):
    assert run(["figure", "dat", "--mod", "15", "--a", "0", "--d1", "8", "--d2", "1", "--order", "5", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["figure"]["rows"][-1] == [2]
    assert payload["balanced"] is False


def test_figure_tetra(capsys):
    assert run(["figure", "tetra", "--mod", "5", "--seq", "1,2,3"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("floor 0:\n1 2\n3\nfloor 1:\n1\n")


def test_derive_and_rotate(capsys):
    assert run(["derive", "--mod", "5", "--seq", "2,4,3,1,1"]) == EXIT_OK
    assert capsys.readouterr().out == "2,4,3,1,1\n1,2,4,2\n"
    assert run(["rotate", "120", "--mod", "5", "--seq", "2,2,0,3,3"]) == EXIT_OK
    assert capsys.readouterr().out == "3,1,4,4,0\n"
    assert run(["derive", "--seq=0,-1,1,1", "--times", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "0,-1,1,1\n-1,0,2\n-1,2\n"


def test_universal(capsys):
    assert run(["universal", "--mod", "7", "--from", "0", "--to", "5", "--rows", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "0,6,1,1,4,2\n6,0,2,5,6,4\n"


def test_search_json_is_deterministic(capsys):
    argv = ["search", "triangle", "--mod", "15", "--order", "5", "--format", "json"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    payload = json.loads(first)
    assert payload["found"] == []
    assert payload["exhaustive"] is True
    assert "elapsedMs" not in payload


def test_search_text(capsys):
    assert run(["search", "triangle", "--mod", "15", "--order", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "none found" in out
    assert "exhaustive: True" in out


def test_usage_errors():
    assert run(["search", "triangle", "--mod", "15"]) == EXIT_USAGE
    assert run(["search", "trapezoid", "--mod", "15", "--order", "5"]) == EXIT_USAGE
    assert run(["figure", "trapezoid", "--mod", "5", "--seq", "1,2,3"]) == EXIT_USAGE
    assert run(["figure", "triangle", "--mod", "5", "--seq", "1,x"]) == EXIT_USAGE
    assert run(["bogus"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE


def test_budget_exhausted():
    assert run(["search", "triangle", "--mod", "3", "--order", "5", "--budget", "5"]) == EXIT_INCOMPLETE


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("STEINHAUS_BUDGET", "5")
    assert run(["search", "triangle", "--mod", "3", "--order", "5"]) == EXIT_INCOMPLETE


def test_verify(capsys):
    assert run(["verify", "thm5", "--mod", "7", "--d", "3", "--lambda", "2"]) == EXIT_OK
    assert "passed" in capsys.readouterr().out


def test_idao(capsys):
    assert run(["idao", "verify", "--k", "1"]) == EXIT_REFUTED
    capsys.readouterr()
    assert run(["idao", "verify", "--k", "6", "--k2", "3"]) == EXIT_OK
    capsys.readouterr()
    assert run(["idao", "solve", "--k", "6", "--format", "json"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["kernel"]) == 4
    assert run(["idao", "wendt", "--k", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "1 2\n2 1\nrank: 2\ndet: -3\n"


def test_admissible_and_proportions(capsys):
    assert run(["admissible", "triangle", "--mod", "7", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["classes"] == [0, 6]
    assert run(["proportions", "--mod", "9", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["triangle"]["fraction"] == "2/3"


@pytest.mark.parametrize("argv", [["--seq", "-1,2,0"], ["--seq=-1,2,0"]])
def test_negative_sequence(capsys, argv):
    assert run(["derive", "--mod", "5"] + argv) == EXIT_OK
    assert capsys.readouterr().out == "4,2,0\n1,2\n"


def test_verify_threads(capsys, monkeypatch):
    argv = ["verify", "prop8", "--mod", "3", "--format", "json"]
    assert run(argv) == EXIT_OK
    serial = capsys.readouterr().out
    assert run(argv + ["--threads", "2"]) == EXIT_OK
    assert capsys.readouterr().out == serial
    monkeypatch.setenv("STEINHAUS_THREADS", "2")
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == serial
    assert json.loads(serial)["examined"] == 81


def test_idao_batch_solve(capsys):
    assert run(["idao", "solve", "--ks", "6,7,12", "--threads", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "k=6: kernel dimension 4\nk=7: kernel dimension 0\nk=12: kernel dimension 4\n"
