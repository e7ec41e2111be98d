from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hslethal import formats
from hslethal.cli import main
from hslethal.state import ACTIVE, OPPONENT, Attack, Ref


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def board_puzzle(tmp_path):
    inst = tmp_path / "inst.json"
    formats.write(str(inst), formats.instance_to_doc([1, 1, 1, 1, 1, 1], 2))
    out = tmp_path / "puzzle.json"
    assert run("gen", "--instance", inst, "--reduction", "board3p", "--goal", "lethal", "-o", out) == 0
    return out


def test_gen_solve_verify_certificate(board_puzzle, tmp_path, capsys):
    sol = tmp_path / "sol.json"
    assert run("solve", board_puzzle, "-o", sol) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "solved"
    assert run("verify", board_puzzle, sol) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["goal_reached"] and report["legal"]
    cert = tmp_path / "cert.json"
    assert run("certificate", board_puzzle, sol, "-o", cert) == 0
    assert formats.read(str(cert))["sums"] == [3, 3]


def test_files_are_rewritten_identically(board_puzzle):
    text = board_puzzle.read_text()
    doc = formats.read(str(board_puzzle))
    assert formats.dumps(doc) == text
    assert formats.dumps(formats.puzzle_to_doc(formats.puzzle_from_doc(doc))) == text


def test_gen_is_deterministic(capsys):
    assert run("gen", "--values", "1,2,3", "--reduction", "deck") == 0
    first = capsys.readouterr().out
    assert run("gen", "--values", "1,2,3", "--reduction", "deck") == 0
    assert capsys.readouterr().out == first


def test_unsolvable_exit(tmp_path, capsys):
    out = tmp_path / "p.json"
    assert run("gen", "--values", "1,1,3", "--reduction", "hand", "-o", out) == 0
    assert run("solve", out) == 1
    assert json.loads(capsys.readouterr().out)["verdict"] == "unsolvable"


def test_resource_limit_exit(board_puzzle, monkeypatch):
    assert run("solve", board_puzzle, "--max-states", 1) == 2
    monkeypatch.setenv("HSLETHAL_LIMITS", "max_states=1")
    assert run("solve", board_puzzle) == 2


def test_malformed_input_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run("solve", bad) == 3
    assert run("oracle", "--instance", bad) == 3
    assert run("gen", "--values", "1,1,1,1,1,2", "--n", 2, "--reduction", "board3p") == 3
    assert run("solve", tmp_path / "missing.json") == 3


def test_invariant_violation_exit(board_puzzle):
    doc = formats.read(str(board_puzzle))
    doc["state"]["players"][0]["board"][0]["health"] = 9  # above its max health
    board_puzzle.write_text(formats.dumps(doc))
    assert run("solve", board_puzzle) == 4


def test_verify_rejects_bad_line(board_puzzle, tmp_path, capsys):
    sol = tmp_path / "sol.json"
    face = Attack(Ref.minion(ACTIVE, 0), Ref.hero(OPPONENT))  # taunts are up
    formats.write(str(sol), formats.solution_to_doc([face]))
    assert run("verify", board_puzzle, sol) == 1
    assert json.loads(capsys.readouterr().out)["illegal_at"] == 0
    assert run("certificate", board_puzzle, sol) == 1


def test_oracle(capsys):
    assert run("oracle", "--values", "1,2,3") == 0
    assert json.loads(capsys.readouterr().out)["witness"] == [[0, 1], [2]]
    assert run("oracle", "--values", "2,4,4,8") == 1
    capsys.readouterr()
    assert run("oracle", "--values", "1,1,1,1,2,4", "--n", 2) == 0
    assert run("oracle", "--values", "1,1,1,1,2,4", "--n", 2, "--strict-size3") == 1


def test_replay_combo(capsys):
    assert run("replay", "combo-cycle") == 0
    out = capsys.readouterr().out
    assert "PASS mana_spent: mana spent = 0" in out
    assert "FAIL" not in out


def test_replay_scenario_file(tmp_path):
    from hslethal.scenarios import combo_cycle

    sc = combo_cycle()
    sc.expect["mana_spent"] = 3
    path = tmp_path / "sc.json"
    formats.write(str(path), formats.scenario_to_doc(sc))
    assert run("replay", path) == 1


def test_roundtrip_board_family(capsys):
    assert run("roundtrip", "--family", "board3p-exhaustive-small") == 0
    assert "0 disagreements" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hslethal", "oracle", "--values", "1,1,3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "no"
