"""Acceptance criteria, one PASS/FAIL line each.

The lines go straight to the terminal, so they show up under plain ``pytest -v``.
"""

import subprocess
import sys

import pytest

from steiner_extension.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"{c.number}-{c.name.replace(' ', '_')}" for c in CRITERIA])
def test_criterion(crit, capsys):
    result = run_criterion(crit)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def _reports(folder):
    cmd = [sys.executable, "-m", "steiner_extension", "acceptance", "--only", "2", "4", "6", "--reports", str(folder)]
    done = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    assert done.returncode == 0, done.stdout + done.stderr
    return {p.name: p.read_bytes() for p in sorted(folder.iterdir())}


def test_reports_identical_across_processes(tmp_path):
    first = _reports(tmp_path / "a")
    second = _reports(tmp_path / "b")
    assert first and first == second
