"""Shared test helpers: canonical q pools and an in-process CLI runner."""

from __future__ import annotations

import io
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

import pytest

# the q values exercised throughout: integers, reciprocals, negatives, non-integers
Q_POOL = [Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(3, 5), Fraction(7)]
Q_GRID = [Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(3, 5)]


@pytest.fixture
def run_cli():
    """Invoke the CLI main() in-process, capturing (exit_code, stdout, stderr)."""

    def runner(args: list[str]) -> tuple[int, str, str]:
        from qsym.cli import main

        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            try:
                code = main(args)
            except SystemExit as exc:  # argparse errors
                code = exc.code if isinstance(exc.code, int) else 2
        return code, out.getvalue(), err.getvalue()

    return runner
