"""Acceptance criteria at their stated scale, one PASS/FAIL line each."""

import json
from pathlib import Path

import pytest

from crlab.cli import main
from crlab.explorer import FamilySpec, build_family, compute_statistic, fit_exponent
from crlab.verify import CHECKS, run_one

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("name", list(CHECKS))
def test_exact_and_oracle_suites(name, report_line):
    r = run_one(name, seed=2024)
    detail = f"{r.cases} cases in {r.seconds:.1f}s" + (f"; {r.detail}" if r.detail else "")
    report_line(name, r.passed, detail)
    assert r.passed, r.detail


def test_gp_trend(report_line):
    spec = FamilySpec("gp", list(range(4, 17)))
    samples = [(n, compute_statistic("C", build_family(spec, n))) for n in spec.sizes]
    fit = fit_exponent(samples)
    flagged = [n for n, c in samples if c < n * n]
    hard_fail = [n for n, c in samples if 4 * c < n * n]
    ok = fit.slope >= 2.5 and not hard_fail
    detail = f"slope {fit.slope:.3f} (>= 2.5)"
    if flagged:
        detail += f"; below n^2 at n={flagged} (flagged for inspection, above n^2/4)"
    report_line("4 GP |C[A]| trend", ok, detail)
    assert fit.slope >= 2.5
    assert not hard_fail


RUNS = [
    ["crossratio", "--family", "random", "--sizes", "9", "--seed", "7"],
    ["energy", "--family", "gp", "--sizes", "7"],
    ["rich", "--family", "ap", "--sizes", "6"],
    ["sweep", "--family", "random", "--sizes", "4..9", "--statistic", "C", "--seed", "3"],
    ["search", "--statistic", "C", "--n", "4", "--iterations", "200", "--restarts", "3", "--seed", "5"],
]


def _artifacts(out: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.name != "manifest.json"}


def test_determinism_across_workers(tmp_path, report_line):
    mismatched = []
    for argv in RUNS:
        outs = []
        for w in (1, 2):
            out = tmp_path / f"{argv[0]}-{w}"
            assert main([*argv, "--workers", str(w), "--out-dir", str(out)]) == 0
            outs.append(_artifacts(out))
            manifest = json.loads((out / "manifest.json").read_text())
            assert {f["path"] for f in manifest["files"]} == set(outs[-1])
        if outs[0] != outs[1]:
            mismatched.append(argv[0])
    report_line("5 determinism (workers 1 vs 2)", not mismatched,
                f"{len(RUNS)} commands byte-identical" if not mismatched else f"differ: {mismatched}")
    assert not mismatched
