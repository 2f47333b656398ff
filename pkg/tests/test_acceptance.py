"""Acceptance criteria, each run at its stated scale and tolerance.

Every test records a one-line verdict; the lines are echoed during the test
(visible with ``-s``) and collected again in the terminal summary.
"""

import json
import time

import pytest
from click.testing import CliRunner

from latticeym import config as cfgio
from latticeym.cli import main
from latticeym.config import FieldConfig, GaugeSpec
from latticeym.lattice_complex import Box
from latticeym.matrix_algebra import EXACT, FLOAT, Matrix2, su2_from_quaternion
from latticeym.suites import (
    LEIBNIZ_PAIRS,
    Context,
    suite_adjointness,
    suite_bianchi,
    suite_gauge_covariance,
    suite_lemma1,
    suite_lemma2,
    suite_lemma2_converse,
    suite_lemma3,
    suite_leibniz,
    suite_oracles,
    suite_selfdual,
    suite_star_laws,
    suite_theorem1,
    suite_theorem2,
)

TRIALS = 100
BOX3 = Box.cube(3)


def summarize(checks):
    worst = max((c.max_residual for c in checks), default=0.0)
    failed = [c.identity for c in checks if not c.passed]
    text = f"{len(checks)} checks x {checks[0].trials if checks else 0} trials, max residual {worst:.3g}"
    return text + (f", failing: {', '.join(failed)}" if failed else "")


def test_leibniz_rule(verdicts):
    start = time.perf_counter()
    checks = suite_leibniz(Context(BOX3, TRIALS))
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in checks) and elapsed < 10.0
    assert len(checks) == len(LEIBNIZ_PAIRS) == 10
    verdicts.record("leibniz rule", ok, f"{summarize(checks)}, {elapsed:.1f} s (limit 10 s)")
    assert ok


def test_bianchi_identity(verdicts):
    exact = suite_bianchi(Context(BOX3, TRIALS))
    floats = suite_bianchi(Context(BOX3, TRIALS, FLOAT))
    ok = exact[0].passed and exact[0].max_residual == 0 and floats[0].passed and floats[0].max_residual < 1e-10
    verdicts.record("bianchi identity", ok,
                    f"exact max {exact[0].max_residual:.3g}, float max {floats[0].max_residual:.3g} (< 1e-10)")
    assert ok


def test_curvature_covariance_and_gauge_identity(verdicts):
    checks = suite_gauge_covariance(Context(BOX3, TRIALS))
    ok = all(c.passed for c in checks)
    verdicts.record("curvature covariance and gauge identity", ok, summarize(checks))
    assert ok


@pytest.mark.xfail(strict=True, reason="the commutation of star with a 0-form holds only for 0-forms "
                                       "invariant under the degree-p cell offsets; generic h fails for p >= 1")
def test_star_commutes_with_zero_forms(verdicts):
    checks = suite_lemma1(Context(BOX3, TRIALS))
    literal = [c for c in checks if "offset-invariant" not in c.identity]
    corrected = [c for c in checks if "offset-invariant" in c.identity]
    ok = all(c.passed for c in literal)
    detail = (f"random h: {sum(c.passed for c in literal)}/5 degrees pass "
              f"({', '.join(c.identity for c in literal if not c.passed)} fail); "
              f"offset-invariant h: {sum(c.passed for c in corrected)}/5 pass")
    verdicts.record("star commutes with random 0-forms, p = 0..4", ok, detail)
    assert all(c.passed for c in corrected)
    assert ok


def test_parity_gauges_and_counterexamples(verdicts):
    ctx = Context(BOX3, TRIALS)
    forward = suite_lemma2(ctx)[0]
    converse = suite_lemma2_converse(ctx, gauges=20, max_trials=1000)[0]
    d = converse.detail
    ok = forward.passed and converse.passed and d["distinct_gauges"] >= 20 and d["counterexamples"] >= 20
    verdicts.record("parity gauges commute with star; counterexamples otherwise", ok,
                    f"forward {forward.trials} trials max {forward.max_residual:.3g}; "
                    f"{d['counterexamples']} counterexamples for {d['distinct_gauges']} distinct gauges")
    assert ok


def test_field_equation_gauge_invariance(verdicts):
    checks = suite_theorem1(Context(BOX3, TRIALS))
    ok = all(c.passed for c in checks)
    verdicts.record("v26 residual conjugates under parity gauges", ok, summarize(checks))
    assert ok


def test_codifferential_adjointness(verdicts):
    checks = []
    for n in (3, 4):
        ctx = Context(Box.cube(n), TRIALS)
        for c in suite_adjointness(ctx) + suite_theorem2(ctx):
            c.identity = f"{c.identity}@{n}^4"
            checks.append(c)
    ok = all(c.passed for c in checks)
    verdicts.record("adjointness of d and d_A on 3^4 and 4^4", ok, summarize(checks))
    assert ok


def test_one_form_three_form_trace_duality(verdicts):
    checks = suite_lemma3(Context(BOX3, TRIALS))
    ok = all(c.passed for c in checks)
    verdicts.record("1-form / 3-form trace duality", ok, summarize(checks))
    assert ok


def test_star_laws(verdicts):
    checks = suite_star_laws(Context(BOX3, TRIALS))
    ok = all(c.passed for c in checks)
    verdicts.record("star table, double-star shifts, star inverse", ok, summarize(checks))
    assert ok


def test_self_duality(verdicts):
    checks = suite_selfdual(Context(BOX3, TRIALS), fuzz=1000)
    fuzz = [c for c in checks if c.identity.startswith("finite-support")]
    ok = all(c.passed for c in checks) and all(c.trials == 1000 for c in fuzz)
    false_verdicts = sum(len(c.detail.get("failed_trials", [])) for c in fuzz)
    verdicts.record("self-duality equivalence, sign law, finite-support fuzz", ok,
                    f"{summarize(checks)}; {sum(c.trials for c in fuzz)} fuzz cases, "
                    f"{false_verdicts} false verdicts")
    assert ok


def test_oracle_equivalence(verdicts):
    checks = suite_oracles(Context(BOX3, TRIALS))
    ok = all(c.passed for c in checks) and all(c.trials == TRIALS for c in checks)
    verdicts.record("fast operators match the oracles", ok, summarize(checks))
    assert ok


def test_determinism_and_round_trip(verdicts, tmp_path):
    runner = CliRunner()
    reports_match = True
    for suite in ("leibniz", "theorem1", "lemma2-converse", "selfdual"):
        args = ["verify", suite, "--seeds", "3", "--size", "2,2,2,2", "--seed", "17"]
        first, second = runner.invoke(main, args), runner.invoke(main, args)
        reports_match &= first.exit_code == 0 and first.stdout == second.stdout
        json.loads(first.stdout)

    parity = GaugeSpec("parity", (su2_from_quaternion(1, 2, 2, 0), Matrix2.identity(EXACT)))
    round_trips = 0
    for mode in (EXACT, FLOAT):
        for lattice in (cfgio.FREE, cfgio.PERIODIC):
            cfg = cfgio.random_config(23, (2, 2, 2, 2), mode, lattice)
            if mode == EXACT:
                cfg = FieldConfig(cfg.mode, cfg.lattice, cfg.extents, cfg.connection, cfg.seed,
                                  cfg.su2_algebra, parity)
            path = tmp_path / f"{mode}-{lattice}.json"
            cfgio.save(cfg, path)
            text = path.read_text()
            loaded = cfgio.load(path)
            same = loaded.connection == cfg.connection and cfgio.dump(loaded) == text
            round_trips += same
    ok = reports_match and round_trips == 4
    verdicts.record("deterministic reports and bit-exact config round trip", ok,
                    f"repeated reports identical: {reports_match}; round trips exact: {round_trips}/4")
    assert ok
