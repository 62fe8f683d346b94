"""Acceptance gate: one pass/fail line per criterion, shown in the pytest summary.

The Othello benchmark (criteria 5 to 7) takes several minutes on one core.
"""

import subprocess
import sys
import time

import pytest

from sssbench.bench import DEFAULT_SUITE_SEED, gen_suite, run_suite, summarize
from sssbench.verify import (
    DEFAULT_SEED,
    check_dominance,
    check_mt_equivalence,
    check_open_peak,
    check_oracle_equivalence,
    check_strategy_theorem,
    oracle_trees,
)

SUITE_ARGS = (DEFAULT_SUITE_SEED, 50, 8, 44)
DEPTHS = list(range(2, 9))


def log(acceptance_log, n, passed, text, details=()):
    acceptance_log.append(f"[{n}] {'PASS' if passed else 'FAIL'} {text}")
    acceptance_log.extend(f"      {d}" for d in details)


@pytest.fixture(scope="module")
def trees():
    return list(oracle_trees(1000, DEFAULT_SEED))


@pytest.fixture(scope="module")
def suite():
    return gen_suite(*SUITE_ARGS)


@pytest.fixture(scope="module")
def enhanced_runs(suite):
    t0 = time.perf_counter()
    records = run_suite(suite, ["ab_enhanced", "mt_sss"], DEPTHS)
    return records, time.perf_counter() - t0


@pytest.fixture(scope="module")
def summary(enhanced_runs):
    return summarize(enhanced_runs[0], baseline="ab_enhanced")


def test_1_oracle_equivalence(trees, acceptance_log):
    t0 = time.perf_counter()
    rep = check_oracle_equivalence(trees)
    elapsed = time.perf_counter() - t0
    sizes = sorted({(t.w, t.d) for t in trees})
    log(acceptance_log, 1, rep.passed,
        f"oracle equivalence: {rep.checked} trees x 5 engines, {len(rep.failures)} mismatches",
        [f"shapes covered: {len(sizes)} (w, d) pairs, largest {max(t.w ** t.d for t in trees)} leaves",
         f"runtime {elapsed:.1f} s (expected <= 60 s: {'met' if elapsed <= 60 else 'not met'}; informational)"])
    assert rep.checked == 1000
    assert all(t.w in (2, 3, 4) and t.w ** t.d <= 65_536 for t in trees)
    assert rep.passed, rep.format()


def test_2_dominance(trees, acceptance_log):
    rep = check_dominance(trees[:500])
    log(acceptance_log, 2, rep.passed,
        f"Stockman dominance: {rep.checked} trees, {len(rep.failures)} with SSS* leaves outside alpha-beta's",
        rep.notes)
    assert rep.checked == 500 and rep.passed, rep.format()


def test_3_strategy_theorem(acceptance_log):
    theorem_trees = list(oracle_trees(200, DEFAULT_SEED + 1, widths=(2, 3), max_depth=4))
    assert all(t.w <= 3 and t.d <= 4 for t in theorem_trees)
    rep = check_strategy_theorem(theorem_trees)
    log(acceptance_log, 3, rep.passed,
        f"strategy theorem: {rep.checked} trees, {len(rep.failures)} failures (max-of-min = minimax and leaf bounds)",
        rep.notes)
    assert rep.checked == 200 and rep.passed, rep.format()


def test_4_sss_equals_mt_sss(trees, acceptance_log):
    rep = check_mt_equivalence(trees)
    text = rep.format()
    side_by_side = "total leaves: sss" in text and "mt_sss textbook" in text
    ok = rep.passed and side_by_side
    log(acceptance_log, 4, ok,
        f"SSS* = MT-SSS*: {rep.checked} trees, {len(rep.failures)} value/gamma failures", rep.notes)
    assert side_by_side
    assert rep.passed, text


def test_5_mt_sss_close_to_enhanced_ab(enhanced_runs, summary, acceptance_log):
    records, elapsed = enhanced_runs
    ratios = {d: summary.ratio[d][("mt_sss", "ab_enhanced")] for d in DEPTHS}
    ok = all(0.5 <= r <= 2.0 for r in ratios.values())
    details = [f"depth {d}: geomean ab_enhanced {summary.geomean[d]['ab_enhanced']:.1f}, "
               f"mt_sss {summary.geomean[d]['mt_sss']:.1f}, ratio {ratios[d]:.3f}" for d in DEPTHS]
    details.append(f"runtime {elapsed:.0f} s (expected <= 10 min: {'met' if elapsed <= 600 else 'not met'}; "
                   "informational)")
    log(acceptance_log, 5, ok, "MT-SSS*/enhanced AB geomean ratio in [0.5, 2.0] at depths 2..8", details)
    assert len(records) == 50 * 2 * len(DEPTHS)
    assert ok, ratios


def test_6_enhancement_payoff(suite, enhanced_runs, acceptance_log):
    vanilla = run_suite(suite, ["ab"], [6])
    enh = [r for r in enhanced_runs[0] if r.engine == "ab_enhanced" and r.depth == 6]
    assert [r.root_value for r in vanilla] == [r.root_value for r in enh]
    g = summarize(vanilla + enh, baseline="ab").geomean[6]
    ratio = g["ab_enhanced"] / g["ab"]
    ok = ratio <= 0.5
    log(acceptance_log, 6, ok, f"depth 6: enhanced AB geomean {g['ab_enhanced']:.1f} vs vanilla "
        f"{g['ab']:.1f}, ratio {ratio:.3f} (need <= 0.5)")
    assert ok


def test_7_odd_even_growth(summary, acceptance_log):
    details = []
    for e in ("ab_enhanced", "mt_sss"):
        growth = summary.growth[e]
        assert set(growth) == {(d, d + 1) for d in DEPTHS[:-1]}
        to_odd, to_even = summary.parity_means(e)
        verdict = "exceeds" if to_odd > to_even else "does not exceed"
        details.append(f"{e}: " + ", ".join(f"{a}->{b} {f:.2f}" for (a, b), f in sorted(growth.items())))
        details.append(f"{e}: even->odd mean {to_odd:.2f} {verdict} odd->even mean {to_even:.2f}")
    log(acceptance_log, 7, True, "odd/even growth factors reported (directional, not asserted)", details)


def test_8_open_peak(trees, acceptance_log):
    rep = check_open_peak(trees, slack=2.0)
    log(acceptance_log, 8, rep.passed,
        f"SSS* OPEN peak <= 2 * w^ceil(d/2) on {rep.checked} trees, {len(rep.failures)} over", rep.notes)
    assert rep.passed, rep.format()


def test_9_bench_is_deterministic(tmp_path, acceptance_log):
    suite_file = tmp_path / "suite.txt"
    suite_file.write_text(gen_suite(*SUITE_ARGS).to_text())
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        subprocess.run([sys.executable, "-m", "sssbench", "bench", "--suite", str(suite_file),
                        "--engines", "minimax,ab,ab_enhanced,sss,mt_sss", "--depths", "2..3",
                        "-o", str(out)], check=True, capture_output=True)
        outputs.append(out.read_bytes())
    same = outputs[0] == outputs[1]
    rows = len(outputs[0].splitlines()) - 1
    log(acceptance_log, 9, same, f"two bench runs, {rows} rows each, byte-identical: {same}")
    assert same
