"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Monte Carlo checks run at 10**6 samples with fixed seeds, so every outcome
here is deterministic for a given numpy version.  Runtime limits are
asserted where the criterion states one.
"""

import math
import time

import numpy as np
from scipy.integrate import quad

from sineq.bodies import cylinder_body, polydisc, product, strip_body
from sineq.cli import main as cli_main
from sineq.entropy import (
    StepFunction,
    TailMeasure1D,
    check_lemma_1d,
)
from sineq.integrate import Engine, mc_integral, mc_measure
from sineq.measures import (
    complex_gaussian,
    cylinder_measure,
    cylinder_second_moment,
    exp_strip_first_moment,
    exp_strip_measure,
    exponential,
)
from sineq.moments import coordinate_norm, cpq, l1_norm, linf_norm, moment_ratio
from sineq.verify import (
    calibrate_cylinder,
    calibrate_strip,
    check_moment_criterion_exponential,
    check_moment_criterion_gaussian,
    check_tensorization,
    sweep,
)

SAMPLES = 1_000_000
EXACT = Engine(method="exact")
T_GRID = (1.0, 1.25, 1.5, 2.0, 3.0)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


class TestAcceptance:
    def test_criterion_1_closed_forms_vs_mc(self):
        """Four closed forms match 10^6-sample MC within 3*se on 10-point grids."""
        t0 = time.perf_counter()
        worst = 0.0
        r_grid = np.linspace(0.3, 3.0, 10)
        p_grid = np.linspace(0.2, 3.0, 10)
        for i, R in enumerate(r_grid):
            est = mc_measure(cylinder_body(float(R), 2), complex_gaussian(2),
                             SAMPLES, seed=1000 + i)
            worst = max(worst, abs(est.value - cylinder_measure(float(R), 2)) / est.std_error)
        for i, R in enumerate(r_grid):
            est = mc_integral(lambda z: (z * z).sum(axis=1), cylinder_body(float(R), 2),
                              complex_gaussian(2), SAMPLES, seed=2000 + i)
            worst = max(worst, abs(est.value - cylinder_second_moment(float(R), 2)) / est.std_error)
        for i, p in enumerate(p_grid):
            est = mc_measure(strip_body(float(p), 2), exponential(2), SAMPLES, seed=3000 + i)
            worst = max(worst, abs(est.value - exp_strip_measure(float(p))) / est.std_error)
        for i, p in enumerate(p_grid):
            est = mc_integral(lambda x: np.abs(x).sum(axis=1), strip_body(float(p), 2),
                              exponential(2), SAMPLES, seed=4000 + i)
            worst = max(worst, abs(est.value - exp_strip_first_moment(float(p), 2)) / est.std_error)
        elapsed = time.perf_counter() - t0
        report(1, worst <= 3.0 and elapsed < 60.0,
               f"40 closed-form/MC cross-checks, worst |z| = {worst:.2f} "
               f"(limit 3), runtime {elapsed:.1f}s (limit 60s)")

    def test_criterion_2_equality_cases(self):
        """Cylinders and strips are exactly tight; tail indicators are the
        1-D equality case, all on deterministic paths."""
        worst_body = 0.0
        for m in (0.25, 0.5, 0.75):
            rep = check_moment_criterion_gaussian(
                cylinder_body(calibrate_cylinder(m), 2), EXACT)
            worst_body = max(worst_body, abs(rep.slack))
            rep = check_moment_criterion_exponential(
                strip_body(calibrate_strip(m), 2), EXACT)
            worst_body = max(worst_body, abs(rep.slack))
        worst_lemma = 0.0
        for s in (0.25, 0.5, 0.75):
            for measure, a in (
                (TailMeasure1D.exponential(), -math.log(s)),
                (TailMeasure1D.radial_mu(), math.sqrt(-2 * math.log(s))),
            ):
                rep = check_lemma_1d(StepFunction.tail_indicator(a), measure)
                target = -s * math.log(s)
                worst_lemma = max(worst_lemma, abs(rep.lhs - target), abs(rep.rhs - target))
        report(2, worst_body <= 1e-10 and worst_lemma <= 1e-12,
               f"cylinder/strip slack <= {worst_body:.2e} (limit 1e-10); "
               f"tail-indicator deviation <= {worst_lemma:.2e} (limit 1e-12)")

    def test_criterion_3_lemma_property_suite(self):
        """10^4 random (step function, measure) pairs with the exact
        s*ln(s) oracle never produce negative slack."""
        t0 = time.perf_counter()
        rng = np.random.default_rng(20250810)
        violations = 0
        min_slack = math.inf
        for _ in range(10_000):
            m = int(rng.integers(0, 7))
            jumps = np.unique(rng.uniform(0.01, 5.0, size=m))
            base = 0.0 if rng.random() < 0.4 else float(rng.uniform(0, 2))
            values = base + np.concatenate(
                [[0.0], np.cumsum(rng.exponential(size=len(jumps)))])
            f = StepFunction(tuple(jumps), tuple(values))
            u = rng.random()
            if u < 0.3:
                measure = TailMeasure1D.radial_mu()
            elif u < 0.6:
                measure = TailMeasure1D.exponential()
            else:
                locs = np.unique(rng.uniform(0, 6, size=int(rng.integers(1, 8))))
                measure = TailMeasure1D.discrete(locs, rng.dirichlet(np.ones(len(locs))))
            rep = check_lemma_1d(f, measure)
            # equality cases (constants, tail indicators) sit exactly at 0
            # and the exact oracle rounds at ~1e-15; negative beyond binary64
            # rounding is what counts as a violation
            if rep.slack < -1e-12:
                violations += 1
            if math.isfinite(rep.slack):
                min_slack = min(min_slack, rep.slack)
        elapsed = time.perf_counter() - t0
        report(3, violations == 0 and elapsed < 30.0,
               f"10^4 random pairs, {violations} violations "
               f"(min finite slack {min_slack:.3e}, cutoff -1e-12), "
               f"runtime {elapsed:.1f}s (limit 30s)")

    def test_criterion_4_reinhardt_sweep(self):
        """100 random polydiscs and 100 random weighted-lp shadows at
        n in 1..4: derivative criterion, moment criterion and the dilation
        curve all hold, with zero certified violations."""
        t0 = time.perf_counter()
        engine = Engine(method="mc", samples=SAMPLES, seed=20250810)
        discs = sweep("polydisc", 100, [1, 2, 3, 4], engine, T_GRID)
        balls = sweep("weighted-lp-ball", 100, [1, 2, 3, 4], engine, T_GRID)
        elapsed = time.perf_counter() - t0
        ok = (
            discs.holds == 100 and balls.holds == 100
            and discs.certified_violations == 0 and balls.certified_violations == 0
            and elapsed < 600.0
        )
        report(4, ok,
               f"polydiscs {discs.holds}/100 hold (min margin {discs.min_margin:.2e}), "
               f"lp shadows {balls.holds}/100 hold (min margin {balls.min_margin:.2e}), "
               f"0 certified violations required, runtime {elapsed:.0f}s (limit 600s)")

    def test_criterion_5_unconditional_sweep(self):
        """100 random unconditional bodies at n in 1..3: the exponential
        moment criterion and both dilation directions hold."""
        t0 = time.perf_counter()
        engine = Engine(method="mc", samples=SAMPLES, seed=20250811)
        grid = (0.5, 0.8) + T_GRID
        cubes = sweep("cube", 34, [1, 2, 3], engine, grid)
        balls = sweep("lp-ball", 33, [1, 2, 3], engine, grid)
        boxes = sweep("box", 33, [1, 2, 3], engine, grid)
        elapsed = time.perf_counter() - t0
        total_holds = cubes.holds + balls.holds + boxes.holds
        total_violations = (cubes.certified_violations + balls.certified_violations
                            + boxes.certified_violations)
        report(5, total_holds == 100 and total_violations == 0,
               f"{total_holds}/100 unconditional bodies hold "
               f"(cubes {cubes.holds}/34, lp {balls.holds}/33, boxes {boxes.holds}/33), "
               f"{total_violations} certified violations, runtime {elapsed:.0f}s")

    def test_criterion_6_tensorization(self):
        """Products of cylinders are polydiscs point for point, and product
        bodies pass the criterion checks."""
        rng = np.random.default_rng(99)
        prod = product(cylinder_body(1.0, 1), cylinder_body(2.0, 1))
        disc = polydisc([1.0, 2.0])
        z = rng.standard_normal((10_000, 4)) * 1.7
        identical = bool(np.array_equal(prod.contains(z), disc.contains(z)))
        closed = check_tensorization([cylinder_body(1.0, 1), cylinder_body(2.0, 1)], EXACT)
        mc = check_tensorization(
            [polydisc([1.0, 1.5]), polydisc([0.8])],
            Engine(method="mc", samples=SAMPLES, seed=20250812),
        )
        ok = identical and closed.verdict == "holds" and mc.verdict == "holds"
        report(6, ok,
               f"membership identical on 10^4 points: {identical}; "
               f"cylinder-product criterion: {closed.verdict}; "
               f"polydisc-product criterion: {mc.verdict}")

    def test_criterion_7_moment_constants(self):
        """cpq(2,1) against the independent quadrature oracle; the
        coordinate functional attains the constant; linf and l1 stay below."""
        mp2, _ = quad(lambda x: x * x * math.exp(-x), 0, np.inf)
        mq1, _ = quad(lambda x: x * math.exp(-x), 0, np.inf)
        oracle = math.sqrt(mp2) / mq1
        c21 = cpq(2.0, 1.0)
        ok = abs(c21 - oracle) <= 1e-7 and abs(c21 - 1.4142136) <= 1e-7
        details = [f"cpq(2,1) = {c21:.9f} vs oracle {oracle:.9f}"]
        engine = Engine(method="mc", samples=SAMPLES, seed=20250813)
        pair = moment_ratio(coordinate_norm(0), 2.0, 1.0, 2, engine)
        attained = abs(pair.ratio - pair.bound) <= 3 * pair.ratio_se
        ok = ok and attained
        details.append(f"coordinate ratio {pair.ratio:.6f} ± {pair.ratio_se:.6f}")
        for n in (1, 2, 3):
            for name, norm in (("linf", linf_norm()), ("l1", l1_norm())):
                p = moment_ratio(norm, 2.0, 1.0, n, engine)
                below = p.ratio <= p.bound + 3 * p.ratio_se
                ok = ok and below
                if not below:
                    details.append(f"{name} n={n} ratio {p.ratio:.6f} exceeds bound")
        report(7, ok, "; ".join(details))

    def test_criterion_8_reproducibility(self, tmp_path):
        """Identical configuration gives byte-identical CLI output, and MC
        estimates do not depend on the degree of parallelism."""
        out1, out2, out3 = (tmp_path / n for n in ("a.jsonl", "b.jsonl", "c.jsonl"))
        args = ["verify", "--body", "polydisc:r=1,1.3", "--engine", "mc",
                "--samples", "200000", "--seed", "20250814", "--grid", "1,1.5,2"]
        assert cli_main(args + ["--output", str(out1)]) == 0
        assert cli_main(args + ["--output", str(out2)]) == 0
        assert cli_main(args + ["--workers", "4", "--output", str(out3)]) == 0
        rerun_identical = out1.read_bytes() == out2.read_bytes()
        parallel_identical = out1.read_bytes() == out3.read_bytes()
        a = mc_measure(polydisc([1.0, 1.0]), complex_gaussian(2), 300_000,
                       seed=20250815, workers=1)
        b = mc_measure(polydisc([1.0, 1.0]), complex_gaussian(2), 300_000,
                       seed=20250815, workers=4)
        api_identical = a == b
        ok = rerun_identical and parallel_identical and api_identical
        report(8, ok,
               f"CLI rerun byte-identical: {rerun_identical}; "
               f"workers 1 vs 4 byte-identical: {parallel_identical}; "
               f"API estimate bit-identical across worker counts: {api_identical}")

    def test_criterion_9_statistical_calibration(self):
        """Across 200 seeds the closed-form cylinder measure falls inside
        value ± 3*se at least 99% of the time."""
        body = cylinder_body(math.sqrt(2 * math.log(2)), 1)
        hits = 0
        for seed in range(200):
            est = mc_measure(body, complex_gaussian(1), SAMPLES, seed=seed)
            if abs(est.value - 0.5) <= 3 * est.std_error:
                hits += 1
        report(9, hits >= 198, f"coverage {hits}/200 within ±3se (need >= 198)")
