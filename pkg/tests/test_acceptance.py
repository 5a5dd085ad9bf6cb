"""Acceptance gate: one printed pass/fail line per criterion.

Run with the default pytest options (output passthrough is enabled in
pyproject) or with ``pytest -s`` to see the lines.
"""

import time

import numpy as np
import pytest

from schlichtopt import (
    AscentOptions,
    CoefficientTriple,
    TYPICALLY_REAL_ODD7_MAX,
    bound_curve,
    coeffs_234,
    coeffs_upto,
    counterexample_driver,
    eval_functional,
    get_functional,
    grad_coeffs_234,
    grad_functional,
    make_driver,
    milin_lower_bound,
    refine,
    refine_schedule,
)

TABLE1 = {
    "milin2": {50: 0.034815, 100: 0.034845, 200: 0.034853, 400: 0.034854},
    "milin3": {50: 0.029473, 100: 0.029566, 200: 0.029591, 400: 0.029596},
    "odd5": {50: 1.013393, 100: 1.013412, 200: 1.013414, 400: 1.013415},
    "odd7": {50: 1.006727, 100: 1.006755, 200: 1.006762, 400: 1.006763},
}
FEKETE_SZEGO_ODD5 = 0.5 * (1.0 + 2.0 * np.exp(-2.0 / 3.0))


def report(num: int, label: str, ok: bool, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'} — {label}{suffix}")
    assert ok, f"criterion {num} failed: {label}{suffix}"


@pytest.fixture(scope="session")
def table1_traces():
    opts = AscentOptions(restarts=64, seed=1)
    start = time.perf_counter()
    traces = {
        name: refine_schedule(get_functional(name), [10, 50, 100, 200, 400], opts)
        for name in TABLE1
    }
    return traces, time.perf_counter() - start


def test_criterion_1_koebe_exactness():
    start = time.perf_counter()
    t = coeffs_234(make_driver(np.full(8, np.pi)))
    oracle = coeffs_upto(make_driver(np.full(8, np.pi)), 6)
    err = max(
        abs(t.a2 - 2), abs(t.a3 - 3), abs(t.a4 - 4),
        abs(oracle[3] - 5), abs(oracle[4] - 6),
    )
    elapsed = time.perf_counter() - start
    report(
        1,
        "all-pi driver gives (2,3,4) and oracle a5=5, a6=6 within 1e-12",
        err <= 1e-12 and elapsed < 1.0,
        f"max err {err:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_closed_form_vs_oracle():
    rng = np.random.default_rng(20)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 51))
        d = make_driver(rng.uniform(0, 2 * np.pi, m))
        t = coeffs_234(d)
        o = coeffs_upto(d, 4)
        worst = max(worst, abs(t.a2 - o[0]), abs(t.a3 - o[1]), abs(t.a4 - o[2]))
    elapsed = time.perf_counter() - start
    report(
        2,
        "closed forms vs recursion oracle on 1000 random drivers within 1e-12",
        worst <= 1e-12 and elapsed < 10.0,
        f"worst {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_3_gradient_correctness():
    rng = np.random.default_rng(21)
    h = 1e-6
    start = time.perf_counter()
    worst = 0.0
    specs = [get_functional(name) for name in TABLE1]
    for _ in range(100):
        m = int(rng.integers(1, 21))
        phi = rng.uniform(0, 2 * np.pi, m)
        d = make_driver(phi)
        jac = grad_coeffs_234(d)
        rows = np.vstack([jac.da2, jac.da3, jac.da4])
        fd_rows = np.empty_like(rows)
        fd_fun = {spec.name: np.empty(m) for spec in specs}
        for k in range(m):
            p = phi.copy()
            p[k] += h
            tp = coeffs_234(make_driver(p))
            p[k] -= 2 * h
            tm = coeffs_234(make_driver(p))
            fd_rows[:, k] = [
                (tp.a2 - tm.a2) / (2 * h),
                (tp.a3 - tm.a3) / (2 * h),
                (tp.a4 - tm.a4) / (2 * h),
            ]
            for spec in specs:
                fd_fun[spec.name][k] = (
                    eval_functional(spec, tp) - eval_functional(spec, tm)
                ) / (2 * h)
        worst = max(
            worst,
            float(np.max(np.abs(rows - fd_rows)))
            / max(1.0, float(np.max(np.abs(fd_rows)))),
        )
        for spec in specs:
            analytic = grad_functional(spec, d)
            worst = max(
                worst,
                float(np.max(np.abs(analytic - fd_fun[spec.name])))
                / max(1.0, float(np.max(np.abs(fd_fun[spec.name])))),
            )
    elapsed = time.perf_counter() - start
    report(
        3,
        "Jacobian and functional gradients vs central differences, rel err <= 1e-6",
        worst <= 1e-6 and elapsed < 10.0,
        f"worst rel {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_4_counterexample():
    start = time.perf_counter()
    value = eval_functional("odd7", coeffs_234(counterexample_driver()))
    elapsed = time.perf_counter() - start
    ok = abs(value - 1.006491) <= 5e-6 and value > TYPICALLY_REAL_ODD7_MAX
    report(
        4,
        "embedded m=20 driver: odd7 = 1.006491 +- 5e-6 and exceeds 1090/1083",
        ok and elapsed < 1.0,
        f"value {value:.9f}, margin {value - TYPICALLY_REAL_ODD7_MAX:.2e}",
    )


def test_criterion_5_scalar_bound():
    start = time.perf_counter()
    lam0, bound = milin_lower_bound()
    rng = np.random.default_rng(22)
    lams = rng.uniform(0.0, 5.0, 10_000)
    worst_identity = max(abs(bound_curve(l).F - 1.5 - bound_curve(l).M) for l in lams)
    elapsed = time.perf_counter() - start
    ok = (
        abs(lam0 - 0.39004568) <= 1e-8
        and abs(bound - 0.03485611) <= 1e-8
        and worst_identity <= 1e-13
    )
    report(
        5,
        "lambda0 and bound match to 1e-8; curve identity to 1e-13 on 1e4 samples",
        ok and elapsed < 1.0,
        f"lambda0 {lam0:.10f}, bound {bound:.10f}, identity {worst_identity:.2e}",
    )


def test_criterion_6_table1_reproduction(table1_traces):
    traces, elapsed = table1_traces
    worst = 0.0
    rows = []
    for name, expected in TABLE1.items():
        for m, want in expected.items():
            got = traces[name].stage_value(m)
            worst = max(worst, abs(got - want))
            rows.append((name, m, got - want))
    ok = worst <= 2e-5 and elapsed <= 15 * 60
    report(
        6,
        "all 16 table entries (m=50..400, m=400 extended included) within 2e-5",
        ok,
        f"worst |diff| {worst:.2e}, runtime {elapsed:.0f}s",
    )


def test_criterion_7_fekete_szego_cross_check(table1_traces):
    traces, _ = table1_traces
    got = traces["odd5"].stage_value(400)
    diff = abs(got - FEKETE_SZEGO_ODD5)
    report(
        7,
        "odd5 at m=400 within 5e-6 of the closed form (1 + 2e^(-2/3))/2",
        diff <= 5e-6,
        f"got {got:.9f} vs {FEKETE_SZEGO_ODD5:.9f}, diff {diff:.2e}",
    )


def test_criterion_8_property_suite(table1_traces):
    traces, _ = table1_traces
    rng = np.random.default_rng(23)

    worst_excess = -np.inf
    for _ in range(1000):
        m = int(rng.integers(1, 51))
        d = make_driver(rng.uniform(0, 2 * np.pi, m))
        vals = coeffs_upto(d, 6)
        worst_excess = max(
            worst_excess, max(abs(a) - n for n, a in zip(range(2, 7), vals))
        )
    de_branges_ok = worst_excess <= 1e-12

    refine_ok = True
    for _ in range(50):
        d = make_driver(rng.uniform(0, 2 * np.pi, int(rng.integers(1, 13))))
        t0, t1 = coeffs_234(d), coeffs_234(refine(d, int(rng.integers(2, 5))))
        refine_ok &= (
            max(abs(t0.a2 - t1.a2), abs(t0.a3 - t1.a3), abs(t0.a4 - t1.a4)) <= 1e-12
        )

    conj_ok = True
    for _ in range(50):
        phi = rng.uniform(0, 2 * np.pi, int(rng.integers(1, 13)))
        t0, t1 = coeffs_234(make_driver(phi)), coeffs_234(make_driver(-phi))
        for name in TABLE1:
            conj_ok &= (
                abs(eval_functional(name, t0) - eval_functional(name, t1)) <= 1e-12
            )

    monotone_ok = all(
        later >= earlier - 1e-12
        for trace in traces.values()
        for earlier, later in zip(trace.values(), trace.values()[1:])
    )

    spec = get_functional("milin3")
    runs = []
    for workers in (1, 2, 8):
        opts = AscentOptions(restarts=8, seed=17, workers=workers)
        runs.append(refine_schedule(spec, [10, 50], opts))
    determinism_ok = all(
        run.values() == runs[0].values()
        and all(
            np.array_equal(a[1].driver.angles, b[1].driver.angles)
            for a, b in zip(run.stages, runs[0].stages)
        )
        for run in runs[1:]
    )

    ok = de_branges_ok and refine_ok and conj_ok and monotone_ok and determinism_ok
    report(
        8,
        "coefficient bounds, refinement/conjugation invariance, trace monotonicity, "
        "worker-count determinism",
        ok,
        f"bound excess {worst_excess:.1e}, refine {refine_ok}, conj {conj_ok}, "
        f"monotone {monotone_ok}, deterministic {determinism_ok}",
    )


def test_criterion_9_milin_ordering(table1_traces):
    traces, _ = table1_traces
    _, bound = milin_lower_bound()
    milin3_200 = traces["milin3"].stage_value(200)
    best_milin2 = max(
        traces["milin2"].stage_value(200), traces["milin2"].stage_value(400)
    )
    gap = bound - best_milin2
    ok = milin3_200 < 0.03 and 0.0 < gap <= 3e-6
    report(
        9,
        "milin3 max at m=200 below 0.03; milin2 incumbent within 3e-6 under the bound",
        ok,
        f"milin3 {milin3_200:.6f}, milin2 gap {gap:.2e}",
    )
