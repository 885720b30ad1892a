"""Acceptance criteria, each at its stated tolerance, one pass/fail line apiece."""

import math
import time

import numpy as np
import pytest

from delta_spectra import models, oracle, perturb, roots, series, tables, validate
from delta_spectra.models import BoxDeltaSpec, FiniteWellDeltaSpec, OscillatorDeltaSpec, Units


def report(request, ok, detail):
    line = f"[acceptance] {'PASS' if ok else 'FAIL'} {request.node.name}: {detail}"
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_01_table1(request):
    t = time.perf_counter()
    rows = tables.table1()
    dt = time.perf_counter() - t
    bad = [f"{r.key}/{r.column}: {r.computed} vs {r.printed}" for r in rows if not r.match]
    report(request, not bad and dt < 1.0, f"{len(rows) - len(bad)}/{len(rows)} rows, {dt:.2f} s" + (f"; {bad}" if bad else ""))


def test_criterion_02_tables_2_and_3(request):
    t = time.perf_counter()
    rows = tables.table2() + tables.table3()
    dt = time.perf_counter() - t
    bad = [f"j={r.key} {r.column}: {r.computed} vs {r.printed}" for r in rows if not r.match]
    report(request, not bad and dt < 1.0, f"{len(rows) - len(bad)}/{len(rows)} rows, {dt:.2f} s" + (f"; mismatched {bad}" if bad else ""))


def test_criterion_03_box_identity(request):
    t = time.perf_counter()
    worst = 0.0
    for n in (1, 3, 5):
        for p in (0.5, 1 / 3, 0.25):
            worst = max(worst, abs(perturb.box_e2_sum(n, p, l_max=100_000).E2 - perturb.box_pt_closed(n, p).E2))
    dt = time.perf_counter() - t
    report(request, worst <= 1e-4 and dt < 5.0, f"max |sum - closed| {worst:.2e}, {dt:.2f} s")


def test_criterion_04_perturbative_order(request):
    spec = BoxDeltaSpec.single(1.0, 0.5, 1.0)
    e = perturb.numeric_pt_extract(spec, 1)
    slope, _ = perturb.remainder_slope(spec, 1, e, np.geomspace(1e-3, 1e-1, 9))
    d1, d2 = abs(e.E1 + 2.0), abs(e.E2 + 1.0 / math.pi**2)
    ok = abs(slope - 3.0) <= 0.2 and d1 <= 1e-6 and d2 <= 1e-6
    report(request, ok, f"slope {slope:.3f}, |E1 + 2| {d1:.1e}, |E2 + 1/pi^2| {d2:.1e}")


def test_criterion_05_oscillator_condition(request):
    units = Units(1.0, 1.0)
    spec0 = OscillatorDeltaSpec(1.0, 0.0, units)
    f = lambda E: models.sho_delta_condition(E, spec0)
    found = roots.find_roots(f, 0.01, 8.0, 4000, models.sho_singularities(spec0, 0.01, 8.0), tol=1e-13)
    xs = [r.x for r in found][:4]
    err0 = max(abs(x - (2 * n + 0.5)) for n, x in enumerate(xs)) if len(xs) == 4 else math.inf
    spec = OscillatorDeltaSpec(1.0, 0.1, units)
    root = models.sho_delta_spectrum(spec, 1)[0].energy
    num = oracle.oracle_spectrum(spec, 1, method="numerov").energies[0]
    ok = err0 <= 1e-9 and abs(root - num) <= 1e-6
    report(request, ok, f"lambda=0 roots off by {err0:.1e}; lambda=0.1 root vs Numerov {abs(root - num):.1e}")


def test_criterion_06_oscillator_series(request):
    s = perturb.sho_bracket_sum(0, 1_000_000)
    d = abs(s.corrected + 2.0 * math.log(2.0))
    e2 = perturb.sho_e2_sum(0, Units(1.0, 1.0), 1.0)
    runs = [series.sho_series(n) for n in range(3)]
    supported = {r.params["n"]: r.supported for r in runs}
    ok = d <= 1e-5 and all(v is not None for v in supported.values())
    report(request, ok, f"|bracket + 2 ln 2| {d:.1e} (E2 {e2.E2:.12f}); supported constant by n: {supported}")


def test_criterion_07_continuum_sign_reversal(request):
    spec = FiniteWellDeltaSpec(1.0, 16.0, 1.0)
    states = perturb.well_states(spec)
    top = max(s.label for s in states if s.parity == "even")
    bound = perturb.well_bound_part_e2(spec, top)
    total = perturb.numeric_pt_extract(spec, top).E2
    cont = total - bound
    boxed = perturb.well_continuum_boxed(spec, top, 80.0 * spec.L).value
    rel = abs(boxed - cont) / abs(cont)
    ok = len(states) == 3 and bound > 0 and total < 0 and rel <= 0.05
    report(request, ok, f"{len(states)} bound states, bound part {bound:.6f}, total {total:.6f}, boxed continuum off by {rel:.1e}")


def test_criterion_08_critical_length(request):
    worst = 0.0
    for m, lam in ((1.0, 1.0), (0.5, 2.0), (2.0, 0.3)):
        u = Units(1.0, m)
        worst = max(worst, abs(models.detect_critical_length(lam, u) / (u.hbar**2 / (m * lam)) - 1.0))
    report(request, worst <= 1e-6, f"max relative deviation {worst:.1e}")


def test_criterion_09_multi_delta(request):
    e = perturb.numeric_pt_extract(BoxDeltaSpec(1.0, ((0.25, 1.0), (0.75, 1.0))), 1)
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        k, p, lam = rng.uniform(0.1, 30.0), rng.uniform(0.01, 0.99), rng.uniform(-5.0, 5.0)
        a = models.box_delta_condition(k, BoxDeltaSpec.single(1.0, p, lam))
        b = models.box_single_delta_residual(k, p, lam, 1.0)
        worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    ok = e.E2 < 0 and worst <= 1e-12
    report(request, ok, f"ground-state E2 {e.E2:.8f}; transfer matrix vs single-delta residual {worst:.1e}")


def test_criterion_10_oracle_concordance(request):
    rows = validate.concordance()
    err = max(r[1] for r in rows)
    order = max(r[2] for r in rows)
    models_seen = sorted({r[0] for r in rows})
    ok = err <= 1e-8 and order <= 0.2
    report(request, ok, f"{len(rows)} parameter sets over {models_seen}, max error {err:.1e}, max |order - 2| {order:.3f}")


def test_criterion_11_validate_suite(request):
    t = time.perf_counter()
    results = validate.run()
    dt = time.perf_counter() - t
    failed = [r.name for r in results if not r.passed]
    ok = not failed and dt < 60.0
    report(request, ok, f"{len(results) - len(failed)}/{len(results)} checks in {dt:.1f} s" + (f"; failed {failed}" if failed else ""))
