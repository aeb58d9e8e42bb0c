"""Exit criteria, one test per criterion.

Reference scenario: alpha = 3, Omega = 0.2, exact solver, full sector set,
automatic truncation (n_max = 40), tau in [0, 100] sampled every 0.05.
Each test records a PASS/FAIL line that is printed in the terminal summary.
"""
import math
from functools import lru_cache

import numpy as np
import pytest

from dmosc import (ModelParams, dense_oracle, evolve_exact, evolve_exact_many, evolve_rk4,
                   excitation_expectation, initial_state, isospin_density, pair_density, plan,
                   record, total_norm)
from dmosc.fullspace import isospin_density_explicit, pair_density_explicit
from dmosc.harness import time_grid

from .conftest import ACCEPTANCE_LINES

TAUS = time_grid(100.0, 0.05)
SWEEP = (0.2, 0.5, 0.8, 1.2)
FIXED = 0.3
LN2 = math.log(2.0)
C_MAX = math.sqrt(1.5)

# figure grid: lambda1 swept at lambda2 = 0.3, and lambda2 swept at lambda1 = 0.3
FIGURE_SCENARIOS = [(v, FIXED) for v in SWEEP] + [(FIXED, v) for v in SWEEP]


def report(number, title, checks):
    """Record ``checks`` (list of (label, ok, detail)) and assert them all."""
    ok = all(c[1] for c in checks)
    detail = "; ".join(f"{lab}: {det}{'' if good else ' [FAIL]'}" for lab, good, det in checks)
    ACCEPTANCE_LINES[number] = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title} -- {detail}"
    assert ok, ACCEPTANCE_LINES[number]


@lru_cache(maxsize=None)
def scenario(lambda1, lambda2, policy="full"):
    mp = ModelParams(lambda1=lambda1, lambda2=lambda2, omega=0.2, alpha=3.0, sector_policy=policy)
    s0 = initial_state(mp)
    states = evolve_exact_many(s0, plan(mp, TAUS), TAUS)
    recs = np.array([record(s).as_row() for s in states])
    return mp, states, recs


def col(recs, name):
    return recs[:, ("tau", "S", "C", "W", "g2", "norm", "excitation").index(name)]


def test_01_g2_baseline():
    _, _, recs = scenario(0.3, 0.2)
    g = col(recs, "g2")
    avg = float(np.mean(g[(TAUS >= 5) & (TAUS <= 50)]))
    late = g[TAUS >= 1]
    report(1, "g2 baseline (lambda1=0.3, lambda2=0.2)", [
        ("mean g2 on [5,50] in [0.98,0.995]", 0.98 <= avg <= 0.995, f"{avg:.6f}"),
        ("g2 < 1 on [1,100]", bool(np.all(late < 1.0)),
         f"max {late.max():.6f}, {int(np.sum(late >= 1))}/{late.size} samples >= 1"),
        ("g2(0) = 1 +- 1e-9", abs(g[0] - 1) <= 1e-9, f"{abs(g[0] - 1):.1e}"),
    ])


def test_02_initial_values():
    _, _, recs = scenario(FIXED, FIXED)
    s, c, w, n = (col(recs, k)[0] for k in ("S", "C", "W", "norm"))
    report(2, "initial-point values", [
        ("S(0) == 0", s == 0.0, repr(float(s))),
        ("|C(0)| <= 1e-12", abs(c) <= 1e-12, f"{c:.1e}"),
        ("|W(0)+1| <= 1e-12", abs(w + 1) <= 1e-12, f"{abs(w + 1):.1e}"),
        ("|norm(0)-1| <= 1e-12", abs(n - 1) <= 1e-12, f"{abs(n - 1):.1e}"),
    ])


def _bounds_checks(recs):
    s, c, w = col(recs, "S"), col(recs, "C"), col(recs, "W")
    return [
        ("S <= ln2+1e-10", bool(s.max() <= LN2 + 1e-10), f"max S {s.max():.6f}"),
        ("0 <= C <= sqrt(1.5)+1e-10", bool(c.min() >= 0 and c.max() <= C_MAX + 1e-10),
         f"C in [{c.min():.3g}, {c.max():.6f}]"),
        ("|W| <= 1+1e-12", bool(np.abs(w).max() <= 1 + 1e-12), f"max |W| {np.abs(w).max():.6f}"),
    ]


def test_03_bounds():
    checks = []
    for l1, l2 in FIGURE_SCENARIOS:
        for lab, ok, det in _bounds_checks(scenario(l1, l2)[2]):
            checks.append((f"({l1},{l2}) {lab}", ok, det))
    ok = all(c[1] for c in checks)
    worst = [c for c in checks if not c[1]] or checks[:3]
    report(3, "observable bounds over the figure grid", worst if not ok else [
        ("8 scenarios x 2001 samples", True, "S <= ln2, 0 <= C <= sqrt(1.5), |W| <= 1"),
    ])


def test_04_monotone_entanglement():
    by_l1 = [float(np.mean(col(scenario(v, FIXED)[2], "S"))) for v in SWEEP]
    by_l2 = [float(np.mean(col(scenario(FIXED, v)[2], "S"))) for v in SWEEP]
    report(4, "mean S nondecreasing in lambda1 and lambda2", [
        ("lambda1 sweep", bool(np.all(np.diff(by_l1) >= 0)), ", ".join(f"{x:.4f}" for x in by_l1)),
        ("lambda2 sweep", bool(np.all(np.diff(by_l2) >= 0)), ", ".join(f"{x:.4f}" for x in by_l2)),
    ])


def _conservation_checks(states, norm0):
    norms = np.array([total_norm(s) for s in states])
    sectors = np.array([s.sector_norms() for s in states])
    exc = np.array([excitation_expectation(s) for s in states])
    dn = float(np.max(np.abs(norms - norm0)))
    ds = float(np.max(np.abs(sectors - sectors[0])))
    de = float(np.max(np.abs(exc - exc[0])))
    return [
        ("norm drift <= 1e-10", dn <= 1e-10, f"{dn:.1e}"),
        ("sector-norm drift <= 1e-10", ds <= 1e-10, f"{ds:.1e}"),
        ("excitation drift <= 1e-9", de <= 1e-9, f"{de:.1e}"),
    ]


def test_05_unitarity_conservation():
    checks = []
    for l1, l2 in [(FIXED, FIXED)] + FIGURE_SCENARIOS:
        _, states, _ = scenario(l1, l2)
        checks += [(f"({l1},{l2}) {lab}", ok, det)
                   for lab, ok, det in _conservation_checks(states, 1.0)]
    bad = [c for c in checks if not c[1]]
    worst = max(float(c[2]) for c in checks if "norm drift" in c[0] and "sector" not in c[0])
    report(5, "unitarity and conservation on [0,100]", bad or [
        ("9 scenarios", True, f"max norm drift {worst:.1e}, all sector/excitation drifts in tolerance"),
    ])


def test_06_oracle_equivalence():
    mp, _, _ = scenario(FIXED, FIXED)
    s0 = initial_state(mp)
    p = plan(mp)
    checks = []
    for tau in (1.0, 10.0, 20.0, 50.0):
        d = float(np.max(np.abs(evolve_exact(s0, p, tau).amplitudes
                                - dense_oracle(s0, mp, tau).amplitudes)))
        checks.append((f"exact vs dense tau={tau:g}", d <= 1e-8, f"{d:.1e}"))
    exact50 = evolve_exact(s0, p, 50.0).amplitudes
    d = float(np.max(np.abs(evolve_rk4(s0, mp, 50.0, 1e-3).amplitudes - exact50)))
    checks.append(("rk4(dt=1e-3) vs exact tau=50", d <= 1e-6, f"{d:.1e}"))
    exact10 = evolve_exact(s0, p, 10.0).amplitudes
    errs = [float(np.max(np.abs(evolve_rk4(s0, mp, 10.0, dt).amplitudes - exact10)))
            for dt in (0.1, 0.05)]
    order = math.log2(errs[0] / errs[1])
    checks.append(("rk4 order (tau=10, dt 0.1 -> 0.05)", 3.7 <= order <= 4.3, f"{order:.3f}"))
    report(6, "solver cross-validation", checks)


def test_07_partial_trace_consistency():
    mp, _, _ = scenario(FIXED, FIXED)
    s0, p = initial_state(mp), plan(mp)
    times = np.sort(np.random.default_rng(7).uniform(0, 100, 20))
    d_iso = d_pair = d_sum = 0.0
    for tau in times:
        s = evolve_exact(s0, p, float(tau))
        iso, rho = isospin_density(s), pair_density(s).matrix
        ref_iso, ref_pair = isospin_density_explicit(s), pair_density_explicit(s)
        d_iso = max(d_iso, abs(iso.rho_ee - ref_iso[1, 1]), abs(iso.rho_gg - ref_iso[0, 0]),
                    abs(iso.rho_eg - ref_iso[1, 0]))
        d_pair = max(d_pair, float(np.max(np.abs(rho - ref_pair))))
        d_sum = max(d_sum, abs(rho[0, 0] + rho[1, 1] - iso.rho_gg),
                    abs(rho[2, 2] + rho[3, 3] - iso.rho_ee))
    report(7, "reduced densities vs explicit partial trace (20 random times)", [
        ("isospin <= 1e-9", d_iso <= 1e-9, f"{d_iso:.1e}"),
        ("pair <= 1e-9", d_pair <= 1e-9, f"{d_pair:.1e}"),
        ("diagonal sums <= 1e-12", d_sum <= 1e-12, f"{d_sum:.1e}"),
    ])


def test_08_decoupling_limits():
    _, _, recs = scenario(FIXED, 0.0)
    s_max = float(np.max(np.abs(col(recs, "S"))))
    w_dev = float(np.max(np.abs(col(recs, "W") + 1)))
    _, states, _ = scenario(0.0, FIXED)
    dirac_up = max(max(abs(pair_density(s).matrix[1, 1]), abs(pair_density(s).matrix[3, 3]))
                   for s in states)
    report(8, "decoupling limits", [
        ("lambda2=0: |S| <= 1e-10", s_max <= 1e-10, f"{s_max:.1e}"),
        ("lambda2=0: |W+1| <= 1e-10", w_dev <= 1e-10, f"{w_dev:.1e}"),
        ("lambda1=0: rho22, rho44 <= 1e-10", dirac_up <= 1e-10, f"{dirac_up:.1e}"),
    ])


def test_09_concurrence_identity():
    worst = 0.0
    count = 0
    for l1, l2 in FIGURE_SCENARIOS:
        _, states, recs = scenario(l1, l2)
        for s, c in zip(states, col(recs, "C")):
            rho = pair_density(s).matrix
            rho = rho / np.trace(rho).real
            rhs = 2 * (np.trace(rho).real ** 2 - np.trace(rho @ rho).real)
            worst = max(worst, abs(c * c - rhs))
            count += 1
    report(9, "C^2 = 2((Tr rho)^2 - Tr rho^2)", [
        (f"{count} densities", worst <= 1e-10, f"max deviation {worst:.1e}"),
    ])


# Collapse/revival surrogate: thresholds from the acceptance list.
COLLAPSE_WIDTH = 5.0
COLLAPSE_SPAN = (5.0, 60.0)
COLLAPSE_LEVEL = 0.25
REVIVAL_LEVEL = 0.5


def test_10_collapse_revival():
    _, _, recs = scenario(0.3, 0.2)
    w = np.abs(col(recs, "W"))
    step = TAUS[1] - TAUS[0]
    width = int(round(COLLAPSE_WIDTH / step)) + 1
    collapse_end = None
    for i in range(TAUS.size - width + 1):
        lo, hi = TAUS[i], TAUS[i + width - 1]
        if lo < COLLAPSE_SPAN[0] or hi > COLLAPSE_SPAN[1] + 1e-9:
            continue
        if w[i:i + width].max() < COLLAPSE_LEVEL:
            collapse_end = i + width - 1
            break
    checks = [("collapse window", collapse_end is not None,
               f"max|W| < {COLLAPSE_LEVEL} on [{TAUS[collapse_end - width + 1]:.2f}, "
               f"{TAUS[collapse_end]:.2f}]" if collapse_end is not None else "none found")]
    if collapse_end is not None:
        after = w[collapse_end + 1:]
        peak = float(after.max())
        at = float(TAUS[collapse_end + 1 + int(np.argmax(after))])
        checks.append(("revival after collapse", peak > REVIVAL_LEVEL,
                       f"max|W| {peak:.4f} at tau={at:.2f} (need > {REVIVAL_LEVEL})"))
    report(10, "collapse and revival of W (lambda1=0.3, lambda2=0.2)", checks)


def test_11_paper_ansatz():
    expected = 1.0 - 10.0 * math.exp(-9.0)
    checks = []
    for l1, l2 in [(FIXED, FIXED), (0.3, 0.2)]:
        _, states, recs = scenario(l1, l2, "paper")
        n0 = total_norm(states[0])
        checks.append((f"({l1},{l2}) norm(0)", abs(n0 - expected) <= 1e-12, f"{n0:.15f}"))
        checks += [(f"({l1},{l2}) {lab}", ok, det) for lab, ok, det in _bounds_checks(recs)]
        checks += [(f"({l1},{l2}) {lab}", ok, det)
                   for lab, ok, det in _conservation_checks(states, expected)]
    bad = [c for c in checks if not c[1]]
    report(11, "PaperAnsatz norm deficit, bounds and conservation",
           bad or [c for c in checks if "norm(0)" in c[0]])
