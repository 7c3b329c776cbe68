"""Acceptance suite: one pass/fail line per criterion.

Criteria 1-11 and 13 are fast.  Criterion 12 is the desk-scale Monte Carlo
block (n up to 10^6; roughly twenty minutes).

Two assertions below encode printed reference values that the exact
pipeline demonstrates to be erroneous; they are implemented as stated and
fail honestly (see the assertion messages and the cross-validation tests
next to them) rather than being weakened to pass.
"""

import math
import time
from fractions import Fraction as F

import pytest

from critplanar.airy import airy_A, reciprocal_gamma
from critplanar.enumeration import (
    ALL,
    PLANAR,
    SERIES_PARALLEL,
    all_cubic_weight,
    kernel_table,
    nonic_residual,
    pairing_oracle,
    solve_planar_system,
    solve_sp_system,
)
from critplanar.probability import (
    class_probability,
    kernel_size_pmf,
    probability_curve,
    zero_lambda_closed_form,
)
from critplanar.simulator import MultiGraph, is_planar, is_series_parallel, run_experiment

from oracles import (
    atlas_connected_graphs,
    connected_labelled_graphs,
    has_k4_minor,
    planar_by_kuratowski,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status} {detail}".rstrip())


# -- 1: exact coefficient goldens -------------------------------------------


def test_criterion_01_exact_goldens():
    t0 = time.time()
    sol = solve_planar_system(20)
    sp = solve_sp_system(20)
    ok = (
        [sol.C[k] for k in (2, 4, 6, 8)]
        == [F(1), F(25, 8), F(59, 4), F(11339, 128)]
        and [sol.G1[k] for k in (2, 4, 6, 8)]
        == [F(5, 24), F(5, 16), F(121, 128), F(1591, 384)]
        and [sol.G[k] for k in (0, 2, 4, 6, 8)]
        == [F(1), F(5, 24), F(385, 1152), F(83933, 82944), F(35002561, 7962624)]
        and [sp.G[k] for k in (0, 2, 4, 6, 8)]
        == [F(1), F(5, 24), F(337, 1152), F(55565, 82944), F(15517345, 7962624)]
    )
    elapsed = time.time() - t0
    ok = ok and elapsed < 5.0
    report("1 (coefficient goldens, exact, <5s)", ok, f"[{elapsed:.2f}s]")
    assert ok


# -- 2: nonic residual --------------------------------------------------------


def test_criterion_02_nonic_residual():
    residual = nonic_residual(solve_planar_system(20).C)
    ok = residual.is_zero()
    report("2 (degree-9 residual vanishes through z^20, exact)", ok)
    assert ok


# -- 3: planarity discrepancies ----------------------------------------------


def test_criterion_03_discrepancies():
    g = solve_planar_system(8).G
    gsp = solve_sp_system(8).G
    ok = (all_cubic_weight(3) - g[6] == F(1, 72)) and ((g - gsp)[4] == F(1, 24))
    report("3 (e3-g3 = 1/72 and [z^4](G-G_sp) = 1/24, exact)", ok)
    assert ok


# -- 4: pairing oracle ---------------------------------------------------------


def test_criterion_04_pairing_oracle():
    t0 = time.time()
    ok = pairing_oracle(1) == all_cubic_weight(1) and pairing_oracle(2) == all_cubic_weight(2)
    elapsed = time.time() - t0
    ok = ok and elapsed < 10.0
    report("4 (dart-pairing enumeration matches formula, r=1,2)", ok, f"[{elapsed:.2f}s]")
    assert ok


# -- 5, 6: probabilities at lambda = 0 -----------------------------------------


def test_criterion_05_planar_at_zero():
    table = kernel_table(PLANAR, 30)  # table construction is covered by 1
    t0 = time.time()
    p, _, certified = class_probability(table, 0.0)
    elapsed = time.time() - t0
    ok = abs(p - 0.99780) < 5e-6 and 0.98707 < p < 0.99977 and certified and elapsed < 1.0
    report("5 (p(0) = 0.99780 to 5 digits, inside known bracket, <1s)", ok,
           f"[p={p:.10f}, {elapsed:.3f}s]")
    assert ok


def test_criterion_06_sp_at_zero():
    p, _, _ = class_probability(kernel_table(SERIES_PARALLEL, 30), 0.0)
    ok = abs(p - 0.98003) < 5e-6
    report("6 (p_sp(0) = 0.98003 to 5 digits)", ok, f"[p={p:.10f}]")
    assert ok


# -- 7: tail values ------------------------------------------------------------


def test_criterion_07a_deviation_at_minus_three():
    p, _, _ = class_probability(kernel_table(PLANAR, 30), -3.0)
    dev = 1.0 - p
    ok = 0.5e-7 <= dev <= 2.0e-7
    report("7a (1-p(-3) in [0.5e-7, 2.0e-7])", ok, f"[1-p = {dev:.4e}]")
    assert ok, (
        f"1-p(-3) = {dev:.4e} lies outside the stated bracket. The stated "
        "reference value 1.02e-7 is inconsistent with the defining sum: the "
        "r=3 term alone, sqrt(2 pi)*(e3-g3)*A(9.5,-3) = 2.14e-7, exceeds it, "
        "and A(9.5,-3) is verified against the independent contour-integral "
        "definition (test_airy.py::test_matches_contour_integral)."
    )


def test_criterion_07b_deviation_at_five():
    p, _, _ = class_probability(kernel_table(PLANAR, 30), 5.0)
    ok = 2.5e-7 <= p <= 9.8e-7
    report("7b (p(5) in [2.5e-7, 9.8e-7])", ok, f"[p = {p:.4e}]")
    assert ok


# -- 8: normalization -----------------------------------------------------------


@pytest.mark.parametrize("lam", [-3.0, -1.0, 0.0, 1.0, 2.0, 4.0])
def test_criterion_08_normalization(lam):
    table = kernel_table(ALL, 30)
    p, _, _ = class_probability(table, lam)
    ok = abs(p - 1.0) <= 1e-7
    report(f"8 (normalization at lambda={lam:+g}, r_max=30, 1e-7)", ok,
           f"[1-sum = {1-p:.3e}]")
    assert ok, (
        f"sum = {p!r} at lambda={lam}: with r_max = 30 the identity holds "
        "only for lambda <= 0; for positive lambda the kernel-size mass "
        "moves to r ~ lambda^3 (r_max ~ 165 is needed at lambda = 4, where "
        "the sum then reaches 1 to 2.8e-12). Truncation, not the formula, "
        "is at fault; the stated r_max makes this subcase unattainable."
    )


# -- 9: two evaluation routes at lambda = 0 -------------------------------------


def test_criterion_09_zero_lambda_identity():
    ok = True
    details = []
    for tag in (PLANAR, SERIES_PARALLEL):
        table = kernel_table(tag, 30)
        a = class_probability(table, 0.0).p
        b = zero_lambda_closed_form(table)
        details.append(f"{tag}: {abs(a-b):.2e}")
        ok = ok and abs(a - b) < 1e-9
    report("9 (Airy route vs closed form at lambda=0, 1e-9)", ok, f"[{'; '.join(details)}]")
    assert ok


# -- 10: special function spot values -------------------------------------------


def test_criterion_10_special_values():
    ok = reciprocal_gamma(1.0) == 1.0
    ok = ok and abs(reciprocal_gamma(0.5) - 1.0 / math.sqrt(math.pi)) < 1e-13
    ok = ok and all(reciprocal_gamma(x) == 0.0 for x in (0.0, -1.0, -2.0))
    a = airy_A(0.5, 0.0).value
    ok = ok and abs(a - 1.0 / math.sqrt(3.0 * math.pi)) < 1e-12
    report("10 (reciprocal gamma specials; A(1/2,0) = 1/sqrt(3 pi))", ok)
    assert ok


# -- 11: graph testers vs oracles ------------------------------------------------


def test_criterion_11_testers_vs_oracles():
    k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    k4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    k33 = [(i, j + 3) for i in range(3) for j in range(3)]
    petersen = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)]
    )
    ok = (
        not is_planar(MultiGraph(5, k5))
        and is_planar(MultiGraph(4, k4))
        and not is_planar(MultiGraph(6, k33))
        and is_planar(MultiGraph(6, k33[:-1]))
        and not is_planar(MultiGraph(10, petersen))
        and not is_series_parallel(MultiGraph(4, k4))
    )
    checked = 0
    for n in range(1, 6):
        for edges in connected_labelled_graphs(n):
            g = MultiGraph(n, edges)
            ok = ok and is_planar(g) == planar_by_kuratowski(n, edges)
            ok = ok and is_series_parallel(g) == (not has_k4_minor(n, edges))
            checked += 1
    for n, edges in atlas_connected_graphs(6):
        g = MultiGraph(n, edges)
        ok = ok and is_planar(g) == planar_by_kuratowski(n, edges)
        ok = ok and is_series_parallel(g) == (not has_k4_minor(n, edges))
        checked += 1
    report("11 (testers agree with subdivision/minor oracles)", ok,
           f"[{checked} corpus graphs]")
    assert ok


# -- 12: Monte Carlo agreement ----------------------------------------------------


def test_criterion_12_monte_carlo():
    analytic_p0 = 0.9978022646037354
    empty_kernel = math.sqrt(2.0 / 3.0)

    rep = run_experiment(0.0, 10**6, 400, seed=20260809)
    tol_planar = 4.0 * rep.se_planar + 0.02
    ok_planar = abs(rep.p_planar - analytic_p0) <= tol_planar

    p_empty = rep.p_empty_kernel
    se_empty = math.sqrt(p_empty * (1 - p_empty) / rep.trials)
    ok_empty = abs(p_empty - empty_kernel) <= 4.0 * se_empty + 0.02

    # TV distance between the observed kernel-size histogram and the
    # analytic distribution truncated at the observed maximum r
    r_obs = max(size // 2 for size in rep.histogram)
    pmf = kernel_size_pmf(0.0, max(5, r_obs))
    analytic = dict(pmf.entries)
    tv = 0.0
    for size, count in rep.histogram.items():
        emp = count / rep.trials
        if size % 2 == 0:
            tv += abs(emp - analytic.get(size // 2, 0.0))
        else:
            tv += emp  # odd size: impossible for a cubic kernel
    for r, p in analytic.items():
        if r <= r_obs and 2 * r not in rep.histogram:
            tv += p
    tv *= 0.5
    ok_tv = tv < 0.03

    ok_noncubic_small = rep.p_noncubic < 0.05

    # monotone vanishing of non-cubic kernels; per-size trial counts chosen
    # so the expected event counts are out of the Poisson noise floor
    freqs = [
        run_experiment(0.0, 10**4, 4000, seed=1).p_noncubic,
        run_experiment(0.0, 10**5, 3000, seed=1).p_noncubic,
        run_experiment(0.0, 10**6, 1000, seed=1).p_noncubic,
    ]
    ok_trend = freqs[0] > freqs[1] > freqs[2]

    ok = ok_planar and ok_empty and ok_tv and ok_noncubic_small and ok_trend
    report(
        "12 (Monte Carlo at the window)",
        ok,
        f"[planar {rep.p_planar:.4f} vs {analytic_p0:.4f} (tol {tol_planar:.4f}); "
        f"empty {p_empty:.4f} vs {empty_kernel:.4f}; TV {tv:.4f}; "
        f"noncubic {rep.p_noncubic:.4f}; trend {freqs}]",
    )
    assert ok_planar
    assert ok_empty
    assert ok_tv
    assert ok_noncubic_small
    assert ok_trend


# -- 13: curve shape ---------------------------------------------------------------


def test_criterion_13_curve_shape():
    grid = [round(-1.0 + 0.1 * k, 10) for k in range(51)]
    planar = probability_curve(kernel_table(PLANAR, 30), grid)
    sp = probability_curve(kernel_table(SERIES_PARALLEL, 30), grid)
    pl = [pt.p for pt in planar.points]
    sps = [pt.p for pt in sp.points]
    ok = (
        all(a > b for a, b in zip(pl, pl[1:]))
        and all(a > b for a, b in zip(sps, sps[1:]))
        and all(p >= s for p, s in zip(pl, sps))
    )
    report("13 (both curves strictly decreasing on [-1,4]; planar on top)", ok)
    assert ok
