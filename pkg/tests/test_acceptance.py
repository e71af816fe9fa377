"""Acceptance battery: the floors and invariants the package certifies,
each at its stated tolerance, one printed PASS/FAIL line per check.

The envelope-grid check is special: its advertised 0.476 floor equals the
x = 0 endpoint of the ratio P_15(x) - x/3, but the grid minimum is
~0.46785 near x = 0.22, so the advertised floor is unattainable on the
full range.  That check is kept faithful and marked strict-xfail; the
companion check certifies the attainable 0.467 floor.
"""

import math

import numpy as np
import pytest

from matchgap import (GENERAL_GRAPH_FLOOR, KernelConfig,
                      UNWEIGHTED_BIPARTITE_CERTIFIED, UNWEIGHTED_BIPARTITE_TARGET,
                      WEIGHTED_BIPARTITE_FLOOR, audit_masses, binomial_max1_kernel,
                      check_gain_ratios, check_local_derivative_bound,
                      check_unweighted_envelope, exact_ratio,
                      max_weight_matching_bipartite, mc_ratio, per_edge_certificate,
                      per_edge_masses_exact, sample, unweighted_scheme,
                      verify_equal_split, verify_kernel_minimizer, weighted_scheme,
                      weighted_kernel_constant)
from matchgap.gallery import (gen_equal_split_star, gen_karp_sipser,
                              gen_pendant_star, gen_random_point)
from matchgap.rng import uniforms

from conftest import brute_matching_value

TOL = 1e-9


def report(name, passed, detail):
    print(f"ACCEPTANCE {name}: {'PASS' if passed else 'FAIL'} ({detail})")


def random_instances(kind, count, max_edges, max_n, seed0, weighted):
    """Deterministic stream of degree-feasible instances with bounded size."""
    out = []
    seed = seed0
    while len(out) < count:
        n = 2 + seed % (max_n - 1)
        inst = gen_random_point(n, 0.55, seed, kind, weighted=weighted)
        seed += 1
        if 0 < inst.num_edges <= max_edges and float(np.dot(inst.x, inst.w)) > 0:
            out.append(inst)
    return out


def test_unweighted_bipartite_ratio_floor():
    # >= 500 random unweighted bipartite instances plus the double stars:
    # exact ratio at least 0.476 - 1e-9.
    floor = UNWEIGHTED_BIPARTITE_TARGET
    worst = math.inf
    insts = random_instances("bipartite", 500, 10, 4, 1_000, weighted=False)
    for n in (2, 3, 4):
        for k in range(1, 21):
            insts.append(gen_equal_split_star(n, k * 0.05))
    for inst in insts:
        worst = min(worst, exact_ratio(inst).value)
    ok = worst >= floor - TOL
    report("unweighted-bipartite-ratio-floor", ok,
           f"worst ratio {worst:.6f} over {len(insts)} instances, floor {floor}")
    assert ok


def test_weighted_bipartite_certificate_floor():
    # >= 500 random weighted bipartite instances plus pendant stars: every
    # edge's weighted-scheme certificate at least 1 - 3/(2e) - 1e-9, in
    # both the realized-mass and kernel-bound forms.
    floor = WEIGHTED_BIPARTITE_FLOOR
    insts = random_instances("bipartite", 500, 10, 4, 2_000, weighted=True)
    for n in (2, 3, 4):
        for eps in (0.05, 0.25, 0.5, 0.9):
            insts.append(gen_pendant_star(n, eps))
    worst_mass = worst_kernel = math.inf
    edges_checked = 0
    for inst in insts:
        masses = per_edge_masses_exact(inst, "weighted")
        for j, e in enumerate(inst.edges):
            if e.x <= 0 or e.w <= 0:
                continue
            worst_mass = min(worst_mass, masses[j] / (e.w * e.x))
            worst_kernel = min(worst_kernel, per_edge_certificate(
                inst, j, "exact", "weighted", "kernel"))
            edges_checked += 1
    ok = worst_mass >= floor - TOL and worst_kernel >= floor - TOL
    report("weighted-bipartite-certificate-floor", ok,
           f"worst mass {worst_mass:.6f}, worst kernel {worst_kernel:.6f}, "
           f"{edges_checked} edges, floor {floor:.6f}")
    assert ok


def test_general_ratio_floor():
    # >= 300 random weighted general degree-feasible instances, n <= 6:
    # exact ratio at least (e^2 - 1)/(2 e^2) - 1e-9.
    floor = GENERAL_GRAPH_FLOOR
    worst = math.inf
    insts = random_instances("general", 300, 15, 6, 3_000, weighted=True)
    for inst in insts:
        worst = min(worst, exact_ratio(inst).value)
    ok = worst >= floor - TOL
    report("general-ratio-floor", ok,
           f"worst ratio {worst:.6f} over {len(insts)} instances, floor {floor:.6f}")
    assert ok


@pytest.mark.xfail(strict=True, reason=(
    "unattainable as stated: the envelope ratio P_15(x) - x/3 reaches its "
    "grid minimum ~0.46785 near x = 0.22, below the advertised 0.476 floor "
    "(which is only the x = 0 endpoint value 0.47622); see the companion "
    "certified-floor check"))
def test_envelope_grid_minimum_advertised_floor():
    rep = check_unweighted_envelope(KernelConfig(grid_step=1e-3),
                                    floor=UNWEIGHTED_BIPARTITE_TARGET,
                                    tolerance=TOL)
    report("envelope-grid-advertised-floor", rep.passed,
           f"min {rep.min_value:.6f} at x={rep.argmin}, floor 0.476")
    assert rep.min_value >= UNWEIGHTED_BIPARTITE_TARGET - TOL


def test_envelope_grid_minimum_certified_floor():
    rep = check_unweighted_envelope(KernelConfig(grid_step=1e-3),
                                    floor=UNWEIGHTED_BIPARTITE_CERTIFIED,
                                    tolerance=TOL)
    endpoint_ok = rep.details["endpoint_value"] >= UNWEIGHTED_BIPARTITE_TARGET - TOL
    ok = rep.passed and endpoint_ok
    report("envelope-grid-certified-floor", ok,
           f"min {rep.min_value:.6f} at x={rep.argmin}, certified floor 0.467, "
           f"endpoint {rep.details['endpoint_value']:.6f} >= 0.476")
    assert ok


def test_weighted_kernel_constant_and_pendant_star():
    # closed form vs series to 1e-12, and the pendant-star Monte Carlo
    # kernel certificate (n=100, eps=0.01, 1e5 samples) within 0.01.
    const = weighted_kernel_constant()
    agree = abs(const.closed_form - const.series_value) <= 1e-12
    inst = gen_pendant_star(100, 0.01)
    cert = per_edge_certificate(inst, 0, mode="mc", scheme="weighted",
                                bound="kernel", samples=100_000, seed=2024)
    close = abs(cert - const.closed_form) <= 0.01
    ok = agree and close
    report("weighted-kernel-constant", ok,
           f"closed {const.closed_form:.12f}, series diff "
           f"{abs(const.closed_form - const.series_value):.2e}, "
           f"pendant MC {cert:.5f} (|diff| {abs(cert - const.closed_form):.5f})")
    assert ok


def test_pair_kernel_grids_and_gain_sweep():
    # grids m <= 4 at step 0.05 plus 1e4 random mean-1 vectors (m <= 8),
    # all at tolerance 1e-9.
    worst_margin = math.inf
    for m in (1, 2, 3, 4):
        rep = verify_kernel_minimizer(m, 0.05, TOL)
        assert rep.passed, f"m={m}: min {rep.min_value} < ref {rep.details['reference']}"
        worst_margin = min(worst_margin, rep.details["margin"])
        # finite-m references stay above the asymptotic floor
        assert binomial_max1_kernel(m) >= WEIGHTED_BIPARTITE_FLOOR - 5e-3

    worst_gain = math.inf
    for k in range(10_000):
        m = 2 + k % 7
        u = uniforms(6_000, k, m)
        p = (u / u.sum()).tolist()
        rep = check_gain_ratios(p, tolerance=TOL)
        assert rep.passed, f"gain violation at trial {k}: {p}"
        worst_gain = min(worst_gain, rep.min_value)
    report("pair-kernel-grids-and-gain", True,
           f"worst grid margin {worst_margin:.2e}, worst gain margin {worst_gain:.2e}")


def test_equal_split_grid():
    # m <= 2, x0 in {0.1,...,1.0}, step 0.05, c = 1/6, tolerance 1e-9.
    worst = math.inf
    for x0 in [k / 10 for k in range(1, 11)]:
        for m in (1, 2):
            rep = verify_equal_split(x0, m, 0.05, c=1.0 / 6.0, tolerance=TOL)
            assert rep.passed, f"x0={x0} m={m}: margin {rep.min_value}"
            worst = min(worst, rep.min_value)
    report("equal-split-grid", True, f"worst bucket margin {worst:.2e}")


def test_derivative_bound_sweep():
    # 500 random (instance, subgraph) pairs, n <= 6, tolerance 1e-9.
    count = 0
    seed = 4_000
    worst = math.inf
    while count < 500:
        n = 2 + seed % 5
        inst = gen_random_point(n, 0.55, seed, "general")
        seed += 1
        if inst.num_edges == 0:
            continue
        g = sample(inst, 99, count)
        rep = check_local_derivative_bound(g, TOL)
        assert rep.passed, f"violation on pair {count}: margin {rep.min_value}"
        worst = min(worst, rep.min_value)
        count += 1
    report("derivative-bound-sweep", True, f"500 pairs, worst margin {worst:.4f}")


def test_karp_sipser_sweep():
    # polytope-feasible sweep c = k/8 at n = 200 with 2000 samples each:
    # the smallest ratio sits in [0.50, 0.58] (the ~0.54 regime at c = 1).
    ratios = {}
    for k in range(1, 9):
        c = k / 8.0
        inst = gen_karp_sipser(200, c, "bipartite")
        ratios[c] = mc_ratio(inst, 2_000, seed=31).value
    lo = min(ratios.values())
    ok = 0.50 <= lo <= 0.58
    report("karp-sipser-sweep", ok,
           f"min ratio {lo:.4f} at c={min(ratios, key=ratios.get)}, "
           f"curve {[round(ratios[k / 8.0], 3) for k in range(1, 9)]}")
    assert ok


def test_scheme_audit_sweep():
    # conservation and vertex nonnegativity over 1e4 sampled graphs.
    checked = 0
    seed = 5_000
    while checked < 10_000:
        unweighted = seed % 2 == 0
        inst = gen_random_point(2 + seed % 4, 0.6, seed, "bipartite",
                                weighted=not unweighted)
        seed += 1
        if inst.num_edges == 0:
            continue
        for i in range(25):
            g = sample(inst, seed, i)
            _, nu, cover = max_weight_matching_bipartite(g)
            t = (unweighted_scheme(g, cover) if unweighted
                 else weighted_scheme(g, cover))
            rep = audit_masses(t, cover, nu, tolerance=TOL)
            assert rep.ok, f"audit violation: {rep.violations}"
            checked += 1
    report("scheme-audit-sweep", True, f"{checked} sampled graphs audited")


def test_cover_duality_sweep():
    # 1e3 random weighted bipartite graphs (n <= 8) against the
    # brute-force matching oracle: ||y||_1 = nu within 1e-9 and the cover
    # is feasible on realized edges.
    checked = 0
    seed = 7_000
    while checked < 1_000:
        n = 2 + seed % 7
        inst = gen_random_point(n, 0.35, seed, "bipartite")
        seed += 1
        if inst.num_edges == 0:
            continue
        g = sample(inst, 13, checked)
        _, value, cover = max_weight_matching_bipartite(g)
        oracle = brute_matching_value(inst, g.realized)
        assert abs(value - oracle) <= TOL, (value, oracle)
        assert abs(cover.norm - oracle) <= TOL, (cover.norm, oracle)
        for j in g.edge_indices:
            e = inst.edges[j]
            assert cover.y[e.u] + cover.y[inst.n + e.v] >= e.w - TOL
        checked += 1
    report("cover-duality-sweep", True, f"{checked} graphs, duality gap <= 1e-9")
