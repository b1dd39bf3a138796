import itertools
import math

import numpy as np
import pytest
from scipy.stats import binom

from uptail import catalog
from uptail.digraph import Digraph
from uptail.graphon import ip_array
from uptail.simulate import (
    GENERATOR_NAME,
    CapExceeded,
    binomial_tail_c2,
    discrete_phi_upper,
    hom_count,
    hom_density,
    log_binomial_tail,
    mc_upper_tail,
    penalty_objective,
    sample_digraph,
    single_edge_tail,
    wilson_interval,
)

# exact/formula ratios for C2 at p = 0.1, delta = 1, pinned from scipy.stats.binom.logsf
# with the threshold ceil((1+delta) p^2 n^2 / 2) on the number of mutual pairs
C2_RATIOS = {100: 1.1720454526, 200: 1.0681506143, 400: 1.0323846818}


def scipy_tail(m, q, k):
    return -binom.logsf(k - 1, m, q)


# -- sampling -------------------------------------------------------------------------

def test_sampler_extremes_and_determinism():
    assert not sample_digraph(7, 0.0, 1).any()
    full = sample_digraph(7, 1.0, 1)
    assert full.sum() == 42 and not np.diag(full).any()
    assert np.array_equal(sample_digraph(20, 0.4, 9), sample_digraph(20, 0.4, 9))
    assert not np.array_equal(sample_digraph(20, 0.4, 9), sample_digraph(20, 0.4, 10))


def test_sampler_edge_count_concentrates():
    n, p = 100, 0.3
    m = n * (n - 1)
    count = sample_digraph(n, p, 2024).sum()
    assert abs(count - p * m) <= 4 * math.sqrt(m * p * (1 - p))


def test_generator_is_philox():
    assert GENERATOR_NAME == "numpy.random.Philox"


# -- homomorphism counts ---------------------------------------------------------------

def hom_brute(H, A):
    n = A.shape[0]
    return sum(np.prod([A[f[u], f[v]] for u, v in H.edges])
               for f in itertools.product(range(n), repeat=H.n))


def test_hom_count_examples():
    A = sample_digraph(9, 0.4, 5)
    assert hom_count(catalog.single_edge(), A) == A.sum()
    mutual = int(np.triu(A * A.T, 1).sum())
    assert hom_count(catalog.two_cycle(), A) == 2 * mutual
    n = 6
    K = 1.0 - np.eye(n)
    assert hom_count(catalog.triangle_transitive(), K) == n * (n - 1) * (n - 2)


def test_hom_count_matches_brute_force():
    gen = np.random.default_rng(41)
    for H in (catalog.triangle_cyclic(), catalog.mixed_star(3), catalog.directed_cycle(4)):
        Q = gen.uniform(0, 1, (5, 5))
        np.fill_diagonal(Q, 0)
        assert hom_count(H, Q) == pytest.approx(hom_brute(H, Q), rel=1e-12)


def test_disjoint_edges_factor():
    A = sample_digraph(8, 0.5, 6)
    two_edges = Digraph(4, [(0, 1), (2, 3)])
    assert hom_count(two_edges, A) == A.sum() ** 2
    # an isolated vertex multiplies by n
    assert hom_count(Digraph(3, [(0, 1)]), A) == 8 * A.sum()


def test_hom_count_batches():
    A = sample_digraph(6, 0.5, 3, size=4)
    batch = hom_count(catalog.triangle_transitive(), A)
    assert batch.shape == (4,)
    assert np.allclose(batch, [hom_count(catalog.triangle_transitive(), a) for a in A])


def test_hom_cap():
    with pytest.raises(CapExceeded):
        hom_count(catalog.gap_example(3), np.zeros((20, 20)))


# -- binomial tails ---------------------------------------------------------------------

def test_log_binomial_tail_matches_scipy():
    for m, q, k in [(50, 0.1, 9), (4950, 0.01, 99), (200, 0.5, 100), (30, 0.3, 30), (10, 0.2, 0)]:
        ours = -log_binomial_tail(m, q, k)
        assert ours == pytest.approx(scipy_tail(m, q, k), rel=1e-10, abs=1e-12)


def test_c2_ratios_pinned():
    prev = math.inf
    for n, ratio in C2_RATIOS.items():
        m = n * (n - 1) // 2
        k = math.ceil(2 * 0.01 * n * n / 2 - 1e-9)
        exact, formula = binomial_tail_c2(n, 0.1, 1.0)
        assert exact == pytest.approx(scipy_tail(m, 0.01, k), rel=1e-10)
        assert exact / formula == pytest.approx(ratio, abs=1e-9)
        assert 1.0 < exact / formula < prev
        prev = exact / formula


def test_c2_delta_zero():
    exact, formula = binomial_tail_c2(200, 0.1, 0.0)
    assert formula == 0.0
    assert exact == pytest.approx(math.log(2), abs=0.1)


def test_c2_small_p():
    # the formula vanishes with p, but the integer threshold ceil(n^2 p^2) stays at 1,
    # so the exact value is -log P(Bin >= 1) and grows like log(1 / (m p^2))
    n, p = 50, 1e-3
    m, q = n * (n - 1) // 2, p * p
    exact, formula = binomial_tail_c2(n, p, 1.0)
    assert formula < 1e-3
    assert exact == pytest.approx(-math.log(-math.expm1(m * math.log1p(-q))), rel=1e-10)


def test_c2_exact_inside_monte_carlo_interval():
    # the exact path and the sampler must describe the same event
    n, p, delta = 30, 0.3, 0.5
    est = mc_upper_tail(catalog.two_cycle(), n, p, delta, 20000, 7)
    exact, _ = binomial_tail_c2(n, p, delta)
    lo, hi = est.interval
    assert lo <= exact <= hi
    assert exact == pytest.approx(scipy_tail(n * (n - 1) // 2, p * p, 61), rel=1e-10)


def test_single_edge_tail_matches_scipy():
    n, p, delta = 12, 0.3, 0.25
    m = n * (n - 1)
    k = math.ceil((1 + delta) * p * n * n - 1e-9)
    assert single_edge_tail(n, p, delta) == pytest.approx(scipy_tail(m, p, k), rel=1e-10)


# -- Monte Carlo ---------------------------------------------------------------------------

def test_wilson_interval():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0 and 0 < hi < 0.05
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
    with pytest.raises(ValueError):
        wilson_interval(1, 0)


def test_mc_threshold_zero():
    est = mc_upper_tail(catalog.triangle_transitive(), 6, 0.3, -1.0, 50, 1)
    assert est.estimate == 0.0 and est.hits == 50


def test_mc_zero_samples():
    with pytest.raises(ValueError):
        mc_upper_tail(catalog.single_edge(), 5, 0.3, 0.1, 0, 1)


def test_mc_zero_hits_is_one_sided():
    est = mc_upper_tail(catalog.two_cycle(), 30, 0.1, 5.0, 100, 2)
    assert est.one_sided and est.hits == 0 and est.estimate > 0


def test_mc_single_edge_matches_exact():
    n, p, delta = 10, 0.3, 0.3
    est = mc_upper_tail(catalog.single_edge(), n, p, delta, 20000, 3)
    exact = single_edge_tail(n, p, delta)
    lo, hi = est.interval
    assert lo <= exact <= hi
    assert est.seed == 3 and est.generator == GENERATOR_NAME


def test_mc_is_reproducible():
    a = mc_upper_tail(catalog.triangle_transitive(), 8, 0.4, 0.5, 3000, 11)
    b = mc_upper_tail(catalog.triangle_transitive(), 8, 0.4, 0.5, 3000, 11)
    assert a == b


def test_mc_triangle_repeat_seed_stability():
    # two independent seeds agree within their combined widths
    H = catalog.triangle_transitive()
    a = mc_upper_tail(H, 25, 0.3, 0.5, 20000, 101)
    b = mc_upper_tail(H, 25, 0.3, 0.5, 20000, 202)
    assert not a.one_sided and not b.one_sided
    assert abs(a.estimate - b.estimate) <= a.half_width + b.half_width


# -- discrete upper bound ----------------------------------------------------------------------

def finite_difference_check(H, n, p, delta, mu, seed, points=20):
    gen = np.random.default_rng(seed)
    mask = ~np.eye(n, dtype=bool)
    worst = 0.0
    for _ in range(points):
        Q = np.where(mask, gen.uniform(p, 0.95, (n, n)), 0.0)
        _, grad = penalty_objective(H, Q, p, delta, mu)
        i, j = gen.choice(n, 2, replace=False)
        h = 1e-6
        up, dn = Q.copy(), Q.copy()
        up[i, j] += h
        dn[i, j] -= h
        fd = (penalty_objective(H, up, p, delta, mu)[0] - penalty_objective(H, dn, p, delta, mu)[0]) / (2 * h)
        worst = max(worst, abs(fd - grad[i, j]) / max(abs(fd), 1e-12))
    return worst


def test_penalty_gradient_matches_finite_differences():
    for H in (catalog.triangle_transitive(), catalog.out_star(3), catalog.two_cycle(), catalog.single_edge()):
        assert finite_difference_check(H, 6, 0.2, 1.0, 1e4, seed=H.m) < 1e-5


def test_penalty_value():
    H = catalog.single_edge()
    n, p = 4, 0.3
    Q = np.where(~np.eye(n, dtype=bool), p, 0.0)
    val, grad = penalty_objective(H, Q, p, 1.0, 10.0)
    gap = 2 * p - hom_density(H, Q)
    assert val == pytest.approx(10.0 * gap ** 2)
    assert float(ip_array(Q, p)[~np.eye(n, dtype=bool)].sum()) == pytest.approx(0.0)


def test_discrete_phi_constant_start_when_already_feasible():
    # zero diagonals make t(H, p) = p^3 (n-1)(n-2)/n^2 for the triangle at finite n,
    # so the constant matrix meets exactly that level at zero cost
    H = catalog.triangle_transitive()
    n = 5
    delta = (n - 1) * (n - 2) / n ** 2 - 1
    r = discrete_phi_upper(H, n, 0.3, delta, restarts=3, seed=1)
    assert r.value == pytest.approx(0.0, abs=1e-12)
    assert discrete_phi_upper(H, n, 0.3, 0.0, restarts=3, seed=1).value > 0


def test_discrete_phi_is_feasible_and_best_of_starts():
    H = catalog.triangle_transitive()
    n, p, delta = 6, 0.5, 0.2
    r = discrete_phi_upper(H, n, p, delta, restarts=3, seed=4, hub_point=(0.2, 0.2, 1.0, 1.0))
    assert hom_density(H, r.Q) >= (1 + delta) * p ** 3 * (1 - 1e-12)
    assert r.density_ratio >= 1 + delta - 1e-9
    mask = ~np.eye(n, dtype=bool)
    assert r.value == pytest.approx(float(ip_array(r.Q, p)[mask].sum()))
    assert np.all(r.Q[mask] >= p - 1e-15) and np.all(r.Q[mask] <= 1.0)
    # the best-of-restarts value never exceeds a single planted start alone
    single = discrete_phi_upper(H, n, p, delta, restarts=2, seed=4)
    assert r.value <= single.value + 1e-12


def test_discrete_phi_caps_and_infeasible():
    with pytest.raises(CapExceeded):
        discrete_phi_upper(catalog.triangle_transitive(), 9, 0.3, 1.0)
    with pytest.raises(CapExceeded):
        discrete_phi_upper(catalog.directed_cycle(5), 5, 0.3, 1.0)
    with pytest.raises(RuntimeError):
        # the target 101 / 8 exceeds 1, beyond any homomorphism density
        discrete_phi_upper(catalog.triangle_transitive(), 3, 0.5, 100.0, restarts=2)
