import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projconst.bounds import kadets_snobar, kll_upper
from projconst.errors import ArgumentError, SpectralGapError
from projconst.families import (
    canonical_form,
    kronecker_double,
    polygon_matrix,
    signature_42_representatives,
    switching_isomorphic,
)
from projconst.search import (
    CertificateError,
    OptimizerConfig,
    ascend,
    best_constant,
    certify_matrix,
    check_sign_optimality,
    family_seeds,
    heuristic_search,
    make_certificate,
    maximize_weights,
    optimize_weights,
    project_simplex,
    random_sign_matrix,
    sign_flip_local_search,
    stabilizer_orbits,
    table,
)
from projconst.spectra import objective_gradient, signature, weighted_objective
from projconst.twograph import all_ones, complement, is_sign_matrix, sign_matrix_of_graph

R3 = polygon_matrix(1)
K5 = sign_matrix_of_graph(nx.complete_graph(5))
A3 = complement(kronecker_double(R3))
GOLDEN = (1 + math.sqrt(5)) / 2
FAST = OptimizerConfig(starts=6)


class TestConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert (cfg.starts, cfg.step_tol, cfg.value_tol, cfg.max_iter, cfg.gap_tol) == (16, 1e-12, 1e-10, 5000, 1e-8)

    @pytest.mark.parametrize("kw", [{"starts": 0}, {"value_tol": 0.0}, {"gap_tol": -1.0}, {"jobs": 0}])
    def test_invalid(self, kw):
        with pytest.raises(ArgumentError):
            OptimizerConfig(**kw)


class TestProjection:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=12), st.integers(0, 1000))
    def test_is_nearest_simplex_point(self, y, seed):
        y = np.array(y)
        x = project_simplex(y)
        assert np.all(x >= 0) and abs(x.sum() - 1) <= 1e-12
        rng = np.random.default_rng(seed)
        for z in rng.dirichlet(np.ones(y.size), size=20):
            assert np.linalg.norm(x - y) <= np.linalg.norm(z - y) + 1e-12

    def test_fixed_on_simplex(self):
        D = np.array([0.2, 0.3, 0.5])
        assert np.allclose(project_simplex(D), D)


class TestAscent:
    def test_monotone_trace(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            A = random_sign_matrix(6, rng)
            res = ascend(A, 3, rng.dirichlet(np.ones(6)), OptimizerConfig())
            assert all(b >= a - 1e-10 for a, b in zip(res.trace, res.trace[1:]))
            assert res.value == pytest.approx(weighted_objective(A, res.weights, 3), abs=1e-12)

    def test_tied_ascent_stays_on_orbits(self):
        a1 = signature_42_representatives()[0]
        orbits = stabilizer_orbits(a1)
        res = ascend(a1, 4, np.full(6, 1 / 6), OptimizerConfig(), orbits=orbits)
        for block in orbits:
            assert np.ptp(res.weights[list(block)]) <= 1e-12


class TestMaximizeWeights:
    def test_r3(self):
        w, v = maximize_weights(R3, 2)
        assert v == pytest.approx(4 / 3, abs=1e-12)
        assert np.allclose(w, 1 / 3, atol=1e-12)

    def test_a3(self):
        w, v = maximize_weights(A3, 4)
        assert v == pytest.approx(5 / 3, abs=1e-9)
        assert np.allclose(w, 1 / 6, atol=1e-6)

    def test_golden_ratio_at_a6_class(self):
        from projconst.families import a6

        w, v = maximize_weights(a6(), 3)
        assert v == pytest.approx(GOLDEN, abs=1e-9)

    def test_pentagon_boundary_maximum(self):
        # uniform weights are only a stationary point for the pentagon; the
        # embedded R3 (three suitable vertices) reaches the larger value 4/3
        R5 = polygon_matrix(2)
        uniform = np.full(5, 0.2)
        assert weighted_objective(R5, uniform, 2) == pytest.approx(2 * (1 + math.sqrt(5)) / 5, abs=1e-12)
        res = optimize_weights(R5, 2)
        assert res.value == pytest.approx(4 / 3, abs=1e-9)
        assert not res.uniform_shortcut_used

    @pytest.mark.parametrize("n", range(1, 7))
    def test_polygons_uniform_is_stationary_and_not_better(self, n):
        R = polygon_matrix(n)
        d = R.shape[0]
        uniform = np.full(d, 1 / d)
        try:
            g = objective_gradient(R, uniform, 2)
            assert np.ptp(g) <= 1e-9
        except SpectralGapError:
            pass
        _, v = maximize_weights(R, 2, FAST)
        assert v >= weighted_objective(R, uniform, 2) - 1e-12
        assert v <= 4 / 3 + 1e-9

    def test_shortcut_guard(self):
        # K5 is transitive of odd order, but any three vertices (a copy of the
        # R3 class) beat uniform weights
        res = optimize_weights(K5, 2)
        assert weighted_objective(K5, np.full(5, 0.2), 2) == pytest.approx(0.8)
        assert weighted_objective(K5, [0.5, 0.5, 0, 0, 0], 2) == pytest.approx(1.0)
        assert res.value == pytest.approx(4 / 3, abs=1e-9)
        assert not res.uniform_shortcut_used

    def test_orbit_symmetry_in_concave_regime(self):
        for M in signature_42_representatives():
            assert signature(M) == (4, 0, 2)
            res = optimize_weights(M, 4)
            assert res.concave
            for block in res.orbits:
                assert np.ptp(res.weights[list(block)]) <= 1e-6

    def test_order_one(self):
        assert maximize_weights(np.array([[1]]), 1)[1] == 1.0

    def test_bad_n(self):
        with pytest.raises(ArgumentError):
            maximize_weights(R3, 4)

    def test_seed_determinism(self):
        A = random_sign_matrix(6, np.random.default_rng(1))
        w1, v1 = maximize_weights(A, 2, OptimizerConfig(seed=3))
        w2, v2 = maximize_weights(A, 2, OptimizerConfig(seed=3))
        assert np.array_equal(w1, w2) and v1 == v2


class TestSignPatterns:
    def test_r3_is_sign_optimal(self):
        assert check_sign_optimality(R3, 2)

    @pytest.mark.parametrize("d", [3, 5, 6])
    def test_full_rank_convention(self, d):
        A = random_sign_matrix(d, np.random.default_rng(d))
        assert check_sign_optimality(A, d)

    def test_k5_indeterminate_but_improvable(self):
        with pytest.raises(SpectralGapError):
            check_sign_optimality(K5, 2)
        base = weighted_objective(K5, np.full(5, 0.2), 2)
        B = K5.copy()
        B[0, 1] = B[1, 0] = 1
        assert weighted_objective(B, np.full(5, 0.2), 2) > base + 1e-9

    def test_local_search_examples(self):
        res = sign_flip_local_search(R3, 2)
        assert res.converged and np.array_equal(res.matrix, R3)
        assert res.value == pytest.approx(4 / 3)

        res = sign_flip_local_search(K5, 2)
        assert res.trace[1] > res.trace[0]
        assert is_sign_matrix(res.matrix)

        A = random_sign_matrix(5, np.random.default_rng(0))
        res = sign_flip_local_search(A, 5)
        assert res.converged and res.value == pytest.approx(1.0)

    def test_local_search_monotone(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            res = sign_flip_local_search(random_sign_matrix(8, rng), 3)
            assert all(b >= a - 1e-12 for a, b in zip(res.trace, res.trace[1:]))


class TestCertificates:
    def test_make_and_verify(self):
        cert = certify_matrix(R3, 2)
        assert cert.value == pytest.approx(4 / 3)
        assert cert.sign_optimal and cert.orbit_symmetric and cert.uniform_shortcut_used
        assert cert.failures() == []

    def test_tampered_value_rejected(self):
        cert = certify_matrix(R3, 2)
        cert.value += 1e-6
        assert "value" in cert.failures()
        with pytest.raises(CertificateError):
            cert.verify()

    def test_bad_weights_rejected(self):
        cert = certify_matrix(R3, 2)
        cert.weights = np.array([0.5, 0.5, 0.5])
        assert "weights" in cert.failures()

    def test_bounds_hold(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            A = random_sign_matrix(5, rng)
            n = int(rng.integers(1, 6))
            cert = make_certificate(A, n, rng.dirichlet(np.ones(5)))
            assert cert.value <= min(kll_upper(n, 5), kadets_snobar(n)) + 1e-9
            assert cert.value >= n / 5 - 1e-12


class TestOuterSearch:
    def test_pi_2_3(self):
        cert = best_constant(2, 3)
        assert cert.value == pytest.approx(4 / 3, abs=1e-12)
        assert switching_isomorphic(cert.matrix, R3)
        assert np.allclose(cert.weights, 1 / 3)

    def test_pi_4_6_at_a3(self):
        cert = best_constant(4, 6)
        assert cert.value == pytest.approx(5 / 3, abs=1e-6)
        assert switching_isomorphic(cert.matrix, A3)

    def test_tie_break_is_lowest_canonical_form(self):
        cert = best_constant(2, 5)
        from projconst.search import census_candidates

        values = [(canonical_form(A), maximize_weights(A, 2)[1]) for A in census_candidates(2, 5)]
        tied = [c for c, v in values if v >= cert.value - 1e-9]
        assert canonical_form(cert.matrix) == min(tied)

    def test_parallel_matches_serial(self):
        a = best_constant(3, 5, OptimizerConfig(jobs=1))
        b = best_constant(3, 5, OptimizerConfig(jobs=2))
        assert a.value == b.value and np.array_equal(a.weights, b.weights)
        assert np.array_equal(a.matrix, b.matrix)

    def test_heuristic_is_lower_bound(self):
        for n, d in [(2, 5), (3, 6)]:
            h = best_constant(n, d, FAST, mode="heuristic")
            e = best_constant(n, d, FAST)
            assert h.mode == "heuristic"
            assert h.value <= e.value + 1e-9
        chosen, results = heuristic_search(3, 6, FAST)
        assert 1 <= len(chosen) <= 4

    def test_family_seeds(self):
        for d in (5, 6, 8):
            seeds = family_seeds(d)
            assert seeds and all(S.shape == (d, d) and is_sign_matrix(S) for S in seeds)

    def test_unknown_mode(self):
        with pytest.raises(ArgumentError):
            best_constant(2, 3, mode="random")

    def test_table_monotone_in_d(self):
        t = table(3, 6)
        for (n, d), v in t.items():
            if (n, d + 1) in t:
                assert v <= t[(n, d + 1)] + 1e-9
        assert t[(1, 6)] == pytest.approx(1.0)
        assert t[(3, 4)] == pytest.approx(1.5, abs=1e-9)

    def test_all_ones_is_trivial(self):
        _, v = maximize_weights(all_ones(4), 2)
        assert v == pytest.approx(1.0)
