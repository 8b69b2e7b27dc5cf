import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    brute_laplacian,
    brute_pair_distances,
    enumerate_vech_qp,
    matrix_lstep_objective,
    simplex_grid_n3,
)

from graphlearn.exceptions import LStepNotConverged
from graphlearn.laplacian import laplacian_from_weights, num_pairs, prune_edges, edge_count
from graphlearn.lstep import (
    QpFormulation,
    build_lstep,
    build_vech_formulation,
    duplication_matrix,
    incidence_selector,
    kkt_residual,
    lstep_objective,
    pairwise_sq_distances,
    project_scaled_simplex,
    solve_lstep,
)


def random_instance(rng, n):
    Y = rng.normal(size=(n, rng.integers(1, 6)))
    alpha = 10 ** rng.uniform(-2, 1)
    beta = 10 ** rng.uniform(-2, 1)
    return Y, alpha, beta


class TestBuild:
    def test_zero_signals(self):
        assert np.all(build_lstep(np.zeros((4, 3)), 1, 1).z == 0)

    def test_single_column(self):
        q = build_lstep(np.array([[0.0], [0.0], [1.0]]), 1, 1)
        np.testing.assert_array_equal(q.z, [0, 1, 1])

    def test_two_columns(self):
        q = build_lstep(np.array([[0.0, 0.0], [1.0, 2.0]]), 1, 1)
        np.testing.assert_array_equal(q.z, [5])

    @pytest.mark.parametrize("alpha,beta", [(0, 1), (1, 0), (-1, 1)])
    def test_rejects_nonpositive(self, alpha, beta):
        with pytest.raises(ValueError):
            build_lstep(np.zeros((3, 2)), alpha, beta)

    def test_distances_match_loops(self):
        Y = np.random.default_rng(0).normal(size=(7, 4))
        np.testing.assert_allclose(pairwise_sq_distances(Y), brute_pair_distances(Y), rtol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 9])
    def test_incidence(self, n):
        S = incidence_selector(n).toarray()
        assert S.shape == (n, num_pairs(n))
        assert np.all(S.sum(axis=0) == 2)
        w = np.random.default_rng(n).uniform(size=num_pairs(n))
        L = laplacian_from_weights(w)
        np.testing.assert_allclose(S @ w, np.diag(L))
        np.testing.assert_allclose(np.sum(L**2), np.sum((S @ w) ** 2) + 2 * w @ w)
        q = QpFormulation(n, np.zeros(num_pairs(n)), 1.0, 1.0)
        np.testing.assert_allclose(q.degrees(w), S @ w)
        # Lipschitz constant 2 beta lambda_max(S^T S + 2I)
        lam = np.linalg.eigvalsh(S.T @ S + 2 * np.eye(num_pairs(n)))
        assert q.lipschitz == pytest.approx(2 * lam.max())
        assert q.strong_convexity <= 2 * lam.min() + 1e-12


class TestObjective:
    def test_zero_weights(self):
        q = build_lstep(np.random.default_rng(0).normal(size=(4, 2)), 1, 1)
        assert lstep_objective(q, np.zeros(6)) == 0

    def test_two_vertices(self):
        q = QpFormulation(2, np.array([5.0]), 1.0, 1.0)
        assert lstep_objective(q, np.array([1.0])) == 9

    def test_dimension_mismatch(self):
        q = QpFormulation(3, np.zeros(3), 1.0, 1.0)
        with pytest.raises(ValueError):
            lstep_objective(q, np.zeros(4))

    def test_gradient_by_finite_differences(self):
        rng = np.random.default_rng(1)
        Y, a, b = random_instance(rng, 5)
        q = build_lstep(Y, a, b)
        w = rng.uniform(size=10)
        h = 1e-6
        fd = np.array([(lstep_objective(q, w + h * e) - lstep_objective(q, w - h * e)) / (2 * h)
                       for e in np.eye(10)])
        np.testing.assert_allclose(q.gradient(w), fd, rtol=1e-6, atol=1e-6)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 2**32 - 1))
    def test_matches_matrix_form(self, n, seed):
        rng = np.random.default_rng(seed)
        Y, a, b = random_instance(rng, n)
        w = rng.uniform(size=num_pairs(n))
        q = build_lstep(Y, a, b)
        assert lstep_objective(q, w) == pytest.approx(matrix_lstep_objective(Y, w, a, b),
                                                     rel=1e-9)


class TestVech:
    def test_duplication_n2(self):
        np.testing.assert_array_equal(duplication_matrix(2),
                                      [[1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1]])
        form = build_vech_formulation(np.zeros((2, 1)), 1, 1)
        L = np.array([[1.0, -1], [-1, 1]])
        v = form.vech(L)
        assert v.shape == (3,)
        np.testing.assert_array_equal(form.M_dup @ v, L.ravel(order="F"))
        np.testing.assert_array_equal(form.unvech(v), L)

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_constraints_and_objective_equivalence(self, n):
        rng = np.random.default_rng(n)
        Y, a, b = random_instance(rng, n)
        form = build_vech_formulation(Y, a, b)
        w = rng.uniform(size=num_pairs(n))
        w *= (n / 2) / w.sum()
        L = brute_laplacian(w, n)
        v = form.vech(L)
        assert v.size == n * (n + 1) // 2
        np.testing.assert_allclose(form.A @ v, form.b, atol=1e-12)
        assert np.all(form.B @ v <= 0)
        assert form.objective(v) == pytest.approx(lstep_objective(build_lstep(Y, a, b), w),
                                                  rel=1e-9)


class TestProjection:
    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 30), st.floats(0.1, 10), st.integers(0, 2**32 - 1))
    def test_projection_is_optimal(self, m, total, seed):
        v = np.random.default_rng(seed).normal(scale=3, size=m)
        x = project_scaled_simplex(v, total)
        assert np.all(x >= 0)
        assert x.sum() == pytest.approx(total, abs=1e-10)
        # variational inequality: (v - x) . (y - x) <= 0 for feasible y
        for y in np.random.default_rng(seed + 1).dirichlet(np.ones(m), size=20) * total:
            assert (v - x) @ (y - x) <= 1e-9

    def test_already_feasible(self):
        v = np.array([0.2, 0.3, 1.0])
        np.testing.assert_allclose(project_scaled_simplex(v, 1.5), v)


class TestSolve:
    def test_zero_signal_gives_uniform(self):
        sol = solve_lstep(build_lstep(np.zeros((3, 2)), 0.7, 0.3))
        np.testing.assert_allclose(sol.w, 0.5, atol=1e-9)

    def test_zero_alpha_uniform(self):
        z = np.random.default_rng(0).uniform(size=6)
        sol = solve_lstep(QpFormulation(4, z, 0.0, 1.0))
        np.testing.assert_allclose(sol.w, 1 / 3, atol=1e-9)

    def test_uniform_z_is_uniform_for_any_alpha(self):
        for alpha in (1e-3, 1.0, 1e3):
            sol = solve_lstep(QpFormulation(5, np.full(10, 2.0), alpha, 0.1))
            np.testing.assert_allclose(sol.w, 0.25, atol=1e-8)

    def test_grid_oracle_n3(self):
        z = np.array([0.0, 1.0, 1.0])
        sol = solve_lstep(QpFormulation(3, z, 1.0, 0.5))
        ref = simplex_grid_n3(z, 1.0, 0.5)
        np.testing.assert_allclose(sol.w, ref, atol=1e-4)
        assert sol.w[0] > sol.w[1]
        assert sol.w[1] == pytest.approx(sol.w[2], abs=1e-9)

    def test_two_vertices(self):
        sol = solve_lstep(QpFormulation(2, np.array([3.0]), 1.0, 1.0))
        np.testing.assert_allclose(sol.w, [1.0])
        assert sol.kkt_residual == 0

    def test_non_convergence_carries_best_iterate(self):
        rng = np.random.default_rng(4)
        q = build_lstep(rng.normal(size=(12, 5)), 0.01, 1.0)
        with pytest.raises(LStepNotConverged) as info:
            solve_lstep(q, tol=1e-14, max_iter=3)
        best = info.value.best
        assert best.iterations == 3
        assert best.w.sum() == pytest.approx(6.0)
        assert best.kkt_residual > 1e-14

    def test_deterministic(self):
        q = build_lstep(np.random.default_rng(5).normal(size=(9, 4)), 0.3, 0.2)
        a, b = solve_lstep(q), solve_lstep(q)
        assert np.array_equal(a.w, b.w)

    def test_warm_start_reaches_same_optimum(self):
        q = build_lstep(np.random.default_rng(6).normal(size=(9, 4)), 0.3, 0.2)
        cold = solve_lstep(q, tol=1e-9)
        warm = solve_lstep(q, tol=1e-9, w0=np.random.default_rng(7).uniform(size=36))
        np.testing.assert_allclose(warm.w, cold.w, atol=1e-8)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_active_set_oracle(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(5):
            Y, a, b = random_instance(rng, n)
            sol = solve_lstep(build_lstep(Y, a, b))
            form = build_vech_formulation(Y, a, b)
            v_ref, f_ref = enumerate_vech_qp(form)
            assert sol.objective == pytest.approx(f_ref, rel=1e-6)
            np.testing.assert_allclose(laplacian_from_weights(sol.w), form.unvech(v_ref),
                                       atol=1e-5)
            assert np.all(sol.w >= -1e-12)
            assert abs(sol.w.sum() - n / 2) <= 1e-8
            assert sol.kkt_residual <= 1e-6
            assert kkt_residual(build_lstep(Y, a, b), sol.w) == pytest.approx(sol.kkt_residual)

    @pytest.mark.parametrize("n", [4, 6])
    def test_vech_form_with_generic_qp_solver(self, n):
        rng = np.random.default_rng(200 + n)
        for _ in range(3):
            Y, a, b = random_instance(rng, n)
            form = build_vech_formulation(Y, a, b)
            v = cp.Variable(form.cost.size)
            Q = 0.5 * (form.quad + form.quad.T)
            prob = cp.Problem(cp.Minimize(form.cost @ v + cp.quad_form(v, cp.psd_wrap(Q))),
                              [form.A @ v == form.b, form.B @ v <= 0])
            prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12,
                       tol_feas=1e-12)
            sol = solve_lstep(build_lstep(Y, a, b))
            assert sol.objective == pytest.approx(prob.value, rel=1e-6)


def test_sparsity_decreases_with_beta():
    rng = np.random.default_rng(11)
    Y = rng.normal(size=(12, 8))
    counts = []
    for beta in np.logspace(1, -3, 13):
        w = solve_lstep(build_lstep(Y, 1.0, beta)).w
        counts.append(edge_count(prune_edges(laplacian_from_weights(w), 1e-4)))
    assert all(b <= a for a, b in zip(counts, counts[1:]))
    assert counts[0] > counts[-1]
