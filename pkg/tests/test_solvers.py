import numpy as np
import pytest

from src.core.errors import DomainError, PreconditionError, SizeError
from src.domain.mm import Coupling, FiniteMMSpace, PqParams, distortion_pq, validate_coupling
from src.domain.solvers import (
    GWSolveParams,
    InitKind,
    bruteforce_search,
    gw_bruteforce_small,
    gw_cgd,
    gw_entropic,
    linear_ot,
    multistart,
    random_coupling,
    round_to_marginals,
    start_plan,
)

COUNTEREXAMPLE_PQ = PqParams(p=1, q=4)


class TestLinearOT:
    def test_identity_cost(self, client):
        plan, value = linear_ot(np.array([[0.0, 1.0], [1.0, 0.0]]), [0.5, 0.5], [0.5, 0.5], client)
        np.testing.assert_allclose(plan.gamma, [[0.5, 0.0], [0.0, 0.5]])
        assert value == 0.0

    def test_rejects_bad_marginals(self, client):
        with pytest.raises(DomainError):
            linear_ot(np.zeros((2, 2)), [0.5, 0.6], [0.5, 0.5], client)
        with pytest.raises(DomainError):
            linear_ot(np.zeros((2, 3)), [0.5, 0.5], [0.5, 0.5], client)


def test_rounding_lands_on_the_marginals(rng):
    mu = rng.dirichlet(np.ones(4))
    nu = rng.dirichlet(np.ones(3))
    plan = np.outer(mu, nu) * rng.uniform(0.8, 1.2, size=(4, 3))
    rounded = round_to_marginals(plan, mu, nu)
    assert np.all(rounded >= 0)
    np.testing.assert_allclose(rounded.sum(axis=1), mu, atol=1e-14)
    np.testing.assert_allclose(rounded.sum(axis=0), nu, atol=1e-14)


def test_random_coupling_is_feasible_and_seeded(client):
    mu, nu = np.full(5, 0.2), np.array([0.1, 0.2, 0.3, 0.4])
    first = random_coupling(mu, nu, 3, client)
    np.testing.assert_array_equal(first, random_coupling(mu, nu, 3, client))
    assert validate_coupling(Coupling(gamma=first, mu=mu, nu=nu)).ok


class TestConditionalGradient:
    def test_identical_spaces_from_the_diagonal(self, make_space, rng, client):
        X = make_space(rng, 6)
        report = gw_cgd(X, X, GWSolveParams().with_init(InitKind.DIAGONAL), client=client)
        assert report.value == 0.0
        assert report.iterations == 0
        assert report.converged

    def test_objective_trace_never_increases(self, make_space, rng, client):
        X, Y = make_space(rng, 8), make_space(rng, 7)
        report = gw_cgd(X, Y, GWSolveParams(rel_tol=1e-12), client=client)
        trace = np.asarray(report.objective_trace)
        assert np.all(np.diff(trace) <= 1e-10 * trace[0])
        assert validate_coupling(report.coupling).ok
        product = distortion_pq(X, Y, Coupling.product(X.weights, Y.weights), PqParams())
        assert report.value <= product + 1e-12

    def test_reported_value_is_the_coupling_distortion(self, make_space, rng, client):
        X, Y = make_space(rng, 5), make_space(rng, 6)
        pq = PqParams(p=3, q=1.5)
        report = gw_cgd(X, Y, GWSolveParams(pq=pq), client=client)
        assert report.value == pytest.approx(distortion_pq(X, Y, report.coupling, pq), rel=1e-12)
        assert report.half_value == report.value / 2

    def test_needs_finite_p(self, rectangle, client):
        with pytest.raises(PreconditionError):
            gw_cgd(rectangle, rectangle, GWSolveParams(pq=PqParams(p="inf", q=2)), client=client)

    def test_counterexample_minimum(self, counterexample, client):
        X, Y, _ = counterexample
        params = GWSolveParams(pq=COUNTEREXAMPLE_PQ)
        assert gw_cgd(X, Y, params, client=client).value >= 0.375 - 1e-12
        best = multistart(X, Y, params, n_starts=4, seed=1, client=client)
        assert best.value == pytest.approx(0.375, abs=1e-9)


    def test_accepts_a_feasible_start(self, make_space, rng, client):
        X, Y = make_space(rng, 5), make_space(rng, 4)
        explicit = gw_cgd(X, Y, init_coupling=np.outer(X.weights, Y.weights), client=client)
        default = gw_cgd(X, Y, client=client)
        assert explicit.value == pytest.approx(default.value, rel=1e-12)

    @pytest.mark.parametrize("solver", [gw_cgd, gw_entropic])
    def test_rejects_a_start_off_the_marginals(self, make_space, rng, client, solver):
        X, Y = make_space(rng, 4), make_space(rng, 3)
        with pytest.raises(PreconditionError):
            solver(X, Y, init_coupling=np.full((4, 3), 1.0 / 12.0), client=client)
        with pytest.raises(PreconditionError):
            solver(X, Y, init_coupling=np.outer(X.weights, Y.weights)[:, :2], client=client)


class TestMultistart:
    def test_start_plan_order(self, make_space, rng):
        X, Y, Z = make_space(rng, 3, uniform=True), make_space(rng, 3, uniform=True), make_space(rng, 4)
        kinds = [kind for kind, _ in start_plan(X, Y, 3, seed=0)]
        assert kinds == [InitKind.PRODUCT, InitKind.DIAGONAL, InitKind.RANDOM]
        plan = start_plan(X, Z, 3, seed=0)
        assert [kind for kind, _ in plan] == [InitKind.PRODUCT, InitKind.RANDOM, InitKind.RANDOM]
        assert plan[1][1] != plan[2][1]
        with pytest.raises(DomainError):
            start_plan(X, Y, 0, seed=0)

    def test_keeps_the_best_run(self, make_space, rng, client):
        X, Y = make_space(rng, 5), make_space(rng, 5)
        params = GWSolveParams()
        best = multistart(X, Y, params, n_starts=4, seed=2, client=client)
        for init, seed in start_plan(X, Y, 4, seed=2):
            single = gw_cgd(X, Y, params.with_init(init, seed), client=client)
            assert best.value <= single.value + 1e-15


class TestEntropic:
    def test_identical_spaces_from_the_diagonal(self, rectangle, client):
        params = GWSolveParams(epsilon=1e-3).with_init(InitKind.DIAGONAL)
        report = gw_entropic(rectangle, rectangle, params, client=client)
        assert report.value < 1e-6
        assert report.solver == "entropic"

    def test_plan_is_rounded_onto_the_marginals(self, make_space, rng, client):
        X, Y = make_space(rng, 6), make_space(rng, 5)
        report = gw_entropic(X, Y, GWSolveParams(epsilon=0.05, max_iter=50), client=client)
        assert validate_coupling(report.coupling).ok
        assert report.value >= 0.0
        assert len(report.objective_trace) == report.iterations + 1

    def test_large_epsilon_returns_the_product_coupling(self, make_space, rng, client):
        X, Y = make_space(rng, 5), make_space(rng, 6)
        report = gw_entropic(X, Y, GWSolveParams(epsilon=1e9, max_iter=5).with_init(InitKind.RANDOM, 4), client=client)
        np.testing.assert_allclose(report.coupling.gamma, np.outer(X.weights, Y.weights), atol=1e-7)

    def test_sinkhorn_warm_start_reuses_potentials(self, make_space, rng, client):
        X, Y = make_space(rng, 8), make_space(rng, 7)
        cost = rng.uniform(size=(8, 7))
        cold = client.sinkhorn_log(cost, X.weights, Y.weights, 0.05, 5000)
        assert cold.potentials is not None
        warm = client.sinkhorn_log(cost, X.weights, Y.weights, 0.05, 5000, warmstart=cold.potentials)
        assert warm.iterations <= cold.iterations
        np.testing.assert_allclose(warm.plan, cold.plan, atol=1e-8)

    def test_needs_finite_p(self, rectangle, client):
        with pytest.raises(PreconditionError):
            gw_entropic(rectangle, rectangle, GWSolveParams(pq=PqParams(p="inf", q=2)), client=client)


class TestOracle:
    def test_counterexample(self, counterexample):
        X, Y, _ = counterexample
        result = bruteforce_search(X, Y, COUNTEREXAMPLE_PQ, resolution=10_000)
        assert result.value == pytest.approx(0.375, abs=1e-9)
        assert result.grid_points == 10_001
        assert result.feasible_points < result.grid_points

    def test_single_point_space_has_one_coupling(self, counterexample):
        _, Y, _ = counterexample
        X = FiniteMMSpace.one_point()
        value = gw_bruteforce_small(X, Y, PqParams(), resolution=10)
        assert value == pytest.approx(distortion_pq(X, Y, Coupling.product(X.weights, Y.weights), PqParams()))

    def test_size_limits(self, make_space, rng):
        with pytest.raises(SizeError):
            gw_bruteforce_small(make_space(rng, 3), make_space(rng, 4), PqParams(), resolution=10)
        with pytest.raises(SizeError):
            gw_bruteforce_small(make_space(rng, 2), make_space(rng, 3), PqParams(), resolution=100_000)

    @pytest.mark.slow
    @pytest.mark.parametrize("m, resolution", [(2, 1_000_000), (3, 10_000)])
    def test_agrees_with_multistart_conditional_gradient(self, rng, client, m, resolution):
        params = GWSolveParams(rel_tol=1e-12, max_iter=5000)
        for k in range(20):
            X = FiniteMMSpace.from_points(rng.uniform(size=(2, 2)), weights=rng.dirichlet(np.ones(2)))
            Y = FiniteMMSpace.from_points(rng.uniform(size=(m, 2)), weights=rng.dirichlet(np.ones(m)))
            oracle = gw_bruteforce_small(X, Y, params.pq, resolution)
            best = multistart(X, Y, params, n_starts=8, seed=k, client=client)
            assert best.value == pytest.approx(oracle, abs=1e-3)
