import math

import numpy as np
import pytest

from src.core.errors import DomainError, PreconditionError, SizeError
from src.domain.mm import (
    INF,
    Coupling,
    FiniteMMSpace,
    GWObjective,
    MetricKind,
    PqParams,
    cross_correlation,
    dis42_via_inner_products,
    distortion_pq,
    exact_line_step,
    lambda_q,
    p_diameter,
    pairwise_distances,
    validate_coupling,
)
from src.domain.sampling import sample_sphere_uniform
from src.domain.solvers import random_coupling


def test_lambda_q_values():
    assert lambda_q(3.0, 4.0, 2.0) == pytest.approx(math.sqrt(7.0), abs=1e-12)
    assert lambda_q(3.0, 4.0, 1.0) == 1.0
    assert lambda_q(1.0, 2.0, INF) == 2.0
    assert lambda_q(1.5, 1.5, INF) == 0.0
    assert lambda_q(0.0, 2.5, 3.0) == pytest.approx(2.5, abs=1e-12)


def test_lambda_q_rejects_bad_inputs():
    with pytest.raises(DomainError):
        lambda_q(-1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        lambda_q(1.0, 2.0, 0.5)


@pytest.mark.parametrize("q", [1.0, 1.5, 2.0, 4.0, INF])
def test_lambda_q_is_a_metric_on_nonnegative_reals(rng, q):
    a, b, c = rng.uniform(0.0, 3.0, size=(3, 1000))
    ab, bc, ac = lambda_q(a, b, q), lambda_q(b, c, q), lambda_q(a, c, q)
    np.testing.assert_allclose(ab, lambda_q(b, a, q), rtol=0, atol=1e-12)
    assert np.all(lambda_q(a, a, q) == 0.0)
    assert np.all(ac <= ab + bc + 1e-9)


def test_lambda_q_grows_with_q_between_abs_and_max(rng):
    a, b = rng.uniform(0.0, 3.0, size=(2, 500))
    previous = np.abs(a - b)
    for q in (1.5, 2.0, 4.0, 8.0):
        current = lambda_q(a, b, q)
        assert np.all(current >= previous - 1e-9)
        assert np.all(current <= np.maximum(a, b) + 1e-12)
        previous = current


def test_pq_params_parse_infinity():
    pq = PqParams(p="inf", q=2)
    assert pq.p_is_inf and pq.limit_mode
    assert not pq.is_quadratic
    assert PqParams(p=4, q=2).is_quadratic
    assert not PqParams(p=3, q=2).is_quadratic
    with pytest.raises(ValueError):
        PqParams(p=0.5, q=1)


class TestFiniteMMSpace:
    def test_rejects_asymmetric_distances(self):
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=np.array([[0.0, 1.0], [2.0, 0.0]]), weights=[0.5, 0.5])

    def test_rejects_bad_weights(self):
        dist = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=dist, weights=[0.6, 0.6])
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=dist, weights=[1.5, -0.5])
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=dist, weights=[1.0])

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=np.array([[0.1, 1.0], [1.0, 0.0]]), weights=[0.5, 0.5])

    def test_triangle_inequality_is_checked_on_request(self):
        dist = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
        weights = np.full(3, 1.0 / 3.0)
        assert not FiniteMMSpace(dist=dist, weights=weights).check_triangle_inequality()
        with pytest.raises(DomainError):
            FiniteMMSpace(dist=dist, weights=weights, check_metric=True)

    def test_arrays_are_read_only(self, rectangle):
        with pytest.raises(ValueError):
            rectangle.dist[0, 1] = 3.0

    def test_dict_round_trip(self, rectangle):
        again = FiniteMMSpace.from_dict(rectangle.to_dict())
        np.testing.assert_array_equal(again.dist, rectangle.dist)
        np.testing.assert_array_equal(again.weights, rectangle.weights)
        assert again.metric is MetricKind.EUCLIDEAN

    def test_geodesic_and_chordal_distances_agree_on_the_sphere(self):
        cloud = sample_sphere_uniform(2, 40, seed=3)
        geodesic = pairwise_distances(cloud.coords, MetricKind.GEODESIC)
        chordal = pairwise_distances(cloud.coords, MetricKind.EUCLIDEAN)
        np.testing.assert_allclose(chordal, 2.0 * np.sin(geodesic / 2.0), atol=1e-7)


class TestCoupling:
    def test_require_matches_rejects_wrong_marginals(self, counterexample):
        X, Y, _ = counterexample
        wrong = Coupling.product([0.5, 0.5], [0.5, 0.5])
        with pytest.raises(PreconditionError):
            wrong.require_matches(X, Y)

    def test_validation_reports_violations(self):
        bad = Coupling(gamma=np.array([[0.6, -0.1], [0.0, 0.5]]), mu=[0.4, 0.6], nu=[0.6, 0.4])
        report = validate_coupling(bad)
        assert not report.ok
        assert "negativity" in report.violations
        assert "row-marginal" in report.violations
        assert validate_coupling(Coupling.product([0.25, 0.75], [0.5, 0.5])).ok

    def test_transpose_swaps_marginals(self, counterexample):
        _, _, gamma = counterexample
        flipped = gamma.transpose()
        np.testing.assert_array_equal(flipped.mu, gamma.nu)
        np.testing.assert_array_equal(flipped.gamma, gamma.gamma.T)


class TestDistortion:
    def test_diagonal_self_coupling_has_zero_distortion(self, make_space, rng):
        X = make_space(rng, 7)
        diag = Coupling.diagonal(X.weights)
        for pq in (PqParams(p=4, q=2), PqParams(p=3, q=2), PqParams(p=1, q=1), PqParams(p=INF, q=2)):
            assert distortion_pq(X, X, diag, pq) == 0.0

    def test_counterexample_value(self, counterexample):
        X, Y, gamma = counterexample
        assert distortion_pq(X, Y, gamma, PqParams(p=1, q=4)) == pytest.approx(0.375, abs=1e-15)

    def test_fast_path_matches_reference_contraction(self, make_space, rng, client):
        X, Y = make_space(rng, 6), make_space(rng, 5)
        gamma = Coupling(gamma=random_coupling(X.weights, Y.weights, 11, client), mu=X.weights, nu=Y.weights)
        pq = PqParams(p=4, q=2)
        fast = distortion_pq(X, Y, gamma, pq, method="fast")
        reference = distortion_pq(X, Y, gamma, pq, method="reference")
        assert fast == pytest.approx(reference, rel=1e-10)

    def test_fast_method_needs_p_equal_2q(self, rectangle):
        with pytest.raises(DomainError):
            GWObjective(rectangle.dist, rectangle.dist, PqParams(p=3, q=2), method="fast")

    def test_monotone_in_p_and_q(self, make_space, rng, client):
        X, Y = make_space(rng, 5), make_space(rng, 4)
        gamma = Coupling(gamma=random_coupling(X.weights, Y.weights, 5, client), mu=X.weights, nu=Y.weights)
        for q in (1.0, 2.0):
            values = [distortion_pq(X, Y, gamma, PqParams(p=p, q=q)) for p in (1.0, 2.0, 4.0)]
            assert np.all(np.diff(values) >= -1e-10 * max(values))
        for p in (2.0, 4.0):
            values = [distortion_pq(X, Y, gamma, PqParams(p=p, q=q)) for q in (1.0, 1.5, 2.0)]
            assert np.all(np.diff(values) >= -1e-10 * max(values))

    def test_sup_distortion_on_support(self):
        X = FiniteMMSpace(dist=np.array([[0.0, 1.0], [1.0, 0.0]]), weights=[0.5, 0.5])
        pq = PqParams(p=INF, q=2)
        assert distortion_pq(X, X, Coupling.product(X.weights, X.weights), pq) == 1.0
        assert distortion_pq(X, X, Coupling.diagonal(X.weights), pq) == 0.0

    def test_generic_path_refuses_large_instances(self, rectangle):
        with pytest.raises(SizeError):
            GWObjective(rectangle.dist, rectangle.dist, PqParams(p=3, q=2), max_entries=4)

    def test_symmetric_under_transpose(self, make_space, rng, client):
        X, Y = make_space(rng, 6), make_space(rng, 4)
        gamma = Coupling(gamma=random_coupling(X.weights, Y.weights, 3, client), mu=X.weights, nu=Y.weights)
        for pq in (PqParams(p=4, q=2), PqParams(p=2, q=1), PqParams(p=3, q=1.5), PqParams(p=INF, q=1)):
            forward = distortion_pq(X, Y, gamma, pq)
            backward = distortion_pq(Y, X, gamma.transpose(), pq)
            assert backward == pytest.approx(forward, rel=1e-12)

    @pytest.mark.parametrize("factor", [0.25, 3.0])
    def test_scales_linearly_with_both_spaces(self, make_space, rng, client, factor):
        X, Y = make_space(rng, 5), make_space(rng, 5)
        gamma = Coupling(gamma=random_coupling(X.weights, Y.weights, 9, client), mu=X.weights, nu=Y.weights)
        for pq in (PqParams(p=4, q=2), PqParams(p=1, q=3), PqParams(p=INF, q=2)):
            base = distortion_pq(X, Y, gamma, pq)
            scaled = distortion_pq(X.scaled(factor), Y.scaled(factor), gamma, pq)
            assert scaled == pytest.approx(factor * base, rel=1e-10)

    def test_scaled_rejects_non_positive_factor(self, rectangle):
        with pytest.raises(DomainError):
            rectangle.scaled(0.0)

    def test_p_diameter(self, counterexample):
        X, Y, _ = counterexample
        assert p_diameter(X, 1.0) == pytest.approx(0.375)
        assert p_diameter(Y, 1.0) == pytest.approx(0.5)
        assert p_diameter(Y, INF) == 1.0


class TestInnerProductForm:
    def test_matches_direct_evaluation(self, client):
        X = FiniteMMSpace.from_points(sample_sphere_uniform(1, 12, seed=1).coords, MetricKind.EUCLIDEAN)
        Y = FiniteMMSpace.from_points(sample_sphere_uniform(2, 9, seed=2).coords, MetricKind.EUCLIDEAN)
        gamma = Coupling(gamma=random_coupling(X.weights, Y.weights, 7, client), mu=X.weights, nu=Y.weights)
        direct = distortion_pq(X, Y, gamma, PqParams(p=4, q=2))
        assert dis42_via_inner_products(X, Y, gamma) == pytest.approx(direct, abs=1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_identity_self_coupling_is_zero(self, seed):
        X = FiniteMMSpace.from_points(sample_sphere_uniform(2, 30, seed=seed).coords, MetricKind.EUCLIDEAN)
        diag = Coupling.diagonal(X.weights)
        assert dis42_via_inner_products(X, X, diag) == 0.0
        assert distortion_pq(X, X, diag, PqParams(p=4, q=2)) == 0.0

    def test_needs_coordinates(self, counterexample):
        X, Y, gamma = counterexample
        with pytest.raises(PreconditionError):
            cross_correlation(X, Y, gamma)


@pytest.mark.parametrize(
    "a, b, expected",
    [(1.0, -1.0, 0.5), (1.0, -4.0, 1.0), (0.0, -1.0, 1.0), (-1.0, 0.5, 1.0), (0.0, 1.0, 0.0), (2.0, 3.0, 0.0)],
)
def test_exact_line_step(a, b, expected):
    assert exact_line_step(a, b) == expected
