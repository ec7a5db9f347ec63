import math

import numpy as np
import pytest

from src.core.errors import DomainError, PreconditionError
from src.domain.mm import MetricKind, PqParams, dis42_via_inner_products, distortion_pq, pairwise_distances
from src.domain.mm.correlation import gram_fourth_moment, paired_cross_correlation
from src.domain.sampling import (
    MonteCarloEstimate,
    PointCloud,
    cloud_to_space,
    derive_seed,
    equatorial_coupling_empirical,
    equatorial_map,
    equatorial_project,
    farthest_point_selection,
    gaussian_projection_J,
    nearest_landmark,
    sample_equatorial_source,
    sample_sphere_uniform,
    voronoi_weights,
)
from src.domain.spheres import equatorial_dis42_euclidean


class TestSeeds:
    def test_derived_seeds_are_stable_and_distinct(self):
        assert derive_seed(7, 1, 2) == derive_seed(7, 1, 2)
        assert derive_seed(7, 1, 2) != derive_seed(7, 2, 1)
        assert derive_seed(7, 1) != derive_seed(8, 1)

    def test_rejects_negative_seed(self):
        with pytest.raises(DomainError):
            derive_seed(-1, 0)


class TestUniformSampling:
    def test_points_lie_on_the_sphere(self):
        cloud = sample_sphere_uniform(3, 500, seed=1)
        assert cloud.coords.shape == (500, 4)
        np.testing.assert_allclose(np.linalg.norm(cloud.coords, axis=1), 1.0, atol=1e-12)

    def test_same_seed_same_points(self):
        a = sample_sphere_uniform(2, 50, seed=5)
        np.testing.assert_array_equal(a.coords, sample_sphere_uniform(2, 50, seed=5).coords)
        assert not np.array_equal(a.coords, sample_sphere_uniform(2, 50, seed=6).coords)

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_squared_inner_product_moment(self, n):
        cloud = sample_sphere_uniform(n, 40_000, seed=100 + n)
        x, y = cloud.coords[:20_000], cloud.coords[20_000:]
        estimate = MonteCarloEstimate.of_mean(np.sum(x * y, axis=1) ** 2)
        assert estimate.within(1.0 / (n + 1), sigmas=3.0, floor=1e-3)

    def test_cloud_rejects_points_off_the_sphere(self):
        with pytest.raises(DomainError):
            PointCloud(coords=np.array([[1.0, 1.0]]))


class TestFarthestPointSampling:
    def test_greedy_order_on_the_circle(self):
        angles = np.array([0.0, 0.1, math.pi, math.pi / 2])
        cloud = PointCloud(coords=np.column_stack([np.cos(angles), np.sin(angles)]))
        result = farthest_point_selection(cloud, 3, MetricKind.GEODESIC, seed=0, first=0)
        assert result.indices.tolist() == [0, 2, 3]
        assert result.radii[1] == pytest.approx(math.pi)

    def test_radii_never_increase(self):
        cloud = sample_sphere_uniform(2, 2000, seed=4)
        result = farthest_point_selection(cloud, 60, MetricKind.EUCLIDEAN, seed=4)
        assert len(set(result.indices.tolist())) == 60
        assert np.all(np.diff(result.radii[1:]) <= 1e-12)

    def test_selected_points_cover_the_cloud(self):
        cloud = sample_sphere_uniform(2, 800, seed=6)
        result = farthest_point_selection(cloud, 40, MetricKind.GEODESIC, seed=6)
        dist = pairwise_distances(cloud.coords, MetricKind.GEODESIC)
        covering = [float(dist[result.indices[:k]].min(axis=0).max()) for k in range(1, 40)]
        np.testing.assert_allclose(covering, result.radii[1:], atol=1e-7)
        assert np.all(np.diff(covering) <= 1e-12)

    def test_first_point_is_seeded(self):
        cloud = sample_sphere_uniform(1, 300, seed=2)
        a = farthest_point_selection(cloud, 10, MetricKind.GEODESIC, seed=11)
        b = farthest_point_selection(cloud, 10, MetricKind.GEODESIC, seed=11)
        np.testing.assert_array_equal(a.indices, b.indices)

    def test_k_out_of_range(self):
        cloud = sample_sphere_uniform(1, 5, seed=2)
        with pytest.raises(DomainError):
            farthest_point_selection(cloud, 6, MetricKind.GEODESIC, seed=0)


class TestVoronoi:
    def test_landmarks_drawn_from_the_reference_own_their_cells(self):
        pool = sample_sphere_uniform(2, 3000, seed=8)
        picks = farthest_point_selection(pool, 25, MetricKind.EUCLIDEAN, seed=8).indices
        weights = voronoi_weights(pool.subset(picks), reference=pool)
        assert np.all(weights > 0)
        assert weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_antipodal_landmarks_split_evenly(self):
        landmarks = PointCloud(coords=np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))
        weights = voronoi_weights(landmarks, reference_size=100_000, seed=3)
        np.testing.assert_allclose(weights, [0.5, 0.5], atol=0.01)

    def test_nearest_landmark_is_chunk_independent(self):
        landmarks = sample_sphere_uniform(2, 7, seed=1)
        points = sample_sphere_uniform(2, 1000, seed=2).coords
        np.testing.assert_array_equal(
            nearest_landmark(landmarks, points, chunk_size=13), nearest_landmark(landmarks, points, chunk_size=5000)
        )

    def test_reference_dimension_must_match(self):
        landmarks = sample_sphere_uniform(2, 4, seed=1)
        with pytest.raises(DomainError):
            voronoi_weights(landmarks, reference=sample_sphere_uniform(1, 10, seed=1))


class TestEquatorial:
    def test_map_normalizes_the_leading_block(self):
        np.testing.assert_allclose(equatorial_map([0.6, 0.0, 0.8], 1), [1.0, 0.0])
        np.testing.assert_allclose(equatorial_map([-0.6, 0.8], 0), [-1.0])
        assert equatorial_map([0.0, 1.0], 0) is None

    def test_project_flags_degenerate_rows(self):
        projected, degenerate = equatorial_project(np.array([[0.0, 1.0], [0.6, 0.8]]), 0)
        assert degenerate.tolist() == [True, False]
        np.testing.assert_allclose(projected[1], [1.0])

    def test_empirical_coupling_matches_the_inner_product_form(self):
        cloud = sample_equatorial_source(2, 1, 300, seed=6)
        X, Y, gamma = equatorial_coupling_empirical(cloud, 1)
        direct = distortion_pq(X, Y, gamma, PqParams(p=4, q=2))
        assert dis42_via_inner_products(X, Y, gamma) == pytest.approx(direct, abs=1e-9)

    def test_empirical_distortion_approaches_the_closed_form(self):
        y = sample_equatorial_source(2, 1, 100_000, seed=12).coords
        x, _ = equatorial_project(y, 1)
        w = np.full(y.shape[0], 1.0 / y.shape[0])
        fourth = 4 * gram_fourth_moment(x, w) + 4 * gram_fourth_moment(y, w) - 8 * paired_cross_correlation(x, y).J
        assert fourth ** 0.25 == pytest.approx(equatorial_dis42_euclidean(1, 2), abs=0.01)

    def test_degenerate_samples_are_refused(self):
        cloud = PointCloud(coords=np.array([[0.0, 1.0], [1.0, 0.0]]))
        with pytest.raises(PreconditionError):
            equatorial_coupling_empirical(cloud, 0)

    @pytest.mark.parametrize("m, n", [(0, 3), (2, 4)])
    def test_gaussian_projection_cross_correlation(self, m, n):
        assert gaussian_projection_J(m, n, 100_000, seed=m + n) == pytest.approx(m + 1, abs=0.05)

    def test_mean_projection_norm_by_sampling(self):
        y = sample_sphere_uniform(1, 50_000, seed=21).coords
        estimate = MonteCarloEstimate.of_mean(np.abs(y[:, 0]))
        assert estimate.within(2 / math.pi, sigmas=3.0, floor=1e-3)


def test_fourth_root_estimate_propagates_error():
    draws = np.full(10, 16.0)
    estimate = MonteCarloEstimate.of_fourth_root_mean(draws)
    assert estimate.value == pytest.approx(2.0)
    assert estimate.std_error == 0.0
    assert MonteCarloEstimate.exact(1.5).scaled(0.5).value == 0.75


def test_cloud_to_space_normalizes_weights():
    cloud = sample_sphere_uniform(2, 10, seed=1)
    space = cloud_to_space(cloud, MetricKind.GEODESIC, weights=np.arange(1.0, 11.0))
    assert space.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert space.dist.max() <= math.pi
    np.testing.assert_array_equal(space.coords, cloud.coords)
