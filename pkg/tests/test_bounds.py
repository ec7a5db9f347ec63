import math

import numpy as np
import pytest

from src.core.errors import ClosedFormUnavailableError, DomainError
from src.domain.bounds import (
    Discrete1DDistribution,
    dlb,
    global_distance_distribution,
    hierarchy_report,
    ordering_holds,
    slb,
    tlb,
    tlb_homogeneous,
    wasserstein_1d_lambda_q,
)
from src.domain.mm.spaces import Coupling, MetricKind
from src.domain.spheres import SphereSpec

G, E = MetricKind.GEODESIC, MetricKind.EUCLIDEAN


def sphere(dim, metric):
    return SphereSpec(dim=dim, metric=metric)


class TestDiscreteDistributions:
    def test_from_samples_merges_duplicates(self):
        d = Discrete1DDistribution.from_samples([1.0, 0.0, 1.0, 2.0])
        np.testing.assert_array_equal(d.atoms, [0.0, 1.0, 2.0])
        np.testing.assert_allclose(d.weights, [0.25, 0.5, 0.25])

    def test_right_continuous_quantile(self):
        d = Discrete1DDistribution(atoms=[0.0, 1.0, 2.0], weights=[0.25, 0.5, 0.25])
        assert d.quantile(0.0) == 0.0
        assert d.quantile(0.25) == 1.0
        assert d.quantile(0.5) == 1.0
        assert d.quantile(1.0) == 2.0
        assert d.cdf(1.5) == 0.75

    def test_rejects_unsorted_atoms(self):
        with pytest.raises(DomainError):
            Discrete1DDistribution(atoms=[1.0, 0.0], weights=[0.5, 0.5])

    def test_global_distribution_counts_self_pairs(self, counterexample):
        X, _, _ = counterexample
        d = global_distance_distribution(X)
        np.testing.assert_allclose(d.weights, [0.625, 0.375])


class TestWasserstein1D:
    def test_diracs(self):
        zero, one = Discrete1DDistribution.dirac(0.0), Discrete1DDistribution.dirac(1.0)
        assert wasserstein_1d_lambda_q(zero, one, 2.0, 1.0) == pytest.approx(1.0)
        assert wasserstein_1d_lambda_q(zero, zero, 2.0, 1.0) == 0.0

    def test_lambda_q_ground_cost(self):
        a, b = Discrete1DDistribution.dirac(3.0), Discrete1DDistribution.dirac(4.0)
        assert wasserstein_1d_lambda_q(a, b, 4.0, 2.0) == pytest.approx(math.sqrt(7.0))

    def test_needs_q_at_most_p(self):
        zero, one = Discrete1DDistribution.dirac(0.0), Discrete1DDistribution.dirac(1.0)
        with pytest.raises(ClosedFormUnavailableError):
            wasserstein_1d_lambda_q(zero, one, 1.0, 4.0)

    def test_sup_over_levels(self):
        a = Discrete1DDistribution(atoms=[0.0, 1.0], weights=[0.5, 0.5])
        b = Discrete1DDistribution(atoms=[0.0, 3.0], weights=[0.5, 0.5])
        assert wasserstein_1d_lambda_q(a, b, math.inf, 1.0) == 2.0


@pytest.mark.parametrize(
    "x, y, expected_dlb, expected_slb",
    [
        (sphere(0, G), sphere(1, G), 1.602, 1.836),
        (sphere(1, G), sphere(2, G), 0.861, 0.931),
        (sphere(0, E), sphere(1, E), 0.616, 0.976),
        (sphere(1, E), sphere(2, E), 0.374, 0.549),
    ],
)
def test_sphere_lower_bounds(x, y, expected_dlb, expected_slb):
    assert dlb(x, y, 4.0, 2.0) == pytest.approx(expected_dlb, abs=2e-3)
    assert slb(x, y, 4.0, 2.0) == pytest.approx(expected_slb, abs=2e-3)


def test_zero_one_geodesic_slb_closed_form():
    assert slb(sphere(0, G), sphere(1, G), 4.0, 2.0) == pytest.approx((7 * math.pi ** 4 / 60) ** 0.25, rel=1e-9)


def test_slb_of_a_sphere_with_itself():
    assert slb(sphere(2, G), sphere(2, G), 4.0, 2.0) == 0.0


def test_sphere_tlb_equals_slb():
    report = hierarchy_report(sphere(1, E), sphere(2, E), 4.0, 2.0)
    assert report.tlb_source == "homogeneous"
    assert report.tlb == report.slb


def test_tlb_homogeneous_against_finite_space(counterexample):
    X, _, _ = counterexample
    value = tlb_homogeneous(sphere(1, E), X, 4.0, 2.0)
    assert value > 0.0
    assert value >= slb(sphere(1, E), X, 4.0, 2.0) - 1e-9


def test_tlb_of_a_space_with_itself(make_space, rng, client):
    X = make_space(rng, 6)
    result = tlb(X, X, 4.0, 2.0, client=client)
    assert result.value == pytest.approx(0.0, abs=1e-12)
    assert result.coupling.matches(X, X)


@pytest.mark.parametrize("p, q", [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (4.0, 2.0), (4.0, 1.0)])
def test_hierarchy_on_random_instances(make_space, rng, client, p, q):
    for _ in range(10):
        X = make_space(rng, int(rng.integers(3, 7)))
        Y = make_space(rng, int(rng.integers(3, 7)))
        witness = Coupling.product(X.weights, Y.weights)
        report = hierarchy_report(X, Y, p, q, witness, client=client)
        assert report.ordering_ok, report.to_dict()
        assert report.upper >= report.tlb - 1e-9
        assert report.tlb >= report.slb - 1e-9
        assert report.slb >= report.dlb - 1e-9


class TestCounterexample:
    def test_dlb_exceeds_a_witnessed_distortion_when_q_exceeds_p(self, counterexample):
        X, Y, gamma = counterexample
        value = dlb(X, Y, 1.0, 4.0)
        assert value == pytest.approx((0.5 ** 4 - 0.375 ** 4) ** 0.25, rel=1e-12)
        assert value == pytest.approx(0.4547, abs=1e-4)
        assert value > 0.375

    def test_report_uses_dlb_at_min_p_q(self, counterexample):
        X, Y, gamma = counterexample
        report = hierarchy_report(X, Y, 1.0, 4.0, gamma)
        assert report.upper == pytest.approx(0.375)
        assert report.dlb == pytest.approx(0.125)
        assert report.slb is None and report.tlb is None
        assert any(note.startswith("slb") for note in report.notes)
        assert report.ordering_ok


def test_ordering_holds_skips_missing_terms():
    assert ordering_holds([1.0, None, 0.5, 0.5])
    assert not ordering_holds([0.4, 0.5])
    assert ordering_holds([0.5, 0.5 + 1e-10])


def test_halves(counterexample):
    X, Y, gamma = counterexample
    halves = hierarchy_report(X, Y, 1.0, 4.0, gamma).halves()
    assert halves["upper"] == pytest.approx(0.1875)
    assert halves["slb"] is None
