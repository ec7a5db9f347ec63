import numpy as np
import pytest

from src.core.progress import CollectingPublisher
from src.domain.mm.spaces import Coupling, FiniteMMSpace, MetricKind
from src.infrastructure.pot import build_default_client
from src.interfaces.cli.common import CliContext


def _two_point_space(weights) -> FiniteMMSpace:
    return FiniteMMSpace(dist=np.array([[0.0, 1.0], [1.0, 0.0]]), weights=np.asarray(weights, dtype=float))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_space():
    """Random Euclidean point cloud in the plane, Dirichlet or uniform weights."""

    def build(rng: np.random.Generator, n: int, dim: int = 2, uniform: bool = False) -> FiniteMMSpace:
        coords = rng.normal(size=(n, dim))
        weights = None if uniform else rng.dirichlet(np.ones(n))
        if weights is not None:
            weights = weights / weights.sum()
        return FiniteMMSpace.from_points(coords, metric=MetricKind.EUCLIDEAN, weights=weights)

    return build


@pytest.fixture
def client():
    return build_default_client()


@pytest.fixture
def publisher():
    return CollectingPublisher()


@pytest.fixture
def counterexample():
    """Two-point spaces where DLB_{1,4} exceeds a witnessed (1,4)-distortion."""
    X = _two_point_space([0.75, 0.25])
    Y = _two_point_space([0.5, 0.5])
    gamma = Coupling(gamma=np.array([[0.5, 0.25], [0.0, 0.25]]), mu=X.weights, nu=Y.weights)
    return X, Y, gamma


@pytest.fixture
def rectangle():
    """Corners of a 1 x 2 rectangle, uniform weights."""
    coords = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [1.0, 2.0]])
    return FiniteMMSpace.from_points(coords, metric=MetricKind.EUCLIDEAN)


@pytest.fixture
def cli_context():
    return CliContext(publisher=CollectingPublisher())
