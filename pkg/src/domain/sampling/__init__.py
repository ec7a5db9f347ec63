"""Sphere samplers, FPS, Voronoi weights and the equatorial coupling."""

from src.domain.sampling.clouds import (
    SEED_MAX,
    PointCloud,
    Seed,
    check_seed,
    cloud_to_space,
    derive_seed,
    distance_matrix,
    make_rng,
    sample_sphere_uniform,
)
from src.domain.sampling.equatorial import (
    equatorial_coupling_empirical,
    equatorial_map,
    equatorial_project,
    gaussian_projection_J,
    sample_equatorial_source,
)
from src.domain.sampling.fps import FPSResult, distances_to, farthest_point_sample, farthest_point_selection
from src.domain.sampling.montecarlo import MonteCarloEstimate
from src.domain.sampling.voronoi import nearest_landmark, voronoi_weights

__all__ = [
    "SEED_MAX",
    "FPSResult",
    "MonteCarloEstimate",
    "PointCloud",
    "Seed",
    "check_seed",
    "cloud_to_space",
    "derive_seed",
    "distance_matrix",
    "distances_to",
    "equatorial_coupling_empirical",
    "equatorial_map",
    "equatorial_project",
    "farthest_point_sample",
    "farthest_point_selection",
    "gaussian_projection_J",
    "make_rng",
    "nearest_landmark",
    "sample_equatorial_source",
    "sample_sphere_uniform",
    "voronoi_weights",
]
