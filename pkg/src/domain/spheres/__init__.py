"""Closed-form layer for uniform spheres."""

from src.domain.spheres.analytic import QuadratureConfig, SphereSpec, sphere_cdf, sphere_diam_p, sphere_quantile
from src.domain.spheres.gw42 import (
    equatorial_dis42_euclidean,
    equatorial_dis42_geodesic,
    equatorial_upper_bound,
    exact_gw42_euclidean,
    gw42_asymptote_fixed_m,
    gw42_closed_form_consecutive,
    gw42_closed_form_gap_two,
    mean_projection_norm,
)
from src.domain.spheres.special import composite_gauss_legendre, gamma_ratio, gauss_legendre, projection_gamma_ratio

__all__ = [
    "QuadratureConfig",
    "SphereSpec",
    "composite_gauss_legendre",
    "equatorial_dis42_euclidean",
    "equatorial_dis42_geodesic",
    "equatorial_upper_bound",
    "exact_gw42_euclidean",
    "gamma_ratio",
    "gauss_legendre",
    "gw42_asymptote_fixed_m",
    "gw42_closed_form_consecutive",
    "gw42_closed_form_gap_two",
    "mean_projection_norm",
    "projection_gamma_ratio",
    "sphere_cdf",
    "sphere_diam_p",
    "sphere_quantile",
]
