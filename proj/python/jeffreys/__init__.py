"""Jeffreys-divergence centroids and k-means for histograms."""

from ._core import (
    NumericError,
    ValidationError,
    bench,
    centroid,
    extended_kl,
    jeffreys_divergence,
    kmeans,
    lambert_w0,
)

__all__ = [
    "NumericError",
    "ValidationError",
    "bench",
    "centroid",
    "extended_kl",
    "jeffreys_divergence",
    "kmeans",
    "lambert_w0",
]
