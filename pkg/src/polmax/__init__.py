"""Spectral solver and verifier for time-harmonic Maxwell equations with a
polarization interface on a periodic cuboid."""

from .geometry import DomainSpec, PhysicalParams, Grid, validate_domain, build_grid

__all__ = [
    "DomainSpec",
    "PhysicalParams",
    "Grid",
    "validate_domain",
    "build_grid",
]

__version__ = "0.1.0"
