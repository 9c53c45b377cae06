"""Validated domain, physical parameters, and the two-block midpoint grid.

The cuboid is (0,l1) x (0,l2) x (-l3_minus, l3_plus) with the interface at
x3 = 0.  The vertical axis is sampled at cell midpoints with one uniform
spacing h shared by both blocks, so no sample ever sits on the interface or
on the horizontal boundaries.  The horizontal axes are sampled at the usual
periodic nodes j*l/n.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IncommensurateBlocks,
    NonPositiveLength,
    NonPositiveParameter,
    TooCoarse,
)


@dataclass(frozen=True)
class DomainSpec:
    l1: float
    l2: float
    l3_plus: float
    l3_minus: float

    @property
    def l3(self) -> float:
        return self.l3_plus + self.l3_minus


@dataclass(frozen=True)
class PhysicalParams:
    eps: float
    mu: float
    omega: float

    @property
    def omega2(self) -> float:
        return self.omega * self.omega

    @property
    def k2_bulk(self) -> float:
        """omega^2 * eps * mu, the Helmholtz multiplier."""
        return self.omega * self.omega * self.eps * self.mu


@dataclass(frozen=True)
class ValidatedDomain:
    domain: DomainSpec
    params: PhysicalParams


def validate_domain(spec: DomainSpec, params: PhysicalParams) -> ValidatedDomain:
    """Check positivity invariants and return the validated pair."""
    for name in ("l1", "l2", "l3_plus", "l3_minus"):
        if not getattr(spec, name) > 0:
            raise NonPositiveLength(name)
    for name in ("eps", "mu", "omega"):
        if not getattr(params, name) > 0:
            raise NonPositiveParameter(name)
    return ValidatedDomain(spec, params)


@dataclass(frozen=True)
class Grid:
    """Midpoint grid over both blocks with equal vertical spacing.

    Vertical index m runs bottom to top: m in [0, n3_minus) is the lower
    block, m in [n3_minus, n3) the upper block.
    """

    domain: DomainSpec
    n1: int
    n2: int
    n3_plus: int
    n3_minus: int

    @property
    def n3(self) -> int:
        return self.n3_plus + self.n3_minus

    @property
    def h(self) -> float:
        return self.domain.l3 / self.n3

    @property
    def x1(self) -> np.ndarray:
        return np.arange(self.n1) * (self.domain.l1 / self.n1)

    @property
    def x2(self) -> np.ndarray:
        return np.arange(self.n2) * (self.domain.l2 / self.n2)

    @property
    def x3(self) -> np.ndarray:
        """Midpoints of the union grid, ascending from the bottom."""
        return -self.domain.l3_minus + (np.arange(self.n3) + 0.5) * self.h

    @property
    def lower(self) -> slice:
        return slice(0, self.n3_minus)

    @property
    def upper(self) -> slice:
        return slice(self.n3_minus, self.n3)

    @property
    def shape(self) -> tuple:
        return (self.n1, self.n2, self.n3)

    @property
    def cell_weight(self) -> float:
        """Quadrature weight of one sample for discrete L2 norms."""
        return (self.domain.l1 / self.n1) * (self.domain.l2 / self.n2) * self.h


def build_grid(valdom: ValidatedDomain, n1: int, n2: int, n3_plus: int) -> Grid:
    """Derive n3_minus from the equal-spacing rule and validate counts."""
    dom = valdom.domain
    if n1 < 4 or n2 < 4 or n1 % 2 or n2 % 2:
        raise TooCoarse("n1 and n2 must be even and at least 4")
    if n3_plus < 2:
        raise TooCoarse("n3_plus must be at least 2")
    ratio = n3_plus * dom.l3_minus / dom.l3_plus
    n3_minus = int(round(ratio))
    if abs(ratio - n3_minus) > 1e-9 * max(1, n3_plus):
        raise IncommensurateBlocks(
            f"n3_plus={n3_plus} gives non-integer lower count {ratio!r}"
        )
    if n3_minus < 2:
        raise TooCoarse("derived n3_minus is below 2")
    grid = Grid(dom, n1, n2, n3_plus, n3_minus)
    # Spacing agreement is exact up to rounding of the length quotient.
    assert abs(dom.l3_plus / n3_plus - dom.l3_minus / n3_minus) <= 1e-12 * grid.h
    return grid
