"""Closed-form spectrum enumeration and explicit eigenmode generation.

The eigenvalues (in omega^2 units) of the coupled system are the union of
Neumann-Laplace spectra on the full cuboid and on the two blocks,

    (4 pi^2 / (eps mu)) * (k1^2/L1^2 + k2^2/L2^2 + k3^2/(4 L3^2)),

with k in N_0^3 and L3 one of l3, l3_plus, l3_minus.  The axial family
4 pi^2 k1^2 / (eps mu l1^2) marks frequencies where the reduction to the
six scalar equations loses equivalence with the first-order system.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import (
    COSINE_FULL,
    COSINE_LOWER,
    COSINE_UPPER,
    LOWER,
    SINE_FULL,
    SINE_LOWER,
    SINE_UPPER,
    UPPER,
)
from .errors import DegenerateMode
from .fields import COS, Component, FieldPair, SIN, horizontal_mode, plain_profile_part
from .geometry import DomainSpec, Grid, PhysicalParams

PROVENANCE_ORDER = {"full": 0, "upper": 1, "lower": 2, "axial": 3}


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    k1: int
    k2: int
    k3: int
    provenance: str

    def recompute(self, domain: DomainSpec, params: PhysicalParams) -> float:
        if self.provenance == "axial":
            return (
                4 * math.pi**2 * self.k1**2 / (params.eps * params.mu * domain.l1**2)
            )
        length3 = {
            "full": domain.l3,
            "upper": domain.l3_plus,
            "lower": domain.l3_minus,
        }[self.provenance]
        return sigma_value(
            domain.l1, domain.l2, length3, params.eps, params.mu, self.k1, self.k2, self.k3
        )


def sigma_value(L1, L2, L3, eps, mu, k1, k2, k3) -> float:
    return (4 * math.pi**2 / (eps * mu)) * (
        k1**2 / L1**2 + k2**2 / L2**2 + k3**2 / (4 * L3**2)
    )


def _sort_key(e: SpectrumEntry):
    return (e.value, PROVENANCE_ORDER[e.provenance], e.k1, e.k2, e.k3)


def enumerate_sigma(L1, L2, L3, eps, mu, cutoff, provenance="full"):
    """All eigenvalues <= cutoff, ascending, ties ordered lexicographically."""
    if not cutoff >= 0:
        raise ValueError("cutoff must be nonnegative")
    scale = 4 * math.pi**2 / (eps * mu)
    out = []
    k1max = int(math.floor(L1 * math.sqrt(cutoff / scale))) if cutoff > 0 else 0
    for k1 in range(k1max + 1):
        r1 = scale * k1**2 / L1**2
        if r1 > cutoff:
            break
        k2max = int(math.floor(L2 * math.sqrt(max(cutoff - r1, 0) / scale)))
        for k2 in range(k2max + 1):
            r2 = r1 + scale * k2**2 / L2**2
            if r2 > cutoff:
                break
            k3max = int(math.floor(2 * L3 * math.sqrt(max(cutoff - r2, 0) / scale)))
            for k3 in range(k3max + 1):
                v = sigma_value(L1, L2, L3, eps, mu, k1, k2, k3)
                if v <= cutoff:
                    out.append(SpectrumEntry(v, k1, k2, k3, provenance))
    out.sort(key=_sort_key)
    return out


def maxwell_spectrum(domain: DomainSpec, params: PhysicalParams, cutoff):
    """Union of the full/upper/lower spectra with provenance tags."""
    entries = []
    for length3, prov in (
        (domain.l3, "full"),
        (domain.l3_plus, "upper"),
        (domain.l3_minus, "lower"),
    ):
        entries.extend(
            enumerate_sigma(domain.l1, domain.l2, length3, params.eps, params.mu, cutoff, prov)
        )
    entries.sort(key=_sort_key)
    return entries


def axial_spectrum(domain: DomainSpec, params: PhysicalParams, cutoff):
    scale = 4 * math.pi**2 / (params.eps * params.mu * domain.l1**2)
    k1max = int(math.floor(math.sqrt(cutoff / scale))) if cutoff > 0 else 0
    return [
        SpectrumEntry(scale * k1**2, k1, 0, 0, "axial") for k1 in range(k1max + 1)
    ]


@dataclass(frozen=True)
class ResonanceDiagnostic:
    omega2: float
    dist_to_sigma_m: float
    nearest: SpectrumEntry
    dist_to_sigma_l1: float
    nearest_axial: SpectrumEntry
    resonant: bool


def resonance_check(params: PhysicalParams, domain: DomainSpec, tol) -> ResonanceDiagnostic:
    """Distances of omega^2 to the coupled and axial spectra."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    w2 = params.omega2
    cutoff = max(2 * w2, 1.0)
    entries = maxwell_spectrum(domain, params, cutoff)
    nearest = min(entries, key=lambda e: (abs(e.value - w2),) + _sort_key(e))
    axial = axial_spectrum(domain, params, cutoff)
    nearest_ax = min(axial, key=lambda e: (abs(e.value - w2), e.k1))
    dist = abs(nearest.value - w2)
    dist_ax = abs(nearest_ax.value - w2)
    resonant = min(dist, dist_ax) < tol * w2
    return ResonanceDiagnostic(w2, dist, nearest, dist_ax, nearest_ax, resonant)


# ---------------------------------------------------------------------------
# explicit closed-form modes


def _omega_for(domain, params, case, k):
    length3 = {"bulk": domain.l3, "upper": domain.l3_plus, "lower": domain.l3_minus}[case]
    prov = {"bulk": "full", "upper": "upper", "lower": "lower"}[case]
    value = sigma_value(domain.l1, domain.l2, length3, params.eps, params.mu, *k)
    return math.sqrt(value), SpectrumEntry(value, *k, prov)


def _w_component(grid: Grid, case: str, k) -> Component:
    """cos(2 pi k1 x1/l1) cos(2 pi k2 x2/l2) times the vertical profile."""
    k1, k2, k3 = k
    hor = horizontal_mode(grid, COS, k1, COS, k2)
    if case == "bulk":
        return Component.from_parts(grid, plain_profile_part(grid, COSINE_FULL, k3, hor))
    space = SINE_UPPER if case == "upper" else SINE_LOWER
    # vertical profile sin(pi k3 (x3 - a)/L) on the chosen block; on the
    # lower block this equals sin(pi k3 x3 / l3_minus) up to the sign
    # (-1)^(k3+1), an eigenfunction either way
    return Component.from_parts(grid, plain_profile_part(grid, space, k3, hor))


def eigenmode(domain: DomainSpec, params: PhysicalParams, grid: Grid, case: str, k) -> tuple:
    """Closed-form null mode of the homogeneous system at its own frequency.

    Returns (FieldPair, omega, SpectrumEntry); every component carries its
    exact spectral parts.
    """
    k1, k2, k3 = k
    if case == "bulk":
        if k2 == 0 and k3 == 0:
            raise DegenerateMode(
                f"bulk mode k={tuple(k)}: both curl components of the generator vanish"
            )
    elif case in ("upper", "lower"):
        if k3 < 1:
            raise DegenerateMode(f"{case} mode requires k3 >= 1, got {k3}")
    else:
        raise ValueError(f"unknown case {case!r}")
    omega, entry = _omega_for(domain, params, case, k)
    w = _w_component(grid, case, k)
    dw2, dw3 = w.d2(), w.d3_exact()
    if case == "bulk":
        e = (Component.zero(grid), dw3, dw2.scaled(-1.0))
        fac = 1.0 / (1j * omega * params.mu)
        h = (
            (dw2.d2() + dw3.d3_exact()).scaled(-fac),
            w.d1().d2().scaled(fac),
            w.d1().d3_exact().scaled(fac),
        )
    else:
        h = (Component.zero(grid), dw3, dw2.scaled(-1.0))
        fac = 1.0 / (-1j * omega * params.eps)
        e = (
            (dw2.d2() + dw3.d3_exact()).scaled(-fac),
            w.d1().d2().scaled(fac),
            w.d1().d3_exact().scaled(fac),
        )
    return FieldPair.from_components(grid, e, h), omega, entry


def full_reflection_mode(domain: DomainSpec, params: PhysicalParams, grid: Grid, half: str, k):
    """Half-domain mode satisfying the curl equations but with a jump in H1.

    E1 and E2 vanish on the interface while H1 does not, so this pair is a
    counterexample for the interface conditions, not a solution.
    """
    k1, k2, k3 = k
    if half not in ("upper", "lower"):
        raise ValueError(f"half must be 'upper' or 'lower', got {half!r}")
    if k3 < 1:
        raise DegenerateMode(f"full-reflection mode requires k3 >= 1, got {k3}")
    omega, entry = _omega_for(domain, params, half, k)
    w = _w_component(grid, half, k)
    dw1, dw3 = w.d1(), w.d3_exact()
    h = (dw3.scaled(-1.0), Component.zero(grid), dw1)
    fac = 1.0 / (-1j * omega * params.eps)
    e = (
        dw1.d2().scaled(fac),
        (dw1.d1() + dw3.d3_exact()).scaled(-fac),
        w.d2().d3_exact().scaled(fac),
    )
    return FieldPair.from_components(grid, e, h), omega, entry


def helmholtz_only_mode(domain: DomainSpec, params: PhysicalParams, grid: Grid, k1: int):
    """Axial-resonance pair solving the scalar system but not the curl system.

    E = (0, sin(2 pi k1 x1/l1), 0), H = 0 at omega^2 = 4 pi^2 k1^2/(eps mu l1^2).
    """
    if k1 < 1:
        raise ValueError("k1 must be >= 1")
    value = 4 * math.pi**2 * k1**2 / (params.eps * params.mu * domain.l1**2)
    omega = math.sqrt(value)
    hor = horizontal_mode(grid, SIN, k1, COS, 0)
    e2 = Component.from_parts(grid, plain_profile_part(grid, COSINE_FULL, 0, hor))
    fields = FieldPair.zero(grid)
    fields.e2 = e2
    return fields, omega
