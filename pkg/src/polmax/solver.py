"""Three-step solver for the six scalar equations of the reformulated system.

Step one solves the interface-Dirichlet problem for E1 on each block, step
two the full-domain Neumann-type problem for H1, and step three a family
of one-dimensional periodic Helmholtz problems in x1 for the four
transverse components.  All three steps are diagonal in the spectral
representations, so solving is division by (lambda - omega^2 eps mu).

The solver only ever sees gradient-projected data; the gradient parts of
the original sources are added back at the end, which reconstructs the
solution for the unprojected right-hand side.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .basis import (
    COSINE_FULL,
    SINE_LOWER,
    SINE_UPPER,
    SpectralScalar,
    derivative_factors,
    mode_rates,
    n_modes,
    signed_wavenumbers,
)
from .errors import ResonantAxialFrequency, ResonantFrequency
from .fields import Component, FieldPair
from .geometry import DomainSpec, Grid, PhysicalParams
from .sources import SourcePair, WeakRhs, assemble_weak_rhs, project_e, project_h
from .spectrum import resonance_check

RESONANCE_RTOL = 1e-8


@dataclass
class SolveReport:
    omega2: float
    dist_to_sigma_m: float
    nearest_value: float
    nearest_k: tuple
    nearest_provenance: str
    dist_to_sigma_l1: float
    n_modes_axial: int
    n_modes_transverse: int
    wall_time: float = 0.0

    def as_dict(self):
        return {
            "omega2": self.omega2,
            "dist_to_sigma_m": self.dist_to_sigma_m,
            "nearest_value": self.nearest_value,
            "nearest_k": list(self.nearest_k),
            "nearest_provenance": self.nearest_provenance,
            "dist_to_sigma_l1": self.dist_to_sigma_l1,
            "n_modes_axial": self.n_modes_axial,
            "n_modes_transverse": self.n_modes_transverse,
            "wall_time": self.wall_time,
        }


def _helmholtz_lambda(grid: Grid, space) -> np.ndarray:
    d1 = np.abs(derivative_factors(grid, 1)) ** 2
    d2 = np.abs(derivative_factors(grid, 2)) ** 2
    r = mode_rates(grid, space) ** 2
    return d1 + d2 + r[None, None, :]


def _guard_axial(grid: Grid, space, params: PhysicalParams, rtol):
    """Reject frequencies too close to a represented eigenvalue."""
    lam = _helmholtz_lambda(grid, space)
    s = params.k2_bulk
    gap = np.abs(lam - s)
    idx = np.unravel_index(np.argmin(gap), gap.shape)
    if gap[idx] < rtol * s:
        k1 = abs(signed_wavenumbers(grid.n1)[idx[0]])
        k2 = abs(signed_wavenumbers(grid.n2)[idx[1]])
        k3 = idx[2] + 1 if space.kind == "sine" else idx[2]
        prov = {"full": "full", "upper": "upper", "lower": "lower"}[space.support]
        raise ResonantFrequency(
            lam[idx] / (params.eps * params.mu), (k1, k2, k3), prov, gap[idx]
        )
    return lam


def solve_axial(rhs: WeakRhs, params: PhysicalParams, grid: Grid, rtol=RESONANCE_RTOL):
    """Diagonal solves for E1 (per-block sine) and H1 (full cosine)."""
    s = params.k2_bulk
    parts = []
    for space, tensor in ((SINE_UPPER, rhs.e1_upper), (SINE_LOWER, rhs.e1_lower)):
        lam = _guard_axial(grid, space, params, rtol)
        parts.append(SpectralScalar(grid, space, tensor / (lam - s)))
    e1 = Component.from_parts(grid, *parts)
    lam = _guard_axial(grid, COSINE_FULL, params, rtol)
    h1 = Component.from_parts(grid, SpectralScalar(grid, COSINE_FULL, rhs.h1 / (lam - s)))
    return e1, h1


def _axial_denominator(grid: Grid, params: PhysicalParams, rtol):
    """(2 pi k1/l1)^2 - omega^2 eps mu per k1 slot, with a resonance guard."""
    k1 = signed_wavenumbers(grid.n1).astype(float)
    mult = (2 * np.pi * k1 / grid.domain.l1) ** 2
    s = params.k2_bulk
    den = mult - s
    i = int(np.argmin(np.abs(den)))
    if abs(den[i]) < rtol * s:
        raise ResonantAxialFrequency(
            mult[i] / (params.eps * params.mu), abs(int(k1[i])), abs(den[i])
        )
    return den[:, None, None]


def solve_transverse(
    e1: Component,
    h1: Component,
    rhs: WeakRhs,
    params: PhysicalParams,
    grid: Grid,
    rtol=RESONANCE_RTOL,
):
    """One-dimensional periodic solves per horizontal mode and vertical node."""
    den = _axial_denominator(grid, params, rtol)
    iwm = 1j * params.omega * params.mu
    iwe = 1j * params.omega * params.eps
    d1c = np.conj(derivative_factors(grid, 1))
    d2 = derivative_factors(grid, 2)

    spectral_inputs = e1.is_spectral and h1.is_spectral

    e1_h = e1.hnode()
    h1_h = h1.hnode()
    d3e1 = e1.d3_exact().hnode() if e1.is_spectral else None
    d3h1 = h1.d3_exact().hnode() if h1.is_spectral else None
    if d3e1 is None or d3h1 is None:
        raise ValueError("solve_transverse requires spectral axial components")

    num_e2 = d1c * d2 * e1_h - iwm * d3h1 + rhs.e2
    num_h2 = d1c * d2 * h1_h - iwe * d3e1 + rhs.h2
    num_e3 = d1c * d3e1 + iwm * d2 * h1_h + rhs.e3
    num_h3 = d1c * d3h1 - iwe * d2 * e1_h + rhs.h3

    def to_component(num):
        from .basis import horizontal_synthesis

        return Component.from_nodal(grid, horizontal_synthesis(grid, num / den))

    return tuple(to_component(n) for n in (num_e2, num_e3, num_h2, num_h3))


def _transverse_parts(ingredients, den, grid):
    """Carry exact spectral parts through the diagonal division."""
    out_parts = []
    for comp, factor in ingredients:
        for p in comp.parts:
            out_parts.append(
                SpectralScalar(grid, p.space, p.coeffs * factor / den)
            )
    return out_parts


def solve(
    src: SourcePair,
    params: PhysicalParams,
    domain: DomainSpec,
    grid: Grid,
    rtol=RESONANCE_RTOL,
):
    """Full pipeline: decompose sources, solve, add gradient corrections."""
    t0 = time.perf_counter()
    diag = resonance_check(params, domain, rtol)
    if diag.dist_to_sigma_m < rtol * params.omega2:
        n = diag.nearest
        raise ResonantFrequency(n.value, (n.k1, n.k2, n.k3), n.provenance, diag.dist_to_sigma_m)
    if diag.dist_to_sigma_l1 < rtol * params.omega2:
        n = diag.nearest_axial
        raise ResonantAxialFrequency(n.value, n.k1, diag.dist_to_sigma_l1)

    fe_tilde, grad_phi = project_e(src.fe)
    fh_tilde, grad_psi = project_h(src.fh)
    projected = SourcePair(grid, fh_tilde, fe_tilde)
    rhs = assemble_weak_rhs(projected, params)

    e1, h1 = solve_axial(rhs, params, grid, rtol)
    e2, e3, h2, h3 = _solve_transverse_exact(e1, h1, projected, rhs, params, grid, rtol)

    # corrections for the unprojected sources
    ce = 1.0 / (1j * params.omega * params.eps)
    ch = 1.0 / (1j * params.omega * params.mu)
    e1 = e1 + grad_phi[0].scaled(ce)
    e2 = e2 + grad_phi[1].scaled(ce)
    e3 = e3 + grad_phi[2].scaled(ce)
    h1 = h1 - grad_psi[0].scaled(ch)
    h2 = h2 - grad_psi[1].scaled(ch)
    h3 = h3 - grad_psi[2].scaled(ch)

    fields = FieldPair(grid, e1, e2, e3, h1, h2, h3)
    n_ax = n_modes(grid, SINE_UPPER) + n_modes(grid, SINE_LOWER) + n_modes(grid, COSINE_FULL)
    report = SolveReport(
        omega2=params.omega2,
        dist_to_sigma_m=diag.dist_to_sigma_m,
        nearest_value=diag.nearest.value,
        nearest_k=(diag.nearest.k1, diag.nearest.k2, diag.nearest.k3),
        nearest_provenance=diag.nearest.provenance,
        dist_to_sigma_l1=diag.dist_to_sigma_l1,
        n_modes_axial=n_ax,
        n_modes_transverse=4 * grid.n1 * grid.n2 * grid.n3,
        wall_time=time.perf_counter() - t0,
    )
    return fields, report


def _solve_transverse_exact(e1, h1, src, rhs, params, grid, rtol):
    """Transverse solve keeping exact spectral parts for every ingredient.

    Every term entering the four numerators is a spectral part times a
    horizontal multiplier, and the division by the axial denominator is
    diagonal in k1, so the outputs stay fully spectral whenever the
    sources are.  Nodal source remainders flow through a nodal term.
    """
    den = _axial_denominator(grid, params, rtol)
    iwm = 1j * params.omega * params.mu
    iwe = 1j * params.omega * params.eps
    d1c = np.conj(derivative_factors(grid, 1))
    d2 = derivative_factors(grid, 2)

    d3e1 = e1.d3_exact()
    d3h1 = h1.d3_exact()

    fh1, fh2, fh3 = src.fh
    fe1, fe2, fe3 = src.fe

    recipes = {
        # numerators of the four 1D solves as (component, multiplier) sums
        "e2": ((e1, d1c * d2), (d3h1, -iwm), (fh3, d1c), (fe2, iwm)),
        "h2": ((h1, d1c * d2), (d3e1, -iwe), (fe3, d1c), (fh2, -iwe)),
        "e3": ((d3e1, d1c), (h1, iwm * d2), (fh2, -d1c), (fe3, iwm)),
        "h3": ((d3h1, d1c), (e1, -iwe * d2), (fe2, -d1c), (fh3, -iwe)),
    }
    out = {}
    for name, terms in recipes.items():
        parts = []
        nodal_num = None
        for comp, factor in terms:
            for p in comp.parts:
                parts.append(SpectralScalar(grid, p.space, p.coeffs * (factor / den)))
            if comp.nodal is not None:
                from .basis import horizontal_analysis

                term = horizontal_analysis(grid, comp.nodal) * factor
                nodal_num = term if nodal_num is None else nodal_num + term
        nodal = None
        if nodal_num is not None:
            from .basis import horizontal_synthesis

            nodal = horizontal_synthesis(grid, nodal_num / den)
        out[name] = Component(grid, tuple(parts), nodal).merged()
    return out["e2"], out["e3"], out["h2"], out["h3"]
