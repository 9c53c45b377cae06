"""Helmholtz decomposition of source data and weak right-hand-side assembly.

The admissible gradient directions are fixed by the solution spaces: an
electric potential must vanish on the interface and the horizontal
boundaries (so its horizontal gradient cannot disturb the interface
condition on E1), while a magnetic potential may jump across the interface
only in a way that keeps its axial derivative single-valued there.

Discretely this gives

  * E side: per-block sine potentials (both blocks, all horizontal modes),
  * H side: per-block cosine potentials in the k1 = 0 sectors, plus
    full-domain cosine potentials in the k1 != 0 sectors.

Both families have mutually orthogonal gradients, so the normal equations
are diagonal: lambda_k phi_k = <f, grad b_k> with lambda_k the Laplace
eigenvalue of the potential mode.  The hybrid H-side basis keeps the axial
derivative of every potential inside the solver's own representation,
which is what lets the solver reproduce manufactured solutions exactly
after the gradient corrections are added back.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    COSINE_FULL,
    COSINE_LOWER,
    COSINE_UPPER,
    SINE,
    SINE_LOWER,
    SINE_UPPER,
    SpectralScalar,
    derivative,
    derivative_factors,
    interval,
    mode_rates,
    n_modes,
)
from .errors import ShapeMismatch
from .fields import Component
from .geometry import Grid, PhysicalParams


@dataclass
class SourcePair:
    """The six source components f_h, f_e on a shared grid."""

    grid: Grid
    fh: tuple  # (fh1, fh2, fh3) Components
    fe: tuple  # (fe1, fe2, fe3) Components

    def __post_init__(self):
        for c in (*self.fh, *self.fe):
            if c.grid != self.grid:
                raise ShapeMismatch("source component grid mismatch")

    @classmethod
    def zero(cls, grid: Grid) -> "SourcePair":
        z = lambda: Component.zero(grid)
        return cls(grid, (z(), z(), z()), (z(), z(), z()))

    @classmethod
    def from_nodal(cls, grid: Grid, fh_arrays, fe_arrays) -> "SourcePair":
        fh = tuple(Component.from_nodal(grid, a) for a in fh_arrays)
        fe = tuple(Component.from_nodal(grid, a) for a in fe_arrays)
        return cls(grid, fh, fe)


def _nonzero_k1_mask(grid: Grid) -> np.ndarray:
    m = np.ones((grid.n1, 1, 1), dtype=bool)
    m[0] = False
    return m


def _potential_lambda(grid: Grid, space) -> np.ndarray:
    """Discrete Laplace eigenvalue of every potential mode."""
    d1 = np.abs(derivative_factors(grid, 1)) ** 2
    d2 = np.abs(derivative_factors(grid, 2)) ** 2
    r = mode_rates(grid, space) ** 2
    return d1 + d2 + r[None, None, :]


def _gradient_pairings(f: tuple, space) -> np.ndarray:
    """<f, grad b_k> for every mode of the potential space."""
    grid = f[0].grid
    out = np.conj(derivative_factors(grid, 1)) * f[0].pair_x3(space)
    out += np.conj(derivative_factors(grid, 2)) * f[1].pair_x3(space)
    rates = mode_rates(grid, space)
    n = n_modes(grid, space)
    if space.kind == SINE:
        # d3 of sine mode k is +(pi k/L) cos_k; top mode excluded
        p = f[2].pair_x3(space.flipped())
        out[:, :, : n - 1] += rates[None, None, : n - 1] * p[:, :, 1:]
    else:
        # d3 of cosine mode k is -(pi k/L) sin_k
        p = f[2].pair_x3(space.flipped())
        out[:, :, 1:] += -rates[None, None, 1:] * p[:, :, : n - 1]
    return out


def _h_mask(grid: Grid, space) -> np.ndarray:
    """Mode selector implementing the hybrid magnetic potential basis."""
    n = n_modes(grid, space)
    mask = np.ones((grid.n1, grid.n2, n), dtype=bool)
    if space.support == "full":
        mask &= _nonzero_k1_mask(grid)
    else:
        mask &= ~_nonzero_k1_mask(grid)
        mask[0, 0, 0] = False  # per-block constant has zero gradient
    return mask


def _e_mask(grid: Grid, space) -> np.ndarray:
    n = n_modes(grid, space)
    mask = np.ones((grid.n1, grid.n2, n), dtype=bool)
    mask[:, :, n - 1] = False  # top sine mode: axial derivative leaves the band
    return mask


E_POTENTIAL_SPACES = (SINE_UPPER, SINE_LOWER)
H_POTENTIAL_SPACES = (COSINE_UPPER, COSINE_LOWER, COSINE_FULL)


def _project(f: tuple, spaces, mask_fn):
    grid = f[0].grid
    grads = [Component.zero(grid) for _ in range(3)]
    potentials = []
    for space in spaces:
        lam = _potential_lambda(grid, space)
        rhs = _gradient_pairings(f, space)
        mask = mask_fn(grid, space)
        coeffs = np.zeros_like(rhs)
        np.divide(rhs, lam, out=coeffs, where=mask & (lam > 0))
        coeffs[~mask] = 0.0
        pot = SpectralScalar(grid, space, coeffs)
        potentials.append(pot)
        grads[0] = grads[0] + Component.from_parts(grid, derivative(pot, 1))
        grads[1] = grads[1] + Component.from_parts(grid, derivative(pot, 2))
        grads[2] = grads[2] + Component.from_parts(grid, derivative(pot, 3))
    f_tilde = tuple(fc - gc for fc, gc in zip(f, grads))
    return f_tilde, tuple(grads), potentials


def project_e(f_e: tuple):
    """Split f_e into a part orthogonal to every admissible electric
    potential gradient plus the gradient itself."""
    f_tilde, grads, _ = _project(f_e, E_POTENTIAL_SPACES, _e_mask)
    return f_tilde, grads


def project_h(f_h: tuple):
    """As project_e for the magnetic potential family."""
    f_tilde, grads, _ = _project(f_h, H_POTENTIAL_SPACES, _h_mask)
    return f_tilde, grads


def gradient_pair_norm(f: tuple, kind: str) -> float:
    """Norm of <f, grad b_k> over the discrete potential basis (diagnostic)."""
    spaces, mask_fn = (
        (E_POTENTIAL_SPACES, _e_mask) if kind == "e" else (H_POTENTIAL_SPACES, _h_mask)
    )
    total = 0.0
    for space in spaces:
        rhs = _gradient_pairings(f, space)
        mask = mask_fn(f[0].grid, space)
        total += float(np.sum(np.abs(rhs[mask]) ** 2))
    return float(np.sqrt(total))


# ---------------------------------------------------------------------------
# weak right-hand sides


@dataclass
class WeakRhs:
    """The six assembled linear forms in spectral/tensor form.

    The two axial forms live on the solution bases (per-block sine for E1,
    full-domain cosine for H1); the four transverse forms are
    horizontal-Fourier x vertical-node tensors.
    """

    grid: Grid
    e1_upper: np.ndarray
    e1_lower: np.ndarray
    h1: np.ndarray
    e2: np.ndarray
    h2: np.ndarray
    e3: np.ndarray
    h3: np.ndarray


def rhs_e1_block(src: SourcePair, params: PhysicalParams, space) -> np.ndarray:
    """iwm <fe1, b> + <fh, curl(e1 b)> over one block's sine basis.

    The top sine mode k = n is excluded from the weak system: its axial
    derivative is the cosine mode invisible at every midpoint, so the
    integration-by-parts cancellations that the form relies on cannot be
    represented there.
    """
    grid = src.grid
    iwm = 1j * params.omega * params.mu
    fe1, fh2, fh3 = src.fe[0], src.fh[1], src.fh[2]
    out = iwm * fe1.pair_x3(space)
    rates = mode_rates(grid, space)
    n = n_modes(grid, space)
    p2 = fh2.pair_x3(space.flipped())  # cosine counterpart
    out[:, :, : n - 1] += rates[None, None, : n - 1] * p2[:, :, 1:]
    out += (
        derivative_factors(grid, 2) * fh3.pair_x3(space)
    )  # -(conj d2) = +d2 for the -<fh3, d2 b> term
    out[:, :, n - 1] = 0.0
    return out


def rhs_h1(src: SourcePair, params: PhysicalParams) -> np.ndarray:
    """-iwe <fh1, b> + <fe, curl(e1 b)> over the full cosine basis."""
    grid = src.grid
    iwe = 1j * params.omega * params.eps
    fh1, fe2, fe3 = src.fh[0], src.fe[1], src.fe[2]
    out = -iwe * fh1.pair_x3(COSINE_FULL)
    rates = mode_rates(grid, COSINE_FULL)
    n = n_modes(grid, COSINE_FULL)
    p2 = fe2.pair_x3(COSINE_FULL.flipped())  # sine counterpart
    out[:, :, 1:] += -rates[None, None, 1:] * p2[:, :, : n - 1]
    out += derivative_factors(grid, 2) * fe3.pair_x3(COSINE_FULL)
    return out


def assemble_weak_rhs(src: SourcePair, params: PhysicalParams) -> WeakRhs:
    grid = src.grid
    iwm = 1j * params.omega * params.mu
    iwe = 1j * params.omega * params.eps
    d1c = np.conj(derivative_factors(grid, 1))
    fh2_h, fh3_h = src.fh[1].hnode(), src.fh[2].hnode()
    fe2_h, fe3_h = src.fe[1].hnode(), src.fe[2].hnode()
    return WeakRhs(
        grid,
        e1_upper=rhs_e1_block(src, params, SINE_UPPER),
        e1_lower=rhs_e1_block(src, params, SINE_LOWER),
        h1=rhs_h1(src, params),
        e2=d1c * fh3_h + iwm * fe2_h,
        h2=d1c * fe3_h - iwe * fh2_h,
        e3=-d1c * fh2_h + iwm * fe3_h,
        h3=-d1c * fe2_h - iwe * fh3_h,
    )
