"""Parity-aware trigonometric bases, transforms, and exact differentiation.

Horizontal axes always use the orthonormal periodic Fourier basis
exp(2*pi*i*k*x/l)/sqrt(l) realized with the FFT.  The vertical axis uses one
of six bases on the midpoint grid, all orthonormal in the continuous L2
inner product of their interval (a, a+L):

    sine   modes  sqrt(2/L) * sin(pi*k*(x-a)/L),   k = 1..n
    cosine modes  nu_k      * cos(pi*k*(x-a)/L),   k = 0..n-1

with nu_0 = sqrt(1/L), nu_k = sqrt(2/L), over the full interval or either
block.  Both families are critically sampled on n midpoints and invert
exactly; vertical transforms are dense matrix products.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BlockMismatch, NodalAxisDerivative, NodalAxisTrace, ShapeMismatch
from .geometry import Grid

SINE = "sine"
COSINE = "cosine"
NODAL = "nodal"

FULL = "full"
UPPER = "upper"
LOWER = "lower"

# trace locations
GAMMA_PLUS = "gamma+"
GAMMA_MINUS = "gamma-"
TOP = "top"
BOTTOM = "bottom"


@dataclass(frozen=True)
class X3Space:
    """Vertical basis descriptor: parity kind and block support."""

    kind: str  # SINE | COSINE | NODAL
    support: str  # FULL | UPPER | LOWER

    def flipped(self) -> "X3Space":
        if self.kind == NODAL:
            raise NodalAxisDerivative("nodal axis has no parity flip")
        return X3Space(COSINE if self.kind == SINE else SINE, self.support)


SINE_FULL = X3Space(SINE, FULL)
COSINE_FULL = X3Space(COSINE, FULL)
SINE_UPPER = X3Space(SINE, UPPER)
SINE_LOWER = X3Space(SINE, LOWER)
COSINE_UPPER = X3Space(COSINE, UPPER)
COSINE_LOWER = X3Space(COSINE, LOWER)


def interval(grid: Grid, support: str):
    """Return (a, L, n, slice) of a support block within the union grid."""
    dom = grid.domain
    if support == FULL:
        return -dom.l3_minus, dom.l3, grid.n3, slice(0, grid.n3)
    if support == UPPER:
        return 0.0, dom.l3_plus, grid.n3_plus, grid.upper
    if support == LOWER:
        return -dom.l3_minus, dom.l3_minus, grid.n3_minus, grid.lower
    raise ValueError(f"unknown support {support!r}")


def n_modes(grid: Grid, space: X3Space) -> int:
    return interval(grid, space.support)[2]


def mode_numbers(grid: Grid, space: X3Space) -> np.ndarray:
    n = n_modes(grid, space)
    return np.arange(1, n + 1) if space.kind == SINE else np.arange(n)


def mode_rates(grid: Grid, space: X3Space) -> np.ndarray:
    """pi*k/L for every mode slot."""
    _, length, _, _ = interval(grid, space.support)
    return np.pi * mode_numbers(grid, space) / length


@lru_cache(maxsize=None)
def synthesis_matrix(grid: Grid, space: X3Space) -> np.ndarray:
    """(n_samples, n_modes) matrix of basis values at the block midpoints."""
    _, length, n, _ = interval(grid, space.support)
    m = np.arange(n) + 0.5
    if space.kind == SINE:
        k = np.arange(1, n + 1)
        return np.sqrt(2.0 / length) * np.sin(np.pi * np.outer(m, k) / n)
    if space.kind == COSINE:
        k = np.arange(n)
        nu = np.full(n, np.sqrt(2.0 / length))
        nu[0] = np.sqrt(1.0 / length)
        return np.cos(np.pi * np.outer(m, k) / n) * nu
    raise NodalAxisDerivative("nodal axis has no synthesis matrix")


@lru_cache(maxsize=None)
def analysis_matrix(grid: Grid, space: X3Space) -> np.ndarray:
    """Exact inverse of the synthesis matrix (n_modes, n_samples)."""
    _, length, n, _ = interval(grid, space.support)
    syn = synthesis_matrix(grid, space)
    scale = np.full(n, length / n)
    if space.kind == SINE:
        scale[n - 1] = length / (2 * n)  # top sine mode has doubled diagonal
    return scale[:, None] * syn.T


def parseval_weights(grid: Grid, space: X3Space) -> np.ndarray:
    """Weights w_k with sum_m |f_m|^2 h = sum_k w_k |c_k|^2."""
    n = n_modes(grid, space)
    w = np.ones(n)
    if space.kind == SINE:
        w[n - 1] = 2.0
    return w


def evaluate_modes(grid: Grid, space: X3Space, x3: float) -> np.ndarray:
    """Basis values at an arbitrary vertical point (no support check)."""
    a, length, n, _ = interval(grid, space.support)
    xi = x3 - a
    if space.kind == SINE:
        k = np.arange(1, n + 1)
        return np.sqrt(2.0 / length) * np.sin(np.pi * k * xi / length)
    k = np.arange(n)
    nu = np.full(n, np.sqrt(2.0 / length))
    nu[0] = np.sqrt(1.0 / length)
    return nu * np.cos(np.pi * k * xi / length)


def signed_wavenumbers(n: int) -> np.ndarray:
    """Integer wavenumbers in FFT order with the Nyquist mode at +n/2."""
    k = np.fft.fftfreq(n, d=1.0 / n).astype(int)
    if n % 2 == 0:
        k[n // 2] = n // 2
    return k


@lru_cache(maxsize=None)
def _derivative_factors(n: int, length: float) -> np.ndarray:
    """2*pi*i*k/l per FFT slot with the Nyquist mode zeroed."""
    k = signed_wavenumbers(n).astype(float)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return 2j * np.pi * k / length


def derivative_factors(grid: Grid, axis: int) -> np.ndarray:
    """Broadcastable horizontal derivative multipliers for axis 1 or 2."""
    if axis == 1:
        d = _derivative_factors(grid.n1, grid.domain.l1)
        return d[:, None, None]
    if axis == 2:
        d = _derivative_factors(grid.n2, grid.domain.l2)
        return d[None, :, None]
    raise ValueError("horizontal axis must be 1 or 2")


def horizontal_analysis(grid: Grid, samples: np.ndarray) -> np.ndarray:
    """Orthonormal Fourier coefficients along axes 0 and 1."""
    scale = np.sqrt(grid.domain.l1 * grid.domain.l2) / (grid.n1 * grid.n2)
    return np.fft.fft2(samples, axes=(0, 1)) * scale


def horizontal_synthesis(grid: Grid, coeffs: np.ndarray) -> np.ndarray:
    scale = (grid.n1 * grid.n2) / np.sqrt(grid.domain.l1 * grid.domain.l2)
    return np.fft.ifft2(coeffs, axes=(0, 1)) * scale


@dataclass(frozen=True)
class ScalarField:
    """Complex samples on one block (or both) of the midpoint grid."""

    grid: Grid
    support: str
    samples: np.ndarray  # (n1, n2, n_block)

    def __post_init__(self):
        n = interval(self.grid, self.support)[2]
        if self.samples.shape != (self.grid.n1, self.grid.n2, n):
            raise ShapeMismatch(
                f"samples shape {self.samples.shape} does not match "
                f"{(self.grid.n1, self.grid.n2, n)}"
            )


@dataclass(frozen=True)
class SpectralScalar:
    """Coefficients in (Fourier x Fourier x vertical-parity) form."""

    grid: Grid
    space: X3Space
    coeffs: np.ndarray  # (n1, n2, n_modes)

    def __post_init__(self):
        n = n_modes(self.grid, self.space)
        if self.coeffs.shape != (self.grid.n1, self.grid.n2, n):
            raise ShapeMismatch(
                f"coeffs shape {self.coeffs.shape} does not match "
                f"{(self.grid.n1, self.grid.n2, n)}"
            )


def analyze(field: ScalarField, space: X3Space) -> SpectralScalar:
    """Coefficients of the unique interpolant of the samples in the basis."""
    if space.kind == NODAL:
        raise NodalAxisDerivative("nodal axis has no analysis")
    if field.support != space.support:
        raise BlockMismatch(
            f"field on {field.support!r} cannot be analyzed in a "
            f"{space.support!r} basis"
        )
    hor = horizontal_analysis(field.grid, field.samples)
    mat = analysis_matrix(field.grid, space)
    return SpectralScalar(field.grid, space, np.einsum("km,xym->xyk", mat, hor))


def synthesize(spec: SpectralScalar) -> ScalarField:
    """Nodal samples of the finite series at the block midpoints."""
    mat = synthesis_matrix(spec.grid, spec.space)
    hor = np.einsum("mk,xyk->xym", mat, spec.coeffs)
    return ScalarField(spec.grid, spec.space.support, horizontal_synthesis(spec.grid, hor))


def x3_synthesis(spec: SpectralScalar) -> np.ndarray:
    """Vertical synthesis only: horizontal-Fourier x nodal-x3 tensor."""
    mat = synthesis_matrix(spec.grid, spec.space)
    return np.einsum("mk,xyk->xym", mat, spec.coeffs)


def derivative(spec: SpectralScalar, axis: int) -> SpectralScalar:
    """Exact differentiation; axis 3 flips the vertical parity.

    The top sine mode k = n differentiates onto the cosine mode k = n,
    which vanishes at every midpoint; it is dropped, mirroring the
    horizontal Nyquist rule.
    """
    if axis in (1, 2):
        return SpectralScalar(
            spec.grid, spec.space, spec.coeffs * derivative_factors(spec.grid, axis)
        )
    if axis != 3:
        raise ValueError("axis must be 1, 2 or 3")
    if spec.space.kind == NODAL:
        raise NodalAxisDerivative("vertical derivative needs a parity basis")
    rates = mode_rates(spec.grid, spec.space)
    out_space = spec.space.flipped()
    n = n_modes(spec.grid, spec.space)
    out = np.zeros_like(spec.coeffs)
    if spec.space.kind == SINE:
        # sine k -> cosine k, k = 1..n-1; k = n dropped
        out[:, :, 1:] = spec.coeffs[:, :, : n - 1] * rates[None, None, : n - 1]
    else:
        # cosine k -> sine k with sign flip, k = 1..n-1; k = 0 maps to zero
        out[:, :, : n - 1] = -spec.coeffs[:, :, 1:] * rates[None, None, 1:]
    return SpectralScalar(spec.grid, out_space, out)


def trace_x3(spec: SpectralScalar, location: str) -> np.ndarray:
    """Horizontal Fourier spectrum of the series at an interface/boundary.

    A half-domain basis evaluated from the other side of the interface (or
    at the opposite boundary) contributes zero.
    """
    if spec.space.kind == NODAL:
        raise NodalAxisTrace("vertical trace needs a parity basis")
    grid, dom = spec.grid, spec.grid.domain
    points = {
        GAMMA_PLUS: 0.0,
        GAMMA_MINUS: 0.0,
        TOP: dom.l3_plus,
        BOTTOM: -dom.l3_minus,
    }
    if location not in points:
        raise ValueError(f"unknown trace location {location!r}")
    visible = {
        FULL: (GAMMA_PLUS, GAMMA_MINUS, TOP, BOTTOM),
        UPPER: (GAMMA_PLUS, TOP),
        LOWER: (GAMMA_MINUS, BOTTOM),
    }[spec.space.support]
    if location not in visible:
        return np.zeros((grid.n1, grid.n2), dtype=complex)
    values = evaluate_modes(grid, spec.space, points[location])
    return np.einsum("k,xyk->xy", values, spec.coeffs)


def discrete_l2(field: ScalarField) -> float:
    """Quadrature L2 norm of the samples."""
    g = field.grid
    w = (g.domain.l1 / g.n1) * (g.domain.l2 / g.n2) * g.h
    return float(np.sqrt(np.sum(np.abs(field.samples) ** 2) * w))


def coefficient_l2(spec: SpectralScalar) -> float:
    """Weighted coefficient norm matching the discrete sample norm."""
    w = parseval_weights(spec.grid, spec.space)
    return float(np.sqrt(np.sum(w[None, None, :] * np.abs(spec.coeffs) ** 2)))
