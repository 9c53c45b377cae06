"""Field components carrying exact spectral parts and/or nodal samples.

A Component is a scalar field over the whole cuboid represented as a sum of
spectral parts (each a SpectralScalar in one vertical basis, supported on
its block) plus an optional nodal remainder on the union grid.  Generators
and the solver keep fields in part form so derivatives, traces and weak
pairings are exact; file I/O and externally supplied data use the nodal
form.

Pairings between different vertical bases (e.g. a full-domain sine mode
against an upper-block cosine mode) are continuous L2 integrals evaluated
in closed form; frequency coincidences are detected with integer arithmetic
on the block node counts, which is exact because both block lengths are
integer multiples of the shared spacing h.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import basis
from .basis import (
    COSINE,
    FULL,
    GAMMA_MINUS,
    GAMMA_PLUS,
    LOWER,
    NODAL,
    SINE,
    TOP,
    BOTTOM,
    UPPER,
    ScalarField,
    SpectralScalar,
    X3Space,
    analysis_matrix,
    analyze,
    derivative,
    derivative_factors,
    horizontal_analysis,
    horizontal_synthesis,
    interval,
    mode_numbers,
    n_modes,
    trace_x3,
    x3_synthesis,
)
from .errors import NodalAxisDerivative, ShapeMismatch
from .geometry import Grid


# ---------------------------------------------------------------------------
# exact trig-product integrals between vertical bases


def _int_cos(omega, phase, c, d, exactly_zero):
    if exactly_zero:
        return (d - c) * np.cos(phase)
    return (np.sin(omega * d + phase) - np.sin(omega * c + phase)) / omega


def _int_sin(omega, phase, c, d, exactly_zero):
    if exactly_zero:
        return (d - c) * np.sin(phase)
    return (np.cos(omega * c + phase) - np.cos(omega * d + phase)) / omega


def _norms(kind, length, k):
    if kind == SINE:
        return np.sqrt(2.0 / length)
    return np.sqrt((1.0 if k == 0 else 2.0) / length)


@lru_cache(maxsize=None)
def x3_pair_matrix(grid: Grid, space_from: X3Space, space_to: X3Space) -> np.ndarray:
    """G[j, k] = integral of (from-mode k) * (to-mode j) over their overlap."""
    a_f, l_f, n_f, _ = interval(grid, space_from.support)
    a_t, l_t, n_t, _ = interval(grid, space_to.support)
    if space_from == space_to:
        return np.eye(n_t)
    c, d = max(a_f, a_t), min(a_f + l_f, a_t + l_t)
    out = np.zeros((n_t, n_f))
    if d <= c:
        return out
    ks_f = mode_numbers(grid, space_from)
    ks_t = mode_numbers(grid, space_to)
    for j, kt in enumerate(ks_t):
        om_t = np.pi * kt / l_t
        ph_t = -om_t * a_t
        for i, kf in enumerate(ks_f):
            om_f = np.pi * kf / l_f
            ph_f = -om_f * a_f
            # frequency sum/difference zero tests in integer arithmetic
            diff_zero = kf * n_t - kt * n_f == 0
            sum_zero = kf * n_t + kt * n_f == 0
            om_d, ph_d = om_f - om_t, ph_f - ph_t
            om_s, ph_s = om_f + om_t, ph_f + ph_t
            pf, pt = space_from.kind, space_to.kind
            if pf == SINE and pt == SINE:
                val = 0.5 * (
                    _int_cos(om_d, ph_d, c, d, diff_zero)
                    - _int_cos(om_s, ph_s, c, d, sum_zero)
                )
            elif pf == COSINE and pt == COSINE:
                val = 0.5 * (
                    _int_cos(om_d, ph_d, c, d, diff_zero)
                    + _int_cos(om_s, ph_s, c, d, sum_zero)
                )
            elif pf == SINE and pt == COSINE:
                val = 0.5 * (
                    _int_sin(om_s, ph_s, c, d, sum_zero)
                    + _int_sin(om_d, ph_d, c, d, diff_zero)
                )
            else:  # cosine from, sine to
                val = 0.5 * (
                    _int_sin(om_s, ph_s, c, d, sum_zero)
                    - _int_sin(om_d, ph_d, c, d, diff_zero)
                )
            out[j, i] = _norms(pf, l_f, kf) * _norms(pt, l_t, kt) * val
    return out


# ---------------------------------------------------------------------------
# components


@dataclass
class Component:
    """One scalar field component: spectral parts plus nodal remainder."""

    grid: Grid
    parts: tuple = ()
    nodal: np.ndarray | None = None

    def __post_init__(self):
        for p in self.parts:
            if p.grid != self.grid:
                raise ShapeMismatch("part grid differs from component grid")
        if self.nodal is not None and self.nodal.shape != self.grid.shape:
            raise ShapeMismatch(
                f"nodal shape {self.nodal.shape} != grid shape {self.grid.shape}"
            )

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, grid: Grid) -> "Component":
        return cls(grid)

    @classmethod
    def from_nodal(cls, grid: Grid, samples: np.ndarray) -> "Component":
        return cls(grid, (), np.asarray(samples, dtype=complex))

    @classmethod
    def from_parts(cls, grid: Grid, *parts) -> "Component":
        return cls(grid, tuple(parts)).merged()

    def merged(self) -> "Component":
        """Combine parts sharing a basis; drop numerically empty ones."""
        by_space = {}
        for p in self.parts:
            if p.space in by_space:
                by_space[p.space] = by_space[p.space] + p.coeffs
            else:
                by_space[p.space] = p.coeffs.copy()
        parts = tuple(
            SpectralScalar(self.grid, sp, cf)
            for sp, cf in by_space.items()
            if np.any(cf)
        )
        return Component(self.grid, parts, self.nodal)

    @property
    def is_spectral(self) -> bool:
        return self.nodal is None

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "Component") -> "Component":
        assert self.grid == other.grid
        nodal = None
        if self.nodal is not None or other.nodal is not None:
            nodal = (self.nodal if self.nodal is not None else 0) + (
                other.nodal if other.nodal is not None else 0
            )
            if np.isscalar(nodal):
                nodal = None
        return Component(self.grid, self.parts + other.parts, nodal).merged()

    def __sub__(self, other: "Component") -> "Component":
        return self + other.scaled(-1.0)

    def scaled(self, factor: complex) -> "Component":
        parts = tuple(
            SpectralScalar(self.grid, p.space, p.coeffs * factor) for p in self.parts
        )
        nodal = None if self.nodal is None else self.nodal * factor
        return Component(self.grid, parts, nodal)

    # -- evaluation --------------------------------------------------------

    def samples(self) -> np.ndarray:
        """Complex samples on the union midpoint grid."""
        out = np.zeros(self.grid.shape, dtype=complex)
        for p in self.parts:
            sl = interval(self.grid, p.space.support)[3]
            out[:, :, sl] += basis.synthesize(p).samples
        if self.nodal is not None:
            out += self.nodal
        return out

    def hnode(self) -> np.ndarray:
        """Horizontal-Fourier x vertical-node tensor."""
        out = np.zeros(self.grid.shape, dtype=complex)
        for p in self.parts:
            sl = interval(self.grid, p.space.support)[3]
            out[:, :, sl] += x3_synthesis(p)
        if self.nodal is not None:
            out += horizontal_analysis(self.grid, self.nodal)
        return out

    # -- exact derivatives ---------------------------------------------------

    def d_horizontal(self, axis: int) -> "Component":
        parts = tuple(derivative(p, axis) for p in self.parts)
        nodal = None
        if self.nodal is not None:
            fac = derivative_factors(self.grid, axis)
            nodal = horizontal_synthesis(
                self.grid, horizontal_analysis(self.grid, self.nodal) * fac
            )
        return Component(self.grid, parts, nodal)

    def d1(self) -> "Component":
        return self.d_horizontal(1)

    def d2(self) -> "Component":
        return self.d_horizontal(2)

    def d3_exact(self) -> "Component":
        if self.nodal is not None:
            raise NodalAxisDerivative(
                "exact vertical derivative requires a fully spectral component"
            )
        return Component(self.grid, tuple(derivative(p, 3) for p in self.parts))

    # -- pairings ---------------------------------------------------------

    def pair_x3(self, space: X3Space) -> np.ndarray:
        """Continuous pairings <u, b_(k1,k2,k)> against a target basis.

        Spectral parts pair in closed form; a nodal remainder is read as
        the interpolant in the target basis on its block.
        """
        out = np.zeros((self.grid.n1, self.grid.n2, n_modes(self.grid, space)), dtype=complex)
        for p in self.parts:
            g = x3_pair_matrix(self.grid, p.space, space)
            out += np.einsum("jk,xyk->xyj", g, p.coeffs)
        if self.nodal is not None:
            sl = interval(self.grid, space.support)[3]
            hor = horizontal_analysis(self.grid, self.nodal[:, :, sl])
            mat = analysis_matrix(self.grid, space)
            out += np.einsum("km,xym->xyk", mat, hor)
        return out

    # -- traces ----------------------------------------------------------

    def trace(self, location: str) -> np.ndarray:
        """One-sided horizontal trace spectrum at an interface/boundary.

        Spectral parts evaluate their series exactly; a nodal remainder is
        extrapolated from the four midpoints nearest the requested side.
        """
        out = np.zeros((self.grid.n1, self.grid.n2), dtype=complex)
        for p in self.parts:
            out += trace_x3(p, location)
        if self.nodal is not None:
            out += _nodal_trace(self.grid, self.nodal, location)
        return out

    def l2(self) -> float:
        g = self.grid
        return float(np.sqrt(np.sum(np.abs(self.samples()) ** 2) * g.cell_weight))

    def stripped(self) -> "Component":
        """Nodal-only copy (what a round trip through a file produces)."""
        return Component.from_nodal(self.grid, self.samples())


def _extrapolation_weights(npts: int) -> np.ndarray:
    """Lagrange weights extrapolating midpoint values to the boundary."""
    x = np.arange(npts) + 0.5
    w = np.empty(npts)
    for i in range(npts):
        others = np.delete(x, i)
        w[i] = np.prod(others / (others - x[i]))
    return w


def _nodal_trace(grid: Grid, samples: np.ndarray, location: str) -> np.ndarray:
    if location in (GAMMA_PLUS, TOP):
        sl = grid.upper
    else:
        sl = grid.lower
    block = samples[:, :, sl]
    nb = block.shape[2]
    npts = min(4, nb)
    if location in (GAMMA_PLUS, BOTTOM):
        cols = block[:, :, :npts]
    else:
        cols = block[:, :, : nb - npts - 1 : -1] if npts < nb else block[:, :, ::-1]
    w = _extrapolation_weights(npts)
    vals = np.einsum("m,xym->xy", w, cols[:, :, :npts])
    return horizontal_analysis(grid, vals)


# ---------------------------------------------------------------------------
# field pairs

COMPONENT_NAMES = ("E1", "E2", "E3", "H1", "H2", "H3")


@dataclass
class FieldPair:
    """The six components of (E, H) on a shared grid."""

    grid: Grid
    e1: Component
    e2: Component
    e3: Component
    h1: Component
    h2: Component
    h3: Component

    @classmethod
    def zero(cls, grid: Grid) -> "FieldPair":
        return cls(grid, *(Component.zero(grid) for _ in range(6)))

    @classmethod
    def from_components(cls, grid, e, h) -> "FieldPair":
        return cls(grid, e[0], e[1], e[2], h[0], h[1], h[2])

    @property
    def e(self):
        return (self.e1, self.e2, self.e3)

    @property
    def h(self):
        return (self.h1, self.h2, self.h3)

    def items(self):
        return zip(COMPONENT_NAMES, (self.e1, self.e2, self.e3, self.h1, self.h2, self.h3))

    def stripped(self) -> "FieldPair":
        """Nodal-only copy of every component."""
        return FieldPair(
            self.grid, *(c.stripped() for _, c in self.items())
        )


def curl_exact(u: tuple) -> tuple:
    """Componentwise curl of a fully spectral vector field (per block)."""
    u1, u2, u3 = u
    return (
        u3.d2() - u2.d3_exact(),
        u1.d3_exact() - u3.d1(),
        u2.d1() - u1.d2(),
    )


# ---------------------------------------------------------------------------
# helpers for building sparse trigonometric fields

COS = "cos"
SIN = "sin"


def _horizontal_factor(grid: Grid, axis: int, kind: str, k: int) -> np.ndarray:
    """Orthonormal Fourier coefficients of cos/sin(2*pi*k*x/l) on one axis."""
    n = grid.n1 if axis == 1 else grid.n2
    length = grid.domain.l1 if axis == 1 else grid.domain.l2
    out = np.zeros(n, dtype=complex)
    root = np.sqrt(length)
    if kind == COS:
        if k == 0:
            out[0] = root
        else:
            out[k % n] += root / 2
            out[-k % n] += root / 2
    elif kind == SIN:
        if k != 0:
            out[k % n] += root / 2j
            out[-k % n] -= root / 2j
    else:
        raise ValueError(kind)
    return out


def horizontal_mode(grid: Grid, kind1: str, k1: int, kind2: str, k2: int) -> np.ndarray:
    """(n1, n2) coefficients of trig(2*pi*k1*x1/l1) * trig(2*pi*k2*x2/l2)."""
    return np.outer(
        _horizontal_factor(grid, 1, kind1, k1), _horizontal_factor(grid, 2, kind2, k2)
    )


def plain_profile_part(
    grid: Grid, space: X3Space, k3: int, horizontal: np.ndarray
) -> SpectralScalar:
    """Part equal to horizontal(x1,x2) * trig(pi*k3*(x3-a)/L) (unnormalized)."""
    nm = n_modes(grid, space)
    coeffs = np.zeros((grid.n1, grid.n2, nm), dtype=complex)
    a, length, _, _ = interval(grid, space.support)
    if space.kind == SINE:
        if not 1 <= k3 <= nm:
            raise ShapeMismatch(f"sine mode {k3} outside 1..{nm}")
        slot, nu = k3 - 1, np.sqrt(2.0 / length)
    else:
        if not 0 <= k3 < nm:
            raise ShapeMismatch(f"cosine mode {k3} outside 0..{nm - 1}")
        slot = k3
        nu = np.sqrt((1.0 if k3 == 0 else 2.0) / length)
    coeffs[:, :, slot] = horizontal / nu
    return SpectralScalar(grid, space, coeffs)
