"""Independent ground truth: manufactured solutions and dense 1D eigenvalues.

Manufactured cases pick band-limited closed-form fields respecting every
interface and boundary condition, then induce the sources by forward
application of the two curl equations with exact part-wise differentiation.
They never touch the scalar reformulation, so agreement between the solver
and a manufactured case is a genuine two-route consistency check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    COSINE_FULL,
    COSINE_LOWER,
    COSINE_UPPER,
    GAMMA_MINUS,
    GAMMA_PLUS,
    SINE_FULL,
    SINE_LOWER,
    SINE_UPPER,
    TOP,
    BOTTOM,
)
from .errors import RecipeViolatesConstraints, ResonantFrequency
from .fields import (
    COS,
    Component,
    FieldPair,
    SIN,
    curl_exact,
    horizontal_mode,
    plain_profile_part,
)
from .geometry import DomainSpec, Grid, PhysicalParams
from .sources import SourcePair
from .spectrum import resonance_check


@dataclass
class ManufacturedCase:
    recipe: str
    fields: FieldPair
    sources: SourcePair
    params: PhysicalParams


def _part(grid, space, k3, kind1, k1, kind2, k2, amplitude=1.0):
    hor = horizontal_mode(grid, kind1, k1, kind2, k2) * amplitude
    return plain_profile_part(grid, space, k3, hor)


def _w_fields_bulk_shape(grid, params, k, amplitude=1.0):
    """Curl-generated pair with the geometry of a full-domain null mode."""
    k1, k2, k3 = k
    w = Component.from_parts(
        grid, _part(grid, COSINE_FULL, k3, COS, k1, COS, k2, amplitude)
    )
    dw2, dw3 = w.d2(), w.d3_exact()
    e = (Component.zero(grid), dw3, dw2.scaled(-1.0))
    fac = 1.0 / (1j * params.omega * params.mu)
    h = (
        (dw2.d2() + dw3.d3_exact()).scaled(-fac),
        w.d1().d2().scaled(fac),
        w.d1().d3_exact().scaled(fac),
    )
    return e, h


def _zero6(grid):
    return tuple(Component.zero(grid) for _ in range(3)), tuple(
        Component.zero(grid) for _ in range(3)
    )


def _recipe_axisym_1(grid, params):
    return _w_fields_bulk_shape(grid, params, (0, 0, 1))


def _recipe_jumpy_1(grid, params):
    e, h = _zero6(grid)
    e = list(e)
    h = list(h)
    e[0] = Component.from_parts(
        grid,
        _part(grid, SINE_UPPER, 1, SIN, 1, COS, 1, 0.8),
        _part(grid, SINE_LOWER, 2, SIN, 1, COS, 0, 0.5),
    )
    e[1] = Component.from_parts(grid, _part(grid, SINE_FULL, 1, COS, 1, COS, 0, 1.0))
    e[2] = Component.from_parts(grid, _part(grid, COSINE_UPPER, 1, COS, 0, SIN, 1, 0.7))
    h[1] = Component.from_parts(
        grid,
        _part(grid, COSINE_UPPER, 1, COS, 1, COS, 0, 1.0),
        _part(grid, COSINE_LOWER, 2, COS, 1, COS, 0, -0.6),
    )
    return tuple(e), tuple(h)


def _recipe_jumpy_2(grid, params):
    e, h = _zero6(grid)
    e = list(e)
    h = list(h)
    e[0] = Component.from_parts(grid, _part(grid, SINE_LOWER, 1, COS, 1, SIN, 1, 0.9))
    e[1] = Component.from_parts(grid, _part(grid, SINE_FULL, 2, SIN, 1, COS, 1, 0.6))
    e[2] = Component.from_parts(
        grid,
        _part(grid, COSINE_UPPER, 2, COS, 0, COS, 1, 1.0),
        _part(grid, COSINE_LOWER, 1, COS, 0, COS, 1, -0.5),
    )
    h[0] = Component.from_parts(grid, _part(grid, COSINE_FULL, 2, COS, 1, COS, 1, 0.8))
    h[1] = Component.from_parts(grid, _part(grid, SINE_UPPER, 1, SIN, 1, SIN, 1, 0.4))
    h[2] = Component.from_parts(grid, _part(grid, SINE_FULL, 1, COS, 1, SIN, 1, 0.55))
    return tuple(e), tuple(h)


def _recipe_gradient_1(grid, params):
    e, h = _recipe_axisym_1(grid, params)
    e = list(e)
    h = list(h)
    # electric potential: upper-block sine, vanishes on interface and lid
    chi = Component.from_parts(grid, _part(grid, SINE_UPPER, 1, COS, 1, COS, 0, 0.45))
    e[0] = e[0] + chi.d1()
    e[1] = e[1] + chi.d2()
    e[2] = e[2] + chi.d3_exact()
    # magnetic potential: full-domain cosine in a k1 != 0 sector
    psi = Component.from_parts(grid, _part(grid, COSINE_FULL, 1, SIN, 1, COS, 0, 0.35))
    h[0] = h[0] + psi.d1()
    h[1] = h[1] + psi.d2()
    h[2] = h[2] + psi.d3_exact()
    return tuple(e), tuple(h)


def _recipe_mixed_1(grid, params):
    e1, h1 = _recipe_jumpy_1(grid, params)
    e2, h2 = _recipe_jumpy_2(grid, params)
    e = tuple(a + b.scaled(0.5) for a, b in zip(e1, e2))
    h = tuple(a + b.scaled(0.5) for a, b in zip(h1, h2))
    # block-local magnetic potential in the k1 = 0 sector
    psi = Component.from_parts(grid, _part(grid, COSINE_LOWER, 1, COS, 0, COS, 1, 0.3))
    h = (h[0] + psi.d1(), h[1] + psi.d2(), h[2] + psi.d3_exact())
    return e, h


def _recipe_bad_e1(grid, params):
    e, h = _zero6(grid)
    e = list(e)
    # cosine profile: nonzero on the interface, violating the E1 condition
    e[0] = Component.from_parts(grid, _part(grid, COSINE_UPPER, 1, COS, 1, COS, 0, 1.0))
    return tuple(e), tuple(h)


RECIPES = {
    "axisym-1": _recipe_axisym_1,
    "jumpy-1": _recipe_jumpy_1,
    "jumpy-2": _recipe_jumpy_2,
    "gradient-1": _recipe_gradient_1,
    "mixed-1": _recipe_mixed_1,
    "bad-e1": _recipe_bad_e1,
}


def _check_constraints(e, h):
    """Exact trace checks on the trigonometric representation."""
    tol = 1e-12

    def norm(x):
        return float(np.linalg.norm(x))

    for loc in (GAMMA_PLUS, GAMMA_MINUS, TOP, BOTTOM):
        if norm(e[0].trace(loc)) > tol:
            raise RecipeViolatesConstraints(f"E1 does not vanish at {loc}")
    for loc in (TOP, BOTTOM):
        if norm(e[1].trace(loc)) > tol:
            raise RecipeViolatesConstraints(f"E2 does not vanish at {loc}")
    if norm(e[1].trace(GAMMA_PLUS) - e[1].trace(GAMMA_MINUS)) > tol:
        raise RecipeViolatesConstraints("E2 jumps across the interface")
    if norm(h[0].trace(GAMMA_PLUS) - h[0].trace(GAMMA_MINUS)) > tol:
        raise RecipeViolatesConstraints("H1 jumps across the interface")


def manufacture(recipe: str, domain: DomainSpec, params: PhysicalParams, grid: Grid):
    """Build a manufactured case: fields plus forward-induced sources."""
    diag = resonance_check(params, domain, 1e-6)
    if diag.resonant:
        n = diag.nearest if diag.dist_to_sigma_m <= diag.dist_to_sigma_l1 else diag.nearest_axial
        raise ResonantFrequency(
            n.value, (n.k1, n.k2, n.k3), n.provenance, min(diag.dist_to_sigma_m, diag.dist_to_sigma_l1)
        )
    if recipe not in RECIPES:
        raise KeyError(f"unknown recipe {recipe!r}; have {sorted(RECIPES)}")
    e, h = RECIPES[recipe](grid, params)
    _check_constraints(e, h)
    iwm = 1j * params.omega * params.mu
    iwe = 1j * params.omega * params.eps
    curl_e = curl_exact(e)
    curl_h = curl_exact(h)
    fh = tuple(ce - hc.scaled(iwm) for ce, hc in zip(curl_e, h))
    fe = tuple(ch + ec.scaled(iwe) for ch, ec in zip(curl_h, e))
    fields = FieldPair.from_components(grid, e, h)
    sources = SourcePair(grid, fh, fe)
    return ManufacturedCase(recipe, fields, sources, params)


# ---------------------------------------------------------------------------
# dense 1D finite-difference eigenvalues


def dense_axial_eigenvalues(n: int, length: float, bc: str) -> np.ndarray:
    """Eigenvalues of the second-order FD Laplacian -d^2/dx^2, ascending.

    dirichlet: n interior nodes, spacing L/(n+1); neumann: n cells with
    reflecting ends; periodic: n nodes on the circle.
    """
    if n < 8:
        raise ValueError("need n >= 8")
    if bc == "dirichlet":
        h = length / (n + 1)
        a = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    elif bc == "neumann":
        h = length / n
        a = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
        a[0, 0] = 1.0
        a[n - 1, n - 1] = 1.0
    elif bc == "periodic":
        h = length / n
        a = 2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
        a[0, n - 1] -= 1.0
        a[n - 1, 0] -= 1.0
    else:
        raise ValueError(f"unknown boundary condition {bc!r}")
    return np.sort(np.linalg.eigvalsh(a / h**2))
