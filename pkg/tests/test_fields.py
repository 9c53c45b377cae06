import itertools

import numpy as np
import pytest

from polmax import basis
from polmax.basis import (
    COSINE_FULL,
    COSINE_LOWER,
    COSINE_UPPER,
    SINE_FULL,
    SINE_LOWER,
    SINE_UPPER,
    GAMMA_PLUS,
    GAMMA_MINUS,
    TOP,
    BOTTOM,
    SpectralScalar,
    interval,
    mode_numbers,
    n_modes,
)
from polmax.fields import (
    COS,
    SIN,
    Component,
    FieldPair,
    curl_exact,
    horizontal_mode,
    plain_profile_part,
    x3_pair_matrix,
)

ALL_SPACES = (SINE_FULL, COSINE_FULL, SINE_UPPER, SINE_LOWER, COSINE_UPPER, COSINE_LOWER)


def eval_mode(grid, space, k, x):
    a, length, _, _ = interval(grid, space.support)
    if space.kind == basis.SINE:
        return np.sqrt(2 / length) * np.sin(np.pi * k * (x - a) / length)
    nu = np.sqrt((1.0 if k == 0 else 2.0) / length)
    return nu * np.cos(np.pi * k * (x - a) / length)


def quad_pair(grid, sf, kf, stt, kt):
    """Gauss-Legendre quadrature oracle for the vertical pair integral."""
    a_f, l_f, _, _ = interval(grid, sf.support)
    a_t, l_t, _, _ = interval(grid, stt.support)
    c, d = max(a_f, a_t), min(a_f + l_f, a_t + l_t)
    if d <= c:
        return 0.0
    xs, ws = np.polynomial.legendre.leggauss(400)
    x = 0.5 * (d - c) * xs + 0.5 * (c + d)
    w = 0.5 * (d - c) * ws
    return float(np.sum(w * eval_mode(grid, sf, kf, x) * eval_mode(grid, stt, kt, x)))


@pytest.mark.parametrize(
    "sf,stt",
    list(itertools.product(ALL_SPACES, ALL_SPACES)),
)
def test_pair_matrix_against_quadrature(asym_grid, sf, stt):
    g = asym_grid
    mat = x3_pair_matrix(g, sf, stt)
    ks_f = mode_numbers(g, sf)
    ks_t = mode_numbers(g, stt)
    for j in range(0, len(ks_t), 3):
        for i in range(0, len(ks_f), 3):
            ref = quad_pair(g, sf, ks_f[i], stt, ks_t[j])
            assert mat[j, i] == pytest.approx(ref, abs=5e-13)


def test_pair_x3_parts_vs_nodal_matched_basis(asym_grid):
    """Nodal data reads as the interpolant: exact in the matching basis."""
    g = asym_grid
    rng = np.random.default_rng(1)
    coeffs = np.zeros((g.n1, g.n2, n_modes(g, COSINE_UPPER)), dtype=complex)
    coeffs[:4, :4, :3] = rng.standard_normal((4, 4, 3)) + 1j * rng.standard_normal((4, 4, 3))
    part = SpectralScalar(g, COSINE_UPPER, coeffs)
    spectral = Component.from_parts(g, part)
    nodal = spectral.stripped()
    a = spectral.pair_x3(COSINE_UPPER)
    b = nodal.pair_x3(COSINE_UPPER)
    assert np.abs(a - b).max() <= 1e-11


def test_pair_x3_cross_parity_is_continuous_integral(asym_grid):
    """Parts pair across parities with the true continuous integral."""
    g = asym_grid
    hor = horizontal_mode(g, COS, 0, COS, 0)
    comp = Component.from_parts(g, plain_profile_part(g, COSINE_UPPER, 1, hor))
    got = comp.pair_x3(SINE_UPPER)[0, 0]
    # <cos(pi x/L), nu sin(pi k x/L)> over (0, L)
    ref = np.array(
        [
            quad_pair(g, COSINE_UPPER, 1, SINE_UPPER, k)
            / np.sqrt((1.0 if 1 == 0 else 2.0) / 0.6)
            for k in mode_numbers(g, SINE_UPPER)
        ]
    )
    # undo the from-mode normalization used by quad_pair (plain profile)
    np.testing.assert_allclose(
        got.real / np.sqrt(g.domain.l1 * g.domain.l2), ref, atol=1e-12
    )


def test_component_algebra_and_samples(asym_grid):
    g = asym_grid
    hor = horizontal_mode(g, COS, 1, SIN, 1)
    p = plain_profile_part(g, SINE_FULL, 2, hor)
    comp = Component.from_parts(g, p)
    x1 = g.x1[:, None, None]
    x2 = g.x2[None, :, None]
    x3 = g.x3[None, None, :]
    ref = (
        np.cos(2 * np.pi * x1)
        * np.sin(2 * np.pi * x2)
        * np.sin(2 * np.pi * (x3 + 0.4) / 1.0)
    )
    assert np.abs(comp.samples() - ref).max() <= 1e-12

    doubled = comp + comp
    assert np.abs(doubled.samples() - 2 * ref).max() <= 1e-12
    diff = comp - comp
    assert diff.l2() <= 1e-13


def test_exact_derivatives_match_closed_form(asym_grid):
    g = asym_grid
    hor = horizontal_mode(g, COS, 1, COS, 0)
    comp = Component.from_parts(g, plain_profile_part(g, COSINE_FULL, 1, hor))
    x1 = g.x1[:, None, None]
    x3 = g.x3[None, None, :]

    d1 = comp.d1().samples()
    ref1 = -2 * np.pi * np.sin(2 * np.pi * x1) * np.cos(np.pi * (x3 + 0.4)) * np.ones_like(
        g.x2[None, :, None]
    )
    assert np.abs(d1 - ref1).max() <= 1e-11

    d3 = comp.d3_exact().samples()
    ref3 = -np.pi * np.cos(2 * np.pi * x1) * np.sin(np.pi * (x3 + 0.4)) * np.ones_like(
        g.x2[None, :, None]
    )
    assert np.abs(d3 - ref3).max() <= 1e-11


def test_nodal_horizontal_derivative_matches_parts(asym_grid):
    g = asym_grid
    hor = horizontal_mode(g, SIN, 1, COS, 1)
    comp = Component.from_parts(g, plain_profile_part(g, SINE_UPPER, 1, hor))
    a = comp.d2().samples()
    b = comp.stripped().d2().samples()
    assert np.abs(a - b).max() <= 1e-11


def test_trace_exact_parts(asym_grid):
    g = asym_grid
    # upper cosine profile: value cos(0) = 1 at gamma+, cos(pi k) at top
    hor = horizontal_mode(g, COS, 0, COS, 0)
    comp = Component.from_parts(g, plain_profile_part(g, COSINE_UPPER, 1, hor))
    t_plus = comp.trace(GAMMA_PLUS)
    assert t_plus[0, 0] == pytest.approx(np.sqrt(g.domain.l1 * g.domain.l2), abs=1e-13)
    assert np.abs(comp.trace(GAMMA_MINUS)).max() == 0.0
    t_top = comp.trace(TOP)
    assert t_top[0, 0] == pytest.approx(-np.sqrt(1.0), abs=1e-13)

    # jump of this component across the interface is exactly the gamma+ trace
    jump = comp.trace(GAMMA_PLUS) - comp.trace(GAMMA_MINUS)
    assert np.linalg.norm(jump) == pytest.approx(1.0, abs=1e-13)


def test_trace_nodal_extrapolation_accuracy():
    """Fourth-order one-sided extrapolation on smooth nodal data."""
    from polmax.geometry import DomainSpec, PhysicalParams, build_grid, validate_domain

    errs = []
    for n3p in (8, 16, 32):
        vd = validate_domain(DomainSpec(1, 1, 0.5, 0.5), PhysicalParams(1, 1, 1))
        g = build_grid(vd, 4, 4, n3p)
        f = np.cos(3.0 * g.x3 + 0.2)
        samples = np.broadcast_to(f, g.shape).astype(complex)
        comp = Component.from_nodal(g, samples.copy())
        got = comp.trace(GAMMA_PLUS)[0, 0].real / np.sqrt(1.0)
        errs.append(abs(got - np.cos(0.2)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert orders.min() >= 3.5


def test_curl_of_gradient_vanishes(asym_grid):
    g = asym_grid
    hor = horizontal_mode(g, COS, 1, SIN, 1)
    phi = Component.from_parts(g, plain_profile_part(g, SINE_UPPER, 2, hor))
    grad = (phi.d1(), phi.d2(), phi.d3_exact())
    curl = curl_exact(grad)
    for c in curl:
        assert c.l2() <= 1e-11


def test_fieldpair_stripped(asym_grid):
    g = asym_grid
    fp = FieldPair.zero(g)
    sp = fp.stripped()
    for _, comp in sp.items():
        assert comp.is_spectral is False
        assert np.abs(comp.nodal).max() == 0.0
