import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polmax import basis
from polmax.basis import (
    COSINE_FULL,
    COSINE_UPPER,
    GAMMA_MINUS,
    GAMMA_PLUS,
    SINE_FULL,
    SINE_LOWER,
    SINE_UPPER,
    TOP,
    ScalarField,
    SpectralScalar,
    analyze,
    coefficient_l2,
    derivative,
    discrete_l2,
    interval,
    n_modes,
    synthesize,
    trace_x3,
)
from polmax.errors import BlockMismatch, NodalAxisDerivative

ALL_SPACES = (
    SINE_FULL,
    COSINE_FULL,
    SINE_UPPER,
    SINE_LOWER,
    COSINE_UPPER,
    basis.COSINE_LOWER,
)


def random_field(grid, support, seed=0):
    rng = np.random.default_rng(seed)
    n = interval(grid, support)[2]
    shape = (grid.n1, grid.n2, n)
    return ScalarField(
        grid, support, rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    )


def test_sine_full_reproduces_single_mode(asym_grid):
    g = asym_grid
    x3 = g.x3
    vals = np.sin(np.pi * (x3 + 0.4) / 1.0)
    samples = np.broadcast_to(vals, g.shape).astype(complex)
    spec = analyze(ScalarField(g, "full", samples.copy()), SINE_FULL)
    # orthonormal coefficient of sin(pi u/L) is sqrt(L/2); here L = 1
    expect = np.zeros(n_modes(g, SINE_FULL))
    expect[0] = np.sqrt(0.5)
    got = spec.coeffs[0, 0].real * np.sqrt(g.domain.l1 * g.domain.l2)
    # horizontal zero-mode carries sqrt(l1*l2); all other coefficients tiny
    np.testing.assert_allclose(spec.coeffs[0, 0] / np.sqrt(1.0), expect, atol=1e-12)
    off = np.abs(spec.coeffs[1:, :, :]).max()
    assert off <= 1e-12


def test_cosine_constant_mode(asym_grid):
    g = asym_grid
    samples = np.ones(
        (g.n1, g.n2, g.n3_plus), dtype=complex
    )
    spec = analyze(ScalarField(g, "upper", samples), COSINE_UPPER)
    # constant 1 = sqrt(L) * (k=0 mode), horizontal zero mode sqrt(l1 l2)
    assert spec.coeffs[0, 0, 0] == pytest.approx(np.sqrt(0.6), abs=1e-13)
    rest = np.abs(spec.coeffs).sum() - abs(spec.coeffs[0, 0, 0])
    assert rest <= 1e-12


@pytest.mark.parametrize("space", ALL_SPACES)
def test_round_trip_all_bases(asym_grid, space):
    f = random_field(asym_grid, space.support, seed=hash(space) % 2**31)
    spec = analyze(f, space)
    back = synthesize(spec)
    assert np.abs(back.samples - f.samples).max() <= 1e-12 * np.abs(f.samples).max()
    spec2 = analyze(back, space)
    assert np.abs(spec2.coeffs - spec.coeffs).max() <= 1e-12 * np.abs(spec.coeffs).max()


def test_round_trip_many_random_fields(asym_grid):
    for seed in range(100):
        space = ALL_SPACES[seed % len(ALL_SPACES)]
        f = random_field(asym_grid, space.support, seed=seed)
        back = synthesize(analyze(f, space))
        err = np.abs(back.samples - f.samples).max() / np.abs(f.samples).max()
        assert err <= 1e-12


@pytest.mark.parametrize("space", ALL_SPACES)
def test_parseval(asym_grid, space):
    f = random_field(asym_grid, space.support, seed=3)
    spec = analyze(f, space)
    a = discrete_l2(f)
    b = coefficient_l2(spec)
    # weighted coefficient norm restricted to the vertical axis; horizontal
    # Fourier is unitary with the quadrature weights l/n
    assert a == pytest.approx(b, rel=1e-12)


def test_block_mismatch(asym_grid):
    f = random_field(asym_grid, "upper", seed=0)
    with pytest.raises(BlockMismatch):
        analyze(f, SINE_FULL)


def test_derivative_axis3_sine_full(asym_grid):
    g = asym_grid
    # d/dx3 sin(pi (x3+l3m)/l3) = pi cos(pi (x3+l3m)/l3), l3 = 1
    coeffs = np.zeros((g.n1, g.n2, n_modes(g, SINE_FULL)), dtype=complex)
    coeffs[0, 0, 0] = 1.0
    d = derivative(SpectralScalar(g, SINE_FULL, coeffs), 3)
    assert d.space == COSINE_FULL
    assert d.coeffs[0, 0, 1] == pytest.approx(np.pi, rel=1e-14)
    assert np.abs(d.coeffs).sum() == pytest.approx(np.pi, rel=1e-13)


def test_derivative_axis1_fourier(unit_grid):
    g = unit_grid
    coeffs = np.zeros((g.n1, g.n2, n_modes(g, COSINE_FULL)), dtype=complex)
    coeffs[1, 0, 0] = 1.0  # e^{2 pi i x1}
    d = derivative(SpectralScalar(g, COSINE_FULL, coeffs), 1)
    assert d.coeffs[1, 0, 0] == pytest.approx(2j * np.pi, rel=1e-14)


def test_derivative_constant_is_zero(unit_grid):
    g = unit_grid
    coeffs = np.zeros((g.n1, g.n2, n_modes(g, COSINE_FULL)), dtype=complex)
    coeffs[0, 0, 0] = 2.5
    d = derivative(SpectralScalar(g, COSINE_FULL, coeffs), 3)
    assert np.abs(d.coeffs).max() == 0.0


def test_second_derivative_is_diagonal(asym_grid):
    g = asym_grid
    n = n_modes(g, SINE_FULL)
    rng = np.random.default_rng(5)
    coeffs = np.zeros((g.n1, g.n2, n), dtype=complex)
    # band-limited: keep below the top mode so the parity flips are exact
    coeffs[:, :, : n // 2] = rng.standard_normal((g.n1, g.n2, n // 2))
    spec = SpectralScalar(g, SINE_FULL, coeffs)
    dd = derivative(derivative(spec, 3), 3)
    k = np.arange(1, n + 1)
    lam = (np.pi * k / g.domain.l3) ** 2
    np.testing.assert_allclose(dd.coeffs, -lam * coeffs, rtol=0, atol=1e-10)


def test_nodal_axis_derivative_raises(unit_grid):
    g = unit_grid
    nod = basis.X3Space(basis.NODAL, basis.FULL)
    with pytest.raises(NodalAxisDerivative):
        nod.flipped()


def test_traces(asym_grid):
    g = asym_grid
    # SineHalf(+) at gamma+ is identically zero
    coeffs = np.zeros((g.n1, g.n2, n_modes(g, SINE_UPPER)), dtype=complex)
    coeffs[0, 1, 2] = 1.3
    t = trace_x3(SpectralScalar(g, SINE_UPPER, coeffs), GAMMA_PLUS)
    assert np.abs(t).max() == 0.0

    # CosineFull: gamma+ equals gamma-
    cf = np.zeros((g.n1, g.n2, n_modes(g, COSINE_FULL)), dtype=complex)
    cf[0, 0, 1] = 1.0
    cf[2, 1, 3] = 0.5 - 0.25j
    spec = SpectralScalar(g, COSINE_FULL, cf)
    np.testing.assert_allclose(
        trace_x3(spec, GAMMA_PLUS), trace_x3(spec, GAMMA_MINUS), atol=0
    )

    # k3 = 1 SineFull vanishes at the top boundary
    sf = np.zeros((g.n1, g.n2, n_modes(g, SINE_FULL)), dtype=complex)
    sf[0, 0, 0] = 1.0
    t = trace_x3(SpectralScalar(g, SINE_FULL, sf), TOP)
    assert np.abs(t).max() <= 1e-14


def test_discrete_integration_by_parts(asym_grid):
    """<d3 u, v> + <u, d3 v> = 0 for sine u, cosine v on the upper block."""
    g = asym_grid
    rng = np.random.default_rng(9)
    nu = n_modes(g, SINE_UPPER)
    cu = np.zeros((g.n1, g.n2, nu), dtype=complex)
    cu[:, :, :] = rng.standard_normal((g.n1, g.n2, nu))
    u = SpectralScalar(g, SINE_UPPER, cu)
    cv = rng.standard_normal((g.n1, g.n2, nu)).astype(complex)
    v = SpectralScalar(g, COSINE_UPPER, cv)

    du = synthesize(derivative(u, 3)).samples
    dv = synthesize(derivative(v, 3)).samples
    us = synthesize(u).samples
    vs = synthesize(v).samples
    w = (g.domain.l1 / g.n1) * (g.domain.l2 / g.n2) * g.h
    total = np.sum(du * np.conj(vs)) * w + np.sum(us * np.conj(dv)) * w
    scale = max(np.abs(us).max(), 1.0) * max(np.abs(vs).max(), 1.0)
    assert abs(total) <= 1e-12 * scale


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    which=st.integers(0, len(ALL_SPACES) - 1),
)
def test_round_trip_property(seed, which):
    from polmax.geometry import DomainSpec, PhysicalParams, build_grid, validate_domain

    vd = validate_domain(DomainSpec(1, 1, 0.6, 0.4), PhysicalParams(1, 1, 1))
    grid = build_grid(vd, 8, 8, 9)
    space = ALL_SPACES[which]
    f = random_field(grid, space.support, seed=seed)
    back = synthesize(analyze(f, space))
    assert np.abs(back.samples - f.samples).max() <= 1e-12 * max(
        1.0, np.abs(f.samples).max()
    )
