import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinsync import (
    BadResolutionError,
    DensityMatrix,
    DimensionMismatchError,
    SystemParams,
    coherent_state,
    husimi_q,
    kron,
    liouvillian,
    partial_trace_A,
    pauli,
    phi_grid,
    q_grid,
    s_distribution,
    s_phi,
    steady_state,
    theta_grid,
    wrap_phi,
)
from spinsync.phase import locking_phase

LIMIT_CYCLE = DensityMatrix(np.diag([10.0, 1.0]).astype(complex) / 11.0)
MIXED = DensityMatrix(np.eye(2, dtype=complex) / 2.0)


def closed_form_s(rho_b: DensityMatrix, phi: float) -> float:
    """Independent oracle: S_centered(phi) = Re(rho_eg e^{i phi}) / 4."""
    return 0.25 * float(np.real(rho_b.mat[0, 1] * np.exp(1j * phi)))


def limit_cycle_q(theta: float) -> float:
    """Analytic Q of the gain-dominated balance state diag(10, 1)/11."""
    return (11.0 + 9.0 * math.cos(theta)) / (44.0 * math.pi)


@pytest.fixture(scope="module")
def resonant_rho_b():
    return partial_trace_A(steady_state(liouvillian(SystemParams())))


@pytest.fixture(scope="module")
def detuned_rho_b():
    return partial_trace_A(steady_state(liouvillian(SystemParams(delta1=3.0, delta2=5.0))))


def test_partial_trace_product_state(make_density):
    rng = np.random.default_rng(3)
    rho_a = make_density(rng, 2)
    rho_b = make_density(rng, 2)
    reduced = partial_trace_A(DensityMatrix(kron(rho_a, rho_b)))
    assert np.max(np.abs(reduced.mat - rho_b)) <= 1e-14


def test_partial_trace_maximally_mixed():
    reduced = partial_trace_A(DensityMatrix(np.eye(4, dtype=complex) / 4.0))
    assert_allclose(reduced.mat, np.eye(2) / 2.0, atol=1e-15)


def test_partial_trace_entangled_state():
    # (|e,g> + |g,e>)/sqrt(2): expanding the projector leaves I/2 on B.
    psi = np.zeros(4, dtype=complex)
    psi[1] = psi[2] = 1.0 / math.sqrt(2.0)
    reduced = partial_trace_A(DensityMatrix(np.outer(psi, psi.conj())))
    assert_allclose(reduced.mat, np.eye(2) / 2.0, atol=1e-15)


def test_partial_trace_requires_composite():
    with pytest.raises(DimensionMismatchError):
        partial_trace_A(MIXED)


def test_coherent_state_poles():
    for phi in (-2.0, 0.0, 1.5):
        assert_allclose(coherent_state(0.0, phi), [1.0, 0.0], atol=1e-15)
        v = coherent_state(math.pi, phi)
        assert_allclose(np.abs(v), [0.0, 1.0], atol=1e-15)
        assert_allclose(v[1], np.exp(1j * phi), atol=1e-15)


def test_coherent_state_equator_is_sigma_x_eigenstate():
    v = coherent_state(math.pi / 2.0, 0.0)
    assert_allclose(v, np.array([1.0, 1.0]) / math.sqrt(2.0), atol=1e-15)
    assert_allclose(pauli("x") @ v, v, atol=1e-15)


def test_coherent_state_unit_norm():
    rng = np.random.default_rng(8)
    for _ in range(20):
        v = coherent_state(rng.uniform(0, math.pi), rng.uniform(-math.pi, math.pi))
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-15


def test_husimi_maximally_mixed_flat():
    for theta in (0.0, 1.0, math.pi):
        for phi in (-3.0, 0.0, 2.0):
            assert abs(husimi_q(MIXED, theta, phi) - 1.0 / (4.0 * math.pi)) <= 1e-15


def test_husimi_excited_projector():
    excited = DensityMatrix(np.diag([1.0, 0.0]).astype(complex))
    assert abs(husimi_q(excited, 0.0, 0.3) - 1.0 / (2.0 * math.pi)) <= 1e-15
    assert abs(husimi_q(excited, math.pi, 0.3)) <= 1e-15


def test_husimi_limit_cycle_analytic():
    for theta in theta_grid(25):
        for phi in (-3.0, 0.0, 1.0):
            assert abs(husimi_q(LIMIT_CYCLE, theta, phi) - limit_cycle_q(theta)) <= 1e-12


def test_q_grid_constant_for_maximally_mixed():
    grid = q_grid(MIXED, n_theta=11, n_phi=8)
    assert_allclose(grid.values, np.full((11, 8), 1.0 / (4.0 * math.pi)), atol=1e-15)


def test_q_grid_phi_independent_for_diagonal_state():
    grid = q_grid(LIMIT_CYCLE)
    spread = np.max(grid.values.max(axis=1) - grid.values.min(axis=1))
    assert spread <= 1e-14


def test_q_grid_matches_pointwise_husimi(resonant_rho_b):
    grid = q_grid(resonant_rho_b, n_theta=21, n_phi=12)
    for i in (0, 7, 20):
        for j in (0, 5, 11):
            direct = husimi_q(resonant_rho_b, float(grid.thetas[i]), float(grid.phis[j]))
            assert abs(grid.values[i, j] - direct) <= 1e-14


def test_q_grid_resonant_peak_location(resonant_rho_b):
    grid = q_grid(resonant_rho_b)
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    assert grid.phis[j] == 0.0
    # Golden polar location of the peak at the default resolution.
    assert i == 36
    # Unique maximum on the grid.
    assert np.sum(grid.values == grid.values[i, j]) == 1


def test_q_grid_normalization(resonant_rho_b, detuned_rho_b, make_density):
    rng = np.random.default_rng(44)
    states = [resonant_rho_b, detuned_rho_b, LIMIT_CYCLE, MIXED]
    states += [DensityMatrix(make_density(rng, 2)) for _ in range(5)]
    for rho_b in states:
        assert abs(q_grid(rho_b).normalization() - 1.0) <= 1e-6


def test_q_grid_resolution_validation():
    with pytest.raises(BadResolutionError):
        q_grid(MIXED, n_theta=180, n_phi=8)
    with pytest.raises(BadResolutionError):
        q_grid(MIXED, n_theta=11, n_phi=3)
    with pytest.raises(BadResolutionError):
        theta_grid(1)


def test_s_phi_zero_for_diagonal_states():
    for phi in (-math.pi, -1.0, 0.0, 2.0):
        assert abs(s_phi(LIMIT_CYCLE, phi)) <= 1e-9
        assert abs(s_phi(MIXED, phi)) <= 1e-9


def test_s_phi_real_coherence_values():
    rho = DensityMatrix(np.array([[0.5, 0.2], [0.2, 0.5]], dtype=complex))
    assert abs(s_phi(rho, 0.0) - 0.05) <= 1e-9
    assert abs(s_phi(rho, math.pi) - (-0.05)) <= 1e-9


def test_s_phi_flat_value_with_quarter_sphere_baseline():
    # The alternative baseline leaves diagonal states at 1/(4 pi).
    for phi in (-2.0, 0.0, 1.0):
        assert abs(s_phi(LIMIT_CYCLE, phi, baseline="paper") - 1.0 / (4.0 * math.pi)) <= 1e-9


def test_s_phi_matches_closed_form_random(make_density):
    rng = np.random.default_rng(12345)
    for _ in range(100):
        rho = DensityMatrix(make_density(rng, 2))
        phi = float(rng.uniform(-math.pi, math.pi))
        assert abs(s_phi(rho, phi) - closed_form_s(rho, phi)) <= 1e-9


def test_s_phi_unknown_baseline():
    with pytest.raises(ValueError):
        s_phi(MIXED, 0.0, baseline="flat")


def test_s_distribution_flat_for_diagonal_state():
    dist = s_distribution(LIMIT_CYCLE, n_phi=360, n_theta=181)
    assert abs(dist.s_max) <= 1e-9
    # Flat up to quadrature round-off; every sample is itself tiny.
    assert float(dist.s_values.max() - dist.s_values.min()) <= 1e-12
    assert np.max(np.abs(dist.s_values)) <= 1e-9


def test_locking_phase_tie_breaking():
    phis = phi_grid(8)  # [-pi, ..., 0, ..., 3pi/4]
    flat = np.zeros(8)
    assert locking_phase(phis, flat) == (0.0, 0.0)
    # Tie at +-pi/2 (indices 2 and 6): negative sign wins.
    two = flat.copy()
    two[2] = two[6] = 1.0
    assert locking_phase(phis, two) == (1.0, float(phis[2]))
    # Unique maximum wins regardless of position.
    one = flat.copy()
    one[7] = 2.0
    assert locking_phase(phis, one) == (2.0, float(phis[7]))


def test_s_distribution_tracks_coherence_argument():
    r = 0.2
    for alpha in (-2.5, -1.0, 0.0, 0.7, 3.0):
        z = r * np.exp(1j * alpha)
        rho = DensityMatrix(np.array([[0.5, z], [np.conj(z), 0.5]]))
        dist = s_distribution(rho)
        step = 2.0 * math.pi / dist.phis.size
        target = wrap_phi(-alpha)
        delta = abs(wrap_phi(dist.phi_star - target))
        assert delta <= step + 1e-12
        # The grid maximum undershoots the true peak r/4 by at most the
        # curvature of cos over half a grid step.
        sampling = (r / 4.0) * (1.0 - math.cos(step / 2.0))
        assert dist.s_max <= r / 4.0 + 1e-9
        assert dist.s_max >= r / 4.0 - sampling - 1e-9


def test_s_max_exact_when_peak_on_grid():
    # With a real positive coherence the peak sits exactly at phi = 0, a
    # grid point, so only quadrature error remains.
    rho = DensityMatrix(np.array([[0.5, 0.2], [0.2, 0.5]], dtype=complex))
    dist = s_distribution(rho)
    assert abs(dist.s_max - 0.05) <= 1e-9
    assert dist.phi_star == 0.0


def test_s_distribution_zero_mean_centered(resonant_rho_b):
    dist = s_distribution(resonant_rho_b)
    dphi = 2.0 * math.pi / dist.phis.size
    assert abs(float(dist.s_values.sum()) * dphi) <= 1e-9


def test_s_distribution_symmetric_for_real_coherence(resonant_rho_b):
    # Resonant locking leaves rho_eg real: s(phi) = s(-phi).
    assert abs(np.imag(resonant_rho_b.mat[0, 1])) <= 1e-12
    dist = s_distribution(resonant_rho_b)
    n = dist.phis.size
    for k in range(1, n):
        assert abs(dist.s_values[k] - dist.s_values[n - k]) <= 1e-12


def test_s_distribution_agrees_with_s_phi(resonant_rho_b):
    dist = s_distribution(resonant_rho_b, n_phi=24, n_theta=61)
    for k in (0, 5, 12, 23):
        direct = s_phi(resonant_rho_b, float(dist.phis[k]), n_theta=61)
        assert abs(dist.s_values[k] - direct) <= 1e-14


def test_detuning_flips_locking_phase():
    plus = partial_trace_A(steady_state(liouvillian(SystemParams(delta2=5.0))))
    minus = partial_trace_A(steady_state(liouvillian(SystemParams(delta2=-5.0))))
    d_plus = s_distribution(plus)
    d_minus = s_distribution(minus)
    assert d_plus.phi_star > 0.0
    assert d_minus.phi_star < 0.0
    assert abs(d_plus.phi_star + d_minus.phi_star) <= 1e-12


def test_wrap_phi():
    assert wrap_phi(0.0) == 0.0
    assert wrap_phi(math.pi) == -math.pi
    assert abs(wrap_phi(1.5 * math.pi) - (-0.5 * math.pi)) <= 1e-15
    assert abs(wrap_phi(-1.5 * math.pi) - (0.5 * math.pi)) <= 1e-15


def test_phi_grid_right_open():
    phis = phi_grid(8)
    assert phis[0] == -math.pi
    assert math.pi not in phis
    assert phis.size == 8
    assert abs(phis[4]) == 0.0
