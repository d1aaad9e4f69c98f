import math

import numpy as np
import pytest

from spinsync import (
    AxisSpec,
    BadResolutionError,
    SweepSpec,
    SystemParams,
    arnold_tongue,
    liouvillian,
    partial_trace_A,
    phi_axis,
    phi_grid,
    run_sweep,
    s_distribution,
    steady_state,
)

BASE = SystemParams()


def small_phi_sweep(axis1: AxisSpec, n_theta=21, n_phi=16, base=BASE) -> SweepSpec:
    return SweepSpec(
        base=base,
        axis1=axis1,
        axis2=phi_axis(n_phi),
        reduce="s_of_phi",
        n_theta=n_theta,
        n_phi=n_phi,
    )


def small_tongue(axis1: AxisSpec, axis2=None, n_theta=21, n_phi=16, base=BASE) -> SweepSpec:
    return SweepSpec(
        base=base,
        axis1=axis1,
        axis2=axis2 or AxisSpec("delta2", -3.0, 3.0, 3),
        reduce="max_s",
        n_theta=n_theta,
        n_phi=n_phi,
    )


def test_axis_spec_validation():
    with pytest.raises(ValueError):
        AxisSpec("delta2", 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        AxisSpec("delta2", 1.0, 1.0, 5)
    with pytest.raises(ValueError):
        AxisSpec("detuning", 0.0, 1.0, 5)


def test_axis_values_phi_is_right_open():
    axis = phi_axis(12)
    values = axis.values()
    assert np.array_equal(values, phi_grid(12))
    assert values[-1] < math.pi


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(
            base=BASE,
            axis1=AxisSpec("delta2", -1.0, 1.0, 3),
            axis2=AxisSpec("delta2", -1.0, 1.0, 3),
            reduce="s_of_phi",
        )
    with pytest.raises(ValueError):
        SweepSpec(base=BASE, axis1=AxisSpec("delta2", -1.0, 1.0, 3), axis2=phi_axis(8), reduce="max_s")
    with pytest.raises(ValueError):
        SweepSpec(base=BASE, axis1=AxisSpec("epsilon", -1.0, 1.0, 3), axis2=phi_axis(8), reduce="s_of_phi")
    with pytest.raises(BadResolutionError):
        SweepSpec(
            base=BASE,
            axis1=AxisSpec("delta2", -1.0, 1.0, 3),
            axis2=phi_axis(8),
            reduce="s_of_phi",
            n_theta=20,
        )
    with pytest.raises(ValueError):
        small_phi_sweep(AxisSpec("phi", -1.0, 1.0, 3))


def test_run_sweep_rows_match_direct_evaluation():
    spec = small_phi_sweep(AxisSpec("delta2", -2.0, 2.0, 3))
    result = run_sweep(spec)
    assert result.values.shape == (3, 16)
    assert np.array_equal(result.axis2_values, phi_grid(16))
    for i, d2 in enumerate(result.axis1_values):
        p = SystemParams(delta2=float(d2))
        rho_b = partial_trace_A(steady_state(liouvillian(p)))
        dist = s_distribution(rho_b, 16, 21)
        assert np.array_equal(result.values[i], dist.s_values)
        assert result.null_dim[i].tolist() == [1] * 16
        assert np.all(result.residual[i] <= 1e-9)
        assert np.all(result.spectral_gap[i] > 0)


def test_run_sweep_deterministic_and_job_independent():
    spec = small_phi_sweep(AxisSpec("epsilon", 0.0, 10.0, 5))
    first = run_sweep(spec, jobs=1)
    again = run_sweep(spec, jobs=1)
    threaded = run_sweep(spec, jobs=4)
    assert np.array_equal(first.values, again.values)
    assert np.array_equal(first.values, threaded.values)
    assert np.array_equal(first.spectral_gap, threaded.spectral_gap)
    assert np.array_equal(first.residual, threaded.residual)


def test_tongue_cells_match_coherence_oracle():
    spec = small_tongue(AxisSpec("epsilon", 0.5, 8.0, 4), n_theta=181, n_phi=90)
    result = arnold_tongue(spec)
    step = 2.0 * math.pi / 90
    for i, eps in enumerate(result.axis1_values):
        for j, d2 in enumerate(result.axis2_values):
            p = SystemParams(epsilon=float(eps), delta2=float(d2))
            rho_b = partial_trace_A(steady_state(liouvillian(p)))
            oracle = abs(rho_b.mat[0, 1]) / 4.0
            # Grid sampling can undershoot the true peak by the cosine
            # curvature over half a phi step; quadrature adds ~1e-10.
            sampling = oracle * (1.0 - math.cos(step / 2.0))
            assert result.values[i, j] <= oracle + 1e-9
            assert result.values[i, j] >= oracle - sampling - 1e-9
            if d2 == 0.0:  # peak at phi = 0, an exact grid point
                assert abs(result.values[i, j] - oracle) <= 1e-9


def test_tongue_zero_drive_row_is_flat():
    spec = small_tongue(AxisSpec("epsilon", 0.0, 4.0, 3), n_theta=181)
    result = arnold_tongue(spec)
    assert np.all(np.abs(result.values[0]) <= 1e-10)


def test_tongue_requires_strength_axis():
    with pytest.raises(ValueError):
        arnold_tongue(small_tongue(AxisSpec("delta2", -1.0, 1.0, 3)))
    with pytest.raises(ValueError):
        arnold_tongue(small_phi_sweep(AxisSpec("epsilon", 0.0, 1.0, 3)))


def test_degenerate_points_are_flagged_not_fatal():
    # g = 0 leaves spin A undamped and uncoupled here, a genuinely
    # degenerate generator; the sweep must flag that row and finish.
    base = SystemParams(epsilon=0.0, g=0.0, gamma_a_gain=0.0, gamma_a_loss=0.0)
    spec = small_tongue(AxisSpec("g", 0.0, 2.0, 3), base=base)
    result = run_sweep(spec)
    assert np.all(np.isnan(result.values[0]))
    assert np.all(result.null_dim[0] == 4)
    assert np.all(np.isnan(result.residual[0]))
    assert np.all(np.isfinite(result.values[1:]))
    assert np.all(result.null_dim[1:] == 1)
    assert np.array_equal(result.flagged()[0], np.full(3, True))


def test_drive_response_has_interior_maximum():
    spec = small_phi_sweep(AxisSpec("epsilon", 1.0, 30.0, 15), n_theta=61, n_phi=60)
    result = run_sweep(spec)
    response = result.values.max(axis=1)
    k = int(np.argmax(response))
    assert 0 < k < response.size - 1
    assert np.all(np.diff(response[: k + 1]) > 0)
    assert np.all(np.diff(response[k:]) < 0)


def test_coupling_response_has_interior_maximum():
    spec = small_phi_sweep(AxisSpec("g", 1.0, 30.0, 15), n_theta=61, n_phi=60)
    result = run_sweep(spec)
    response = result.values.max(axis=1)
    k = int(np.argmax(response))
    assert 0 < k < response.size - 1
    assert np.all(np.diff(response[: k + 1]) > 0)
    assert np.all(np.diff(response[k:]) < 0)


def test_sweep_result_is_read_only():
    spec = small_phi_sweep(AxisSpec("delta2", -1.0, 1.0, 2), n_phi=8, n_theta=11)
    result = run_sweep(spec)
    with pytest.raises(ValueError):
        result.values[0, 0] = 1.0
