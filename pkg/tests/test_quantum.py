import math
import warnings

import numpy as np
import pytest

import wellprob as wp
from oracles import fd_eigenvalues, simpson_transform

CC10 = wp.closed_court(a=25.0, v0=10.0)
CC6 = wp.closed_court(a=25.0, v0=6.0)
CC2 = wp.closed_court(a=25.0, v0=2.0)
IW = wp.infinite_well(a=25.0)


# ---------------------------------------------------------------------------
# eigenvalues

def test_airy_scales():
    s = wp.AiryScales.from_spec(CC10, 10.066)
    assert s.rho == pytest.approx(2.5 ** (1.0 / 3.0), rel=1e-14)
    assert s.sigma == pytest.approx(2.5 * 10.066, rel=1e-14)


@pytest.mark.parametrize("spec,e_ref", [(CC10, 10.066), (CC6, 10.073), (CC2, 10.105)])
def test_reference_eigenvalues(spec, e_ref, table1_levels):
    level = next(lv for s, lv in table1_levels if s == spec)
    assert abs(level.energy - e_ref) <= 0.001


def test_eigenvalues_sorted_and_residuals_small():
    for parity in ("even", "odd"):
        roots = wp.eigenvalues_closed_court(CC10, 12.0, parity)
        assert np.all(np.diff(roots) > 0)
        for e in roots:
            assert wp.quantum.eigencondition_residual(CC10, float(e), parity) < 1e-9


def test_spectrum_interlaces():
    with warnings.catch_warnings():
        warnings.simplefilter("error")  # no skipped-root warnings expected
        levels = wp.spectrum(CC6, 12.0)
    parities = [lv.parity for lv in levels]
    assert all(a != b for a, b in zip(parities, parities[1:]))


@pytest.mark.parametrize("v0", [10.0, 6.0, 2.0])
def test_cross_validation_against_finite_difference(v0):
    spec = wp.closed_court(a=25.0, v0=v0)
    ours = np.array([lv.energy for lv in wp.spectrum(spec, 12.0)])
    oracle = fd_eigenvalues(25.0, v0, 12.0)
    oracle = oracle[oracle > v0]
    assert len(oracle) == len(ours)
    assert np.max(np.abs(ours - oracle) / oracle) < 1e-4


def test_small_v0_limit_approaches_infinite_well():
    # first-order shift is <V> = V0/2, so the gap must close like V0
    v0 = 1e-3
    spec = wp.closed_court(a=25.0, v0=v0)
    levels = wp.spectrum(spec, 0.11)
    iw_values = [(j * math.pi / 50.0) ** 2 for j in range(1, len(levels) + 1)]
    for lv, e_iw in zip(levels, iw_values):
        assert abs(lv.energy - e_iw) < v0
    # parity order matches the well: even ground state first
    assert levels[0].parity == "even" and levels[1].parity == "odd"
    oracle = fd_eigenvalues(25.0, v0, 0.11, n=6000)
    assert np.max(np.abs(np.array([lv.energy for lv in levels]) - oracle[:len(levels)])
                  / oracle[:len(levels)]) < 1e-4


def test_eigenvalues_empty_below_regime():
    assert len(wp.eigenvalues_closed_court(CC10, 9.0, "odd")) == 0


def test_eigencondition_changes_sign_across_root(table1_levels):
    for spec, level in table1_levels:
        rho = (spec.a / spec.v0) ** (1.0 / 3.0)  # hbar = 2m = 1
        def det(e):
            sigma = e * spec.a / spec.v0
            return wp.airy_cross(-sigma / rho, (spec.a - sigma) / rho)
        assert det(level.energy - 0.01) * det(level.energy + 0.01) < 0.0


def test_nearest_level_reports_parity_and_index(table1_levels):
    spec, level = table1_levels[0]
    assert level.parity == "odd"
    assert level.index == 1  # first odd level above V0 = 10
    assert level.residual < 1e-9


# ---------------------------------------------------------------------------
# eigenstates

def test_eigenstate_wall_and_origin_conditions(table1_states):
    for spec, level, state in table1_states:
        assert abs(state.psi[-1]) < 1e-8
        assert abs(state.psi[0]) < 1e-8
        mid = len(state.grid) // 2
        if level.parity == "odd":
            assert state.psi[mid] == 0.0
        else:
            h = state.grid[1] - state.grid[0]
            slope = (state.psi[mid + 1] - state.psi[mid - 1]) / (2.0 * h)
            assert abs(slope) < 1e-8 * np.max(np.abs(state.psi))


def test_eigenstate_normalized(table1_states):
    for spec, level, state in table1_states:
        h = state.grid[1] - state.grid[0]
        norm = wp.quantum._simpson_uniform(state.psi ** 2, h)
        assert abs(norm - 1.0) < 1e-8


def test_eigenstate_schrodinger_residual(table1_states):
    # five-point second derivative at h = 1e-3 a; relative to ||E psi||
    for spec, level, state in table1_states:
        h = 1e-3 * spec.a
        x = np.linspace(-spec.a + 3 * h, spec.a - 3 * h, 401)
        scales = wp.AiryScales.from_spec(spec, level.energy)

        def psi_at(pts):
            z = (np.abs(pts) - scales.sigma) / scales.rho
            ai, bi, _, _ = wp.airy_eval_many(z)
            z0 = np.array([-scales.sigma / scales.rho])
            ai0, bi0, aip0, bip0 = wp.airy_eval_many(z0)
            ca, cb = (bi0[0], -ai0[0]) if level.parity == "odd" else (bip0[0], -aip0[0])
            raw = ca * ai + cb * bi
            if level.parity == "odd":
                raw = np.where(pts < 0, -raw, raw)
            return state.norm_constant * raw

        stencil = (-psi_at(x + 2 * h) + 16 * psi_at(x + h) - 30 * psi_at(x)
                   + 16 * psi_at(x - h) - psi_at(x - 2 * h)) / (12.0 * h * h)
        hbar2_2m = spec.constants.hbar ** 2 / (2.0 * spec.constants.mass)
        v = wp.evaluate_potential(spec, x)
        residual = -hbar2_2m * stencil + (v - level.energy) * psi_at(x)
        rel = np.linalg.norm(residual) / np.linalg.norm(level.energy * psi_at(x))
        assert rel < 1e-5


def test_eigenstate_rejects_non_eigenvalue():
    with pytest.raises(wp.NumericalError):
        wp.eigenstate_closed_court(CC10, 10.2, "odd")


def test_orthogonality():
    odd = wp.eigenvalues_closed_court(CC10, 11.2, "odd")
    even = wp.eigenvalues_closed_court(CC10, 11.2, "even")
    states = [wp.eigenstate_closed_court(CC10, float(e), "odd", index=i + 1)
              for i, e in enumerate(odd[:2])]
    states += [wp.eigenstate_closed_court(CC10, float(e), "even", index=i + 1)
               for i, e in enumerate(even[:2])]
    h = states[0].grid[1] - states[0].grid[0]
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            overlap = wp.quantum._simpson_uniform(states[i].psi * states[j].psi, h)
            assert abs(overlap) < 1e-6, (i, j)


def test_infinite_well_states():
    iw1 = wp.infinite_well(a=1.0)
    st = wp.eigenstate_infinite_well(iw1, 1, "even")
    assert st.energy == pytest.approx((math.pi / 2.0) ** 2, rel=1e-14)
    assert st.psi[0] == pytest.approx(0.0, abs=1e-12)
    assert st.psi[-1] == pytest.approx(0.0, abs=1e-12)
    h = st.grid[1] - st.grid[0]
    assert wp.quantum._simpson_uniform(st.psi ** 2, h) == pytest.approx(1.0, abs=1e-10)
    # analytic energies satisfy the eigenvalue relation -psi''/2m = E psi
    st_odd = wp.eigenstate_infinite_well(IW, 3, "odd")
    k = 3 * math.pi / 25.0
    assert st_odd.energy == pytest.approx(k * k, rel=1e-14)  # hbar = 2m = 1


# ---------------------------------------------------------------------------
# momentum transforms

def test_transform_matches_two_sinc_closed_form():
    for n in (1, 5, 10):
        st = wp.eigenstate_infinite_well(IW, n, "even")
        wave = wp.momentum_transform(st)
        closed = wp.infinite_well_momentum(IW, n, "even", wave.grid)
        assert np.max(np.abs(wave.phi - closed)) < 1e-6


def test_transform_matches_closed_form_odd():
    st = wp.eigenstate_infinite_well(IW, 4, "odd")
    wave = wp.momentum_transform(st)
    closed = wp.infinite_well_momentum(IW, 4, "odd", wave.grid)
    assert np.max(np.abs(wave.phi - closed)) < 1e-6


def test_transform_zero_momentum_value():
    iw1 = wp.infinite_well(a=1.0)
    phi0 = complex(wp.infinite_well_momentum(iw1, 1, "even", 0.0))
    assert phi0.real == pytest.approx(math.sqrt(1.0 / (2.0 * math.pi)) * 4.0 / math.pi,
                                      rel=1e-12)
    assert phi0.real == pytest.approx(0.50793, abs=5e-5)
    st = wp.eigenstate_infinite_well(iw1, 1, "even", n_grid=2001)
    wave = wp.momentum_transform(st, p_grid=np.array([-0.5, 0.0, 0.5]))
    assert wave.phi[1].real == pytest.approx(phi0.real, rel=1e-9)


def test_transform_parity_symmetry(table1_waves):
    for spec, level, st, wave in table1_waves:
        assert np.max(np.abs(np.abs(wave.phi) - np.abs(wave.phi[::-1]))) < 1e-10


def test_transform_parseval_on_wide_window(table1_states):
    spec, level, st = table1_states[0]
    p_plus = math.sqrt(2.0 * spec.constants.mass * level.energy)
    wave = wp.momentum_transform(st, p_grid=np.linspace(-6 * p_plus, 6 * p_plus, 4001))
    assert 0.999 <= wave.norm_mass() <= 1.0


def test_transform_parseval_default_grid(table1_waves):
    for spec, level, st, wave in table1_waves:
        assert abs(wave.norm_mass() - 1.0) < 1e-4


def test_transform_against_dense_simpson_oracle(table1_states):
    spec, level, st = table1_states[0]
    p_check = np.linspace(-4.0, 4.0, 41)
    wave = wp.momentum_transform(st, p_grid=p_check)
    oracle = simpson_transform(st.grid, st.psi, p_check, hbar=spec.constants.hbar)
    assert np.max(np.abs(wave.phi - oracle)) < 1e-8


def test_transform_peaks_inside_widened_band(table1_waves):
    for spec, level, st, wave in table1_waves:
        cl = wp.classical_state(spec, level.energy)
        widen = spec.constants.hbar / spec.a
        pos = wave.grid > 0
        peak = wave.grid[pos][np.argmax(wave.density[pos])]
        assert cl.p_minus - widen <= peak <= cl.p_plus + widen


def test_transform_grid_resolution_guard():
    st = wp.eigenstate_infinite_well(IW, 10, "even", n_grid=201)
    with pytest.raises(wp.ResolutionError) as err:
        wp.momentum_transform(st)
    assert "intervals" in str(err.value)


def test_position_density_curve(table1_states):
    spec, level, st = table1_states[0]
    d = wp.position_density(st)
    assert d.variable == "position"
    assert abs(d.trapezoid_mass() - 1.0) < 1e-6
