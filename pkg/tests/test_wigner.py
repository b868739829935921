"""Phase-space densities: direct-summation cross-check, closed forms, marginals,
transport, and the 3-D photon column picture."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wavekit import em, lattice, wigner


def random_wave(n, seed, ell=0.8, hbar=0.9):
    rng = np.random.default_rng(seed)
    dk = 2.0 * math.pi / (ell * n)
    k = (np.arange(n) - n // 2) * dk
    psik = rng.normal(size=n) + 1j * rng.normal(size=n)
    return lattice.ActionWave(psik=psik, k=k, ell=ell, hbar=hbar)


def gaussian_wave(n=256, g=64.0, n_quanta=3.0, ell=1.0, hbar=1.0, k0=None):
    if k0 is None:
        k0 = 2.0 * math.pi * (n // 4) / (ell * n)
    gp = wigner.GaussianEtaParams(n_quanta=n_quanta, g=g, k0=k0, x0=ell * n / 2.0)
    return gp, wigner.gaussian_action_wave(gp, ell, n, hbar)


# ---------------------------------------------------------------------------
# reference implementation: explicit correlation sums, O(n^3)


def direct_summation_reference(wave):
    n = wave.psik.size
    two_n = 2 * n
    dk = 2.0 * math.pi / (wave.ell * n)
    x = (wave.ell / 2.0) * np.arange(two_n)
    site = np.zeros(two_n, dtype=complex)
    for m in range(two_n):
        site[m] = (dk / math.sqrt(2.0 * math.pi)) * np.sum(
            wave.psik * np.exp(1j * wave.k * x[m])
        )
    pref = (wave.ell / 2.0) / (math.pi * wave.hbar**2)
    f = np.zeros((two_n, two_n))
    for m in range(two_n):
        for si in range(two_n):
            s = si - n
            acc = 0.0j
            for r in range(two_n):
                acc += (
                    site[(m + r) % two_n]
                    * np.conj(site[(m - r) % two_n])
                    * np.exp(-2j * math.pi * r * s / two_n)
                )
            f[m, si] = pref * acc.real
    p = (wave.hbar * dk / 2.0) * (np.arange(two_n) - n)
    return x, p, f


def test_matches_direct_summation():
    wave = random_wave(8, seed=3)
    x_ref, p_ref, f_ref = direct_summation_reference(wave)
    grid = wigner.wigner_1d(wave)
    assert np.max(np.abs(grid.x - x_ref)) == 0.0
    assert np.max(np.abs(grid.p - p_ref)) < 1e-15
    assert np.max(np.abs(grid.f - f_ref)) / np.max(np.abs(f_ref)) < 1e-13


# ---------------------------------------------------------------------------
# exact discrete identities


@given(seed=st.integers(0, 2**31), n_exp=st.integers(3, 5))
def test_total_counts_quanta(seed, n_exp):
    wave = random_wave(2**n_exp, seed)
    grid = wigner.wigner_1d(wave)
    expected = wave.dk * float(np.sum(wave.eta)) / wave.hbar
    assert grid.total() == pytest.approx(expected, rel=1e-12)


@given(seed=st.integers(0, 2**31))
def test_marginals_are_exact(seed):
    wave = random_wave(16, seed)
    grid = wigner.wigner_1d(wave)
    density_x = np.abs(wigner.doubled_site_values(wave)) ** 2 / wave.hbar
    scale = np.max(density_x)
    assert np.max(np.abs(grid.marginal_x() - density_x)) < 1e-13 * scale
    density_p = wave.eta / wave.hbar**2
    assert np.max(np.abs(grid.marginal_p() - density_p)) < 1e-13 * np.max(density_p)


def test_checkerboard_ghost():
    # periodic images half a ring away carry an alternating sign in p
    wave = random_wave(16, seed=12)
    grid = wigner.wigner_1d(wave)
    n = wave.psik.size
    signs = (-1.0) ** (np.arange(2 * n) - n)
    ghost = np.roll(grid.f, -n, axis=0)
    assert np.max(np.abs(ghost - signs[None, :] * grid.f)) < 1e-12 * np.max(np.abs(grid.f))


def test_single_mode_is_one_flat_row():
    wave = random_wave(16, seed=0)
    psik = np.zeros(16, dtype=complex)
    psik[11] = 1.5 - 0.5j  # k index 3 of the shifted grid
    wave = lattice.ActionWave(psik=psik, k=wave.k, ell=wave.ell, hbar=wave.hbar)
    grid = wigner.wigner_1d(wave)
    row = 2 * 11  # doubled momentum grid
    others = np.delete(np.arange(32), row)
    assert np.max(np.abs(grid.f[:, others])) < 1e-13 * np.max(np.abs(grid.f))
    assert np.ptp(grid.f[:, row]) < 1e-13 * np.max(np.abs(grid.f))
    assert grid.total() == pytest.approx(wave.dk * float(np.sum(wave.eta)) / wave.hbar, rel=1e-12)


def test_window_crops_position_only():
    wave = random_wave(16, seed=4)
    grid = wigner.wigner_1d(wave)
    win = grid.window(2.0, 5.0)
    assert win.p.size == grid.p.size
    assert win.x.size < grid.x.size
    assert np.all(win.x >= 2.0) and np.all(win.x < 5.0)
    with pytest.raises(ValueError):
        win.marginal_p()
    with pytest.raises(ValueError):
        grid.window(100.0, 101.0)


# ---------------------------------------------------------------------------
# Gaussian packet closed form


def test_gaussian_closed_form_half_window():
    gp, wave = gaussian_wave()
    grid = wigner.wigner_1d(wave)
    length = wave.ell * wave.psik.size
    half = grid.window(gp.x0 - length / 4.0, gp.x0 + length / 4.0)
    closed = wigner.wigner_gaussian_closed(gp, half.x, half.p, wave.hbar)
    peak = gp.n_quanta / (math.pi * wave.hbar)
    assert np.max(np.abs(half.f - closed)) / peak < 1e-10


def test_gaussian_peak_and_total():
    gp, wave = gaussian_wave()
    grid = wigner.wigner_1d(wave)
    peak = gp.n_quanta / (math.pi * wave.hbar)
    assert np.max(grid.f) == pytest.approx(peak, rel=1e-6)
    assert grid.total() == pytest.approx(gp.n_quanta, rel=1e-8)


def test_gaussian_params_validation():
    with pytest.raises(ValueError):
        wigner.GaussianEtaParams(n_quanta=0.0, g=1.0, k0=0.0)
    with pytest.raises(ValueError):
        wigner.GaussianEtaParams(n_quanta=1.0, g=-2.0, k0=0.0)


# ---------------------------------------------------------------------------
# energy-form density


def test_quasi_energy_totals_to_hamiltonian():
    params = lattice.LatticeParams(m=1.0, omega0=0.5, kappa=1.0, ell=1.0, n_sites=32)
    rng = np.random.default_rng(8)
    state = lattice.LatticeState(u=rng.normal(size=32), v=rng.normal(size=32))
    modes = lattice.dft_to_modes(state, params)
    wave = lattice.psi_from_modes(modes, hbar=1.0)
    omega = np.asarray(lattice.dispersion(wave.k, params))
    grid = wigner.quasi_energy_density(wave, omega)
    assert grid.total() == pytest.approx(lattice.hamiltonian_energy(state, params), rel=1e-12)


def test_quasi_energy_rejects_negative_frequency():
    wave = random_wave(8, seed=2)
    with pytest.raises(ValueError):
        wigner.quasi_energy_density(wave, -np.ones(8))


# ---------------------------------------------------------------------------
# transport


def test_transport_exact_roll():
    # integer-cell translation must be an exact circular shift
    gp, wave = gaussian_wave(n=128, g=16.0)
    grid = wigner.wigner_1d(wave)
    cells = 12
    moved = wigner.evolve_wigner_group_velocity(grid, None, cells * grid.dx, vg=1.0)
    assert np.max(np.abs(moved.f - np.roll(grid.f, cells, axis=0))) < 1e-12 * np.max(grid.f)


def test_transport_closed_form_and_marginal_p():
    gp, wave = gaussian_wave()
    grid = wigner.wigner_1d(wave)
    t = 17.32  # non-integer number of cells
    moved = wigner.evolve_wigner_group_velocity(grid, None, t, vg=1.0)
    length = wave.ell * wave.psik.size
    center = gp.x0 + t
    half = moved.window(center - length / 4.0, center + length / 4.0)
    closed = wigner.wigner_gaussian_closed(gp, half.x, half.p, wave.hbar, t=t, vg=1.0)
    peak = gp.n_quanta / (math.pi * wave.hbar)
    assert np.max(np.abs(half.f - closed)) / peak < 1e-10
    # momentum content must be untouched by position transport
    assert np.max(np.abs(moved.marginal_p() - grid.marginal_p())) < 1e-12 * np.max(
        grid.marginal_p()
    )


def test_transport_differentiates_dispersion():
    # finite-difference group velocity vs the exact derivative, same grid
    gp, wave = gaussian_wave(n=128, g=16.0)
    grid = wigner.wigner_1d(wave)
    omega = lambda k: np.sqrt(1.0 + np.asarray(k) ** 2)  # noqa: E731
    t = 25.0
    via_fd = wigner.evolve_wigner_group_velocity(grid, omega, t)
    exact = wigner.evolve_wigner_group_velocity(
        grid, None, t, vg=lambda k: k / np.sqrt(1.0 + k**2)
    )
    assert np.max(np.abs(via_fd.f - exact.f)) / np.max(np.abs(exact.f)) < 1e-8


def test_transport_requires_full_period():
    gp, wave = gaussian_wave(n=64, g=16.0)
    win = wigner.wigner_1d(wave).window(0.0, 10.0)
    with pytest.raises(ValueError):
        wigner.evolve_wigner_group_velocity(win, None, 1.0, vg=1.0)


# ---------------------------------------------------------------------------
# 3-D photon columns


def transverse_mode_set(seed, n_modes=5, box_length=2.0 * math.pi, hbar=1.0):
    rng = np.random.default_rng(seed)
    base = 2.0 * math.pi / box_length
    seen = set()
    kvecs = []
    while len(kvecs) < n_modes:
        trio = tuple(rng.integers(-3, 4, size=3))
        if trio == (0, 0, 0) or trio in seen:
            continue
        seen.add(trio)
        kvecs.append(base * np.array(trio, dtype=float))
    k = np.array(kvecs)
    psik = rng.normal(size=(n_modes, 3)) + 1j * rng.normal(size=(n_modes, 3))
    khat = k / np.linalg.norm(k, axis=1, keepdims=True)
    psik = psik - (np.sum(psik * khat, axis=1, keepdims=True)) * khat
    return em.PhotonModeSet(
        k=k, psik=psik, box_length=box_length, medium=em.MediumParams(), hbar=hbar
    )


def test_3d_totals_match_mode_sums():
    modes = transverse_mode_set(seed=6)
    w3 = wigner.wigner_3d(modes)
    assert wigner.wigner_3d_total(w3) == pytest.approx(em.photon_number(modes), rel=1e-12)
    v = modes.medium.c / math.sqrt(modes.medium.eps * modes.medium.mu)
    assert wigner.wigner_3d_energy(w3, v) == pytest.approx(
        em.field_energy(modes), rel=1e-12
    )


def test_3d_cross_column_profile():
    # two modes interfere in one midpoint column with a plane-wave profile
    L = 2.0 * math.pi
    base = 2.0 * math.pi / L
    k = base * np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    psik = np.array([[0.0, 1.0 + 0.5j, 0.3], [0.7, 0.0, -0.2j]], dtype=complex)
    modes = em.PhotonModeSet(
        k=k, psik=psik, box_length=L, medium=em.MediumParams(), hbar=1.0
    )
    w3 = wigner.wigner_3d(modes)
    mid = 0.5 * (k[0] + k[1])
    col = next(
        c for c in w3.columns if np.max(np.abs(c.p_mid - mid)) < 1e-12
    )
    w_box = (2.0 * math.pi) ** 3 / L**3
    pref = w_box**2 / ((2.0 * math.pi) ** 3 * 1.0)
    rng = np.random.default_rng(1)
    x = rng.uniform(0.0, L, size=(6, 3))
    overlap = complex(np.dot(psik[0], np.conj(psik[1])))
    hand = pref * (
        overlap * np.exp(1j * (x @ (k[0] - k[1])))
        + np.conj(overlap) * np.exp(1j * (x @ (k[1] - k[0])))
    )
    assert np.max(np.abs(col.amplitude(x) - hand)) < 1e-13 * np.max(np.abs(hand))


def test_3d_rejects_other_inputs():
    with pytest.raises(TypeError):
        wigner.wigner_3d(np.zeros(3))
