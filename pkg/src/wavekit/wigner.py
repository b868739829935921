"""Phase-space densities of action waves: 1-D chain picture and 3-D photon picture.

1-D.  For a wave with mode amplitudes psi'_k on n wavenumbers the number
density on phase space is

    f(x, p) = (1/(pi*hbar^2)) * integral dy exp(-2i p y / hbar)
              psi(x + y) psi*(x - y)

realized on a doubled spatial grid: x_m = m*ell/2 with m in {0..2n-1},
p_s = (hbar*dk/2)*s with s in {-n..n-1}.  Exact discrete identities:

    sum_{m,s} dx dp f       = A/h            (total number)
    sum_s dp f(x_m, p_s)    = |psi(x_m)|^2 / hbar      (every m)
    sum over a half window in x at even s = eta_j / hbar^2 per dp cell

and f inherits a checkerboard ghost from periodicity: f(x + L/2, p_s) =
(-1)^s f(x, p_s).  Pointwise comparisons against continuum closed forms
therefore live on a half window centered on the packet.

3-D.  A photon mode set {psi'_a at k_a} on box measure w = (2pi)^3/V has

    f_N(x, p) = sum_{a,b} w^2 (psi'_a . psi'_b*) exp(i(k_a - k_b).x)
                delta^3(p - hbar(k_a + k_b)/2) / ((2pi)^3 hbar)

which is a finite set of delta columns in p, one per midpoint; each column
carries a smooth x profile.  Number and energy follow by summing columns
with exact Riemann quadrature in x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import ActionWave


@dataclass(frozen=True)
class WignerGrid:
    """Sampled phase-space density on the doubled grid.

    x runs over 2n points spaced ell/2; p over 2n points spaced hbar*dk/2.
    f[i, j] is the density at (x[i], p[j]).  full_period marks whether x
    still covers the whole ring (half-window views set it False).
    """

    x: np.ndarray
    p: np.ndarray
    f: np.ndarray
    hbar: float
    full_period: bool = True
    imag_residue: float = 0.0

    def __post_init__(self) -> None:
        if self.f.shape != (self.x.size, self.p.size):
            raise ValueError("f must have shape (len(x), len(p))")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dp(self) -> float:
        return float(self.p[1] - self.p[0])

    def total(self) -> float:
        return float(self.dx * self.dp * np.sum(self.f))

    def marginal_x(self) -> np.ndarray:
        """dp-sum over momentum; equals |psi(x)|^2/hbar (number form)."""
        return self.dp * np.sum(self.f, axis=1)

    def marginal_p(self) -> np.ndarray:
        """dx-sum over position, at even momentum rows only.

        Returns the density on the coarse momentum grid p_j = hbar*k_j
        (the odd rows alias between the two half windows and cancel in
        pairs; summing the full ring would double-count, so the full-period
        sum is halved).  Requires a full-period grid.
        """
        if not self.full_period:
            raise ValueError("marginal_p needs the full-period grid")
        even = self.f[:, ::2]
        return 0.5 * self.dx * np.sum(even, axis=0)

    def window(self, x_lo: float, x_hi: float) -> "WignerGrid":
        """Half-open window [x_lo, x_hi) in x; marks the grid as windowed."""
        mask = (self.x >= x_lo) & (self.x < x_hi)
        if not np.any(mask):
            raise ValueError("window contains no grid points")
        return WignerGrid(
            x=self.x[mask], p=self.p, f=self.f[mask, :], hbar=self.hbar,
            full_period=False, imag_residue=self.imag_residue,
        )


def _doubled_grid_transform(coeffs: np.ndarray, ell: float, prefactor: float):
    """Common core: half-spaced site values, then the correlation transform."""
    n = coeffs.size
    two_n = 2 * n
    dk = 2.0 * np.pi / (ell * n)
    padded = np.zeros(two_n, dtype=complex)
    j = np.arange(n) - n // 2
    padded[np.mod(j, two_n)] = coeffs
    site = (dk / np.sqrt(2.0 * np.pi)) * two_n * np.fft.ifft(padded)
    m = np.arange(two_n)
    plus = site[(m[:, None] + m[None, :]) % two_n]
    minus = np.conj(site[(m[:, None] - m[None, :]) % two_n])
    rows = np.fft.fft(plus * minus, axis=1)
    f = prefactor * np.fft.fftshift(rows, axes=1)
    residue = float(np.max(np.abs(f.imag)) / max(np.max(np.abs(f.real)), 1e-300))
    x = (ell / 2.0) * m
    p_index = np.arange(two_n) - n
    return x, p_index, f.real, residue, dk


def doubled_site_values(wave: ActionWave) -> np.ndarray:
    """psi interpolated to the half-spaced grid x_m = m*ell/2 (2n points)."""
    n = wave.psik.size
    two_n = 2 * n
    padded = np.zeros(two_n, dtype=complex)
    j = np.arange(n) - n // 2
    padded[np.mod(j, two_n)] = wave.psik
    return (wave.dk / np.sqrt(2.0 * np.pi)) * two_n * np.fft.ifft(padded)


def wigner_1d(wave: ActionWave) -> WignerGrid:
    """Number-form density of an action wave; integrates to A/h."""
    prefactor = (wave.ell / 2.0) / (np.pi * wave.hbar**2)
    x, s, f, residue, dk = _doubled_grid_transform(wave.psik, wave.ell, prefactor)
    p = (wave.hbar * dk / 2.0) * s
    return WignerGrid(x=x, p=p, f=f, hbar=wave.hbar, imag_residue=residue)


def quasi_energy_density(wave: ActionWave, omega) -> WignerGrid:
    """Energy-form density built from Phi'_k = sqrt(omega_k) psi'_k.

    omega is an array on the wave's grid or a callable of k; the result
    integrates to the total energy sum_k dk omega_k eta_k.
    """
    w = np.asarray(omega(wave.k) if callable(omega) else omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be nonnegative")
    coeffs = np.sqrt(w) * wave.psik
    prefactor = (wave.ell / 2.0) / (np.pi * wave.hbar)
    x, s, f, residue, dk = _doubled_grid_transform(coeffs, wave.ell, prefactor)
    p = (wave.hbar * dk / 2.0) * s
    return WignerGrid(x=x, p=p, f=f, hbar=wave.hbar, imag_residue=residue)


@dataclass(frozen=True)
class GaussianEtaParams:
    """Gaussian action spectrum eta_k = N*hbar*sqrt(g/pi)*exp(-g (k-k0)^2)."""

    n_quanta: float
    g: float
    k0: float
    x0: float = 0.0

    def __post_init__(self) -> None:
        if self.n_quanta <= 0 or self.g <= 0:
            raise ValueError("n_quanta and g must be positive")


def gaussian_action_wave(
    gp: GaussianEtaParams, ell: float, n_modes: int, hbar: float
) -> ActionWave:
    """Sampled Gaussian packet: psi'_k = sqrt(eta_k) exp(-i k x0)."""
    dk = 2.0 * np.pi / (ell * n_modes)
    k = (np.arange(n_modes) - n_modes // 2) * dk
    eta = gp.n_quanta * hbar * np.sqrt(gp.g / np.pi) * np.exp(-gp.g * (k - gp.k0) ** 2)
    psik = np.sqrt(eta) * np.exp(-1j * k * gp.x0)
    return ActionWave(psik=psik, k=k, ell=ell, hbar=hbar)


def wigner_gaussian_closed(
    gp: GaussianEtaParams, x: np.ndarray, p: np.ndarray, hbar: float,
    t: float = 0.0, vg: float = 0.0,
) -> np.ndarray:
    """Continuum closed form for the Gaussian packet, rigidly translated at vg.

    f(x, p) = (N/(pi*hbar)) exp[-g (p - hbar k0)^2/hbar^2 - (x - x0 - vg t)^2/g].
    Returns an array of shape (len(x), len(p)).
    """
    xc = np.asarray(x, dtype=float)[:, None] - gp.x0 - vg * t
    pc = np.asarray(p, dtype=float)[None, :] - hbar * gp.k0
    return (gp.n_quanta / (np.pi * hbar)) * np.exp(-gp.g * pc**2 / hbar**2 - xc**2 / gp.g)


def evolve_wigner_group_velocity(grid: WignerGrid, omega, t: float, vg=None) -> WignerGrid:
    """Transport each momentum row by its group velocity: f(x,p) -> f(x - vg(p) t, p).

    omega is a callable of wavenumber k = p/hbar; its derivative is taken
    by central differences at the step that balances truncation against
    round-off, or supplied exactly via vg (callable of k, or an array on
    the momentum grid).  The shift itself is an exact Fourier translation,
    so rigid transport incurs no smearing.
    """
    if not grid.full_period:
        raise ValueError("evolution needs the full-period grid")
    n2 = grid.x.size
    q = 2.0 * np.pi * np.fft.fftfreq(n2, d=grid.dx)
    k_of_p = grid.p / grid.hbar
    if vg is None:
        h = np.finfo(float).eps ** (1.0 / 3.0) * max(1.0, float(np.max(np.abs(k_of_p))))
        vg = (np.asarray(omega(k_of_p + h)) - np.asarray(omega(k_of_p - h))) / (2.0 * h)
    elif callable(vg):
        vg = np.asarray(vg(k_of_p), dtype=float)
    else:
        vg = np.broadcast_to(np.asarray(vg, dtype=float), grid.p.shape)
    rows = np.fft.fft(grid.f, axis=0)
    shift = np.exp(-1j * q[:, None] * vg[None, :] * t)
    f_new = np.fft.ifft(rows * shift, axis=0)
    residue = float(np.max(np.abs(f_new.imag)) / max(np.max(np.abs(f_new.real)), 1e-300))
    return WignerGrid(x=grid.x, p=grid.p, f=f_new.real, hbar=grid.hbar,
                      imag_residue=max(residue, grid.imag_residue))


# --- 3-D photon picture -----------------------------------------------------


@dataclass(frozen=True)
class WignerColumn:
    """One delta column of the 3-D density: momentum hbar*(k_a+k_b)/2 shared
    by every contributing pair; amplitude(x) is the smooth spatial profile
    multiplying delta^3(p - p_mid)."""

    p_mid: np.ndarray
    pairs: list = field(repr=False, default_factory=list)  # (weight, k_a - k_b) with complex weight

    def amplitude(self, x: np.ndarray) -> np.ndarray:
        """Profile at points x of shape (m, 3); complex before symmetrization."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape[0], dtype=complex)
        for w, dk in self.pairs:
            out += w * np.exp(1j * (x @ dk))
        return out


@dataclass(frozen=True)
class Wigner3D:
    """Sparse 3-D density: a list of delta columns plus the box geometry."""

    columns: list
    box_length: float
    hbar: float

    def column_momenta(self) -> np.ndarray:
        return np.asarray([c.p_mid for c in self.columns])


def wigner_3d(modes: "PhotonModeSet") -> Wigner3D:  # noqa: F821 - forward name, resolved in em
    """Number-form density of a photon mode set as delta columns in momentum."""
    from .em import PhotonModeSet  # local import to avoid a cycle

    if not isinstance(modes, PhotonModeSet):
        raise TypeError("wigner_3d expects a PhotonModeSet")
    L = modes.box_length
    w_box = (2.0 * np.pi) ** 3 / L**3
    hbar = modes.hbar
    pref = w_box**2 / ((2.0 * np.pi) ** 3 * hbar)
    groups: dict[tuple, list] = {}
    mids: dict[tuple, np.ndarray] = {}
    for a in range(modes.k.shape[0]):
        for b in range(modes.k.shape[0]):
            amp = pref * complex(np.dot(modes.psik[a], np.conj(modes.psik[b])))
            if amp == 0:
                continue
            mid = hbar * (modes.k[a] + modes.k[b]) / 2.0
            key = tuple(np.round(mid * L / (np.pi * hbar)).astype(int))
            groups.setdefault(key, []).append((amp, modes.k[a] - modes.k[b]))
            mids[key] = mid
    cols = [WignerColumn(p_mid=mids[key], pairs=pairs) for key, pairs in sorted(groups.items())]
    return Wigner3D(columns=cols, box_length=L, hbar=hbar)


def _x_quadrature(grid_points: int, L: float) -> tuple[np.ndarray, float]:
    """Tensor Riemann grid over the box; exact for the finite Fourier content."""
    s = np.arange(grid_points) * (L / grid_points)
    X, Y, Z = np.meshgrid(s, s, s, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
    return pts, (L / grid_points) ** 3


def _columns_quadrature(w3: Wigner3D, weight) -> float:
    """sum over columns of weight(p_mid) * integral dx amplitude(x)."""
    max_c = 0
    for c in w3.columns:
        for _, dkv in c.pairs:
            max_c = max(max_c, int(np.max(np.abs(np.round(dkv * w3.box_length / (2.0 * np.pi))))))
    npts = max(2 * max_c + 1, 3)
    pts, dv = _x_quadrature(npts, w3.box_length)
    total = 0.0
    for c in w3.columns:
        total += weight(c.p_mid) * float(np.sum(c.amplitude(pts)).real) * dv
    return total


def wigner_3d_total(w3: Wigner3D) -> float:
    """Integral of f_N over all of phase space (the photon number)."""
    return _columns_quadrature(w3, lambda p: 1.0)


def wigner_3d_energy(w3: Wigner3D, v: float) -> float:
    """Integral of eps_p f_N with eps_p = v|p| (the field energy)."""
    return _columns_quadrature(w3, lambda p: v * float(np.linalg.norm(p)))
