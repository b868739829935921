"""Helicity eigenfields of the complex vector potential.

The complex potential U carries the real transverse potential as
A = sqrt(mu) (U + U*)/2 and obeys the same curl equation as the field,

    dU/dt = -i v curl U,        F = i curl U.

Plane modes U = amp * e_sigma(k) exp(-i k.x) built on the circular basis
e_sigma = (e1 + i sigma e2)/sqrt(2) are helicity eigenvectors,

    k x U = -i sigma |k| U,     curl U = -sigma |k| U,

so sigma = +1 and -1 never mix under free evolution; time dependence is a
pure phase exp(+i sigma omega t), which equals a rigid precession of the
polarization about khat by angle -omega t.

A non-plane closed form on the axis of symmetry:

    U = exp(ik(z - vt)) * ( (x - iy)/sqrt(2), i(x - iy)/sqrt(2), i sqrt(2)/k )

is divergence-free and Beltrami, curl U = k U, hence F = i k U.

Gridded checks use plain centered differences (second order, no wraparound;
results live on the interior of the mesh) so that discretization error is
explicit and scales as (k h)^2 / 6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .em import MediumParams, polarization_basis


@dataclass(frozen=True)
class ComplexPotentialMode:
    """Plane-wave helicity eigenmode: wavevector k, helicity sigma, amplitude."""

    k: np.ndarray
    sigma: int
    amplitude: complex = 1.0

    def __post_init__(self) -> None:
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3,) or not np.linalg.norm(k) > 0:
            raise ValueError("k must be a nonzero 3-vector")
        if self.sigma not in (-1, 1):
            raise ValueError("sigma must be +1 or -1")
        object.__setattr__(self, "k", k)

    def polarization(self) -> np.ndarray:
        e1, e2, _ = polarization_basis(self.k)
        return (e1 + 1j * self.sigma * e2) / np.sqrt(2.0)

    def omega(self, v: float) -> float:
        return v * float(np.linalg.norm(self.k))

    def evaluate(self, x: np.ndarray, t: float = 0.0, v: float = 1.0) -> np.ndarray:
        """U on a component-first mesh x of shape (3, ...)."""
        x = np.asarray(x, dtype=float)
        if x.shape[0] != 3:
            raise ValueError("x must be component-first, shape (3, ...)")
        phase = np.exp(-1j * np.tensordot(self.k, x, axes=(0, 0)) + 1j * self.sigma * self.omega(v) * t)
        pol = self.amplitude * self.polarization()
        return pol[(slice(None),) + (None,) * phase.ndim] * phase


def circular_complex_potential(A_perp: float, k: float, sigma: int, medium: MediumParams) -> ComplexPotentialMode:
    """Mode whose real potential sqrt(mu) Re U is the circular plane wave
    of amplitude A_perp running along the third axis."""
    if k <= 0:
        raise ValueError("k must be positive")
    amp = 1j * sigma * np.sqrt(2.0 / medium.mu) * A_perp
    return ComplexPotentialMode(k=np.array([0.0, 0.0, k]), sigma=sigma, amplitude=amp)


def real_potential(U: np.ndarray, mu: float = 1.0) -> np.ndarray:
    """A = sqrt(mu) (U + U*)/2."""
    return np.sqrt(mu) * np.asarray(U).real


def helicity_eigencheck(U: np.ndarray, k: np.ndarray, sigma: int) -> float:
    """Max relative defect of k x U = -i sigma |k| U over the sampled points.

    Zero (to round-off) for a sigma eigenfield; exactly 2 for the opposite
    helicity.
    """
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +1 or -1")
    U = np.asarray(U)
    if U.shape[0] != 3:
        raise ValueError("U must be component-first, shape (3, ...)")
    k = np.asarray(k, dtype=float)
    norm = float(np.linalg.norm(k))
    if norm == 0:
        raise ValueError("k must be nonzero")
    kxU = np.stack([
        k[1] * U[2] - k[2] * U[1],
        k[2] * U[0] - k[0] * U[2],
        k[0] * U[1] - k[1] * U[0],
    ])
    defect = kxU + 1j * sigma * norm * U
    point_norm = np.sqrt(np.sum(np.abs(defect) ** 2, axis=0))
    ref = norm * np.sqrt(np.sum(np.abs(U) ** 2, axis=0))
    return float(np.max(point_norm) / max(float(np.max(ref)), 1e-300))


def rotate_field(U: np.ndarray, axis: np.ndarray, theta: float) -> np.ndarray:
    """Rotate the vector value at every point about `axis` by angle theta."""
    U = np.asarray(U)
    if U.shape[0] != 3:
        raise ValueError("U must be component-first, shape (3, ...)")
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    axU = np.stack([
        a[1] * U[2] - a[2] * U[1],
        a[2] * U[0] - a[0] * U[2],
        a[0] * U[1] - a[1] * U[0],
    ])
    adotU = a[0] * U[0] + a[1] * U[1] + a[2] * U[2]
    return (
        U * np.cos(theta)
        + axU * np.sin(theta)
        + a[(slice(None),) + (None,) * (U.ndim - 1)] * adotU * (1.0 - np.cos(theta))
    )


def precess_mode(U: np.ndarray, khat: np.ndarray, omega: float, t: float) -> np.ndarray:
    """Free evolution as rigid precession: U(t) = R(khat, -omega t) U(0).

    For a helicity eigenmode this equals the phase factor exp(i sigma omega t).
    """
    return rotate_field(U, khat, -omega * t)


def cylindrical_solution(
    x: np.ndarray, k: float, v: float, t: float = 0.0, scale: float = 1.0
) -> np.ndarray:
    """Axial Beltrami solution: curl U = k U and dU/dt = -i v curl U."""
    if k <= 0:
        raise ValueError("k must be positive")
    x = np.asarray(x, dtype=float)
    if x.shape[0] != 3:
        raise ValueError("x must be component-first, shape (3, ...)")
    envelope = np.exp(1j * k * (x[2] - v * t))
    ux = scale * (x[0] - 1j * x[1]) * envelope / np.sqrt(2.0)
    uz = 1j * (np.sqrt(2.0) / k) * scale * envelope
    return np.stack([ux, 1j * ux, uz])


def stencil_curl(U: np.ndarray, spacing: float) -> np.ndarray:
    """Centered-difference curl on the interior of a uniform mesh.

    Input (3, nx, ny, nz); output (3, nx-2, ny-2, nz-2).  No periodic wrap,
    so non-periodic analytic samples are handled correctly.
    """
    U = np.asarray(U)
    if U.ndim != 4 or U.shape[0] != 3:
        raise ValueError("U must have shape (3, nx, ny, nz)")
    if min(U.shape[1:]) < 3:
        raise ValueError("need at least 3 points per axis")
    if spacing <= 0:
        raise ValueError("spacing must be positive")

    def diff(comp: np.ndarray, axis: int) -> np.ndarray:
        hi = [slice(1, -1)] * 3
        lo = [slice(1, -1)] * 3
        hi[axis] = slice(2, None)
        lo[axis] = slice(0, -2)
        return (comp[tuple(hi)] - comp[tuple(lo)]) / (2.0 * spacing)

    cx = diff(U[2], 1) - diff(U[1], 2)
    cy = diff(U[0], 2) - diff(U[2], 0)
    cz = diff(U[1], 0) - diff(U[0], 1)
    return np.stack([cx, cy, cz])


def interior(U: np.ndarray) -> np.ndarray:
    """Trim the one-point margin that stencil_curl consumes."""
    return np.asarray(U)[:, 1:-1, 1:-1, 1:-1]


def field_from_potential(U: np.ndarray, spacing: float) -> np.ndarray:
    """F = i curl U on the interior of the mesh."""
    return 1j * stencil_curl(U, spacing)


def potential_equation_residual(
    U0: np.ndarray, U1: np.ndarray, dt: float, spacing: float, v: float
) -> float:
    """Relative L-inf defect of dU/dt = -i v curl U between two snapshots.

    Centered in time and space; for exact samples the defect is the stencil
    truncation, of order (k dx)^2/6 + (omega dt)^2/24 relative to |curl U|.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    U0 = np.asarray(U0)
    U1 = np.asarray(U1)
    if U0.shape != U1.shape:
        raise ValueError("snapshots must share a shape")
    lhs = (interior(U1) - interior(U0)) / dt
    rhs = -1j * v * stencil_curl(0.5 * (U0 + U1), spacing)
    num = np.sqrt(np.sum(np.abs(lhs - rhs) ** 2, axis=0))
    den = np.sqrt(np.sum(np.abs(rhs) ** 2, axis=0))
    return float(np.max(num) / max(float(np.max(den)), 1e-300))
