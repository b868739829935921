"""Relaxation of an isotropic photon distribution toward the thermal law.

The distribution f(p, t) counts quanta per phase-space volume at momentum
magnitude p with energy eps = v p.  Emission and absorption against matter
at temperature T enter as a gain G(eps, f) and a loss gamma f:

    df/dt = G(eps, f) - gamma f.

Three gain models, by what the matter does:

  rayleigh-jeans   G = gamma * (2/h^3) (kT/eps)          classical exchange
  wien             G = gamma * (2/h^3) exp(-eps/kT)      spontaneous only
  wien-stimulated  G = gamma * (2/h^3) exp(-eps/kT) * (1 + (h^3/2) f)

Stimulated gain makes the loss effectively gamma*(1 - exp(-eps/kT)) and the
fixed point becomes

    f_T(eps) = (2/h^3) / (exp(eps/kT) - 1),

whose spectral energy density is (8 pi h v / lambda^5) / (exp(hv/(lambda kT)) - 1).
Each momentum cell relaxes independently and the gain is affine in f, so
the time step is exact: f(t+dt) = f* + (f(t) - f*) exp(-gamma_eff dt).

Spatial streaming is a separate first-order upwind step that conserves the
cell sum exactly; it is not mixed into the relaxation update.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .units import UnitSystem


class SourceModel(str, enum.Enum):
    RAYLEIGH_JEANS = "rayleigh-jeans"
    WIEN = "wien"
    WIEN_STIMULATED = "wien-stimulated"
    NONE = "none"  # damping only: pure photon loss at rate gamma


@dataclass(frozen=True)
class KineticParams:
    """Exchange rate gamma, matter temperature, wave speed, and unit constants."""

    gamma: float
    temperature: float
    v: float = 1.0
    h: float = 2.0 * math.pi
    k_B: float = 1.0

    def __post_init__(self) -> None:
        if min(self.gamma, self.temperature, self.v, self.h, self.k_B) <= 0:
            raise ValueError("all kinetic parameters must be positive")

    @classmethod
    def in_units(
        cls, units: UnitSystem, gamma: float, temperature: float, v: float | None = None
    ) -> "KineticParams":
        return cls(
            gamma=gamma,
            temperature=temperature,
            v=units.c if v is None else v,
            h=units.h,
            k_B=units.k_B,
        )

    @property
    def p_thermal(self) -> float:
        """Thermal momentum k_B T / v."""
        return self.k_B * self.temperature / self.v

    def x_of(self, eps: np.ndarray | float) -> np.ndarray | float:
        """Dimensionless energy eps / (k_B T)."""
        return np.asarray(eps, dtype=float) / (self.k_B * self.temperature)


@dataclass(frozen=True)
class KineticState:
    """f sampled on a grid of momentum magnitudes p > 0."""

    p: np.ndarray
    f: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        f = np.asarray(self.f, dtype=float)
        if p.shape != f.shape or p.ndim != 1:
            raise ValueError("p and f must be 1-D arrays of equal length")
        if np.any(p <= 0):
            raise ValueError("momentum grid must be strictly positive")
        if np.any(f < 0):
            raise ValueError("f must be nonnegative")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "f", f)

    def eps(self, params: KineticParams) -> np.ndarray:
        return params.v * self.p


def planck_f(eps: np.ndarray | float, params: KineticParams) -> np.ndarray | float:
    """Thermal law (2/h^3) / (exp(eps/kT) - 1)."""
    x = np.asarray(params.x_of(eps))
    out = (2.0 / params.h**3) / np.expm1(x)
    return out if out.ndim else float(out)


def equilibrium_f(
    eps: np.ndarray | float, params: KineticParams, model: SourceModel
) -> np.ndarray | float:
    """Fixed point of the relaxation for the given gain model."""
    model = SourceModel(model)
    x = np.asarray(params.x_of(eps))
    pref = 2.0 / params.h**3
    if model is SourceModel.RAYLEIGH_JEANS:
        out = pref / x
    elif model is SourceModel.WIEN:
        out = pref * np.exp(-x)
    elif model is SourceModel.NONE:
        out = np.zeros_like(x)
    else:
        out = pref / np.expm1(x)
    return out if out.ndim else float(out)


def effective_rate(
    eps: np.ndarray | float, params: KineticParams, model: SourceModel
) -> np.ndarray | float:
    """Linear relaxation rate toward the fixed point; gamma except when
    stimulated gain cancels part of the loss."""
    model = SourceModel(model)
    x = np.asarray(params.x_of(eps))
    if model is SourceModel.WIEN_STIMULATED:
        out = params.gamma * (-np.expm1(-x))
    else:
        out = params.gamma * np.ones_like(x)
    return out if out.ndim else float(out)


def source_Q(
    eps: np.ndarray | float, f: np.ndarray | float, params: KineticParams, model: SourceModel
) -> np.ndarray | float:
    """Gain term G(eps, f); the full right side is G - gamma f."""
    model = SourceModel(model)
    x = np.asarray(params.x_of(eps))
    pref = params.gamma * 2.0 / params.h**3
    if model is SourceModel.RAYLEIGH_JEANS:
        out = pref / x
    elif model is SourceModel.WIEN:
        out = pref * np.exp(-x) * np.ones_like(np.asarray(f, dtype=float))
    elif model is SourceModel.NONE:
        out = np.zeros_like(x * np.asarray(f, dtype=float))
    else:
        out = pref * np.exp(-x) * (1.0 + (params.h**3 / 2.0) * np.asarray(f, dtype=float))
    return out if np.ndim(out) else float(out)


def kinetic_rhs(
    eps: np.ndarray | float, f: np.ndarray | float, params: KineticParams, model: SourceModel
) -> np.ndarray | float:
    """df/dt = G(eps, f) - gamma f."""
    out = np.asarray(source_Q(eps, f, params, model)) - params.gamma * np.asarray(f, dtype=float)
    return out if out.ndim else float(out)


def kinetic_step(
    state: KineticState, params: KineticParams, dt: float, model: SourceModel
) -> KineticState:
    """Exact relaxation over dt: f -> f* + (f - f*) exp(-gamma_eff dt)."""
    if dt < 0:
        raise ValueError("dt must be nonnegative")
    eps = state.eps(params)
    f_star = np.asarray(equilibrium_f(eps, params, model))
    rate = np.asarray(effective_rate(eps, params, model))
    decay = np.exp(-rate * dt)
    f_new = f_star + (state.f - f_star) * decay
    return KineticState(p=state.p, f=f_new, t=state.t + dt)


def relax_to_equilibrium(
    state: KineticState, params: KineticParams, model: SourceModel, n_folds: float = 30.0
) -> tuple[KineticState, float]:
    """Step far enough that every cell has decayed by n_folds e-foldings.

    Uses the slowest cell's rate, so the residual is at most
    exp(-n_folds) * |f0 - f*| everywhere.  Returns (state, elapsed time).
    """
    if n_folds <= 0:
        raise ValueError("n_folds must be positive")
    eps = state.eps(params)
    rate = np.asarray(effective_rate(eps, params, model))
    t = n_folds / float(np.min(rate))
    return kinetic_step(state, params, t, model), t


def advect_step(f_x: np.ndarray, v: float, dt: float, dx: float) -> np.ndarray:
    """First-order upwind transport of a periodic spatial profile.

    Requires |v| dt <= dx; conserves the cell sum exactly.
    """
    f_x = np.asarray(f_x, dtype=float)
    if f_x.ndim != 1:
        raise ValueError("f_x must be 1-D")
    if dt < 0 or dx <= 0:
        raise ValueError("dt must be nonnegative and dx positive")
    cfl = v * dt / dx
    if abs(cfl) > 1.0 + 1e-12:
        raise ValueError("CFL violated: |v| dt must not exceed dx")
    if cfl >= 0:
        return f_x - cfl * (f_x - np.roll(f_x, 1))
    return f_x - cfl * (np.roll(f_x, -1) - f_x)


def spectral_energy_density(lam: np.ndarray | float, params: KineticParams) -> np.ndarray | float:
    """Energy per volume per wavelength at equilibrium:
    (8 pi h v / lambda^5) / (exp(h v / (lambda k_B T)) - 1)."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("wavelength must be positive")
    x = params.h * params.v / (lam * params.k_B * params.temperature)
    # exp(-x)/(1 - exp(-x)) = 1/expm1(x) without overflow at large x
    out = (8.0 * np.pi * params.h * params.v / lam**5) * np.exp(-x) / (-np.expm1(-x))
    return out if out.ndim else float(out)


def wien_peak(params: KineticParams) -> tuple[float, float]:
    """Wavelength of peak spectral energy and the dimensionless product
    lambda_max * p_thermal / hbar.

    The maximization runs on the reduced wavelength u = lambda k_B T/(h v),
    so the product is 2 pi u* independent of temperature.
    """
    res = minimize_scalar(
        lambda u: -1.0 / (u**5 * math.expm1(1.0 / u)),
        bounds=(0.02, 1.0),
        method="bounded",
        options={"xatol": 1e-13},
    )
    u_star = float(res.x)
    lam_max = u_star * params.h * params.v / (params.k_B * params.temperature)
    hbar = params.h / (2.0 * math.pi)
    return lam_max, lam_max * params.p_thermal / hbar


def thermal_photon_count(params: KineticParams) -> float:
    """Quanta per volume at equilibrium: integral of 4 pi p^2 f_T dp.

    Computed by quadrature in x = v p/(k_B T); the closed form is
    16 pi zeta(3) (p_thermal / h)^3.
    """
    def integrand(x):
        # x^2/(e^x - 1) without overflow at large x
        return x**2 * math.exp(-x) / (-math.expm1(-x))

    integral, _ = quad(integrand, 0.0, np.inf, epsrel=1e-12)
    return 8.0 * np.pi * (params.p_thermal / params.h) ** 3 * integral


def photons_per_peak_cube(params: KineticParams) -> float:
    """Quanta in a cube one peak wavelength on a side; dimensionless."""
    lam_max, _ = wien_peak(params)
    return thermal_photon_count(params) * lam_max**3


def evolve_with_transport(
    f_xp: np.ndarray, p: np.ndarray, params: KineticParams, model: SourceModel,
    dt: float, dx: float, n_steps: int,
) -> np.ndarray:
    """Split-step relaxation plus streaming for f(x, p) on a periodic slab.

    f_xp has shape (n_x, n_p); each momentum column streams at its own
    speed v (magnitude, toward +x) and relaxes locally.
    """
    f = np.array(f_xp, dtype=float)
    if f.ndim != 2 or f.shape[1] != p.size:
        raise ValueError("f_xp must have shape (n_x, len(p))")
    eps = params.v * np.asarray(p, dtype=float)
    f_star = np.asarray(equilibrium_f(eps, params, model))
    rate = np.asarray(effective_rate(eps, params, model))
    decay = np.exp(-rate * dt)
    for _ in range(n_steps):
        for j in range(p.size):
            f[:, j] = advect_step(f[:, j], params.v, dt, dx)
        f = f_star[None, :] + (f - f_star[None, :]) * decay[None, :]
    return f
