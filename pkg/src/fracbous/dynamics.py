"""Vorticity-temperature integration of the fractional Boussinesq system.

    d theta/dt = -u . grad theta - kappa Lambda^(2 beta) theta + f
    d omega/dt = -u . grad omega - nu Lambda^(2 alpha) omega + d_1 theta
    u = grad^perp Laplacian^-1 omega

The diagonal dissipation is integrated exactly by an integrating factor,
the remaining terms by the explicit midpoint rule under that factor.
Inside the stepper fields live on the rfft half plane; the public
functions take and return full-lattice SpectralFields.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.fft as sfft

from .errors import BlowUpError, ConfigurationError, DomainError, StabilityError, UsageError
from .spectral import (
    Grid,
    SpectralField,
    dealias,
    full_from_half,
    project_mean_zero,
    random_field,
)

DEFAULT_CFL = 0.5


def validate_exponents(alpha: float, beta: float, strict: bool = True) -> None:
    """Check the dissipation exponents.

    With ``strict`` both must lie in the open interval (1/2, 1).  Otherwise
    anything in (0, 1] is accepted, with a warning outside (1/2, 1).
    """
    for name, v in (("alpha", alpha), ("beta", beta)):
        if strict and not 0.5 < v < 1.0:
            raise ConfigurationError(
                f"{name}={v} outside the subcritical range (1/2, 1) required "
                "when strict_subcritical is set"
            )
        if not 0.0 < v <= 1.0:
            raise ConfigurationError(f"{name}={v} outside (0, 1]")
        if not 0.5 < v < 1.0:
            warnings.warn(f"{name}={v} is outside the subcritical range (1/2, 1)",
                          stacklevel=3)


@dataclass(frozen=True, eq=False)
class PhysParams:
    nu: float
    kappa: float
    alpha: float
    beta: float
    forcing: SpectralField
    coupling_on: bool = True
    strict_subcritical: bool = True

    def __post_init__(self):
        if not (self.nu > 0 and self.kappa > 0):
            raise ConfigurationError(f"nu and kappa must be positive, got {self.nu}, {self.kappa}")
        validate_exponents(self.alpha, self.beta, self.strict_subcritical)
        f = self.forcing
        if not f.is_dealiased():
            raise ConfigurationError(
                f"forcing has modes above the dealias cutoff of an n={f.grid.n} grid"
            )
        if f.coeffs[0, 0] != 0:
            warnings.warn("forcing has nonzero mean; projecting it out", stacklevel=3)
            object.__setattr__(self, "forcing", project_mean_zero(f))

    @property
    def grid(self) -> Grid:
        return self.forcing.grid

    @cached_property
    def kernel(self) -> "_Kernel":
        return _Kernel(self)


@dataclass(frozen=True, eq=False)
class State:
    theta_hat: SpectralField
    omega_hat: SpectralField
    t: float = 0.0

    def __post_init__(self):
        self.theta_hat.grid.check_same(self.omega_hat.grid)

    @property
    def grid(self) -> Grid:
        return self.theta_hat.grid

    @classmethod
    def from_fields(cls, theta_hat: SpectralField, omega_hat: SpectralField,
                    t: float = 0.0) -> "State":
        """Build a valid State, removing means and rounding-level high modes.

        Content above the dealias cutoff larger than 1e-12 of the field's
        norm is a configuration error rather than silently truncated.
        """
        out = []
        for name, f in (("theta", theta_hat), ("omega", omega_hat)):
            f = project_mean_zero(f)
            kept = dealias(f)
            total = np.sum(np.abs(f.coeffs) ** 2)
            dropped = total - np.sum(np.abs(kept.coeffs) ** 2)
            if dropped > 1e-24 * total:
                raise ConfigurationError(
                    f"initial {name} has modes above the dealias cutoff "
                    f"{f.grid.dealias_cutoff} of an n={f.grid.n} grid"
                )
            out.append(kept)
        return cls(out[0], out[1], float(t))

    @classmethod
    def zeros(cls, grid: Grid, t: float = 0.0) -> "State":
        return cls(SpectralField.zeros(grid), SpectralField.zeros(grid), t)

    def check_invariants(self) -> None:
        for name, f in (("theta", self.theta_hat), ("omega", self.omega_hat)):
            if f.coeffs[0, 0] != 0:
                raise DomainError(f"{name} is not mean-zero")
            if not f.is_dealiased():
                raise DomainError(f"{name} is not dealiased")


class _Kernel:
    """Half-plane operator arrays for one (grid, parameters) pair."""

    def __init__(self, p: PhysParams):
        g = p.grid
        self.grid = g
        self.n = g.n
        self.norm = float(g.n * g.n)
        m1, m2 = g.wavevector
        mag = g.magnitude
        self.mask = g.half(g.dealias_mask)
        self.im1 = 1j * g.half(m1) * self.mask
        self.im2 = 1j * g.half(m2) * self.mask
        mag2 = g.half(mag) ** 2
        self.inv_lap = np.where(mag2 > 0, 1.0 / np.where(mag2 > 0, mag2, 1.0), 0.0) * self.mask
        self.d_theta = p.kappa * g.half(mag) ** (2 * p.beta)
        self.d_omega = p.nu * g.half(mag) ** (2 * p.alpha)
        self.forcing = g.half(p.forcing.coeffs) * self.mask
        self.coupling = 1.0 if p.coupling_on else 0.0
        self._factors: dict[float, tuple] = {}

    def factors(self, dt: float):
        f = self._factors.get(dt)
        if f is None:
            f = (np.exp(-self.d_theta * dt), np.exp(-self.d_omega * dt),
                 np.exp(-self.d_theta * (0.5 * dt)), np.exp(-self.d_omega * (0.5 * dt)))
            if len(self._factors) > 8:
                self._factors.clear()
            self._factors[dt] = f
        return f

    def velocity(self, om: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        psi = om * self.inv_lap
        return self.im2 * psi, -self.im1 * psi

    def nonlinear(self, th: np.ndarray, om: np.ndarray):
        """Non-dissipative tendencies and max |u| on the grid."""
        if not self.coupling and not om.any():
            # u = 0 stays 0: advection vanishes identically
            n_th = self.forcing.copy()
            n_th[0, 0] = 0.0
            return n_th, np.zeros_like(om), 0.0
        u1, u2 = self.velocity(om)
        stack = np.stack((u1, u2, self.im1 * th, self.im2 * th, self.im1 * om, self.im2 * om))
        phys = sfft.irfft2(stack, s=(self.n, self.n)) * self.norm
        adv = np.empty((2, self.n, self.n))
        np.multiply(phys[0], phys[2], out=adv[0])
        adv[0] += phys[1] * phys[3]
        np.multiply(phys[0], phys[4], out=adv[1])
        adv[1] += phys[1] * phys[5]
        adv_hat = sfft.rfft2(adv) * (self.mask / self.norm)
        n_th = self.forcing - adv_hat[0]
        n_om = self.coupling * self.im1 * th - adv_hat[1]
        n_th[0, 0] = 0.0
        n_om[0, 0] = 0.0
        umax = float(np.sqrt(np.max(phys[0] ** 2 + phys[1] ** 2)))
        return n_th, n_om, umax

    def step(self, th, om, dt, cfl=None):
        e_th, e_om, h_th, h_om = self.factors(dt)
        n_th, n_om, umax = self.nonlinear(th, om)
        if cfl is not None:
            bound = cfl * self.grid.dx / max(1.0, umax)
            if dt > bound * (1 + 1e-12):
                raise StabilityError(
                    f"dt={dt:g} exceeds the advective bound {bound:g} (max |u| = {umax:g})"
                )
        half = 0.5 * dt
        th_m = h_th * (th + half * n_th)
        om_m = h_om * (om + half * n_om)
        n_th, n_om, _ = self.nonlinear(th_m, om_m)
        th_new = e_th * th + dt * (h_th * n_th)
        om_new = e_om * om + dt * (h_om * n_om)
        return th_new, om_new


def _to_half(k: _Kernel, s: State):
    g = k.grid
    return g.half(s.theta_hat.coeffs).copy(), g.half(s.omega_hat.coeffs).copy()


def _to_state(k: _Kernel, th, om, t) -> State:
    g = k.grid
    return State(SpectralField(g, full_from_half(g, th)),
                 SpectralField(g, full_from_half(g, om)), float(t))


def _check_grids(s: State, p: PhysParams) -> None:
    s.grid.check_same(p.grid)


def biot_savart(omega_hat: SpectralField) -> tuple[SpectralField, SpectralField]:
    """Velocity u = grad^perp Laplacian^-1 omega of a mean-zero vorticity."""
    if not omega_hat.is_mean_zero():
        raise DomainError("Biot-Savart needs a mean-zero vorticity")
    g = omega_hat.grid
    m1, m2 = g.wavevector
    mag2 = g.magnitude ** 2
    psi = np.where(mag2 > 0, omega_hat.coeffs / np.where(mag2 > 0, mag2, 1.0), 0.0)
    return SpectralField(g, 1j * m2 * psi), SpectralField(g, -1j * m1 * psi)


def advect(u1_hat: SpectralField, u2_hat: SpectralField, g_hat: SpectralField) -> SpectralField:
    """Dealiased pseudo-spectral u . grad g."""
    grid = g_hat.grid
    grid.check_same(u1_hat.grid)
    grid.check_same(u2_hat.grid)
    n = grid.n
    m1, m2 = grid.wavevector
    spec = np.stack((grid.half(u1_hat.coeffs), grid.half(u2_hat.coeffs),
                     grid.half(1j * m1 * g_hat.coeffs), grid.half(1j * m2 * g_hat.coeffs)))
    phys = sfft.irfft2(spec, s=(n, n)) * (n * n)
    prod = phys[0] * phys[2] + phys[1] * phys[3]
    half = sfft.rfft2(prod) / (n * n)
    return dealias(SpectralField(grid, full_from_half(grid, half)))


def tendency(s: State, p: PhysParams) -> tuple[SpectralField, SpectralField]:
    """Full right-hand side (dtheta/dt, domega/dt) including dissipation."""
    _check_grids(s, p)
    k = p.kernel
    th, om = _to_half(k, s)
    n_th, n_om, _ = k.nonlinear(th, om)
    g = k.grid
    return (SpectralField(g, full_from_half(g, n_th - k.d_theta * th)),
            SpectralField(g, full_from_half(g, n_om - k.d_omega * om)))


def _require_finite(th, om, s: State):
    if not (np.isfinite(th).all() and np.isfinite(om).all()):
        raise BlowUpError(f"non-finite values in the step starting at t={s.t:g}",
                          t=s.t, state=s)


def step(s: State, p: PhysParams, dt: float, cfl: Optional[float] = DEFAULT_CFL) -> State:
    """Advance one integrating-factor midpoint step of size dt."""
    if not dt > 0:
        raise UsageError(f"dt must be positive, got {dt!r}")
    _check_grids(s, p)
    k = p.kernel
    th, om = _to_half(k, s)
    try:
        th, om = k.step(th, om, dt, cfl)
    except StabilityError as e:
        e.t, e.state = s.t, s
        raise
    _require_finite(th, om, s)
    return _to_state(k, th, om, s.t + dt)


def integrate(s0: State, p: PhysParams, t_end: float, dt: float, sample_every: int = 1,
              sink: Optional[Callable] = None, *, cfl: Optional[float] = DEFAULT_CFL,
              lp_orders: Sequence[float] = (4, 8), s1: float = 0.6, s2: float = 1.0) -> State:
    """Step from s0.t to t_end, feeding DiagnosticsRows to ``sink``.

    Samples are taken at s0.t, after every ``sample_every`` steps and at
    t_end.  Steps have size dt except a final shorter one when t_end - s0.t
    is not a whole number of steps.  The system is autonomous, so the
    coefficient arrays depend only on the sequence of step sizes; this keeps
    restarts from a snapshot bit-identical to an unbroken run.
    """
    from .diagnostics import diagnostics_row

    if not dt > 0:
        raise UsageError(f"dt must be positive, got {dt!r}")
    if int(sample_every) != sample_every or sample_every < 1:
        raise UsageError(f"sample_every must be a positive integer, got {sample_every!r}")
    if t_end < s0.t:
        raise UsageError(f"t_end={t_end} precedes the initial time {s0.t}")
    _check_grids(s0, p)

    def emit(state):
        if sink is not None:
            sink(diagnostics_row(state, p, lp_orders=lp_orders, s1=s1, s2=s2))

    emit(s0)
    if t_end == s0.t:
        return s0

    k = p.kernel
    span = t_end - s0.t
    n_full = int(math.floor(span / dt + 1e-9))
    last = span - n_full * dt
    sizes = [dt] * n_full
    if last > 1e-12 * max(1.0, abs(t_end)):
        sizes.append(last)
    th, om = _to_half(k, s0)
    t = s0.t
    # times on the global dt lattice make sample times independent of restarts
    k0 = round(s0.t / dt)
    on_lattice = abs(s0.t / dt - k0) < 1e-9
    state = s0
    for i, h in enumerate(sizes, 1):
        try:
            th_new, om_new = k.step(th, om, h, cfl)
            if not (np.isfinite(th_new).all() and np.isfinite(om_new).all()):
                raise BlowUpError(f"non-finite values in the step starting at t={t:g}")
        except BlowUpError as e:
            e.t, e.state = t, _to_state(k, th, om, t)
            raise
        th, om = th_new, om_new
        t = t_end if i == len(sizes) else ((k0 + i) * dt if on_lattice else s0.t + i * dt)
        if i % sample_every == 0 or i == len(sizes):
            state = _to_state(k, th, om, t)
            emit(state)
    return state


def random_state(grid: Grid, seed, theta_norm: float, omega_norm: float,
                 kmax: float = 4, t: float = 0.0) -> State:
    """Band-limited random initial data with prescribed L^2 norms."""
    rng = np.random.default_rng(seed)
    th = random_field(grid, rng, kmax, norm=theta_norm)
    om = random_field(grid, rng, kmax, norm=omega_norm)
    return State(th, om, t)


def zero_forcing(grid: Grid) -> SpectralField:
    return SpectralField.zeros(grid)
