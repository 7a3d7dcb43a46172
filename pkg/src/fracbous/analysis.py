"""Executable a priori estimates: envelopes, inequality checks and series checkers.

Envelopes bounding a squared L^2 norm return the squared value.  Every
checker returns a CheckReport whose ``worst_residual`` is the most
violating signed slack (bound minus measured value), so that a report
passes iff worst_residual >= -tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
import scipy.fft as sfft

from .diagnostics import DiagnosticsRow
from .errors import DomainError, UsageError
from .spectral import Grid, PhysicalField, to_spectral

Selector = Union[str, Callable[[DiagnosticsRow], float]]

# Distance from resonance below which the resonant velocity formula is used.
RESONANCE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class CheckReport:
    name: str
    worst_residual: float
    worst_t: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.worst_residual >= -self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (f"{status} {self.name}: worst_residual={self.worst_residual:.6e} "
                f"at t={self.worst_t:.6g} (tol {self.tolerance:.1e})")
        return f"{text} {self.detail}" if self.detail else text


def _select(selector: Selector) -> Callable[[DiagnosticsRow], float]:
    if callable(selector):
        return selector
    return lambda row: row.get(selector)


def _times(series: Sequence[DiagnosticsRow]) -> np.ndarray:
    if not series:
        raise UsageError("empty diagnostics series")
    t = np.array([r.t for r in series], dtype=float)
    if np.any(np.diff(t) <= 0):
        raise UsageError("sample times must be strictly increasing")
    return t


def decay_rates(p, lambda1: float) -> tuple[float, float]:
    """(nu lambda1^(2 alpha), kappa lambda1^(2 beta))."""
    return p.nu * lambda1 ** (2 * p.alpha), p.kappa * lambda1 ** (2 * p.beta)


def l2_asymptote(f_l2: float, p, lambda1: float) -> float:
    """||f||^2 / (kappa^2 lambda1^(4 beta)), the squared L^2 radius for theta."""
    return f_l2 ** 2 / (p.kappa ** 2 * lambda1 ** (4 * p.beta))


def l2_decay_envelope(theta0_l2: float, f_l2: float, p, lambda1: float, t: float) -> float:
    """Upper bound on ||theta(t)||^2 from ||theta_0|| and ||f||."""
    b = p.kappa * lambda1 ** (2 * p.beta)
    a = l2_asymptote(f_l2, p, lambda1)
    return math.exp(-b * t) * theta0_l2 ** 2 - math.expm1(-b * t) * a


def velocity_decay_envelope(u0_l2: float, theta0_l2: float, f_l2: float, p,
                            lambda1: float, t: float, anchored: bool = True) -> float:
    """Upper bound on ||u(t)||^2.

    Off resonance the theta contribution enters through the difference
    quotient (e^-at - e^-bt)/(a - b) with a = nu lambda1^(2 alpha) and
    b = kappa lambda1^(2 beta); at resonance it becomes t e^-at.  The
    forcing term is ||f||^2/(a b)^2 in both branches.  ``anchored`` keeps the
    factor (1 - e^-at) on it that the time integration produces, so the
    envelope starts at ||u_0||^2; with anchored=False the constant is kept
    whole.
    """
    a, b = decay_rates(p, lambda1)
    c = l2_asymptote(f_l2, p, lambda1)
    ea = math.exp(-a * t)
    if abs(a - b) < RESONANCE_THRESHOLD:
        quotient = t * ea
    else:
        quotient = abs((ea - math.exp(-b * t)) / (a - b))
    forced = f_l2 ** 2 / (a * b) ** 2
    if anchored:
        forced *= -math.expm1(-a * t)
    return ea * u0_l2 ** 2 + quotient / a * (theta0_l2 ** 2 - c) + forced


def lp_envelope(theta0_lp: float, f_lp: float, p_order: float, p, lambda1: float,
                t: float) -> float:
    """Upper bound on ||theta(t)||_{L^p} (unsquared)."""
    if p_order < 2:
        raise DomainError(f"the L^p envelope needs p >= 2, got {p_order}")
    b = p.kappa * lambda1 ** (2 * p.beta)
    a = p_order * f_lp / b
    return math.exp(-b / p_order * t) * theta0_lp - math.expm1(-b / p_order * t) * a


def gronwall_envelope(y0: float, lam: float, a1: float, t0: float, t: float) -> float:
    """Bound for y' + lam y <= g with unit-window integrals of g at most a1."""
    if not lam > 0:
        raise DomainError(f"decay rate must be positive, got {lam}")
    if t < t0:
        raise DomainError(f"t={t} precedes t0={t0}")
    return math.exp(-lam * (t - t0)) * y0 + a1 * math.exp(2 * lam) / math.expm1(lam)


def uniform_gronwall_envelope(a1: float, a2: float, a3: float, r: float) -> float:
    if not r > 0:
        raise DomainError(f"window length must be positive, got {r}")
    return (a3 / r + a2) * math.exp(a1)


def crossing_time(y0: float, asymptote: float, rate: float, level: float) -> float:
    """First t with e^(-rate t)(y0 - A) + A <= level; inf if never."""
    if y0 <= level:
        return 0.0
    if level <= asymptote:
        return math.inf
    return math.log((y0 - asymptote) / (level - asymptote)) / rate


def check_values_under_envelope(times, values, envelope: Callable[[float], float],
                                name: str = "envelope",
                                tol: Optional[float] = None) -> CheckReport:
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size == 0:
        raise UsageError("empty series")
    bound = np.array([envelope(t) for t in times])
    slack = bound - values
    i = int(np.argmin(slack))
    if tol is None:
        tol = 1e-6 * abs(bound[0])
    return CheckReport(name, float(slack[i]), float(times[i]), float(tol))


def check_series_under_envelope(series: Sequence[DiagnosticsRow],
                                envelope: Callable[[float], float], selector: Selector,
                                name: str = "envelope",
                                tol: Optional[float] = None) -> CheckReport:
    """Minimum over samples of envelope(t) - value(t)."""
    t = _times(series)
    get = _select(selector)
    return check_values_under_envelope(t, [get(r) for r in series], envelope, name, tol)


def check_l2_envelope(series, p, lambda1: float, f_l2: float) -> CheckReport:
    t0, y0 = series[0].t, series[0].l2_theta
    return check_series_under_envelope(
        series, lambda t: l2_decay_envelope(y0, f_l2, p, lambda1, t - t0),
        lambda r: r.l2_theta ** 2, name="l2_theta_envelope")


def check_velocity_envelope(series, p, lambda1: float, f_l2: float,
                            anchored: bool = True) -> CheckReport:
    r0 = series[0]
    return check_series_under_envelope(
        series,
        lambda t: velocity_decay_envelope(r0.l2_u, r0.l2_theta, f_l2, p, lambda1,
                                          t - r0.t, anchored),
        lambda r: r.l2_u ** 2, name="l2_u_envelope")


def check_lp_envelope(series, p: float, p_params, lambda1: float, f_lp: float) -> CheckReport:
    if p < 2:
        raise DomainError(f"the L^p envelope needs p >= 2, got {p}")
    key = int(p) if float(p).is_integer() else p
    r0 = series[0]
    z0 = r0.lp_theta[key]
    return check_series_under_envelope(
        series, lambda t: lp_envelope(z0, f_lp, p, p_params, lambda1, t - r0.t),
        lambda r: r.lp_theta[key], name=f"l{key}_theta_envelope")


def _trapezoid_cumulative(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    out[1:] = np.cumsum(0.5 * np.diff(t) * (y[1:] + y[:-1]))
    return out


def _windows(t: np.ndarray, window: float):
    """(start, end) sample index pairs whose times differ by ``window``."""
    if not window > 0:
        raise UsageError(f"window must be positive, got {window}")
    if t[-1] - t[0] < window * (1 - 1e-9):
        raise UsageError(f"series spans {t[-1] - t[0]:g}, shorter than the window {window:g}")
    tol = 1e-9 * max(1.0, window)
    ends = np.searchsorted(t, t + window - tol)
    pairs = [(i, j) for i, j in enumerate(ends) if j < t.size and abs(t[j] - t[i] - window) <= tol]
    if not pairs:
        raise UsageError(f"no pair of samples is exactly {window:g} apart")
    return pairs


BUDGETS = ("theta", "u", "omega")


def check_time_avg_dissipation(series, window: float, budget: str, p, lambda1: float,
                               f_l2: float = 0.0, rtol: float = 1e-4) -> CheckReport:
    """Windowed energy inequalities for theta, u or omega.

    theta: ||theta(t+w)||^2 + kappa int ||Lambda^beta theta||^2
               <= ||theta(t)||^2 + w ||f||^2 / (kappa lambda1^(2 beta))
    u:     ||u(t+w)||^2 + nu int ||Lambda^alpha u||^2
               <= ||u(t)||^2 + int ||theta||^2 / (nu lambda1^(2 alpha))
    omega: ||omega(t+w)||^2 + nu int ||Lambda^alpha omega||^2
               <= ||omega(t)||^2 + (1/nu) int ||Lambda^(1-alpha) theta||^2

    ||Lambda^(1-alpha) theta||^2 is not sampled; it is bounded by
    interpolating between ||theta|| and ||Lambda^beta theta||, which needs
    alpha + beta >= 1.  Integrals are trapezoidal over the samples; the
    residual is reported relative to the right-hand side.
    """
    if budget not in BUDGETS:
        raise UsageError(f"budget must be one of {BUDGETS}, got {budget!r}")
    t = _times(series)
    pairs = _windows(t, window)
    th2 = np.array([r.l2_theta ** 2 for r in series])
    if budget == "theta":
        y = th2
        diss = p.kappa * np.array([r.diss_beta for r in series])
        src = np.full_like(t, f_l2 ** 2 / (p.kappa * lambda1 ** (2 * p.beta)))
    elif budget == "u":
        y = np.array([r.l2_u ** 2 for r in series])
        diss = p.nu * np.array([r.diss_alpha_u for r in series])
        src = th2 / (p.nu * lambda1 ** (2 * p.alpha))
    else:
        if p.alpha + p.beta < 1:
            raise DomainError("the vorticity budget needs alpha + beta >= 1")
        delta = 1.0 - (1.0 - p.alpha) / p.beta
        db = np.array([r.diss_beta for r in series])
        y = np.array([r.l2_omega ** 2 for r in series])
        diss = p.nu * np.array([r.diss_alpha_omega for r in series])
        src = th2 ** delta * db ** (1.0 - delta) / p.nu
    cd, cs = _trapezoid_cumulative(t, diss), _trapezoid_cumulative(t, src)
    worst, worst_t = math.inf, t[0]
    for i, j in pairs:
        lhs = y[j] + cd[j] - cd[i]
        rhs = y[i] + cs[j] - cs[i]
        scale = max(abs(rhs), abs(lhs), 1e-300)
        r = (rhs - lhs) / scale
        if r < worst:
            worst, worst_t = r, t[i]
    return CheckReport(f"time_avg_{budget}", float(worst), float(worst_t), rtol,
                       detail=f"windows={len(pairs)}")


def check_energy_balance(series, window: float, kappa: float, rtol: float = 1e-4) -> CheckReport:
    """|d||theta||^2 + 2 kappa int ||Lambda^beta theta||^2 - 2 int <f, theta>|
    per window, relative to the window's dissipation term."""
    t = _times(series)
    pairs = _windows(t, window)
    y = np.array([r.l2_theta ** 2 for r in series])
    cd = _trapezoid_cumulative(t, 2 * kappa * np.array([r.diss_beta for r in series]))
    cf = _trapezoid_cumulative(t, 2 * np.array([r.f_inner_theta for r in series]))
    worst, worst_t = math.inf, t[0]
    for i, j in pairs:
        diss = cd[j] - cd[i]
        imbalance = y[j] - y[i] + diss - (cf[j] - cf[i])
        r = -abs(imbalance) / max(diss, 1e-300)
        if r < worst:
            worst, worst_t = r, t[i]
    return CheckReport("energy_balance", float(worst), float(worst_t), rtol,
                       detail=f"windows={len(pairs)}")


def check_monotone(series, selector: Selector, rtol: float = 1e-10,
                   name: str = "monotone") -> CheckReport:
    """Successive samples may not grow by more than rtol relative."""
    t = _times(series)
    get = _select(selector)
    v = np.array([get(r) for r in series])
    if v.size < 2:
        return CheckReport(name, 0.0, float(t[0]), rtol)
    growth = (v[1:] - v[:-1]) / np.maximum(np.abs(v[:-1]), 1e-300)
    i = int(np.argmax(growth))
    return CheckReport(name, float(-max(growth[i], 0.0)), float(t[i + 1]), rtol)


def detect_absorbing_entry(series, selector: Selector, radius: float) -> Optional[float]:
    """Earliest sample time after which every sample is <= radius, else None."""
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius}")
    t = _times(series)
    get = _select(selector)
    v = np.array([get(r) for r in series])
    outside = np.nonzero(v > radius)[0]
    if outside.size == 0:
        return float(t[0])
    last = int(outside[-1])
    if last == t.size - 1:
        return None
    return float(t[last + 1])


def _fine_grid_size(n: int, support: int, p: int) -> int:
    need = 2 * p * support + 2
    m = n
    while m < need:
        m *= 2
    return m


def _pad(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Embed FFT-ordered n x n coefficients into an m x m lattice (m >= n)."""
    n = coeffs.shape[0]
    k = np.fft.fftfreq(n, 1.0 / n).astype(int)
    out = np.zeros((m, m), dtype=complex)
    idx = k % m
    out[np.ix_(idx, idx)] = coeffs
    return out


def check_positivity(theta: PhysicalField, s: float, p: int,
                     rtol: float = 1e-8) -> CheckReport:
    """int |theta|^(p-2) theta Lambda^s theta >= (2/p) int (Lambda^(s/2) |theta|^(p/2))^2.

    Both sides are evaluated on a lattice 2x finer than p times the
    support of theta.  The left integrand is a trigonometric polynomial
    there and integrates exactly; |theta|^(p/2) is not band-limited in
    general and its Fourier tail beyond that lattice is dropped.
    """
    if not 0.0 <= s <= 2.0:
        raise DomainError(f"s must lie in [0, 2], got {s}")
    if int(p) != p or p < 2 or p % 2:
        raise DomainError(f"p must be an even integer >= 2, got {p}")
    p = int(p)
    g = theta.grid
    c = to_spectral(theta).coeffs
    big = np.abs(c) > 1e-14 * max(np.max(np.abs(c)), 1e-300)
    k1, k2 = g.k_int
    support = int(np.max(np.maximum(np.abs(k1), np.abs(k2))[big], initial=0))
    m = _fine_grid_size(g.n, max(support, 1), p)
    fine = Grid(m, g.l)
    cf = _pad(c, m)
    # zero the Nyquist lines, which have no conjugate partner
    cf[m // 2, :] = 0
    cf[:, m // 2] = 0
    mag = fine.magnitude
    lam_s = np.where(mag > 0, mag, 0.0) ** s if s > 0 else np.ones_like(mag)
    to_phys = lambda a: np.real(sfft.ifft2(a)) * (m * m)
    th = to_phys(cf)
    lam_th = to_phys(lam_s * cf)
    cell = (g.l / m) ** 2
    lhs = cell * np.sum(th ** (p - 1) * lam_th)
    power = np.abs(th) ** (p // 2)
    ph = sfft.fft2(power) / (m * m)
    half_s = np.where(mag > 0, mag, 0.0) ** (s / 2) if s > 0 else np.ones_like(mag)
    rhs = (2.0 / p) * g.l ** 2 * np.sum(np.abs(half_s * ph) ** 2)
    tol = rtol * max(abs(lhs), abs(rhs), 1.0)
    return CheckReport(f"positivity_s{s:g}_p{p}", float(lhs - rhs), 0.0, float(tol),
                       detail=f"lhs={lhs:.6e} rhs={rhs:.6e} fine_n={m}")


def interpolation_ratio(f, s1: float, s: float, s2: float) -> float:
    """||Lambda^s f|| / (||Lambda^s1 f||^delta ||Lambda^s2 f||^(1-delta))."""
    from .spectral import sobolev_norm

    if not s1 <= s <= s2:
        raise DomainError(f"need s1 <= s <= s2, got {s1}, {s}, {s2}")
    delta = 1.0 if s2 == s1 else (s2 - s) / (s2 - s1)
    num = sobolev_norm(f, s)
    den = sobolev_norm(f, s1) ** delta * sobolev_norm(f, s2) ** (1 - delta)
    if den == 0:
        return 0.0 if num == 0 else math.inf
    return num / den


def check_interpolation(fields, triples, rtol: float = 1e-12) -> CheckReport:
    worst, worst_i = math.inf, 0
    for i, (f, (s1, s, s2)) in enumerate(zip(fields, triples)):
        slack = 1.0 - interpolation_ratio(f, s1, s, s2)
        if slack < worst:
            worst, worst_i = slack, i
    return CheckReport("interpolation", float(worst), float(worst_i), rtol,
                       detail=f"cases={len(triples)}")
