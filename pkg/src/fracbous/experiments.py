"""Scenario drivers: finite experiments with machine-checkable outcomes.

Every runner takes a ScenarioConfig and returns a Report whose header is
the full effective configuration.  Runs are serial and seeded, so a report
is a pure function of its config.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from . import analysis as an
from .diagnostics import DiagnosticsRow
from .dynamics import PhysParams, State, integrate, random_state, zero_forcing
from .errors import BlowUpError, ConfigurationError, UsageError
from .spectral import (
    Grid,
    SpectralField,
    lp_norm,
    make_grid,
    random_field,
    single_mode,
    sobolev_norm,
    to_physical,
)


class Kind(str, enum.Enum):
    LINEAR_DECAY = "linear_decay"
    FULL_DECAY = "full_decay"
    ABSORBING_BALL = "absorbing_ball"
    CONTINUITY = "continuity"
    VERIFY_INEQUALITIES = "verify_inequalities"
    REFINEMENT = "refinement"


def _strictly_decreasing(name, values):
    v = list(values)
    if any(x <= 0 for x in v):
        raise ConfigurationError(f"{name} must be positive, got {v}")
    if any(b >= a for a, b in zip(v, v[1:])):
        raise ConfigurationError(f"{name} must be strictly decreasing, got {v}")


@dataclass(frozen=True)
class ScenarioConfig:
    kind: Kind = Kind.VERIFY_INEQUALITIES
    # grid and physics
    n: int = 64
    l: float = 2 * math.pi
    nu: float = 0.05
    kappa: float = 0.05
    alpha: float = 0.75
    beta: float = 0.75
    coupling_on: bool = True
    strict_subcritical: bool = True
    forcing_seed: int = 7
    forcing_norm: float = 0.2
    forcing_kmax: float = 3.0
    # integration
    dt: float = 1e-3
    t_end: float = 10.0
    sample_every: int = 10
    cfl: float = 0.5
    s1: float = 0.6
    s2: float = 1.0
    lp_orders: tuple = (4, 8)
    window: float = 1.0
    # initial data
    seed: int = 1
    init_kmax: float = 4.0
    theta_norm: float = 1.0
    omega_norm: float = 0.5
    # ensemble: member i uses seeds[i], theta_norms[i] and omega_norms[i % len]
    seeds: tuple = (1, 2, 3)
    theta_norms: tuple = (0.1, 1.0, 10.0)
    omega_norms: tuple = (1.0,)
    # absorbing ball
    radius_floor: float = 1e-3
    # continuity
    deltas: tuple = (1e-2, 1e-3, 1e-4)
    # refinement
    dt_ladder: tuple = (4e-3, 2e-3, 1e-3)
    dt_reference: float = 1.25e-4
    refine_t_end: float = 1.0
    # verify
    fuzz_fields: int = 100
    interp_fields: int = 1000
    # output
    out_dir: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("seeds", "theta_norms", "omega_norms", "deltas", "dt_ladder", "lp_orders"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.seeds) != len(self.theta_norms):
            raise ConfigurationError(
                f"seeds ({len(self.seeds)}) and theta_norms ({len(self.theta_norms)}) "
                "must have equal length")
        if not self.omega_norms or any(x < 0 for x in self.omega_norms):
            raise ConfigurationError(f"omega_norms must be nonempty and >= 0, got {self.omega_norms}")
        if any(x <= 0 for x in self.theta_norms):
            raise ConfigurationError(f"theta_norms must be positive, got {self.theta_norms}")
        _strictly_decreasing("deltas", self.deltas)
        _strictly_decreasing("dt_ladder", self.dt_ladder)
        for name in ("dt", "t_end", "dt_reference", "refine_t_end", "radius_floor", "window"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.forcing_norm < 0:
            raise ConfigurationError(f"forcing_norm must be >= 0, got {self.forcing_norm}")

    @property
    def grid(self) -> Grid:
        return make_grid(self.n, self.l)

    def params(self, grid: Optional[Grid] = None, forcing: Optional[SpectralField] = None,
               **overrides) -> PhysParams:
        g = grid or self.grid
        f = self.forcing(g) if forcing is None else forcing
        kw = dict(nu=self.nu, kappa=self.kappa, alpha=self.alpha, beta=self.beta,
                  coupling_on=self.coupling_on, strict_subcritical=self.strict_subcritical)
        kw.update(overrides)
        return PhysParams(forcing=f, **kw)

    def forcing(self, grid: Optional[Grid] = None) -> SpectralField:
        g = grid or self.grid
        if self.forcing_norm == 0:
            return zero_forcing(g)
        return random_field(g, self.forcing_seed, self.forcing_kmax, norm=self.forcing_norm)

    def header(self) -> list[str]:
        d = asdict(self)
        d["kind"] = self.kind.value
        return [f"{k} = {_fmt(v)}" for k, v in d.items()]


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return ", ".join(_fmt(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass
class Report:
    name: str
    config: ScenarioConfig
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    blowup: bool = False

    @property
    def passed(self) -> bool:
        return not self.blowup and all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [f"# scenario: {self.name}"]
        lines += [f"# {h}" for h in self.config.header()]
        lines += [c.line() for c in self.checks]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"OVERALL {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


@dataclass
class Member:
    seed: int
    theta_norm: float
    omega_norm: float
    series: list
    error: Optional[BlowUpError] = None


def _lambda1(cfg: ScenarioConfig) -> float:
    return 2 * math.pi / cfg.l


def run_ensemble(cfg: ScenarioConfig, params: Optional[PhysParams] = None,
                 t_end: Optional[float] = None, sample_every: Optional[int] = None) -> list[Member]:
    """Integrate every ensemble member, recording its diagnostics series."""
    p = params or cfg.params()
    g = p.grid
    out = []
    for i, (seed, th) in enumerate(zip(cfg.seeds, cfg.theta_norms)):
        om = cfg.omega_norms[i % len(cfg.omega_norms)]
        s0 = random_state(g, seed, th, om, kmax=cfg.init_kmax)
        rows: list[DiagnosticsRow] = []
        err = None
        try:
            integrate(s0, p, cfg.t_end if t_end is None else t_end, cfg.dt,
                      sample_every or cfg.sample_every, rows.append, cfl=cfg.cfl,
                      lp_orders=cfg.lp_orders, s1=cfg.s1, s2=cfg.s2)
        except BlowUpError as e:
            err = e
        out.append(Member(seed, th, om, rows, err))
    return out


def _blowup_check(name: str, m: Member) -> an.CheckReport:
    t = m.error.t if m.error is not None and m.error.t is not None else math.nan
    return an.CheckReport(name, -math.inf, t, 0.0, detail=f"blow-up: {m.error}")


def decay_checks(series, p: PhysParams, lambda1: float, lp_orders=(4, 8),
                 prefix: str = "") -> list[an.CheckReport]:
    """Envelope checks of one trajectory: L^2, L^p and velocity."""
    f = p.forcing
    f_l2 = sobolev_norm(f, 0.0)
    fp = to_physical(f)
    out = [_renamed(an.check_l2_envelope(series, p, lambda1, f_l2), prefix)]
    for q in lp_orders:
        out.append(_renamed(an.check_lp_envelope(series, q, p, lambda1, lp_norm(fp, q)), prefix))
    out.append(_renamed(an.check_velocity_envelope(series, p, lambda1, f_l2), prefix))
    return out


def _renamed(r: an.CheckReport, prefix: str) -> an.CheckReport:
    return replace(r, name=prefix + r.name) if prefix else r


def run_linear_decay(cfg: ScenarioConfig) -> Report:
    """Uncoupled, unforced decay of theta_0 = amplitude sin(x + y) with u = 0."""
    g = cfg.grid
    p = cfg.params(forcing=zero_forcing(g), coupling_on=False)
    # ||A cos||_{L^2} = A l / sqrt 2, so theta_norm fixes the amplitude
    th0 = single_mode(g, (1, 1), cfg.theta_norm * math.sqrt(2) / cfg.l, phase=-math.pi / 2)
    s0 = State(th0, SpectralField.zeros(g))
    rows = []
    sT = integrate(s0, p, cfg.t_end, cfg.dt, cfg.sample_every, rows.append, cfl=cfg.cfl)
    lam = _lambda1(cfg)
    rate = cfg.kappa * (lam * math.sqrt(2)) ** (2 * cfg.beta)
    exact = math.exp(-rate * cfg.t_end) * sobolev_norm(th0, 0.0)
    got = sobolev_norm(sT.theta_hat, 0.0)
    rel = abs(got - exact) / exact
    rep = Report("linear_decay", cfg, data={"series": rows, "final": sT, "exact": exact,
                                             "measured": got})
    rep.checks.append(an.CheckReport("linear_decay_exactness", -rel, cfg.t_end, 1e-10,
                                     detail=f"measured={got!r} exact={exact!r}"))
    rep.checks += decay_checks(rows, p, lam, cfg.lp_orders)
    return rep


def run_full_decay(cfg: ScenarioConfig, members: Optional[list[Member]] = None) -> Report:
    """Envelope checks over the ensemble; with f = 0 also L^p monotonicity."""
    p = cfg.params()
    members = run_ensemble(cfg, p) if members is None else members
    lam = _lambda1(cfg)
    rep = Report("full_decay", cfg, data={"members": members})
    unforced = cfg.forcing_norm == 0
    for m in members:
        tag = f"seed{m.seed}/"
        if m.error is not None:
            rep.checks.append(_blowup_check(tag + "integrate", m))
            rep.blowup = True
            continue
        rep.checks += decay_checks(m.series, p, lam, cfg.lp_orders, tag)
        if unforced:
            for q in cfg.lp_orders:
                rep.checks.append(an.check_monotone(m.series, f"lp{q}_theta",
                                                    name=f"{tag}l{q}_theta_monotone"))
    return rep


def absorbing_radius(cfg: ScenarioConfig, p: Optional[PhysParams] = None) -> float:
    """Twice the squared L^2 asymptote of theta, floored; returned unsquared."""
    p = p or cfg.params()
    r2 = 2 * an.l2_asymptote(sobolev_norm(p.forcing, 0.0), p, _lambda1(cfg))
    return max(math.sqrt(r2), cfg.radius_floor)


def run_absorbing_ball(cfg: ScenarioConfig, members: Optional[list[Member]] = None) -> Report:
    if not cfg.seeds:
        raise UsageError("absorbing-ball scenario needs a nonempty ensemble")
    p = cfg.params()
    lam = _lambda1(cfg)
    members = run_ensemble(cfg, p) if members is None else members
    radius = absorbing_radius(cfg, p)
    asym = an.l2_asymptote(sobolev_norm(p.forcing, 0.0), p, lam)
    rate = p.kappa * lam ** (2 * p.beta)
    rep = Report("absorbing_ball", cfg, data={"radius": radius, "entries": [], "crossings": []})
    rep.notes.append(f"radius={radius!r}")
    for m in members:
        tag = f"seed{m.seed}/"
        if m.error is not None:
            rep.checks.append(_blowup_check(tag + "absorbing_entry", m))
            rep.blowup = True
            continue
        s = m.series
        entry = an.detect_absorbing_entry(s, "l2_theta", radius)
        crossing = an.crossing_time(s[0].l2_theta ** 2, asym, rate, radius ** 2)
        rep.data["entries"].append(entry)
        rep.data["crossings"].append(crossing)
        t_last = s[-1].t
        # entry is sampled, so it may trail the crossing by one sample interval
        spacing = max((b.t - a.t for a, b in zip(s, s[1:])), default=0.0)
        deadline = crossing + spacing * (1 + 1e-9)
        if entry is None:
            # not yet inside is consistent only if the envelope is not either
            slack = 0.0 if crossing > t_last else -math.inf
        else:
            slack = deadline - entry
        rep.checks.append(an.CheckReport(
            f"{tag}absorbing_entry", slack,
            entry if entry is not None else t_last, 0.0,
            detail=f"entry={entry} crossing={crossing!r} theta0={m.theta_norm!r}"))
        rep.notes.append(f"seed {m.seed}: |theta0|={m.theta_norm!r} entry={entry} "
                         f"envelope crossing={crossing!r}")
    return rep


def difference_norm(a: State, b: State, s1: float, s2: float) -> float:
    """D = ||Lambda^s2 (u_a - u_b)||^2 + ||Lambda^s1 (theta_a - theta_b)||^2."""
    dom = a.omega_hat - b.omega_hat
    dth = a.theta_hat - b.theta_hat
    return sobolev_norm(dom, s2 - 1.0) ** 2 + sobolev_norm(dth, s1) ** 2


def _paired_run(s_a: State, s_b: State, p: PhysParams, cfg: ScenarioConfig, t_end: float):
    """D(t) at every sample interval for two trajectories."""
    interval = cfg.dt * cfg.sample_every
    t0 = s_a.t
    n_chunks = max(1, int(round((t_end - t0) / interval)))
    times, ds = [s_a.t], [difference_norm(s_a, s_b, cfg.s1, cfg.s2)]
    for i in range(1, n_chunks + 1):
        t_next = t_end if i == n_chunks else t0 + i * interval
        s_a = integrate(s_a, p, t_next, cfg.dt, cfl=cfg.cfl)
        s_b = integrate(s_b, p, t_next, cfg.dt, cfl=cfg.cfl)
        times.append(s_a.t)
        ds.append(difference_norm(s_a, s_b, cfg.s1, cfg.s2))
    return np.array(times), np.array(ds)


def perturbation_direction(cfg: ScenarioConfig, grid: Grid) -> State:
    """Seeded unit direction: D(theta, u) of the direction itself is 1."""
    d = random_state(grid, cfg.seed + 1000, 1.0, 1.0, kmax=cfg.init_kmax)
    scale = math.sqrt(difference_norm(d, State.zeros(grid), cfg.s1, cfg.s2))
    return State(d.theta_hat * (1 / scale), d.omega_hat * (1 / scale))


def run_continuity(cfg: ScenarioConfig, include_zero: bool = True) -> Report:
    if len(cfg.deltas) < 3:
        raise UsageError(f"continuity needs at least 3 delta rungs, got {len(cfg.deltas)}")
    p = cfg.params()
    g = p.grid
    base = random_state(g, cfg.seed, cfg.theta_norm, cfg.omega_norm, kmax=cfg.init_kmax)
    d = perturbation_direction(cfg, g)
    rep = Report("continuity", cfg, data={"D_T": [], "sup_growth": []})
    for delta in cfg.deltas:
        pert = State(base.theta_hat + d.theta_hat * delta, base.omega_hat + d.omega_hat * delta)
        try:
            t, D = _paired_run(base, pert, p, cfg, cfg.t_end)
        except BlowUpError as e:
            rep.blowup = True
            rep.checks.append(an.CheckReport(f"delta={delta:g}", -math.inf, e.t or math.nan,
                                             0.0, detail=f"blow-up: {e}"))
            return rep
        rep.data["D_T"].append(float(D[-1]))
        rep.data["sup_growth"].append(float(np.max(D / D[0])))
        rep.data.setdefault("series", []).append((t, D))
    dT = rep.data["D_T"]
    for i in range(len(dT) - 1):
        ratio = dT[i] / dT[i + 1] if dT[i + 1] > 0 else math.inf
        # signed distance to the band [50, 200]
        slack = min(ratio - 50.0, 200.0 - ratio)
        rep.checks.append(an.CheckReport(
            f"scaling {cfg.deltas[i]:g}/{cfg.deltas[i + 1]:g}", slack, cfg.t_end, 0.0,
            detail=f"ratio={ratio!r}"))
    growth = rep.data["sup_growth"]
    spread = max(growth) / min(growth)
    rep.checks.append(an.CheckReport("common_growth", 2.0 - spread, cfg.t_end, 0.0,
                                     detail=f"sup D/D0 per rung={growth}"))
    if include_zero:
        t, D = _paired_run(base, base, p, cfg, min(cfg.t_end, 10 * cfg.dt * cfg.sample_every))
        rep.checks.append(an.CheckReport("uniqueness_delta0", -float(np.max(D)), float(t[-1]),
                                         0.0, detail="D identically zero"))
    return rep


def linear_difference_check(cfg: ScenarioConfig, k=(2, 1), delta: float = 1e-3) -> an.CheckReport:
    """Uncoupled, u = 0, single-mode perturbation: D(t) = D(0) e^(-2 kappa |m|^(2 beta) t)."""
    g = cfg.grid
    p = cfg.params(forcing=zero_forcing(g), coupling_on=False)
    z = SpectralField.zeros(g)
    a = State(single_mode(g, (1, 0), cfg.theta_norm / cfg.l), z)
    b = State(a.theta_hat + single_mode(g, k, delta), z)
    t, D = _paired_run(a, b, p, cfg, cfg.t_end)
    m = _lambda1(cfg) * math.hypot(*k)
    exact = D[0] * np.exp(-2 * cfg.kappa * m ** (2 * cfg.beta) * t)
    rel = float(np.max(np.abs(D - exact) / exact))
    return an.CheckReport("linear_difference_exact", -rel, float(t[np.argmax(np.abs(D - exact))]),
                          1e-10, detail="single-mode perturbation")


def verify_series(series, p: PhysParams, lambda1: float, window: float,
                  lp_orders=(4, 8)) -> list[an.CheckReport]:
    """Every trajectory checker over one series."""
    f_l2 = sobolev_norm(p.forcing, 0.0)
    out = decay_checks(series, p, lambda1, lp_orders)
    out.append(an.check_energy_balance(series, window, p.kappa))
    for b in an.BUDGETS:
        out.append(an.check_time_avg_dissipation(series, window, b, p, lambda1, f_l2))
    return out


def run_verify_inequalities(cfg: ScenarioConfig,
                            corrupt: Optional[tuple[int, float]] = None) -> Report:
    """Inequality fuzz on seeded random fields plus every checker on one reference run.

    ``corrupt=(index, factor)`` scales one sample of the reference series
    before checking, as a negative control.
    """
    g = cfg.grid
    p = cfg.params()
    lam = _lambda1(cfg)
    rep = Report("verify_inequalities", cfg)
    rng = np.random.default_rng(cfg.seed)

    worst = None
    for _ in range(cfg.fuzz_fields):
        th = to_physical(random_field(g, rng, cfg.init_kmax))
        for s in (0.5, 1.0, 1.7):
            for q in (4, 6):
                r = an.check_positivity(th, s, q)
                if worst is None or r.worst_residual / r.tolerance < worst.worst_residual / worst.tolerance:
                    worst = r
    if worst is not None:
        rep.checks.append(replace(worst, detail=f"{cfg.fuzz_fields} fields x s x p; " + worst.detail))

    if cfg.interp_fields:
        fields, triples = [], []
        for _ in range(cfg.interp_fields):
            fields.append(random_field(g, rng, rng.integers(1, g.dealias_cutoff + 1),
                                       slope=rng.uniform(0, 2)))
            a, b = np.sort(rng.uniform(0, 3, 2))
            triples.append((float(a), float(rng.uniform(a, b)), float(b)))
        rep.checks.append(an.check_interpolation(fields, triples))

    # Gronwall oracle: y' + y = 1, y0 = 10 has y = 1 + 9 e^-t.
    ts = np.linspace(0.0, 20.0, 2001)
    rep.checks.append(an.check_values_under_envelope(
        ts, 1 + 9 * np.exp(-ts), lambda t: an.gronwall_envelope(10.0, 1.0, 1.0, 0.0, t),
        name="gronwall_ode_oracle"))
    u = an.uniform_gronwall_envelope(1, 1, 1, 1)
    rep.checks.append(an.CheckReport("uniform_gronwall_2e", -abs(u - 2 * math.e), 0.0, 1e-12))

    s0 = random_state(g, cfg.seed, cfg.theta_norm, cfg.omega_norm, kmax=cfg.init_kmax)
    series: list[DiagnosticsRow] = []
    try:
        integrate(s0, p, cfg.t_end, cfg.dt, cfg.sample_every, series.append, cfl=cfg.cfl,
                  lp_orders=cfg.lp_orders, s1=cfg.s1, s2=cfg.s2)
    except BlowUpError as e:
        rep.blowup = True
        rep.notes.append(f"reference run blew up: {e}")
        return rep
    if corrupt is not None:
        i, factor = corrupt
        series = list(series)
        series[i] = series[i].scaled(factor)
        rep.notes.append(f"sample {i} scaled by {factor}")
    rep.checks += verify_series(series, p, lam, cfg.window, cfg.lp_orders)
    rep.data["series"] = series
    return rep


def _rel_error(a: State, b: State) -> float:
    num = sobolev_norm(a.theta_hat - b.theta_hat, 0) ** 2 + sobolev_norm(a.omega_hat - b.omega_hat, 0) ** 2
    den = sobolev_norm(b.theta_hat, 0) ** 2 + sobolev_norm(b.omega_hat, 0) ** 2
    return math.sqrt(num / den) if den > 0 else math.sqrt(num)


def resample(f: SpectralField, grid: Grid) -> SpectralField:
    """Copy the modes shared by both grids; the rest are zero."""
    n_old, n_new = f.grid.n, grid.n
    h = min(n_old, n_new) // 2
    c = np.zeros((n_new, n_new), dtype=complex)
    idx = np.r_[0:h, -h + 1:0]  # drop the Nyquist line of the smaller grid
    c[np.ix_(idx % n_new, idx % n_new)] = f.coeffs[np.ix_(idx % n_old, idx % n_old)]
    return SpectralField(grid, c)


def _resample_state(s: State, grid: Grid) -> State:
    return State(resample(s.theta_hat, grid), resample(s.omega_hat, grid), s.t)


EXACT_REGIME = 1e-12


def run_refinement(cfg: ScenarioConfig) -> Report:
    ladder = cfg.dt_ladder
    if len(ladder) < 3:
        raise UsageError(f"refinement needs at least 3 dt rungs, got {len(ladder)}")
    for a, b in zip(ladder, ladder[1:]):
        if abs(a / b - 2.0) > 1e-9:
            raise UsageError(f"dt rungs must be factor-2 spaced, got {ladder}")
    p = cfg.params()
    g = p.grid
    T = cfg.refine_t_end
    if cfg.coupling_on or cfg.forcing_norm:
        s0 = random_state(g, cfg.seed, cfg.theta_norm, cfg.omega_norm, kmax=cfg.init_kmax)
    else:
        s0 = State(random_field(g, cfg.seed, cfg.init_kmax, norm=cfg.theta_norm),
                   SpectralField.zeros(g))
    ref = integrate(s0, p, T, cfg.dt_reference, cfl=cfg.cfl)
    errs = [_rel_error(integrate(s0, p, T, h, cfl=cfg.cfl), ref) for h in ladder]
    rep = Report("refinement", cfg, data={"errors": errs})
    rep.notes.append("errors vs dt: " + ", ".join(f"{h:g}:{e:.3e}" for h, e in zip(ladder, errs)))
    if max(errs) < EXACT_REGIME:
        rep.notes.append("exact regime: errors at rounding level for every dt")
        rep.checks.append(an.CheckReport("temporal_order", EXACT_REGIME - max(errs), T, 0.0,
                                         detail="exact regime"))
    else:
        orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
        rep.data["orders"] = orders
        slack = min(min(o - 1.7, 2.3 - o) for o in orders)
        rep.checks.append(an.CheckReport("temporal_order", slack, T, 0.0,
                                         detail=f"p_obs={orders}"))
        if any(b >= a for a, b in zip(errs, errs[1:])):
            rep.notes.append("flag: error ladder is not monotone")
    g2 = make_grid(2 * cfg.n, cfg.l)
    p2 = cfg.params(grid=g2, forcing=resample(p.forcing, g2))
    coarse = integrate(s0, p, T, cfg.dt, cfl=cfg.cfl)
    fine = integrate(_resample_state(s0, g2), p2, T, cfg.dt, cfl=cfg.cfl)
    diff = _rel_error(_resample_state(coarse, g2), fine)
    rep.data["spatial_change"] = diff
    rep.checks.append(an.CheckReport("spatial_doubling", 1e-8 - diff, T, 0.0,
                                     detail=f"n={cfg.n}->{2 * cfg.n} change={diff:.3e}"))
    return rep


RUNNERS = {
    Kind.LINEAR_DECAY: run_linear_decay,
    Kind.FULL_DECAY: run_full_decay,
    Kind.ABSORBING_BALL: run_absorbing_ball,
    Kind.CONTINUITY: run_continuity,
    Kind.VERIFY_INEQUALITIES: run_verify_inequalities,
    Kind.REFINEMENT: run_refinement,
}


def run(cfg: ScenarioConfig) -> Report:
    return RUNNERS[cfg.kind](cfg)
