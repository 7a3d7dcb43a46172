"""Per-sample diagnostic record of norms and dissipation integrands."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Sequence

import numpy as np

from .spectral import inner, lp_norm, sobolev_norm, to_physical

# Column order of the diagnostics CSV; lp4/lp8 come from ``lp_theta``.
CSV_COLUMNS = (
    "t", "l2_theta", "l2_u", "l2_omega", "lp4_theta", "lp8_theta", "hs1_theta",
    "hs2_u", "diss_beta", "diss_alpha_u", "diss_alpha_omega", "f_inner_theta",
)


@dataclass
class DiagnosticsRow:
    """Norms of one State.

    ``diss_*`` entries are squared norms, e.g. diss_beta = ||Lambda^beta theta||^2;
    every other norm entry is unsquared.
    """

    t: float
    l2_theta: float = 0.0
    l2_u: float = 0.0
    l2_omega: float = 0.0
    lp_theta: dict = field(default_factory=dict)
    hs1_theta: float = 0.0
    hs2_u: float = 0.0
    diss_beta: float = 0.0
    diss_alpha_u: float = 0.0
    diss_alpha_omega: float = 0.0
    f_inner_theta: float = 0.0

    def get(self, name: str) -> float:
        """Column value by CSV name, e.g. ``lp4_theta`` or ``l2_u``."""
        if name.startswith("lp") and name.endswith("_theta"):
            p = float(name[2:-6])
            return self.lp_theta[int(p) if p.is_integer() else p]
        return getattr(self, name)

    def scaled(self, a: float) -> "DiagnosticsRow":
        """Every norm multiplied by a (squared quantities by a^2)."""
        out = DiagnosticsRow(self.t)
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "t":
                continue
            if f.name == "lp_theta":
                setattr(out, f.name, {k: a * x for k, x in v.items()})
            elif f.name.startswith("diss"):
                setattr(out, f.name, a * a * v)
            else:
                setattr(out, f.name, a * v)
        return out


def u_sobolev_sq(omega_hat, s: float) -> float:
    """||Lambda^s u||^2 for u = grad^perp Laplacian^-1 omega, i.e. ||Lambda^(s-1) omega||^2."""
    return sobolev_norm(omega_hat, s - 1.0) ** 2


def diagnostics_row(state, params, lp_orders: Sequence[float] = (4, 8),
                    s1: float = 0.6, s2: float = 1.0) -> DiagnosticsRow:
    th, om = state.theta_hat, state.omega_hat
    phys = to_physical(th)
    orders = sorted(set(lp_orders) | {4, 8})
    return DiagnosticsRow(
        t=float(state.t),
        l2_theta=sobolev_norm(th, 0.0),
        l2_u=float(np.sqrt(u_sobolev_sq(om, 0.0))),
        l2_omega=sobolev_norm(om, 0.0),
        lp_theta={p: lp_norm(phys, p) for p in orders},
        hs1_theta=sobolev_norm(th, s1),
        hs2_u=float(np.sqrt(u_sobolev_sq(om, s2))),
        diss_beta=sobolev_norm(th, params.beta) ** 2,
        diss_alpha_u=u_sobolev_sq(om, params.alpha),
        diss_alpha_omega=sobolev_norm(om, params.alpha) ** 2,
        f_inner_theta=inner(params.forcing, th),
    )
