"""Flat ``key = value`` run configuration.

Every key is a ScenarioConfig field and defaults to that field's default.
Numbers may be written as products or quotients involving ``pi``
(``l = 2*pi``); lists are comma separated; booleans are true/false.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import validate_exponents
from .errors import ConfigurationError
from .experiments import Kind, ScenarioConfig

_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}
_DEFAULTS = ScenarioConfig()
_TUPLE_ELEM = {"seeds": int, "lp_orders": float}
_TOKEN = re.compile(r"\s*([*/])\s*")


def _number(text: str) -> float:
    parts = _TOKEN.split(text.strip())
    if not parts or parts[0] == "":
        raise ValueError(f"empty number {text!r}")
    value = _atom(parts[0])
    for op, atom in zip(parts[1::2], parts[2::2]):
        value = value * _atom(atom) if op == "*" else value / _atom(atom)
    return value


def _atom(s: str) -> float:
    s = s.strip()
    if s.lower() == "pi":
        return math.pi
    return float(s)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int(text: str) -> int:
    v = _number(text)
    if not float(v).is_integer():
        raise ValueError(f"not an integer: {text!r}")
    return int(v)


def _parse_value(key: str, text: str):
    default = getattr(_DEFAULTS, key)
    if key == "kind":
        return Kind(text.strip())
    if key == "out_dir":
        return text.strip() or None
    if isinstance(default, bool):
        return _bool(text)
    if isinstance(default, int):
        return _int(text)
    if isinstance(default, float):
        return float(_number(text))
    if isinstance(default, tuple):
        conv = _int if _TUPLE_ELEM.get(key) is int else _number
        items = [x for x in text.split(",") if x.strip()]
        out = tuple(conv(x) for x in items)
        if key == "lp_orders":
            out = tuple(int(x) if float(x).is_integer() else x for x in out)
        return out
    raise ValueError(f"unsupported key type for {key}")


@dataclass(frozen=True)
class RunConfig:
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    lines: dict = field(default_factory=dict)  # key -> source line number

    @property
    def grid(self):
        return self.scenario.grid

    def params(self):
        return self.scenario.params()

    def with_overrides(self, **kw) -> "RunConfig":
        return RunConfig(dataclasses.replace(self.scenario, **kw), self.lines)


def _where(lines: dict, *keys: str) -> str:
    found = [f"line {lines[k]}" for k in keys if k in lines]
    return ", ".join(found) if found else "defaults"


def validate_sobolev_pair(s1: float, s2: float, alpha: float, beta: float) -> None:
    """Regularity pair for continuity diagnostics:
    s1 > 2 max(1 - alpha, 1 - beta), s2 >= 1, 0 <= s2 - s1 < alpha + beta."""
    lo = 2 * max(1 - alpha, 1 - beta)
    if not s1 > lo:
        raise ConfigurationError(f"s1={s1} must exceed 2 max(1-alpha, 1-beta) = {lo:g}")
    if not s2 >= 1:
        raise ConfigurationError(f"s2={s2} must be >= 1")
    if not 0 <= s2 - s1 < alpha + beta:
        raise ConfigurationError(
            f"s2 - s1 = {s2 - s1:g} must lie in [0, alpha + beta) = [0, {alpha + beta:g})")


def parse_config(text: str) -> RunConfig:
    values, lines = {}, {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {no}: expected 'key = value', got {raw.strip()!r}")
        key, val = (x.strip() for x in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigurationError(f"line {no}: unknown key {key!r}")
        if key in lines:
            raise ConfigurationError(f"line {no}: duplicate key {key!r} (first on line {lines[key]})")
        try:
            values[key] = _parse_value(key, val)
        except ValueError as e:
            raise ConfigurationError(f"line {no}: cannot parse {key} = {val!r}: {e}") from None
        lines[key] = no
    try:
        sc = ScenarioConfig(**values)
    except ConfigurationError as e:
        raise ConfigurationError(f"{_where(lines, *values)}: {e}") from None
    return RunConfig(revalidate(sc, lines), lines)


def revalidate(sc: ScenarioConfig, lines: Optional[dict] = None) -> ScenarioConfig:
    """Check the exponent range, the s1/s2 pair and buildability of grid and params."""
    lines = lines or {}
    try:
        validate_exponents(sc.alpha, sc.beta, sc.strict_subcritical)
    except ConfigurationError as e:
        raise ConfigurationError(
            f"{_where(lines, 'alpha', 'beta')}: {e} (dissipation exponents must lie in "
            "the subcritical range (1/2, 1) unless strict_subcritical = false)") from None
    for check, keys in ((lambda: validate_sobolev_pair(sc.s1, sc.s2, sc.alpha, sc.beta),
                         ("s1", "s2", "alpha", "beta")),
                        (lambda: sc.params(), ("n", "l", "nu", "kappa", "forcing_kmax")),
                        (lambda: _check_init_kmax(sc), ("n", "init_kmax"))):
        try:
            check()
        except ConfigurationError as e:
            raise ConfigurationError(f"{_where(lines, *keys)}: {e}") from None
    return sc


def _check_init_kmax(sc: ScenarioConfig) -> None:
    cut = sc.grid.dealias_cutoff
    if not 1 <= sc.init_kmax <= cut:
        raise ConfigurationError(f"init_kmax={sc.init_kmax} must lie in [1, {cut}] on an n={sc.n} grid")


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(sc: ScenarioConfig) -> str:
    """Inverse of parse_config for a resolved scenario."""
    return "\n".join(line for line in sc.header() if not line.startswith("out_dir = None")) + "\n"
