"""Snapshot (FBQ1) and diagnostics CSV persistence."""

from __future__ import annotations

import csv
import struct
import warnings
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .diagnostics import CSV_COLUMNS, DiagnosticsRow
from .dynamics import PhysParams, State, zero_forcing
from .errors import ConfigurationError, FormatError
from .spectral import SpectralField, make_grid

MAGIC = b"FBQ1"
# u32 n, then f64 l, nu, kappa, alpha, beta, t; little-endian, unpadded
_HEADER = struct.Struct("<I6d")


def write_snapshot(s: State, p: PhysParams, path) -> None:
    g = s.grid
    g.check_same(p.grid)
    head = _HEADER.pack(g.n, g.l, p.nu, p.kappa, p.alpha, p.beta, s.t)
    body = b"".join(np.ascontiguousarray(f.coeffs, dtype="<c16").tobytes()
                    for f in (s.theta_hat, s.omega_hat))
    Path(path).write_bytes(MAGIC + head + body)


def read_snapshot(path, forcing: Optional[SpectralField] = None,
                  coupling_on: bool = True) -> tuple[State, PhysParams]:
    """Inverse of write_snapshot.

    The file does not carry the forcing or the coupling switch; they are
    taken from the arguments (zero forcing by default).
    """
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise FormatError(f"{path}: bad magic {data[:4]!r}, expected {MAGIC!r}")
    if len(data) < 4 + _HEADER.size:
        raise FormatError(f"{path}: truncated header")
    n, l, nu, kappa, alpha, beta, t = _HEADER.unpack_from(data, 4)
    try:
        g = make_grid(n, l)
    except ConfigurationError as e:
        raise FormatError(f"{path}: invalid grid in header: {e}") from None
    expected = 4 + _HEADER.size + 2 * 16 * n * n
    if len(data) != expected:
        kind = "truncated" if len(data) < expected else "trailing bytes in"
        raise FormatError(f"{path}: {kind} body ({len(data)} bytes, expected {expected})")
    off = 4 + _HEADER.size
    arrays = []
    for _ in range(2):
        a = np.frombuffer(data, dtype="<c16", count=n * n, offset=off).reshape(n, n)
        arrays.append(a.astype(complex))
        off += 16 * n * n
    f = zero_forcing(g) if forcing is None else forcing
    if f.grid != g:
        raise FormatError(f"{path}: grid (n={n}, l={l!r}) does not match the forcing grid "
                          f"(n={f.grid.n}, l={f.grid.l!r})")
    strict = 0.5 < alpha < 1 and 0.5 < beta < 1
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            p = PhysParams(nu, kappa, alpha, beta, f, coupling_on=coupling_on,
                           strict_subcritical=strict)
    except ConfigurationError as e:
        raise FormatError(f"{path}: invalid parameters in header: {e}") from None
    return State(SpectralField(g, arrays[0]), SpectralField(g, arrays[1]), t), p


def _row_values(r: DiagnosticsRow) -> list[float]:
    return [r.get(c) for c in CSV_COLUMNS]


def write_diagnostics_csv(rows: Sequence[DiagnosticsRow], path) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            for r in rows:
                w.writerow([format(float(v), ".17g") for v in _row_values(r)])
    except OSError as e:
        raise OSError(f"cannot write diagnostics to {path}: {e}") from e


def read_diagnostics_csv(path) -> list[DiagnosticsRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_COLUMNS:
            raise FormatError(f"{path}: unexpected header {header}")
        out = []
        for no, rec in enumerate(reader, 2):
            if len(rec) != len(CSV_COLUMNS):
                raise FormatError(f"{path}: line {no} has {len(rec)} fields")
            v = dict(zip(CSV_COLUMNS, map(float, rec)))
            r = DiagnosticsRow(v.pop("t"))
            r.lp_theta = {4: v.pop("lp4_theta"), 8: v.pop("lp8_theta")}
            for k, x in v.items():
                setattr(r, k, x)
            out.append(r)
    return out
