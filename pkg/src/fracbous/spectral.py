"""Fourier representation of real periodic fields on the square [0, L]^2.

Coefficients are stored on the full n x n lattice in FFT order, axis 0 is
the x1 wavenumber and axis 1 the x2 wavenumber.  The amplitude at integer
wavevector k multiplies exp(i (2 pi / L) k . x), so that

    f_hat(k) = L^-2 * integral f(x) exp(-i (2 pi / L) k . x) dx

and the norms below carry a factor L^2 which makes Parseval exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
import scipy.fft as sfft

from .errors import ConfigurationError, DomainError, UsageError

# |c00| below this fraction of the largest coefficient counts as zero mean.
MEAN_ZERO_RTOL = 1e-13


@dataclass(frozen=True)
class Grid:
    """Uniform periodic lattice with n points per side on [0, l]^2."""

    n: int
    l: float

    @property
    def base_wavenumber(self) -> float:
        return 2.0 * np.pi / self.l

    @property
    def dealias_cutoff(self) -> int:
        return self.n // 3

    @property
    def dx(self) -> float:
        return self.l / self.n

    @property
    def half_shape(self) -> tuple[int, int]:
        return (self.n, self.n // 2 + 1)

    @cached_property
    def k_int(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer wavevector components on the full lattice, FFT order."""
        k = np.fft.fftfreq(self.n, 1.0 / self.n).astype(np.int64)
        k1, k2 = np.meshgrid(k, k, indexing="ij")
        return k1, k2

    @cached_property
    def wavevector(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical wavevector m(k) = base_wavenumber * k."""
        k1, k2 = self.k_int
        return self.base_wavenumber * k1, self.base_wavenumber * k2

    @cached_property
    def magnitude(self) -> np.ndarray:
        m1, m2 = self.wavevector
        return np.sqrt(m1 * m1 + m2 * m2)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        k1, k2 = self.k_int
        return np.maximum(np.abs(k1), np.abs(k2)) <= self.dealias_cutoff

    @cached_property
    def conj_index(self) -> np.ndarray:
        """Index map i -> (-i) mod n used for Hermitian partners."""
        return (-np.arange(self.n)) % self.n

    @cached_property
    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        x = self.dx * np.arange(self.n)
        return tuple(np.meshgrid(x, x, indexing="ij"))

    def half(self, a: np.ndarray) -> np.ndarray:
        """Restrict a full-lattice array to the rfft half plane."""
        return a[:, : self.n // 2 + 1]

    def check_same(self, other: "Grid") -> None:
        if self != other:
            raise UsageError(f"grid mismatch: {self} vs {other}")


def make_grid(n: int, l: float) -> Grid:
    if int(n) != n or n < 8 or n % 2:
        raise ConfigurationError(f"n must be an even integer >= 8, got {n!r}")
    if not np.isfinite(l) or l <= 0:
        raise ConfigurationError(f"side length must be positive, got {l!r}")
    return Grid(int(n), float(l))


@dataclass(frozen=True, eq=False)
class SpectralField:
    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != (self.grid.n, self.grid.n):
            raise UsageError(
                f"coefficient array has shape {self.coeffs.shape}, "
                f"grid needs {(self.grid.n, self.grid.n)}"
            )

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros((grid.n, grid.n), dtype=complex))

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self.grid.check_same(other.grid)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self.grid.check_same(other.grid)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, a: float) -> "SpectralField":
        return SpectralField(self.grid, a * self.coeffs)

    __rmul__ = __mul__

    @property
    def mean(self) -> complex:
        return self.coeffs[0, 0]

    def is_mean_zero(self) -> bool:
        scale = np.max(np.abs(self.coeffs), initial=0.0)
        return abs(self.coeffs[0, 0]) <= MEAN_ZERO_RTOL * scale

    def is_dealiased(self) -> bool:
        return not np.any(self.coeffs[~self.grid.dealias_mask])

    def hermitian_defect(self) -> float:
        """max |c(-k) - conj(c(k))| over representable pairs."""
        idx = self.grid.conj_index
        partner = self.coeffs[np.ix_(idx, idx)]
        return float(np.max(np.abs(partner - np.conj(self.coeffs))))


@dataclass(frozen=True, eq=False)
class PhysicalField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.n, self.grid.n):
            raise UsageError(
                f"value array has shape {self.values.shape}, "
                f"grid needs {(self.grid.n, self.grid.n)}"
            )


def full_from_half(grid: Grid, half: np.ndarray) -> np.ndarray:
    """Rebuild the full Hermitian coefficient array from its rfft half."""
    n = grid.n
    m = n // 2 + 1
    full = np.empty((n, n), dtype=complex)
    full[:, :m] = half
    # columns k2 = -n/2+1 .. -1 are conjugate partners of k2 = n/2-1 .. 1
    full[:, m:] = np.conj(half[grid.conj_index][:, n - np.arange(m, n)])
    return full


def to_spectral(f: PhysicalField) -> SpectralField:
    g = f.grid
    half = sfft.rfft2(f.values) / (g.n * g.n)
    return SpectralField(g, full_from_half(g, half))


def to_physical(f: SpectralField) -> PhysicalField:
    g = f.grid
    values = sfft.irfft2(g.half(f.coeffs), s=(g.n, g.n)) * (g.n * g.n)
    return PhysicalField(g, values)


def sample(grid: Grid, func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> PhysicalField:
    """Evaluate func(x1, x2) at the lattice points."""
    x1, x2 = grid.coords
    return PhysicalField(grid, np.asarray(func(x1, x2), dtype=float) + np.zeros_like(x1))


def multiplier(grid: Grid, s: float) -> np.ndarray:
    """|m(k)|^s with the k = 0 entry set to 0 (s != 0) or 1 (s == 0)."""
    if s == 0:
        return np.ones((grid.n, grid.n))
    mag = grid.magnitude
    out = np.zeros_like(mag)
    nz = mag > 0
    out[nz] = mag[nz] ** s
    return out


def _require_mean_zero(f: SpectralField, s: float) -> None:
    if s < 0 and not f.is_mean_zero():
        raise DomainError(
            f"Lambda^{s} is undefined on a field with nonzero mean ({f.mean!r})"
        )


def apply_lambda_power(f: SpectralField, s: float) -> SpectralField:
    """Fractional power Lambda^s = (-Laplacian)^(s/2) as a Fourier multiplier."""
    _require_mean_zero(f, s)
    return SpectralField(f.grid, multiplier(f.grid, s) * f.coeffs)


def sobolev_norm(f: SpectralField, s: float) -> float:
    """||Lambda^s f||_{L^2} = sqrt(L^2 sum_k |m(k)|^(2s) |f_hat(k)|^2)."""
    _require_mean_zero(f, s)
    g = f.grid
    w = multiplier(g, 2 * s)
    power = w * (f.coeffs.real ** 2 + f.coeffs.imag ** 2)
    return float(g.l * np.sqrt(np.sum(power)))


def lp_norm(f: PhysicalField, p: float) -> float:
    """Uniform-quadrature L^p norm; p = inf gives the sample maximum."""
    if not p >= 1:
        raise DomainError(f"L^p norm needs p >= 1, got {p!r}")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(np.max(a))
    cell = f.grid.dx ** 2
    if p == 2:
        return float(np.sqrt(cell * np.sum(a * a)))
    return float((cell * np.sum(a ** p)) ** (1.0 / p))


def project_mean_zero(f: SpectralField) -> SpectralField:
    c = f.coeffs.copy()
    c[0, 0] = 0.0
    return SpectralField(f.grid, c)


def dealias(f: SpectralField) -> SpectralField:
    return SpectralField(f.grid, np.where(f.grid.dealias_mask, f.coeffs, 0.0))


def inner(f: SpectralField, g: SpectralField) -> float:
    """L^2 inner product of two real fields via Parseval."""
    f.grid.check_same(g.grid)
    return float(f.grid.l ** 2 * np.sum(np.real(f.coeffs * np.conj(g.coeffs))))


def hermitian_part(grid: Grid, c: np.ndarray) -> np.ndarray:
    """Project an arbitrary coefficient array onto real fields."""
    idx = grid.conj_index
    return 0.5 * (c + np.conj(c[np.ix_(idx, idx)]))


def single_mode(grid: Grid, k: tuple[int, int], amplitude: float = 1.0,
                phase: float = 0.0) -> SpectralField:
    """amplitude * cos(m(k) . x + phase)."""
    k1, k2 = k
    if max(abs(k1), abs(k2)) > grid.dealias_cutoff:
        raise ConfigurationError(
            f"mode {k} does not fit under the dealias cutoff {grid.dealias_cutoff} "
            f"of an n={grid.n} grid"
        )
    c = np.zeros((grid.n, grid.n), dtype=complex)
    c[k1 % grid.n, k2 % grid.n] += 0.5 * amplitude * np.exp(1j * phase)
    c[-k1 % grid.n, -k2 % grid.n] += 0.5 * amplitude * np.exp(-1j * phase)
    return SpectralField(grid, c)


def random_field(grid: Grid, seed, kmax: float, norm: float | None = None,
                 s: float = 0.0, slope: float = 0.0) -> SpectralField:
    """Seeded random real field, mean-zero, supported on 0 < |k| <= kmax.

    Amplitudes are complex Gaussian weighted by |k|^-slope.  If ``norm`` is
    given the result is rescaled so that sobolev_norm(f, s) == norm.
    """
    if kmax < 1:
        raise ConfigurationError(f"kmax must be >= 1, got {kmax!r}")
    if kmax > grid.dealias_cutoff:
        raise ConfigurationError(
            f"kmax={kmax} exceeds the dealias cutoff {grid.dealias_cutoff} of an "
            f"n={grid.n} grid"
        )
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    k1, k2 = grid.k_int
    kk = np.sqrt(k1 * k1 + k2 * k2)
    support = (kk > 0) & (kk <= kmax)
    c = rng.standard_normal((grid.n, grid.n)) + 1j * rng.standard_normal((grid.n, grid.n))
    weight = np.where(support, np.where(kk > 0, kk, 1.0) ** (-slope), 0.0)
    c = hermitian_part(grid, weight * c)
    f = SpectralField(grid, c)
    if norm is not None:
        cur = sobolev_norm(f, s)
        f = f * (norm / cur) if cur > 0 else f
    return f
