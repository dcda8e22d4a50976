"""Dyadic grids on the unit torus, sampled fields, lattice DFT and L_p norms."""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import scipy.fft

from hypwave.config import Config
from hypwave.exceptions import (
    GridMismatchError,
    MalformedHeaderError,
    ParameterError,
    TruncatedPayloadError,
    UnsupportedDimensionError,
)

logger = logging.getLogger(__name__)

# d -> largest supported J
MAX_LEVEL = {1: 14, 2: 11, 3: 7}
REAL_TOL = 1e-12

GRD_MAGIC = "GRD1"
PAYLOAD_DTYPES = {"c128": np.dtype("<c16"), "f64": np.dtype("<f8")}


@dataclass(frozen=True)
class DyadicGrid:
    d: int
    J: int

    def __post_init__(self):
        if self.d not in MAX_LEVEL:
            raise ParameterError(f"dimension d={self.d} outside 1 <= d <= 3")
        if not 1 <= self.J <= MAX_LEVEL[self.d]:
            raise ParameterError(
                f"level J={self.J} outside 1 <= J <= {MAX_LEVEL[self.d]} for d={self.d}"
            )

    @property
    def n(self) -> int:
        return 1 << self.J

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.d

    @property
    def size(self) -> int:
        return self.n ** self.d

    def coordinates(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    def frequencies(self) -> np.ndarray:
        """Integer frequency of each FFT storage index along one axis."""
        return np.rint(scipy.fft.fftfreq(self.n, 1.0 / self.n)).astype(np.int64)

    def mesh(self) -> list:
        return np.meshgrid(*([self.coordinates()] * self.d), indexing="ij")

    def frequency_mesh(self) -> list:
        return np.meshgrid(*([self.frequencies()] * self.d), indexing="ij")


def make_grid(d: int, J: int) -> DyadicGrid:
    return DyadicGrid(int(d), int(J))


def _readonly(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


def is_real_valued(values: np.ndarray) -> bool:
    if values.size == 0 or not np.iscomplexobj(values):
        return True
    scale = float(np.max(np.abs(values)))
    return float(np.max(np.abs(values.imag))) <= REAL_TOL * scale


@dataclass(frozen=True, eq=False)
class SampledField:
    grid: DyadicGrid
    values: np.ndarray
    real: bool = field(default=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128)
        if values.size != self.grid.size:
            raise ParameterError(
                f"{values.size} values do not match a grid of {self.grid.size} samples"
            )
        values = values.reshape(self.grid.shape)
        if self.real and not is_real_valued(values):
            raise ParameterError("field flagged real has non-negligible imaginary parts")
        object.__setattr__(self, "values", _readonly(values))

    @classmethod
    def from_function(cls, grid: DyadicGrid, fn: Callable, real: Optional[bool] = None):
        values = np.asarray(fn(*grid.mesh()), dtype=np.complex128)
        values = np.broadcast_to(values, grid.shape)
        if real is None:
            real = is_real_valued(values)
        return cls(grid, values, real)

    @classmethod
    def zeros(cls, grid: DyadicGrid) -> "SampledField":
        return cls(grid, np.zeros(grid.shape), True)

    def scaled(self, factor: complex) -> "SampledField":
        return SampledField(self.grid, self.values * factor, self.real and np.isreal(factor))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Coefficients F(m) in FFT storage order, f(x) = sum_m F(m) exp(2 pi i <m, x>)."""

    grid: DyadicGrid
    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(self.grid.shape)
        object.__setattr__(self, "coefficients", _readonly(coefficients))

    def at(self, m) -> complex:
        index = tuple(int(mi) % self.grid.n for mi in np.atleast_1d(m))
        return complex(self.coefficients[index])

    def support_mask(self, rtol: Optional[float] = None, peak: Optional[float] = None) -> np.ndarray:
        """|F(m)| > rtol * peak; peak defaults to max |F| of this spectrum."""
        rtol = spectral_rtol(self.grid) if rtol is None else rtol
        modulus = np.abs(self.coefficients)
        if peak is None:
            peak = float(modulus.max()) if modulus.size else 0.0
        if peak == 0.0:
            return np.zeros(modulus.shape, dtype=bool)
        return modulus > rtol * peak


def spectral_rtol(grid: DyadicGrid) -> float:
    """Relative modulus below which a coefficient is transform round-off.

    The FFT error grows like eps * sqrt(size) * log2(size); Config.SPECTRAL_RTOL
    is the floor.
    """
    roundoff = np.finfo(np.float64).eps * math.sqrt(grid.size) * math.log2(2 * grid.size)
    return max(Config.SPECTRAL_RTOL, roundoff)


def lp_norm_array(values: np.ndarray, p: float) -> float:
    """(mean |v|^p)^(1/p); max |v| for p = inf."""
    if not (p > 0):
        raise ParameterError(f"exponent p must be positive, got {p}")
    modulus = np.abs(values)
    if math.isinf(p):
        return float(modulus.max()) if modulus.size else 0.0
    if p == 2.0:
        return float(math.sqrt(np.mean(modulus * modulus)))
    return float(np.mean(modulus ** p) ** (1.0 / p))


def lp_norm(f: SampledField, p: float) -> float:
    return lp_norm_array(f.values, p)


def dft(f: SampledField) -> SpectralField:
    coefficients = scipy.fft.fftn(f.values, workers=Config.fft_workers()) / f.grid.size
    return SpectralField(f.grid, coefficients)


def idft(F: SpectralField, real: Optional[bool] = None) -> SampledField:
    values = scipy.fft.ifftn(F.coefficients, workers=Config.fft_workers()) * F.grid.size
    if real is None:
        real = is_real_valued(values)
    elif real:
        values = values.real
    return SampledField(F.grid, values, real)


def apply_multiplier(f: SampledField, multiplier: np.ndarray) -> SampledField:
    """idft(multiplier * dft(f)); an even real multiplier keeps real fields real."""
    F = dft(f)
    return idft(SpectralField(f.grid, F.coefficients * multiplier), real=f.real or None)


def dilate(f: SampledField, factor: int) -> SampledField:
    """f_a(x) = f(a x) on the torus; moves frequency m to a m."""
    factor = int(factor)
    if factor < 1:
        raise ParameterError(f"dilation factor must be a positive integer, got {factor}")
    index = (factor * np.arange(f.grid.n)) % f.grid.n
    return SampledField(f.grid, f.values[np.ix_(*([index] * f.grid.d))], f.real)


def write_field(f: SampledField, path) -> None:
    dtype = "f64" if f.real and not np.any(f.values.imag) else "c128"
    header = {"magic": GRD_MAGIC, "d": f.grid.d, "J": f.grid.J, "dtype": dtype, "layout": "row-major"}
    payload = f.values.real if dtype == "f64" else f.values
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, separators=(",", ":")) + "\n").encode("ascii"))
        fh.write(np.ascontiguousarray(payload).astype(PAYLOAD_DTYPES[dtype]).tobytes())
    logger.debug("wrote %s (d=%d, J=%d, %s)", path, f.grid.d, f.grid.J, dtype)


def read_header(fh, magic: str) -> dict:
    line = fh.readline()
    if not line.endswith(b"\n"):
        raise MalformedHeaderError("header line is not LF terminated")
    try:
        header = json.loads(line.decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedHeaderError(f"header is not a JSON record: {exc}") from exc
    if not isinstance(header, dict) or header.get("magic") != magic:
        raise MalformedHeaderError(f"expected magic {magic!r}")
    for key in ("d", "J"):
        if not isinstance(header.get(key), int):
            raise MalformedHeaderError(f"header field {key!r} missing or not an integer")
    if header["d"] not in MAX_LEVEL:
        raise UnsupportedDimensionError(f"dimension d={header['d']} is not supported")
    if not 1 <= header["J"] <= MAX_LEVEL[header["d"]]:
        raise GridMismatchError(f"level J={header['J']} not supported for d={header['d']}")
    return header


def read_payload(fh, dtype: np.dtype, count: int) -> np.ndarray:
    data = fh.read()
    expected = count * dtype.itemsize
    if len(data) < expected:
        raise TruncatedPayloadError(f"payload has {len(data)} bytes, header declares {expected}")
    if len(data) > expected:
        raise GridMismatchError(f"payload has {len(data) - expected} bytes beyond the declared grid")
    return np.frombuffer(data, dtype=dtype, count=count)


def read_field(path, expected_grid: Optional[DyadicGrid] = None) -> SampledField:
    with open(Path(path), "rb") as fh:
        header = read_header(fh, GRD_MAGIC)
        if header.get("dtype") not in PAYLOAD_DTYPES:
            raise MalformedHeaderError(f"unknown dtype {header.get('dtype')!r}")
        if header.get("layout") != "row-major":
            raise MalformedHeaderError(f"unsupported layout {header.get('layout')!r}")
        grid = make_grid(header["d"], header["J"])
        if expected_grid is not None and grid != expected_grid:
            raise GridMismatchError(f"file grid {grid} differs from expected {expected_grid}")
        values = read_payload(fh, PAYLOAD_DTYPES[header["dtype"]], grid.size)
    return SampledField(grid, values, header["dtype"] == "f64")
