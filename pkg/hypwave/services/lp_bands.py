"""Resolutions of unity, Littlewood-Paley projections and Fourier-side norms.

Two band ladders live here. The hyperbolic one tensorizes a univariate dyadic
resolution so every axis has its own band index; the classical anisotropic one
uses a single level j with rectangles |m_i| <= 2^(j alpha_i). Norms are built
from a :class:`BandDecomposition`, which keeps the moduli of all non-empty
bands so several parameter cells can share one set of inverse FFTs.
"""
import functools
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np
import scipy.fft

from hypwave.config import Config
from hypwave.exceptions import BandRangeError, ParameterError, UnsupportedParameterError
from hypwave.schemas.norm_schema import Anisotropy, NormParams, as_anisotropy
from hypwave.services.field_core import (
    DyadicGrid,
    SampledField,
    SpectralField,
    apply_multiplier,
    dft,
    lp_norm,
    lp_norm_array,
)
from hypwave.utils.smooth import plateau

logger = logging.getLogger(__name__)

Flavor = Literal["classical", "hyperbolic"]
FLOOR_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class UnivariateResolution:
    """theta_j(m) for j = 0..J_max tabulated on |m| <= 2^(J_max + 1)."""

    J_max: int
    table: np.ndarray
    profile: str = "exp-smooth-step"

    @property
    def radius(self) -> int:
        return (self.table.shape[1] - 1) // 2

    def theta(self, j: int, m) -> np.ndarray:
        if not 0 <= j <= self.J_max:
            raise BandRangeError(f"band {j} outside 0..{self.J_max}")
        m = np.asarray(m, dtype=np.int64)
        out = np.zeros(m.shape)
        inside = np.abs(m) <= self.radius
        out[inside] = self.table[j, m[inside] + self.radius]
        return out


def build_univariate_resolution(J_max: int) -> UnivariateResolution:
    if J_max < 1:
        raise ParameterError(f"J_max must be at least 1, got {J_max}")
    radius = 1 << (J_max + 1)
    m = np.arange(-radius, radius + 1, dtype=np.float64)
    dilates = [plateau(m / 2.0 ** j) for j in range(J_max + 1)]
    table = np.empty((J_max + 1, m.size))
    table[0] = dilates[0]
    for j in range(1, J_max + 1):
        table[j] = dilates[j] - dilates[j - 1]
    table.flags.writeable = False
    return UnivariateResolution(J_max, table)


@dataclass(frozen=True, eq=False)
class HyperbolicResolution:
    base: UnivariateResolution
    grid: DyadicGrid
    _rows: Dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def J_max(self) -> int:
        return self.base.J_max

    def row(self, j: int) -> np.ndarray:
        """theta_j on the grid's FFT-ordered frequency axis."""
        if j not in self._rows:
            values = self.base.theta(j, self.grid.frequencies())
            values.flags.writeable = False
            self._rows[j] = values
        return self._rows[j]

    def bands(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.J_max + 1), repeat=self.grid.d)

    def multiplier(self, jbar: Sequence[int]) -> np.ndarray:
        check_band(jbar, self.J_max, self.grid.d)
        return functools.reduce(np.multiply.outer, [self.row(j) for j in jbar])


def hyperbolic_cap(grid: DyadicGrid) -> int:
    return grid.J - 2


def build_hyperbolic_resolution(grid: DyadicGrid) -> HyperbolicResolution:
    if grid.J < 3:
        raise ParameterError(f"grid level J={grid.J} too small for band projections (need J >= 3)")
    return HyperbolicResolution(build_univariate_resolution(hyperbolic_cap(grid)), grid)


def anisotropic_cap(grid: DyadicGrid, alpha: Anisotropy) -> int:
    return max(0, math.floor((grid.J - 1) / alpha.alpha_max + FLOOR_EPS) - 1)


@dataclass(frozen=True, eq=False)
class AnisotropicResolution:
    """phi_j = Phi_j - Phi_(j-1) with Phi_j(m) = prod_i theta0_i(m_i / 2^(j alpha_i))."""

    alpha: Anisotropy
    grid: DyadicGrid
    J_max: int

    def _axis_generator(self, j: int, axis: int) -> np.ndarray:
        a = self.alpha.alphas[axis]
        return plateau(self.grid.frequencies() / 2.0 ** (j * a), edge=2.0 ** a)

    def _outer(self, j: int) -> np.ndarray:
        return functools.reduce(
            np.multiply.outer, [self._axis_generator(j, i) for i in range(self.grid.d)]
        )

    def levels(self) -> range:
        return range(self.J_max + 1)

    def multiplier(self, j: int) -> np.ndarray:
        if not 0 <= j <= self.J_max:
            raise BandRangeError(f"level {j} outside 0..{self.J_max}")
        if j == 0:
            return self._outer(0)
        return self._outer(j) - self._outer(j - 1)


def build_anisotropic_resolution(grid: DyadicGrid, alpha) -> AnisotropicResolution:
    alpha = as_anisotropy(alpha, grid.d)
    return AnisotropicResolution(alpha, grid, anisotropic_cap(grid, alpha))


def check_band(jbar: Sequence[int], cap: int, d: int) -> None:
    if len(jbar) != d:
        raise BandRangeError(f"scale vector {tuple(jbar)} has wrong dimension for d={d}")
    if min(jbar) < 0 or max(jbar) > cap:
        raise BandRangeError(f"scale vector {tuple(jbar)} outside band cap 0..{cap}")


def hyperbolic_project(f: SampledField, jbar: Sequence[int], res: HyperbolicResolution) -> SampledField:
    if f.grid != res.grid:
        raise ParameterError("resolution was built for a different grid")
    return apply_multiplier(f, res.multiplier(tuple(jbar)))


def anisotropic_project(f: SampledField, j: int, res: AnisotropicResolution) -> SampledField:
    if f.grid != res.grid:
        raise ParameterError("resolution was built for a different grid")
    return apply_multiplier(f, res.multiplier(j))


def usable_box(grid: DyadicGrid, flavor: Flavor, alpha: Optional[Anisotropy] = None) -> np.ndarray:
    """Boolean mask of frequencies every band ladder covers without wraparound."""
    freqs = np.abs(grid.frequencies())
    if flavor == "hyperbolic":
        limits = [1 << hyperbolic_cap(grid)] * grid.d
    else:
        alpha = as_anisotropy(alpha, grid.d)
        cap = anisotropic_cap(grid, alpha)
        limits = [2.0 ** (a * cap) + FLOOR_EPS for a in alpha.alphas]
    masks = [freqs <= limit for limit in limits]
    return functools.reduce(np.logical_and.outer, masks) if grid.d > 1 else masks[0]


def band_limit(F: SpectralField, flavor: Flavor, alpha=None) -> Tuple[SpectralField, bool]:
    """Zero the spectrum outside the usable box; report whether anything was cut."""
    box = usable_box(F.grid, flavor, alpha)
    truncated = bool(np.any(F.support_mask() & ~box))
    if not truncated:
        return F, False
    return SpectralField(F.grid, np.where(box, F.coefficients, 0.0)), True


def truncation_flag(f: SampledField, flavor: Flavor = "hyperbolic", alpha=None) -> bool:
    return band_limit(dft(f), flavor, alpha)[1]


def truncated_energy(F: SpectralField, flavor: Flavor, alpha=None) -> float:
    """Share of sum |F(m)|^2 lying outside the usable box."""
    power = np.abs(F.coefficients) ** 2
    total = float(power.sum())
    if total == 0.0:
        return 0.0
    return float(power[~usable_box(F.grid, flavor, alpha)].sum()) / total


@dataclass(frozen=True, eq=False)
class BandDecomposition:
    """Moduli |Delta f| of every non-empty band in lexicographic band order."""

    grid: DyadicGrid
    flavor: Flavor
    alpha: Optional[Anisotropy]
    indices: List[Tuple[int, ...]]
    moduli: List[np.ndarray]
    truncated: bool
    truncated_energy: float = 0.0


def _marginal_support(mask: np.ndarray, axis: int) -> np.ndarray:
    others = tuple(i for i in range(mask.ndim) if i != axis)
    return np.any(mask, axis=others) if others else mask


def decompose(f: SampledField, flavor: Flavor = "hyperbolic", alpha=None) -> BandDecomposition:
    if flavor not in ("classical", "hyperbolic"):
        raise ParameterError(f"unknown flavor {flavor!r}")
    grid = f.grid
    if flavor == "hyperbolic":
        res = build_hyperbolic_resolution(grid)
    else:
        res = build_anisotropic_resolution(grid, alpha)
    spectrum = dft(f)
    F, truncated = band_limit(spectrum, flavor, alpha)
    cut = truncated_energy(spectrum, flavor, alpha) if truncated else 0.0
    if truncated:
        logger.warning("spectrum of field exceeds the usable %s box; truncated (%.3g of the energy)", flavor, cut)
    # measured against the untruncated peak so round-off left in the box is not support
    support = spectrum.support_mask() & (F.coefficients != 0)
    workers = Config.fft_workers()
    indices, moduli = [], []

    def keep(index, multiplier):
        band = scipy.fft.ifftn(multiplier * F.coefficients, workers=workers) * grid.size
        indices.append(index)
        moduli.append(np.abs(band))

    if flavor == "hyperbolic":
        marginals = [_marginal_support(support, i) for i in range(grid.d)]
        for jbar in res.bands():
            if all(np.any((res.row(j) != 0) & marginals[i]) for i, j in enumerate(jbar)):
                keep(jbar, res.multiplier(jbar))
        decomposition_alpha = None
    else:
        for j in res.levels():
            multiplier = res.multiplier(j)
            if np.any((multiplier != 0) & support):
                keep((j,), multiplier)
        decomposition_alpha = res.alpha
    logger.debug("%s decomposition kept %d bands", flavor, len(indices))
    return BandDecomposition(grid, flavor, decomposition_alpha, indices, moduli, truncated, cut)


def weight(jbar: Sequence[int], params: NormParams) -> float:
    if min(jbar) < 0:
        raise ParameterError(f"scale vector {tuple(jbar)} must be non-negative")
    if params.weight_mode == "mixed":
        return 2.0 ** (params.r * sum(jbar))
    return 2.0 ** (params.s * max(j / a for j, a in zip(jbar, params.alpha.alphas)))


def _band_weight(index: Tuple[int, ...], decomposition: BandDecomposition, params: NormParams) -> float:
    if decomposition.flavor == "classical":
        if params.weight_mode == "mixed":
            raise UnsupportedParameterError("mixed weights are defined on hyperbolic bands only")
        return 2.0 ** (params.s * index[0])
    return weight(index, params)


def lq_sum(terms: Sequence[float], q: float) -> float:
    if not len(terms):
        return 0.0
    terms = np.asarray(terms, dtype=np.float64)
    if math.isinf(q):
        return float(terms.max())
    return float(np.sum(terms ** q) ** (1.0 / q))


def besov_from_bands(decomposition: BandDecomposition, params: NormParams) -> float:
    terms = [
        _band_weight(index, decomposition, params) * lp_norm_array(modulus, params.p)
        for index, modulus in zip(decomposition.indices, decomposition.moduli)
    ]
    return lq_sum(terms, params.q)


def triebel_from_bands(decomposition: BandDecomposition, params: NormParams) -> float:
    if math.isinf(params.p):
        raise UnsupportedParameterError("Triebel-Lizorkin norms require p < infinity")
    acc = np.zeros(decomposition.grid.shape)
    for index, modulus in zip(decomposition.indices, decomposition.moduli):
        scaled = _band_weight(index, decomposition, params) * modulus
        if math.isinf(params.q):
            np.maximum(acc, scaled, out=acc)
        else:
            acc += scaled ** params.q
    if not math.isinf(params.q):
        acc **= 1.0 / params.q
    return lp_norm_array(acc, params.p)


def _decomposition_for(f: SampledField, params: NormParams, flavor: Flavor) -> BandDecomposition:
    if params.alpha.d != f.grid.d:
        raise ParameterError(f"anisotropy has {params.alpha.d} entries, field dimension is {f.grid.d}")
    if flavor == "classical" and params.weight_mode == "mixed":
        raise UnsupportedParameterError("mixed weights are defined on hyperbolic bands only")
    return decompose(f, flavor, params.alpha if flavor == "classical" else None)


def besov_norm(f: SampledField, params: NormParams, flavor: Flavor = "hyperbolic") -> float:
    return besov_from_bands(_decomposition_for(f, params, flavor), params)


def triebel_norm(f: SampledField, params: NormParams, flavor: Flavor = "hyperbolic") -> float:
    if math.isinf(params.p):
        raise UnsupportedParameterError("Triebel-Lizorkin norms require p < infinity")
    return triebel_from_bands(_decomposition_for(f, params, flavor), params)


def sobolev_multiplier(grid: DyadicGrid, s: float, alpha) -> np.ndarray:
    """(sum_i (1 + m_i^2)^(1/(2 alpha_i)))^s on the FFT-ordered lattice."""
    alpha = as_anisotropy(alpha, grid.d)
    freqs = grid.frequencies().astype(np.float64)
    axes = [(1.0 + freqs ** 2) ** (1.0 / (2.0 * a)) for a in alpha.alphas]
    total = functools.reduce(np.add.outer, axes) if grid.d > 1 else axes[0]
    return total ** s


def apply_sobolev_multiplier(f: SampledField, s: float, alpha) -> SampledField:
    return apply_multiplier(f, sobolev_multiplier(f.grid, s, alpha))


def sobolev_multiplier_norm(f: SampledField, s: float, alpha, p: float) -> float:
    if not 1.0 < p < math.inf:
        raise UnsupportedParameterError(f"Sobolev norms require 1 < p < infinity, got p={p}")
    if s == 0:
        return lp_norm(f, p)
    return lp_norm(apply_sobolev_multiplier(f, s, alpha), p)
