"""Test-function generators with their expected scaling laws.

Each generator returns the field together with a :class:`GroundTruth` whose
exponents are targets for the experiments, never inputs to the code.
"""
import functools
import logging
import math
from typing import Callable, List, Literal, Optional, Tuple, Union

import numpy as np

from hypwave.exceptions import ParameterError, SupportViolationError
from hypwave.schemas.norm_schema import as_anisotropy
from hypwave.schemas.synth_schema import ExpectedExponent, GroundTruth, RngSpec
from hypwave.schemas.wavelet_schema import WaveletSpec
from hypwave.services.field_core import (
    DyadicGrid,
    SampledField,
    SpectralField,
    dft,
    idft,
    make_grid,
)
from hypwave.services.hyperwavelet import CoefficientField, WaveletTransform, level_count, scale_indices
from hypwave.utils.smooth import plateau

logger = logging.getLogger(__name__)

CascadeMode = Literal["deterministic", "rademacher"]
Lemma1Basis = Literal["haar", "modulated-window"]

WINDOW_FIRST_LEVEL = 3


def _signs(rng: np.random.Generator, size) -> np.ndarray:
    return 2.0 * rng.integers(0, 2, size=size) - 1.0


def _require_1d(grid: DyadicGrid) -> None:
    if grid.d != 1:
        raise ParameterError(f"this family lives on 1-D grids, got d={grid.d}")


def _check_n(N: int, limit: int, grid: DyadicGrid) -> None:
    if N < 0:
        raise ParameterError(f"N must be non-negative, got {N}")
    if N > limit:
        raise ParameterError(f"N={N} too large for grid level J={grid.J} (need N <= {limit})")


def synth_cascade(
    grid: DyadicGrid,
    s: float,
    alpha=None,
    rng: Optional[RngSpec] = None,
    mode: CascadeMode = "deterministic",
    spec: Optional[WaveletSpec] = None,
) -> Tuple[SampledField, GroundTruth]:
    """Coefficients 2^(-s max_i j_i/alpha_i) (times random signs), then synthesis."""
    alpha = as_anisotropy(alpha, grid.d)
    spec = spec or WaveletSpec()
    if mode not in ("deterministic", "rademacher"):
        raise ParameterError(f"unknown cascade mode {mode!r}")
    generator = (rng or RngSpec()).generator()
    blocks = {}
    for jbar in scale_indices(grid.d, grid.J):
        shape = tuple(level_count(j) for j in jbar)
        amplitude = 2.0 ** (-s * max(j / a for j, a in zip(jbar, alpha.alphas)))
        if mode == "rademacher":
            blocks[jbar] = amplitude * _signs(generator, shape)
        else:
            blocks[jbar] = np.full(shape, amplitude)
    field = WaveletTransform(spec).inverse(CoefficientField(grid, spec, blocks))
    truth = GroundTruth(
        family="cascade",
        parameters={"s": s, "alpha": list(alpha.alphas), "mode": mode, "wavelet": spec.name},
        exponents=[
            ExpectedExponent(
                name="level-slope",
                constant=-s,
                provenance="DERIVED",
                statement="log2 level norm + s * max_i j_i/alpha_i is constant",
            )
        ],
    )
    return field, truth


def _square_wave(level: int, J: int) -> np.ndarray:
    """sqrt(2) * sum_k h_(level,k): +-1 on the halves of every level cell."""
    n = 1 << J
    width = n >> (level - 1)
    return np.where(np.arange(n) % width < width // 2, 1.0, -1.0)


def synth_lemma1(
    grid: DyadicGrid,
    N: int,
    rng: Optional[RngSpec] = None,
    basis: Lemma1Basis = "modulated-window",
) -> Tuple[SampledField, GroundTruth]:
    """Random-sign sum of one full level per scale.

    haar: sum_{j=0..N} eps_j * sqrt(2) sum_k h_(j+1,k), N + 1 summands.
    modulated-window: sum_{j=3..N} eps_j (1 + cos 2 pi x) cos(2 pi 2^j x),
    each summand concentrated in one band, N - 2 summands.
    """
    _require_1d(grid)
    _check_n(N, grid.J - 2, grid)
    generator = (rng or RngSpec()).generator()
    x = grid.coordinates()
    if basis == "haar":
        levels = list(range(N + 1))
        signs = _signs(generator, len(levels))
        values = sum(e * _square_wave(j + 1, grid.J) for e, j in zip(signs, levels))
    elif basis == "modulated-window":
        if N < WINDOW_FIRST_LEVEL:
            raise ParameterError(f"modulated-window family needs N >= {WINDOW_FIRST_LEVEL}, got {N}")
        levels = list(range(WINDOW_FIRST_LEVEL, N + 1))
        signs = _signs(generator, len(levels))
        window = 1.0 + np.cos(2 * np.pi * x)
        values = window * sum(e * np.cos(2 * np.pi * (1 << j) * x) for e, j in zip(signs, levels))
    else:
        raise ParameterError(f"unknown basis {basis!r}")
    truth = GroundTruth(
        family="lemma1",
        parameters={"N": N, "basis": basis, "terms": len(levels), "levels": levels},
        exponents=[
            ExpectedExponent(name="lp", constant=0.5, statement="E ||f||_p grows like N^(1/2)"),
            ExpectedExponent(name="besov0", per_inv_q=1.0, statement="zero-smoothness B/F norm grows like N^(1/q)"),
        ],
    )
    return SampledField(grid, values, True), truth


def synth_lemma2(grid: DyadicGrid, N: int, p: float) -> Tuple[SampledField, GroundTruth]:
    """sum_{j=0..N} 2^(j/p) * (unit Haar of level j+2 on [1 - 2^-j, 1 - 2^-(j+1)))."""
    _require_1d(grid)
    if N < 0 or N + 2 > grid.J:
        raise ParameterError(
            f"supports of {N + 1} wavelets cannot be packed disjointly at J={grid.J} (need N <= {grid.J - 2})"
        )
    if not 0 < p < math.inf:
        raise ParameterError(f"p must be positive and finite, got {p}")
    n = grid.n
    values = np.zeros(n)
    index = np.arange(n)
    for j in range(N + 1):
        level = j + 2
        width = n >> (level - 1)
        start = ((1 << (j + 1)) - 2) * width
        local = index - start
        inside = (local >= 0) & (local < width)
        values += (2.0 ** (j / p)) * np.where(local < width // 2, 1.0, -1.0) * inside
    truth = GroundTruth(
        family="lemma2",
        parameters={"N": N, "p": p, "terms": N + 1},
        exponents=[
            ExpectedExponent(name="lp", per_inv_p=1.0, statement="||f||_p grows like N^(1/p)"),
            ExpectedExponent(name="besov0", per_inv_q=1.0, statement="zero-smoothness Besov norm grows like N^(1/q)"),
        ],
    )
    return SampledField(grid, values, True), truth


def synth_lemma3(grid: DyadicGrid, N: int) -> Tuple[SampledField, GroundTruth]:
    """Inverse transform of the plateau profile dilated by 2^N."""
    _require_1d(grid)
    _check_n(N, grid.J - 2, grid)
    spectrum = plateau(grid.frequencies() / 2.0 ** N)
    field = idft(SpectralField(grid, spectrum), real=True)
    truth = GroundTruth(
        family="lemma3",
        parameters={"N": N},
        exponents=[
            ExpectedExponent(name="lp-log2", constant=1.0, per_inv_p=-1.0,
                             statement="log2 ||f_N||_p grows like N (1 - 1/p)"),
            ExpectedExponent(name="triebel0", per_inv_p=1.0, bound="lower",
                             statement="zero-smoothness F norm is at least of order N^(1/p), p >= 1"),
        ],
    )
    return field, truth


def host_interval(ell: int, a: float, alpha_min: float) -> Tuple[int, float, float]:
    """Dyadic level k and the interval where the level-ell axis bump may live.

    The interval is 2^((ell-1) a) [2^(alpha_min/3), 2^a] intersected with
    2^(k-1) [2^(alpha_min/3), 2], where k = floor(ell a) unless that leaves
    less than a factor 2^(alpha_min^2/8) of overlap, then floor(ell a) + 1.
    """
    gamma = alpha_min ** 2 / 8.0
    left = 2.0 ** ((ell - 1) * a + alpha_min / 3.0)
    right = 2.0 ** (ell * a)
    k = math.floor(ell * a + 1e-12)
    if not 2.0 ** gamma * left <= 2.0 ** k <= right * (1.0 + 1e-12):
        k += 1
    return k, max(left, 2.0 ** (k - 1 + alpha_min / 3.0)), min(right, 2.0 ** k)


def embedding_levels(ell: int, alpha) -> List[int]:
    """Dyadic level hosting the axis-i bump for i < d."""
    alpha = as_anisotropy(alpha)
    return [host_interval(ell, a, alpha.alpha_min)[0] for a in alpha.alphas[:-1]]


def axis_bump(frequencies: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Even smooth bump centred in [lo, hi] with support half as wide as the interval."""
    centre = 0.5 * (lo + hi)
    radius = (hi - lo) / 8.0
    return plateau((np.abs(frequencies) - centre) / radius)


def tensor_embed(g: SampledField, ell: int, alpha, grid_d: int = 2) -> SampledField:
    """Tensor a 1-D field with one smooth frequency bump per leading axis.

    Each bump lies between 2^((ell-1) a_i) and 2^(ell a_i) and inside one
    dyadic octave, so along that axis it meets at most two neighbouring
    hyperbolic bands. The result is real whenever g is.
    """
    if g.grid.d != 1:
        raise ParameterError("tensor_embed expects a 1-D field")
    alpha = as_anisotropy(alpha, grid_d)
    grid = make_grid(grid_d, g.grid.J)
    host = 2.0 ** (ell * alpha.alphas[-1])
    G = dft(g)
    if np.any(G.support_mask() & (np.abs(g.grid.frequencies()) > host + 1e-9)):
        raise SupportViolationError(f"spectrum of g exceeds |m| <= 2^(ell alpha_d) = {host:g}")
    limit = 1 << (grid.J - 2)
    freqs = g.grid.frequencies()
    bumps = []
    for a in alpha.alphas[:-1]:
        k, lo, hi = host_interval(ell, a, alpha.alpha_min)
        if 0.5 * (lo + hi) + (hi - lo) / 4.0 > limit:
            raise ParameterError(
                f"level {ell} puts a bump up to {0.5 * (lo + hi) + (hi - lo) / 4.0:.1f}, "
                f"outside the usable box |m| <= {limit} at J={grid.J}"
            )
        bump = axis_bump(freqs, lo, hi)
        if not np.any(bump > 0.0):
            raise ParameterError(
                f"empty usable intersection [{lo:.3f}, {hi:.3f}] at level {ell}: no lattice frequency carries the bump"
            )
        logger.debug("axis bump for alpha=%g at level %d: [%.3f, %.3f] (dyadic level %d)", a, ell, lo, hi, k)
        bumps.append(bump)
    spectrum = functools.reduce(np.multiply.outer, bumps + [G.coefficients])
    return idft(SpectralField(grid, spectrum), real=g.real or None)


SpectrumProfile = Union[str, Callable[[np.ndarray], np.ndarray]]


def _profile(name: SpectrumProfile) -> Callable[[np.ndarray], np.ndarray]:
    if callable(name):
        return name
    if name == "flat":
        return lambda radius: np.ones_like(radius)
    if name == "dc":
        return lambda radius: (radius == 0).astype(np.float64)
    if name.startswith("power:"):
        exponent = float(name.split(":", 1)[1])
        return lambda radius: (1.0 + radius) ** (-exponent)
    raise ParameterError(f"unknown spectrum profile {name!r}")


def random_bandlimited(
    grid: DyadicGrid,
    band_cap: int,
    spectrum_profile: SpectrumProfile = "flat",
    rng: Optional[RngSpec] = None,
) -> SampledField:
    """Real field with Gaussian spectrum on |m_i| <= band_cap shaped by the profile."""
    if not 0 <= band_cap <= 1 << (grid.J - 2):
        raise ParameterError(f"band cap {band_cap} outside 0..{1 << (grid.J - 2)} for J={grid.J}")
    generator = (rng or RngSpec()).generator()
    mesh = grid.frequency_mesh()
    radius = np.sqrt(sum(m.astype(np.float64) ** 2 for m in mesh))
    inside = np.logical_and.reduce([np.abs(m) <= band_cap for m in mesh])
    noise = (generator.standard_normal(grid.shape) + 1j * generator.standard_normal(grid.shape)) / math.sqrt(2.0)
    spectrum = noise * inside * _profile(spectrum_profile)(radius)
    # F(-m) sits at flip-then-roll-by-one in FFT storage order
    mirrored = np.roll(np.flip(spectrum), 1, axis=tuple(range(grid.d)))
    spectrum = 0.5 * (spectrum + np.conj(mirrored))
    return idft(SpectralField(grid, spectrum), real=True)
