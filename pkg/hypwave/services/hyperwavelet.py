"""Hyperbolic (full tensor-product) wavelet analysis and synthesis on the torus.

Every axis is decomposed completely and independently, so scale vectors mix
arbitrary per-axis levels. Along one axis the Mallat layout stores level 0 at
index 0 and level j >= 1 at [2^(j-1), 2^j).

Coefficients are dual-normalized: lambda = 2^(|j|_1 / 2) * c where c comes
from the orthonormal pywt pyramid applied to 2^(-dJ/2) * samples.
"""
import itertools
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, Literal, Sequence, Tuple

import numpy as np
import pywt

from hypwave.exceptions import (
    GridMismatchError,
    MalformedHeaderError,
    ParameterError,
    UnsupportedParameterError,
)
from hypwave.schemas.norm_schema import NormParams
from hypwave.schemas.wavelet_schema import AdmissibilityReport, Inequality, WaveletSpec
from hypwave.services.field_core import (
    DyadicGrid,
    SampledField,
    is_real_valued,
    make_grid,
    read_header,
    read_payload,
)

logger = logging.getLogger(__name__)

HWC_MAGIC = "HWC1"
COEFF_DTYPE = np.dtype("<c16")

ScaleIndex = Tuple[int, ...]
Characterization = Literal["general", "haar-F", "haar-B", "haar-Sobolev", "sobolev"]


def level_count(j: int) -> int:
    return 1 if j == 0 else 1 << (j - 1)


def level_slice(j: int) -> slice:
    return slice(0, 1) if j == 0 else slice(1 << (j - 1), 1 << j)


def scale_indices(d: int, J: int) -> Iterator[ScaleIndex]:
    return itertools.product(range(J + 1), repeat=d)


class CellMap:
    """Level j cell k is the strict support of the level j wavelet."""

    @staticmethod
    def side(j: int) -> float:
        return 2.0 ** -max(j - 1, 0)

    @staticmethod
    def interval(j: int, k: int) -> Tuple[float, float]:
        if j == 0:
            return 0.0, 1.0
        width = CellMap.side(j)
        return width * k, width * (k + 1)

    @staticmethod
    def measure(jbar: Sequence[int]) -> float:
        return math.prod(CellMap.side(j) for j in jbar)


@dataclass(frozen=True, eq=False)
class CoefficientField:
    grid: DyadicGrid
    spec: WaveletSpec
    blocks: Dict[ScaleIndex, np.ndarray]

    def __post_init__(self):
        blocks = {}
        for jbar in scale_indices(self.grid.d, self.grid.J):
            shape = tuple(level_count(j) for j in jbar)
            block = self.blocks.get(jbar)
            if block is None or np.size(block) != math.prod(shape):
                raise ParameterError(f"coefficient block {jbar} missing or of wrong size")
            block = np.array(block, dtype=np.complex128).reshape(shape)
            block.flags.writeable = False
            blocks[jbar] = block
        object.__setattr__(self, "blocks", blocks)

    def scales(self) -> Iterator[ScaleIndex]:
        return scale_indices(self.grid.d, self.grid.J)

    def block(self, jbar: Sequence[int]) -> np.ndarray:
        return self.blocks[tuple(jbar)]

    @property
    def count(self) -> int:
        return sum(b.size for b in self.blocks.values())

    @classmethod
    def zeros(cls, grid: DyadicGrid, spec: WaveletSpec) -> "CoefficientField":
        blocks = {
            jbar: np.zeros(tuple(level_count(j) for j in jbar), dtype=np.complex128)
            for jbar in scale_indices(grid.d, grid.J)
        }
        return cls(grid, spec, blocks)

    def with_blocks(self, updates: Dict[ScaleIndex, np.ndarray]) -> "CoefficientField":
        blocks = dict(self.blocks)
        blocks.update({tuple(k): v for k, v in updates.items()})
        return CoefficientField(self.grid, self.spec, blocks)

    def scaled(self, factor: complex) -> "CoefficientField":
        return CoefficientField(
            self.grid, self.spec, {jbar: b * factor for jbar, b in self.blocks.items()}
        )

    def transposed(self, order: Sequence[int]) -> "CoefficientField":
        """Coefficients of the field with axes permuted by ``order``."""
        blocks = {
            tuple(jbar[i] for i in order): np.transpose(b, order)
            for jbar, b in self.blocks.items()
        }
        return CoefficientField(self.grid, self.spec, blocks)


def pywt_wavelet(spec: WaveletSpec) -> pywt.Wavelet:
    """pywt filter bank built from the synthesis low-pass taps of ``spec``."""
    bank = pywt.orthogonal_filter_bank(np.asarray(spec.filter, dtype=np.float64))
    return pywt.Wavelet(spec.name, filter_bank=bank)


class WaveletTransform:
    """Periodized orthonormal pyramid (pywt, mode="periodization") along every axis."""

    def __init__(self, spec: WaveletSpec):
        self.spec = spec
        self.wavelet = pywt_wavelet(spec)

    def _check_grid(self, grid: DyadicGrid) -> None:
        if self.spec.kind == "cqf" and (1 << (grid.J - 1)) < self.spec.length:
            raise ParameterError(
                f"grid level J={grid.J} too small for a {self.spec.length}-tap filter "
                f"(need 2^(J-1) >= {self.spec.length})"
            )

    def _decompose_axis(self, data: np.ndarray, axis: int) -> np.ndarray:
        approx, details = data, []
        while approx.shape[axis] > 1:
            approx, detail = pywt.dwt(approx, self.wavelet, mode="periodization", axis=axis)
            details.append(detail)
        # Mallat order: coarsest approximation, then details from coarse to fine
        return np.concatenate([approx] + details[::-1], axis=axis)

    def _reconstruct_axis(self, data: np.ndarray, axis: int) -> np.ndarray:
        x = np.moveaxis(data, axis, -1)
        approx, length = x[..., :1], 1
        while length < x.shape[-1]:
            approx = pywt.idwt(approx, x[..., length : 2 * length], self.wavelet, mode="periodization", axis=-1)
            length *= 2
        return np.moveaxis(approx, -1, axis)

    def forward(self, f: SampledField) -> CoefficientField:
        grid = f.grid
        self._check_grid(grid)
        data = f.values * 2.0 ** (-grid.d * grid.J / 2.0)
        for axis in range(grid.d):
            data = self._decompose_axis(data, axis)
        blocks = {
            jbar: data[tuple(level_slice(j) for j in jbar)] * 2.0 ** (sum(jbar) / 2.0)
            for jbar in scale_indices(grid.d, grid.J)
        }
        return CoefficientField(grid, self.spec, blocks)

    def inverse(self, c: CoefficientField) -> SampledField:
        grid = c.grid
        self._check_grid(grid)
        data = np.zeros(grid.shape, dtype=np.complex128)
        for jbar, block in c.blocks.items():
            data[tuple(level_slice(j) for j in jbar)] = block * 2.0 ** (-sum(jbar) / 2.0)
        for axis in reversed(range(grid.d)):
            data = self._reconstruct_axis(data, axis)
        values = data * 2.0 ** (grid.d * grid.J / 2.0)
        return SampledField(grid, values, is_real_valued(values))


def forward(f: SampledField, spec: WaveletSpec = None) -> CoefficientField:
    return WaveletTransform(spec or WaveletSpec()).forward(f)


def inverse(c: CoefficientField) -> SampledField:
    return WaveletTransform(c.spec).inverse(c)


def haar_lattice_values(j: int, k: int, J: int) -> np.ndarray:
    """Level j Haar function at position k sampled on the 2^J lattice.

    Level 0 is the constant 1; level j >= 1 equals +-1/sqrt(2) on the left and
    right halves of its cell.
    """
    n = 1 << J
    if j == 0:
        return np.ones(n)
    width = n >> (j - 1)
    local = np.arange(n) - k * width
    inside = (local >= 0) & (local < width)
    return np.where(local < width // 2, 1.0, -1.0) * inside / math.sqrt(2.0)


def haar_function(grid: DyadicGrid, jbar: Sequence[int], kbar: Sequence[int]) -> SampledField:
    factors = [haar_lattice_values(j, k, grid.J) for j, k in zip(jbar, kbar)]
    values = factors[0]
    for factor in factors[1:]:
        values = np.multiply.outer(values, factor)
    return SampledField(grid, values, True)


def brute_pairing(f: SampledField, jbar: Sequence[int], kbar: Sequence[int], spec: WaveletSpec = None) -> complex:
    spec = spec or WaveletSpec()
    if spec.kind != "haar":
        raise UnsupportedParameterError("brute-force pairing needs closed-form lattice values (haar only)")
    h = haar_function(f.grid, jbar, kbar).values
    return complex(np.sum(f.values * h) * 2.0 ** (sum(jbar) - f.grid.d * f.grid.J))


def _inequality(name: str, lhs: float, rhs: float) -> Inequality:
    return Inequality(name=name, lhs=lhs, rhs=rhs, margin=rhs - lhs, holds=lhs < rhs)


def _inverse(x: float) -> float:
    return 0.0 if math.isinf(x) else 1.0 / x


def admissibility_check(
    spec: WaveletSpec,
    params: NormParams,
    characterization: Characterization = "general",
    scale: Literal["F", "B"] = "F",
) -> AdmissibilityReport:
    """List the inequalities a characterization needs; invalid is a verdict, not an error."""
    smooth = abs(params.s) / params.alpha.alpha_min
    p, q = params.p, params.q
    checks = []
    if characterization == "general":
        sigma = params.sigma_pq if scale == "F" else params.sigma_p
        checks.append(_inequality("K > sigma + |s|/alpha_min", sigma + smooth, spec.smoothness))
        checks.append(_inequality("L > sigma + |s|/alpha_min", sigma + smooth, spec.vanishing_moments))
        if scale == "F":
            checks.append(_inequality("p < inf", p, math.inf))
    elif characterization == "sobolev":
        checks.append(_inequality("1 < p", 1.0, p))
        checks.append(_inequality("p < inf", p, math.inf))
        checks.append(_inequality("K > |s|/alpha_min", smooth, spec.smoothness))
        checks.append(_inequality("L > |s|/alpha_min", smooth, spec.vanishing_moments))
    elif characterization in ("haar-F", "haar-B", "haar-Sobolev"):
        if spec.kind != "haar":
            raise UnsupportedParameterError(f"{characterization} applies to the Haar system only")
        checks.append(_inequality("1 < p", 1.0, p))
        checks.append(_inequality("p < inf", p, math.inf))
        bound = min(_inverse(p), 1.0 - _inverse(p))
        if characterization != "haar-Sobolev":
            checks.append(_inequality("1 < q", 1.0, q))
            checks.append(_inequality("q < inf", q, math.inf))
        if characterization == "haar-F":
            bound = min(bound, _inverse(q), 1.0 - _inverse(q))
        checks.append(_inequality("|s|/alpha_min < range bound", smooth, bound))
    else:
        raise ParameterError(f"unknown characterization {characterization!r}")
    report = AdmissibilityReport(
        characterization=characterization if characterization != "general" else f"general-{scale}",
        wavelet=spec.name,
        inequalities=checks,
        valid=all(c.holds for c in checks),
    )
    if not report.valid:
        logger.info("wavelet %s not admissible for %s", spec.name, report.characterization)
    return report


def write_coefficients(c: CoefficientField, path) -> None:
    header = {
        "magic": HWC_MAGIC,
        "d": c.grid.d,
        "J": c.grid.J,
        "wavelet": c.spec.model_dump(mode="json"),
        "order": "j-lex",
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, separators=(",", ":")) + "\n").encode("ascii"))
        for jbar in c.scales():
            fh.write(np.ascontiguousarray(c.block(jbar)).astype(COEFF_DTYPE).tobytes())


def read_coefficients(path) -> CoefficientField:
    with open(Path(path), "rb") as fh:
        header = read_header(fh, HWC_MAGIC)
        if header.get("order") != "j-lex":
            raise MalformedHeaderError(f"unsupported block order {header.get('order')!r}")
        try:
            spec = WaveletSpec.model_validate(header.get("wavelet") or {})
        except ValueError as exc:
            raise MalformedHeaderError(f"invalid wavelet record: {exc}") from exc
        grid = make_grid(header["d"], header["J"])
        flat = read_payload(fh, COEFF_DTYPE, grid.size)
    blocks, offset = {}, 0
    for jbar in scale_indices(grid.d, grid.J):
        shape = tuple(level_count(j) for j in jbar)
        size = math.prod(shape)
        blocks[jbar] = flat[offset : offset + size].reshape(shape)
        offset += size
    if offset != grid.size:
        raise GridMismatchError("coefficient blocks do not tile the grid")
    return CoefficientField(grid, spec, blocks)
