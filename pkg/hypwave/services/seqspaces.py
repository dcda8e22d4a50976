import logging
import math
from typing import Dict, Optional

import numpy as np

from hypwave.exceptions import ParameterError, UnsupportedParameterError
from hypwave.schemas.norm_schema import NormParams
from hypwave.services.field_core import lp_norm_array
from hypwave.services.hyperwavelet import CellMap, CoefficientField, ScaleIndex
from hypwave.services.lp_bands import lq_sum, weight

logger = logging.getLogger(__name__)


def level_norm(block: np.ndarray, jbar: ScaleIndex, p: float) -> float:
    """L_p norm of sum_k lambda * chi_(j,k): (mu(j) sum_k |lambda|^p)^(1/p)."""
    if not (p > 0):
        raise ParameterError(f"exponent p must be positive, got {p}")
    modulus = np.abs(block)
    if math.isinf(p):
        return float(modulus.max())
    return float((CellMap.measure(jbar) * np.sum(modulus ** p)) ** (1.0 / p))


def _check_dimension(c: CoefficientField, params: NormParams) -> None:
    if params.alpha.d != c.grid.d:
        raise ParameterError(f"anisotropy has {params.alpha.d} entries, coefficients are {c.grid.d}-dimensional")


def btilde_norm(c: CoefficientField, params: NormParams) -> float:
    _check_dimension(c, params)
    terms = [weight(jbar, params) * level_norm(c.block(jbar), jbar, params.p) for jbar in c.scales()]
    return lq_sum(terms, params.q)


def expand_to_grid(block: np.ndarray, jbar: ScaleIndex, J: int) -> np.ndarray:
    """Piecewise-constant sum_k lambda * chi_(j,k) on the finest lattice."""
    expanded = block
    for axis, j in enumerate(jbar):
        expanded = np.repeat(expanded, (1 << J) // block.shape[axis], axis=axis)
    return expanded


def ftilde_norm(c: CoefficientField, params: NormParams) -> float:
    _check_dimension(c, params)
    if math.isinf(params.p):
        raise UnsupportedParameterError("the f-tilde sequence norm requires p < infinity")
    acc = np.zeros(c.grid.shape)
    for jbar in c.scales():
        block = c.block(jbar)
        if not np.any(block):
            continue
        scaled = weight(jbar, params) * np.abs(expand_to_grid(block, jbar, c.grid.J))
        if math.isinf(params.q):
            np.maximum(acc, scaled, out=acc)
        else:
            acc += scaled ** params.q
    if not math.isinf(params.q):
        acc **= 1.0 / params.q
    return lp_norm_array(acc, params.p)


def level_statistics(c: CoefficientField, p: float = 2.0) -> Dict[ScaleIndex, Optional[float]]:
    """log2 of every level norm; None marks a level without mass."""
    stats = {}
    for jbar in c.scales():
        value = level_norm(c.block(jbar), jbar, p)
        stats[jbar] = math.log2(value) if value > 0 else None
    return stats
