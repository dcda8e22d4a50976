import itertools
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from hypwave.exceptions import DegenerateInputError, InsufficientDataError, ParameterError
from hypwave.schemas.norm_schema import Anisotropy
from hypwave.schemas.report_schema import DetectionResult
from hypwave.services.hyperwavelet import CoefficientField
from hypwave.services.seqspaces import level_statistics

logger = logging.getLogger(__name__)

MIN_LEVELS = 6


class LogLogFit(NamedTuple):
    slope: float
    intercept: float
    r2: float


def fit_loglog(xs: Sequence[float], ys: Sequence[float]) -> LogLogFit:
    """Ordinary least squares y = slope * x + intercept on the coordinates given."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError("abscissae and ordinates must be 1-D and of equal length")
    if x.size < 3:
        raise InsufficientDataError(f"need at least 3 points for a fit, got {x.size}")
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise DegenerateInputError("all abscissae are equal")
    slope = float(np.dot(dx, y - y.mean()) / sxx)
    intercept = float(y.mean() - slope * x.mean())
    residual = y - (slope * x + intercept)
    ss_res = float(np.dot(residual, residual))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return LogLogFit(slope, intercept, r2)


def simplex_grid(d: int, step: float) -> List[Tuple[float, ...]]:
    """Anisotropies on {sum alpha_i = d, alpha_i >= step} in lexicographic order."""
    if not 0 < step <= 1:
        raise ParameterError(f"alpha step must lie in (0, 1], got {step}")
    total = round(d / step)
    if abs(total * step - d) > 1e-9:
        raise ParameterError(f"alpha step {step} does not divide d={d}")
    candidates = []
    for head in itertools.product(range(1, total), repeat=d - 1):
        last = total - sum(head)
        if last >= 1:
            candidates.append(tuple(round(k * step, 12) for k in head + (last,)))
    return candidates or [(1.0,) * d]


def detect_anisotropy(
    c: CoefficientField,
    p: float = 2.0,
    alpha_step: float = 0.05,
    j_min: int = 2,
    j_max: Optional[int] = None,
) -> DetectionResult:
    """Fit log2 level norms against max_i j_i/alpha_i over the alpha simplex.

    The candidate with the smallest residual sum of squares wins (first in
    lexicographic order on ties); the negated slope estimates s.
    """
    stats = level_statistics(c, p)
    if all(value is None for value in stats.values()):
        raise DegenerateInputError("all coefficient levels are empty")
    populated = [
        (jbar, value)
        for jbar, value in stats.items()
        if value is not None and max(jbar) >= j_min and (j_max is None or max(jbar) <= j_max)
    ]
    if len(populated) < MIN_LEVELS:
        raise InsufficientDataError(
            f"{len(populated)} populated levels with {j_min} <= max j_i; need {MIN_LEVELS}"
        )
    scales = np.array([jbar for jbar, _ in populated], dtype=np.float64)
    T = np.array([value for _, value in populated])
    candidates = simplex_grid(c.grid.d, alpha_step)
    alphas = np.array(candidates)

    # x[level, candidate] = max_i j_i / alpha_i
    x = np.max(scales[:, None, :] / alphas[None, :, :], axis=2)
    dx = x - x.mean(axis=0)
    sxx = np.sum(dx * dx, axis=0)
    dT = T - T.mean()
    with np.errstate(invalid="ignore", divide="ignore"):
        slope = np.where(sxx > 0, (dx * dT[:, None]).sum(axis=0) / sxx, 0.0)
    residual = dT[:, None] - slope[None, :] * dx
    rss = np.sum(residual * residual, axis=0)
    best = int(np.argmin(rss))
    intercept = float(T.mean() - slope[best] * x[:, best].mean())
    result = DetectionResult(
        s_hat=float(-slope[best]),
        alpha_hat=Anisotropy(alphas=candidates[best]),
        intercept=intercept,
        rss=float(rss[best]),
        levels_used=len(populated),
    )
    logger.info("detected s=%.4f alpha=%s over %d levels", result.s_hat, candidates[best], len(populated))
    return result
