import numpy as np
import pytest

from hypwave.exceptions import DegenerateInputError, InsufficientDataError, ParameterError
from hypwave.schemas.synth_schema import RngSpec
from hypwave.schemas.wavelet_schema import WaveletSpec
from hypwave.services.estimate import detect_anisotropy, fit_loglog, simplex_grid
from hypwave.services.field_core import make_grid
from hypwave.services.hyperwavelet import CoefficientField, forward
from hypwave.services.synth import synth_cascade

CASES = [(1.0, (1.0, 1.0)), (0.8, (0.6, 1.4)), (0.5, (1.4, 0.6))]


def test_fit_loglog_recovers_line():
    fit = fit_loglog([1, 2, 3, 4], [1.5, 3.5, 5.5, 7.5])
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(-0.5)
    assert fit.r2 == pytest.approx(1.0)
    assert fit_loglog([0, 1, 2], [3, 3, 3]).r2 == 1.0


def test_fit_loglog_errors():
    with pytest.raises(InsufficientDataError):
        fit_loglog([1, 2], [1, 2])
    with pytest.raises(DegenerateInputError):
        fit_loglog([2, 2, 2], [1, 2, 3])
    with pytest.raises(ParameterError):
        fit_loglog([1, 2, 3], [1, 2])


def test_simplex_grid():
    assert simplex_grid(2, 0.5) == [(0.5, 1.5), (1.0, 1.0), (1.5, 0.5)]
    cube = simplex_grid(3, 0.5)
    assert len(cube) == 10
    assert all(abs(sum(a) - 3) < 1e-9 and min(a) >= 0.5 for a in cube)
    assert simplex_grid(1, 0.25) == [(1.0,)]
    with pytest.raises(ParameterError):
        simplex_grid(2, 0.3)
    with pytest.raises(ParameterError):
        simplex_grid(2, 0.0)


@pytest.mark.parametrize("s, alpha", CASES)
def test_exact_detection_on_cascades(s, alpha):
    field, _ = synth_cascade(make_grid(2, 7), s, alpha)
    result = detect_anisotropy(forward(field))
    assert result.alpha_hat.alphas == pytest.approx(alpha, abs=1e-9)
    assert result.s_hat == pytest.approx(s, abs=1e-9)
    assert result.rss <= 1e-12 * result.levels_used
    assert result.levels_used == 8 * 8 - 2 * 2


def test_detection_with_random_signs_and_smooth_wavelet():
    spec = WaveletSpec.builtin("db2")
    field, _ = synth_cascade(make_grid(2, 6), 0.8, (0.6, 1.4), RngSpec(seed=5), "rademacher", spec)
    result = detect_anisotropy(forward(field, spec))
    assert result.alpha_hat.alphas == pytest.approx((0.6, 1.4), abs=1e-9)
    assert result.s_hat == pytest.approx(0.8, abs=1e-9)


def test_detection_is_scale_invariant_and_permutation_equivariant():
    field, _ = synth_cascade(make_grid(2, 7), 0.8, (0.6, 1.4), RngSpec(seed=6), "rademacher")
    c = forward(field)
    base = detect_anisotropy(c)
    scaled = detect_anisotropy(c.scaled(-7.5))
    assert scaled.alpha_hat == base.alpha_hat
    assert scaled.s_hat == pytest.approx(base.s_hat, abs=1e-9)
    assert scaled.intercept == pytest.approx(base.intercept + np.log2(7.5), abs=1e-9)
    swapped = detect_anisotropy(c.transposed((1, 0)))
    assert swapped.alpha_hat.alphas == pytest.approx(base.alpha_hat.alphas[::-1], abs=1e-9)
    assert swapped.s_hat == pytest.approx(base.s_hat, abs=1e-9)


def test_detection_window():
    field, _ = synth_cascade(make_grid(2, 7), 1.0, (1.0, 1.0))
    c = forward(field)
    result = detect_anisotropy(c, j_min=3, j_max=6)
    assert result.levels_used == 7 * 7 - 3 * 3
    assert result.s_hat == pytest.approx(1.0, abs=1e-9)


def test_detection_errors():
    grid = make_grid(2, 3)
    with pytest.raises(DegenerateInputError):
        detect_anisotropy(CoefficientField.zeros(grid, WaveletSpec()))
    field, _ = synth_cascade(make_grid(2, 2), 1.0)
    with pytest.raises(InsufficientDataError):
        detect_anisotropy(forward(field))
