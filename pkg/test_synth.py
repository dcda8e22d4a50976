import math

import numpy as np
import pytest

from hypwave.exceptions import ParameterError, SupportViolationError
from hypwave.schemas.norm_schema import make_params
from hypwave.schemas.synth_schema import RngSpec
from hypwave.services.field_core import SampledField, dft, lp_norm, make_grid
from hypwave.services.hyperwavelet import forward
from hypwave.services.seqspaces import btilde_norm
from hypwave.services.synth import (
    axis_bump,
    embedding_levels,
    host_interval,
    random_bandlimited,
    synth_cascade,
    synth_lemma1,
    synth_lemma2,
    synth_lemma3,
    tensor_embed,
)
from hypwave.utils.smooth import plateau


def test_deterministic_cascade_amplitudes():
    grid = make_grid(2, 5)
    field, truth = synth_cascade(grid, 0.8, (0.5, 1.5))
    assert field.real
    assert truth.exponent("level-slope").value() == -0.8
    c = forward(field)
    for jbar in [(0, 0), (2, 1), (1, 3), (5, 5)]:
        expected = 2.0 ** (-0.8 * max(jbar[0] / 0.5, jbar[1] / 1.5))
        np.testing.assert_allclose(c.block(jbar), expected, rtol=1e-10)


def test_rademacher_cascade_is_reproducible(rng):
    grid = make_grid(2, 4)
    first, _ = synth_cascade(grid, 0.5, rng=rng, mode="rademacher")
    second, _ = synth_cascade(grid, 0.5, rng=rng, mode="rademacher")
    other, _ = synth_cascade(grid, 0.5, rng=rng.child(0), mode="rademacher")
    assert np.array_equal(first.values, second.values)
    assert not np.array_equal(first.values, other.values)
    c = forward(first)
    np.testing.assert_allclose(np.abs(c.block((3, 2))), 2.0 ** (-0.5 * 3), rtol=1e-10)
    with pytest.raises(ParameterError):
        synth_cascade(grid, 0.5, mode="gaussian")


def test_lemma1_haar_single_level():
    grid = make_grid(1, 6)
    field, truth = synth_lemma1(grid, 0, RngSpec(seed=1), basis="haar")
    assert truth.parameters["terms"] == 1
    assert np.all(np.abs(field.values) == 1.0)
    c = forward(field)
    assert abs(c.block((1,))[0]) == pytest.approx(math.sqrt(2))
    assert btilde_norm(c, make_params(s=0, p=2, q=2, d=1)) == pytest.approx(math.sqrt(2))


def test_lemma1_window_spectrum():
    grid = make_grid(1, 8)
    field, truth = synth_lemma1(grid, 5, RngSpec(seed=2))
    assert truth.parameters["levels"] == [3, 4, 5]
    support = np.flatnonzero(dft(field).support_mask(1e-12))
    frequencies = sorted(int(m) for m in grid.frequencies()[support])
    expected = sorted(s * (2**j + o) for j in (3, 4, 5) for o in (-1, 0, 1) for s in (-1, 1))
    assert frequencies == expected
    assert truth.exponent("besov0").value(q=4.0) == 0.25


def test_lemma_bounds():
    grid = make_grid(1, 6)
    with pytest.raises(ParameterError):
        synth_lemma1(grid, 5, basis="haar")
    with pytest.raises(ParameterError):
        synth_lemma1(grid, 2)
    with pytest.raises(ParameterError):
        synth_lemma1(make_grid(2, 6), 3)
    with pytest.raises(ParameterError):
        synth_lemma2(grid, 5, 2.0)
    with pytest.raises(ParameterError):
        synth_lemma2(grid, 2, math.inf)
    with pytest.raises(ParameterError):
        synth_lemma3(grid, -1)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_lemma2_norm_and_coefficients(p):
    grid = make_grid(1, 8)
    N = 4
    field, truth = synth_lemma2(grid, N, p)
    assert truth.parameters["terms"] == N + 1
    assert lp_norm(field, p) == pytest.approx(((N + 1) / 2) ** (1 / p), rel=1e-12)
    c = forward(field)
    for j in range(N + 1):
        block = c.block((j + 2,))
        k = 2 ** (j + 1) - 2
        assert block[k] == pytest.approx(math.sqrt(2) * 2 ** (j / p), rel=1e-10)
        assert np.count_nonzero(np.abs(block) > 1e-9) == 1


def test_lemma3_spectrum():
    grid = make_grid(1, 8)
    field, truth = synth_lemma3(grid, 3)
    F = dft(field)
    np.testing.assert_allclose(F.coefficients.real, plateau(grid.frequencies() / 8.0), atol=1e-12)
    assert F.at(0) == pytest.approx(1.0)
    assert not F.support_mask(1e-12)[np.abs(grid.frequencies()) >= 16].any()
    assert truth.exponent("triebel0").bound == "lower"
    assert truth.exponent("lp-log2").value(p=4.0) == 0.75


def test_embedding_levels():
    assert embedding_levels(4, (0.5, 1.5)) == [2]
    assert embedding_levels(5, (0.5, 1.5)) == [3]
    assert embedding_levels(3, (1.0, 1.0, 1.0)) == [3, 3]


def test_host_interval():
    k, lo, hi = host_interval(3, 1.0, 1.0)
    assert k == 3
    assert lo == pytest.approx(2 ** (7 / 3)) and hi == 8.0
    k, lo, hi = host_interval(5, 0.5, 0.5)
    assert k == 3
    assert lo == pytest.approx(2 ** (2 + 1 / 6)) and hi == pytest.approx(2 ** 2.5)


def test_tensor_embed_of_a_constant_is_a_pure_bump():
    g = SampledField(make_grid(1, 6), np.ones(64), True)
    embedded = tensor_embed(g, 3, (1.0, 1.0))
    assert embedded.grid.shape == (64, 64)
    assert embedded.real
    np.testing.assert_allclose(embedded.values, embedded.values[:, :1] * np.ones((1, 64)), atol=1e-12)
    F = dft(embedded)
    assert np.max(np.abs(F.coefficients[:, 1:])) < 1e-12
    freqs = make_grid(1, 6).frequencies()
    column = F.coefficients[:, 0].real
    np.testing.assert_allclose(column, axis_bump(freqs, 2 ** (7 / 3), 8.0), atol=1e-12)
    assert set(np.abs(freqs[column > 1e-12]).tolist()) == {6, 7}


def test_tensor_embed(tone):
    g, _ = synth_lemma1(make_grid(1, 7), 4, RngSpec(seed=5), "modulated-window")
    embedded = tensor_embed(g, 5, (1.0, 1.0))
    assert embedded.real
    F = dft(embedded)
    G = dft(g)
    bump = axis_bump(make_grid(1, 7).frequencies(), 2 ** (4 + 1 / 3), 32.0)
    np.testing.assert_allclose(F.coefficients, np.multiply.outer(bump, G.coefficients), atol=1e-12)
    with pytest.raises(SupportViolationError):
        tensor_embed(tone(make_grid(1, 6), (5,)), 2, (1.0, 1.0))
    with pytest.raises(ParameterError):
        tensor_embed(embedded, 2, (1.0, 1.0))
    with pytest.raises(ParameterError):
        tensor_embed(tone(make_grid(1, 4), (1,)), 5, (1.0, 1.0))


def test_random_bandlimited():
    grid = make_grid(2, 6)
    f = random_bandlimited(grid, 5, rng=RngSpec(seed=3))
    assert f.real
    mask = dft(f).support_mask(1e-12)
    outside = np.logical_or.reduce([np.abs(m) > 5 for m in grid.frequency_mesh()])
    assert mask.any() and not mask[outside].any()
    g = random_bandlimited(grid, 5, "power:2", RngSpec(seed=3))
    assert lp_norm(g, 2.0) < lp_norm(f, 2.0)
    constant = random_bandlimited(grid, 5, "dc", RngSpec(seed=3))
    assert np.ptp(constant.values.real) < 1e-12
    with pytest.raises(ParameterError):
        random_bandlimited(grid, 17)
    with pytest.raises(ParameterError):
        random_bandlimited(grid, 4, "pink")
