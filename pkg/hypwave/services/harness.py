"""Named experiments turning norm equivalences and scaling laws into verdicts.

Each ``exp_*`` function returns an :class:`ExperimentReport`. Every verdict
carries a criterion id of the form ``AC<n>-<name>`` and every fitted target a
provenance tag. Thresholds come from :class:`hypwave.config.Config` at call
time.
"""
import inspect
import logging
import math
import time
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from hypwave.config import Config
from hypwave.exceptions import ParameterError
from hypwave.schemas.norm_schema import NormParams, as_anisotropy, make_params
from hypwave.schemas.report_schema import ExperimentReport, FitRecord, SpreadRecord, Verdict
from hypwave.schemas.synth_schema import ExpectedExponent, RngSpec
from hypwave.schemas.wavelet_schema import WaveletSpec
from hypwave.services import lp_bands
from hypwave.services.estimate import detect_anisotropy, fit_loglog
from hypwave.services.field_core import MAX_LEVEL, dilate, lp_norm, make_grid
from hypwave.services.hyperwavelet import admissibility_check, forward
from hypwave.services.seqspaces import btilde_norm, ftilde_norm
from hypwave.services.synth import (
    random_bandlimited,
    synth_cascade,
    synth_lemma1,
    synth_lemma2,
    synth_lemma3,
    tensor_embed,
)

logger = logging.getLogger(__name__)

DEFAULT_DETECTION_CASES = (
    (1.0, (1.0, 1.0)),
    (0.8, (0.6, 1.4)),
    (0.5, (1.4, 0.6)),
)
EXPONENT_TOL = 0.1
LOG2_SLOPE_TOL = 0.05
DIVERGENCE_TOL = 0.15
# largest number of summands the divergence sweep would ideally reach
FULL_DIVERGENCE_N = 10
# below this p the family-3 F0 lower bound is only reached at very large N
F0_VERDICT_MIN_P = 2.0
DETECTION_ALPHA_TOL = 0.1
DETECTION_S_TOL = 0.15
DETECTION_RATE = 0.9


def _jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.generic):
        return _jsonable(value.item())
    return value


def _label(value) -> str:
    return "inf" if isinstance(value, float) and math.isinf(value) else f"{value:g}"


def _spread(cell: str, ratios: Sequence[float]) -> SpreadRecord:
    lo, hi = float(min(ratios)), float(max(ratios))
    return SpreadRecord(cell=cell, count=len(ratios), min=lo, max=hi, ratio=hi / lo)


def _geometric_mean(values: Sequence[float]) -> float:
    return float(np.exp(np.mean(np.log(values))))


def _fit(
    name: str,
    abscissa: str,
    xs: Sequence[float],
    ys: Sequence[float],
    target: float,
    tolerance: float,
    bound: str = "equal",
    provenance: str = "PAPER",
) -> FitRecord:
    fit = fit_loglog(xs, ys)
    if bound == "lower":
        passed = fit.slope >= target - tolerance
    else:
        passed = abs(fit.slope - target) <= tolerance
    return FitRecord(
        name=name,
        abscissa=abscissa,
        slope=fit.slope,
        intercept=fit.intercept,
        r2=fit.r2,
        target=target,
        tolerance=tolerance,
        bound=bound,
        provenance=provenance,
        passed=passed,
    )


def _fit_to_truth(name: str, abscissa: str, xs, ys, truth: ExpectedExponent, p, q, tolerance) -> FitRecord:
    return _fit(name, abscissa, xs, ys, truth.value(p, q), tolerance, truth.bound, truth.provenance)


def _fit_verdict(criterion: str, fit: FitRecord) -> Verdict:
    relation = ">=" if fit.bound == "lower" else "~"
    return Verdict(
        criterion=criterion,
        passed=fit.passed,
        detail=f"slope {fit.slope:.4f} {relation} {fit.target:.4f} (tol {fit.tolerance})",
    )


def _finish(report: ExperimentReport, started: float) -> ExperimentReport:
    report.wall_clock = round(time.perf_counter() - started, 6)
    logger.info(
        "experiment %s finished in %.2fs: %s",
        report.experiment,
        report.wall_clock,
        "pass" if report.passed else "FAIL",
    )
    return report


def exp_sobolev_equivalence(
    corpus_size: int = 50,
    s_list: Sequence[float] = (-1.0, 0.5, 1.0),
    p_list: Sequence[float] = (1.5, 2.0, 3.0),
    alpha_list: Sequence[Sequence[float]] = ((1.0, 1.0), (0.5, 1.5)),
    seed: int = 0,
    J: int = 7,
    band_cap: int = 8,
    dilations: Sequence[int] = (1, 2, 4),
    profile: str = "flat",
) -> ExperimentReport:
    """Ratio of the hyperbolic Sobolev (F-tilde, q=2) norm to the multiplier norm.

    ``s_list`` and ``p_list`` are paired element-wise; every pair is crossed
    with every anisotropy in ``alpha_list``.
    """
    started = time.perf_counter()
    if len(s_list) != len(p_list):
        raise ParameterError("s_list and p_list are paired and must have equal length")
    grid = make_grid(2, J)
    if band_cap * max(dilations) > 1 << (J - 2):
        raise ParameterError(f"band cap {band_cap} dilated by {max(dilations)} leaves the usable box")
    cells = [
        make_params(s=s, p=p, q=2.0, alpha=alpha, d=2)
        for s, p in zip(s_list, p_list)
        for alpha in alpha_list
    ]
    for params in cells:
        if not 1.0 < params.p < math.inf:
            raise ParameterError(f"Sobolev cells need 1 < p < inf, got p={params.p}")
    ratios = {(i, a): [] for i in range(len(cells)) for a in dilations}
    notes, items = [], []
    rng = RngSpec(seed=seed)
    for index in range(corpus_size):
        base = random_bandlimited(grid, band_cap, profile, rng.child(index))
        for a in dilations:
            f = dilate(base, a)
            bands = lp_bands.decompose(f, "hyperbolic")
            for i, params in enumerate(cells):
                denominator = lp_bands.sobolev_multiplier_norm(f, params.s, params.alpha, params.p)
                if denominator == 0.0:
                    notes.append(f"field {index} (dilation {a}) has zero norm; skipped")
                    logger.warning("corpus field %d has zero Sobolev norm; skipped", index)
                    continue
                ratio = lp_bands.triebel_from_bands(bands, params) / denominator
                ratios[(i, a)].append(ratio)
                items.append({"field": index, "dilation": a, "cell": i, "ratio": ratio})

    spreads, verdicts = [], []
    spread_max, drift_max = Config.SOBOLEV_SPREAD_MAX, Config.DILATION_DRIFT_MAX
    for i, params in enumerate(cells):
        cell = f"s={_label(params.s)},p={_label(params.p)},alpha={list(params.alpha.alphas)}"
        if not ratios[(i, dilations[0])]:
            notes.append(f"cell {cell} has no usable fields")
            continue
        spread = _spread(cell, ratios[(i, dilations[0])])
        spreads.append(spread)
        means = [_geometric_mean(ratios[(i, a)]) for a in dilations if ratios[(i, a)]]
        drift = max(means) / min(means)
        spreads.append(SpreadRecord(cell=f"{cell},dilation-drift", count=len(means),
                                    min=min(means), max=max(means), ratio=drift))
        verdicts.append(Verdict(criterion=f"AC5-spread[{cell}]", passed=spread.ratio <= spread_max,
                                detail=f"max/min {spread.ratio:.3f} <= {spread_max}"))
        verdicts.append(Verdict(criterion=f"AC5-drift[{cell}]", passed=drift <= drift_max,
                                detail=f"dilation drift {drift:.3f} <= {drift_max}"))
    report = ExperimentReport(
        experiment="sobolev_equivalence",
        parameters=_jsonable({
            "corpus_size": corpus_size, "s_list": list(s_list), "p_list": list(p_list),
            "alpha_list": [list(a) for a in alpha_list], "seed": seed, "J": J,
            "band_cap": band_cap, "dilations": list(dilations), "profile": profile,
        }),
        items=items,
        spreads=spreads,
        verdicts=verdicts,
        notes=notes,
    )
    return _finish(report, started)


def _wavelet_sobolev_run(
    experiment: str,
    spec: WaveletSpec,
    characterization: str,
    criterion: str,
    spread_max: float,
    corpus_size: int,
    s: float,
    p: float,
    alpha,
    seed: int,
    J: int,
    band_cap: int,
    profile: str,
) -> ExperimentReport:
    started = time.perf_counter()
    alpha = as_anisotropy(alpha)
    grid = make_grid(alpha.d, J)
    params = make_params(s=s, p=p, q=2.0, alpha=alpha, d=grid.d)
    admissibility = admissibility_check(spec, params, characterization)
    notes = []
    if not admissibility.valid:
        notes.append("outside characterization range")
        logger.warning("%s: (s=%g, p=%g) outside characterization range; running for contrast", experiment, s, p)
    ratios, items = [], []
    rng = RngSpec(seed=seed)
    for index in range(corpus_size):
        f = random_bandlimited(grid, band_cap, profile, rng.child(index))
        denominator = lp_bands.sobolev_multiplier_norm(f, s, params.alpha, p)
        if denominator == 0.0:
            notes.append(f"field {index} has zero norm; skipped")
            continue
        ratio = ftilde_norm(forward(f, spec), params) / denominator
        ratios.append(ratio)
        items.append({"field": index, "ratio": ratio})
    spreads, verdicts = [], []
    if ratios:
        spread = _spread(f"s={_label(s)},p={_label(p)},alpha={list(params.alpha.alphas)}", ratios)
        spreads.append(spread)
        if admissibility.valid:
            verdicts.append(Verdict(criterion=criterion, passed=spread.ratio <= spread_max,
                                    detail=f"max/min {spread.ratio:.3f} <= {spread_max}"))
        if s == 0 and p == 2 and spec.kind == "haar":
            # strict-support cells weight level j by 2^(#{i: j_i >= 1}) against Parseval
            upper = 2.0 ** (grid.d / 2.0)
            inside = all(1.0 - 1e-9 <= r <= upper + 1e-9 for r in ratios)
            verdicts.append(Verdict(criterion="AC6-parseval", passed=inside,
                                    detail=f"ratios in [1, {upper:.4f}]"))
    report = ExperimentReport(
        experiment=experiment,
        parameters=_jsonable({
            "corpus_size": corpus_size, "s": s, "p": p, "alpha": list(params.alpha.alphas),
            "seed": seed, "J": J, "band_cap": band_cap, "profile": profile,
            "wavelet": spec.name, "in_range": admissibility.valid,
            "admissibility": admissibility.model_dump(),
        }),
        items=items,
        spreads=spreads,
        verdicts=verdicts,
        notes=notes,
    )
    return _finish(report, started)


def exp_haar_sobolev(
    corpus_size: int = 50,
    s: float = 0.2,
    p: float = 2.0,
    alpha: Sequence[float] = (1.0, 1.0),
    seed: int = 0,
    J: int = 7,
    band_cap: int = 8,
    profile: str = "flat",
) -> ExperimentReport:
    return _wavelet_sobolev_run(
        "haar_sobolev", WaveletSpec(), "haar-Sobolev", "AC6-spread", Config.HAAR_SPREAD_MAX,
        corpus_size, s, p, alpha, seed, J, band_cap, profile,
    )


def exp_wavelet_sobolev(
    corpus_size: int = 50,
    s: float = 0.5,
    p: float = 2.0,
    alpha: Sequence[float] = (1.0, 1.0),
    seed: int = 0,
    J: int = 7,
    band_cap: int = 8,
    profile: str = "flat",
    wavelet: str = "db4",
) -> ExperimentReport:
    """Smooth orthonormal wavelet counterpart of :func:`exp_haar_sobolev`."""
    return _wavelet_sobolev_run(
        "wavelet_sobolev", WaveletSpec.builtin(wavelet), "sobolev", "AC6-cqf-spread",
        Config.SOBOLEV_SPREAD_MAX, corpus_size, s, p, alpha, seed, J, band_cap, profile,
    )


def _embedding_level(N: int, ell: int, alpha) -> int:
    """Smallest level >= ell whose last-axis host interval contains the spectrum of g."""
    level = ell
    while 2.0 ** (level * alpha.alphas[-1]) < (1 << N) + 1:
        level += 1
    return level


def _norm_from_bands(space: str, bands, params: NormParams) -> float:
    if space == "B":
        return lp_bands.besov_from_bands(bands, params)
    return lp_bands.triebel_from_bands(bands, params)


def _divergence_ratios(N, level, draws, rng, grid_1d, alpha, space, param_list) -> List[float]:
    sums = np.zeros(len(param_list))
    for draw in range(draws):
        g, _ = synth_lemma1(grid_1d, N, rng.child(draw), "modulated-window")
        f = tensor_embed(g, level, alpha, 2)
        hyperbolic = lp_bands.decompose(f, "hyperbolic")
        classical = lp_bands.decompose(f, "classical", alpha)
        cut = max(hyperbolic.truncated_energy, classical.truncated_energy)
        if cut > Config.TRUNCATION_ENERGY_MAX:
            raise ParameterError(f"N={N} at level {level} leaves the usable box ({cut:.3g} of the energy); enlarge J")
        for i, params in enumerate(param_list):
            sums[i] += _norm_from_bands(space, hyperbolic, params) / _norm_from_bands(space, classical, params)
    return list(sums / draws)


def exp_besov_divergence(
    q_list: Sequence[float] = (1.0, 2.0, 4.0),
    p: float = 2.0,
    s: float = 0.0,
    alpha: Sequence[float] = (1.0, 1.0),
    N_list: Sequence[int] = (4, 5, 6, 7),
    seed: int = 0,
    J: int = 10,
    ell: int = 4,
    draws: int = 4,
    space: str = "F",
    ell_sweep: Sequence[int] = (),
) -> ExperimentReport:
    """Hyperbolic over classical norm of tensor-embedded random-sign sums.

    The ratio grows like (number of summands)^(1/q - 1/2), so the two scales
    only agree for q = 2.
    """
    started = time.perf_counter()
    if space not in ("F", "B"):
        raise ParameterError(f"space must be 'F' or 'B', got {space!r}")
    alpha = as_anisotropy(alpha, 2)
    grid_1d = make_grid(1, J)
    param_list = [make_params(s=s, p=p, q=q, alpha=alpha) for q in q_list]
    rng = RngSpec(seed=seed)
    items, terms, table = [], [], []
    for N in N_list:
        level = _embedding_level(N, ell, alpha)
        ratios = _divergence_ratios(N, level, draws, rng.child(N), grid_1d, alpha, space, param_list)
        terms.append(N - 2)
        table.append(ratios)
        items.append({"N": N, "terms": N - 2, "level": level,
                      "ratios": {_label(q): r for q, r in zip(q_list, ratios)}})
    fits, verdicts, notes = [], [], []
    if max(N_list) < FULL_DIVERGENCE_N:
        host = _embedding_level(FULL_DIVERGENCE_N, ell, alpha)
        needed = math.ceil(host * max(alpha.alphas)) + 2
        notes.append(
            f"N runs to {max(N_list)} only: N={FULL_DIVERGENCE_N} needs host level {host} inside the usable box, "
            f"i.e. J >= {needed}, while d=2 grids stop at J={MAX_LEVEL[2]}"
        )
    xs = np.log(terms)
    for i, q in enumerate(q_list):
        target = (1.0 / q if not math.isinf(q) else 0.0) - 0.5
        fit = _fit(f"ratio-q{_label(q)}", "log terms", xs, np.log([row[i] for row in table]),
                   target, DIVERGENCE_TOL, provenance="PAPER" if q == 2 else "DERIVED")
        fits.append(fit)
        verdicts.append(_fit_verdict(f"AC8-q{_label(q)}", fit))
    spreads = []
    if ell_sweep:
        N = N_list[0]
        sweep = []
        for level in ell_sweep:
            if 2.0 ** (level * alpha.alphas[-1]) < (1 << N) + 1:
                notes.append(f"level {level} too small to host N={N}; skipped")
                continue
            try:
                ratio = _divergence_ratios(N, level, draws, rng.child(N), grid_1d, alpha, space, param_list[:1])[0]
            except ParameterError as exc:
                notes.append(f"level {level} skipped: {exc.message}")
                continue
            sweep.append(ratio)
            items.append({"N": N, "level": level, "sweep_ratio": ratio})
        if len(sweep) >= 2:
            drift = _spread(f"ell-sweep,N={N},q={_label(q_list[0])}", sweep)
            spreads.append(drift)
            verdicts.append(Verdict(criterion="AC8-ell-drift",
                                    passed=drift.ratio <= Config.DILATION_DRIFT_MAX,
                                    detail=f"level drift {drift.ratio:.3f} <= {Config.DILATION_DRIFT_MAX}"))
    report = ExperimentReport(
        experiment="besov_divergence",
        parameters=_jsonable({
            "q_list": list(q_list), "p": p, "s": s, "alpha": list(alpha.alphas),
            "N_list": list(N_list), "seed": seed, "J": J, "ell": ell, "draws": draws,
            "space": space, "ell_sweep": list(ell_sweep),
        }),
        items=items,
        fits=fits,
        spreads=spreads,
        verdicts=verdicts,
        notes=notes,
    )
    return _finish(report, started)


def _lemma1_point(grid, N, p, q, draws, rng, basis, space):
    params = make_params(s=0.0, p=p, q=q, d=1)
    lp_total, zero_total, terms = 0.0, 0.0, 0
    for draw in range(draws):
        g, truth = synth_lemma1(grid, N, rng.child(draw), basis)
        terms = truth.parameters["terms"]
        lp_total += lp_norm(g, p)
        if basis == "haar":
            coefficients = forward(g)
            zero_total += btilde_norm(coefficients, params) if space == "B" else ftilde_norm(coefficients, params)
        elif space == "B":
            zero_total += lp_bands.besov_norm(g, params, "hyperbolic")
        else:
            zero_total += lp_bands.triebel_norm(g, params, "hyperbolic")
    return terms, lp_total / draws, zero_total / draws, truth


def exp_lemma_scalings(
    family: int = 1,
    p: float = 2.0,
    q: float = 2.0,
    N_list: Optional[Sequence[int]] = None,
    seed: int = 0,
    J: int = 14,
    basis: str = "modulated-window",
    draws: Optional[int] = None,
    space: str = "B",
) -> ExperimentReport:
    """Growth exponents of the three one-dimensional counterexample families."""
    started = time.perf_counter()
    grid = make_grid(1, J)
    rng = RngSpec(seed=seed)
    draws = Config.MC_DRAWS if draws is None else draws
    items, fits, verdicts, notes = [], [], [], []
    if family == 1:
        if N_list is None:
            top = J - 3 if basis == "modulated-window" else J - 2
            N_list = range(4, top + 1)
        rows = [_lemma1_point(grid, N, p, q, draws, rng.child(N), basis, space) for N in N_list]
        truth = rows[-1][3]
        xs = np.log([row[0] for row in rows])
        for N, row in zip(N_list, rows):
            items.append({"N": N, "terms": row[0], "lp": row[1], "zero_smoothness": row[2]})
        fits.append(_fit_to_truth("lp", "log terms", xs, np.log([r[1] for r in rows]),
                                  truth.exponent("lp"), p, q, EXPONENT_TOL))
        fits.append(_fit_to_truth(f"{space}0", "log terms", xs, np.log([r[2] for r in rows]),
                                  truth.exponent("besov0"), p, q, EXPONENT_TOL))
        verdicts += [_fit_verdict("AC7-f1-lp", fits[0]), _fit_verdict("AC7-f1-b", fits[1])]
    elif family == 2:
        N_list = range(4, J - 1) if N_list is None else N_list
        params = make_params(s=0.0, p=p, q=q, d=1)
        terms, lps, zeros = [], [], []
        for N in N_list:
            f, truth = synth_lemma2(grid, N, p)
            terms.append(truth.parameters["terms"])
            lps.append(lp_norm(f, p))
            zeros.append(btilde_norm(forward(f), params))
            items.append({"N": N, "terms": terms[-1], "lp": lps[-1], "zero_smoothness": zeros[-1]})
        xs = np.log(terms)
        fits.append(_fit_to_truth("lp", "log terms", xs, np.log(lps), truth.exponent("lp"), p, q, EXPONENT_TOL))
        fits.append(_fit_to_truth("B0", "log terms", xs, np.log(zeros), truth.exponent("besov0"), p, q, EXPONENT_TOL))
        verdicts += [_fit_verdict("AC7-f2-lp", fits[0]), _fit_verdict("AC7-f2-b", fits[1])]
    elif family == 3:
        N_list = range(4, 11) if N_list is None else N_list
        params = make_params(s=0.0, p=p, q=q, d=1)
        lps, zeros = [], []
        for N in N_list:
            f, truth = synth_lemma3(grid, N)
            lps.append(lp_norm(f, p))
            zeros.append(None if math.isinf(p) else lp_bands.triebel_norm(f, params, "hyperbolic"))
            items.append({"N": N, "lp": lps[-1], "zero_smoothness": zeros[-1]})
        fits.append(_fit_to_truth("lp-log2", "N", list(N_list), np.log2(lps),
                                  truth.exponent("lp-log2"), p, q, LOG2_SLOPE_TOL))
        verdicts.append(_fit_verdict("AC7-f3-lp", fits[0]))
        if p >= 1 and not math.isinf(p):
            fits.append(_fit_to_truth("F0", "log N", np.log(list(N_list)), np.log(zeros),
                                      truth.exponent("triebel0"), p, q, EXPONENT_TOL))
            if p >= F0_VERDICT_MIN_P:
                verdicts.append(_fit_verdict("AC7-f3-f", fits[1]))
            else:
                notes.append(
                    f"F0 slope {fits[1].slope:.3f} against the lower bound {fits[1].target:g} is informational "
                    f"for p < {F0_VERDICT_MIN_P:g}: the bound is approached slowly at finite N"
                )
        else:
            notes.append("F0 lower bound only stated for 1 <= p < inf")
    else:
        raise ParameterError(f"family must be 1, 2 or 3, got {family}")
    report = ExperimentReport(
        experiment="lemma_scalings",
        parameters=_jsonable({
            "family": family, "p": p, "q": q, "N_list": list(N_list), "seed": seed, "J": J,
            "basis": basis if family == 1 else None, "draws": draws if family == 1 else None,
            "space": space,
        }),
        items=_jsonable(items),
        fits=fits,
        verdicts=verdicts,
        notes=notes,
    )
    return _finish(report, started)


def exp_detection_benchmark(
    cases: Sequence = DEFAULT_DETECTION_CASES,
    seed: int = 0,
    realizations: int = 20,
    J: int = 9,
    mode: str = "rademacher",
    alpha_step: float = 0.05,
    wavelet: str = "haar",
) -> ExperimentReport:
    started = time.perf_counter()
    spec = WaveletSpec.builtin(wavelet)
    grid = make_grid(2, J)
    rng = RngSpec(seed=seed)
    runs = 1 if mode == "deterministic" else realizations
    items, verdicts = [], []
    for case_index, (s, alpha) in enumerate(cases):
        alpha = as_anisotropy(alpha, 2)
        successes = 0
        for run in range(runs):
            field, _ = synth_cascade(grid, s, alpha, rng.child(case_index).child(run), mode, spec)
            result = detect_anisotropy(forward(field, spec), p=2.0, alpha_step=alpha_step)
            alpha_error = max(abs(a - b) for a, b in zip(result.alpha_hat.alphas, alpha.alphas))
            s_error = abs(result.s_hat - s)
            if mode == "deterministic":
                ok = alpha_error <= 1e-9 and result.rss <= 1e-12 * result.levels_used
            else:
                ok = alpha_error <= DETECTION_ALPHA_TOL and s_error <= DETECTION_S_TOL
            successes += ok
            items.append({
                "case": case_index, "run": run, "s": s, "alpha": list(alpha.alphas),
                "s_hat": result.s_hat, "alpha_hat": list(result.alpha_hat.alphas),
                "rss": result.rss, "levels_used": result.levels_used, "success": bool(ok),
            })
        rate = successes / runs
        required = 1.0 if mode == "deterministic" else DETECTION_RATE
        verdicts.append(Verdict(
            criterion=f"AC9-case{case_index}",
            passed=rate >= required,
            detail=f"(s={s:g}, alpha={list(alpha.alphas)}) success rate {rate:.2f} >= {required}",
        ))
    report = ExperimentReport(
        experiment="detection_benchmark",
        parameters=_jsonable({
            "cases": [[s, list(a)] for s, a in cases], "seed": seed, "realizations": runs,
            "J": J, "mode": mode, "alpha_step": alpha_step, "wavelet": wavelet,
        }),
        items=items,
        verdicts=verdicts,
    )
    return _finish(report, started)


EXPERIMENTS = {
    "sobolev_equivalence": exp_sobolev_equivalence,
    "haar_sobolev": exp_haar_sobolev,
    "wavelet_sobolev": exp_wavelet_sobolev,
    "besov_divergence": exp_besov_divergence,
    "lemma_scalings": exp_lemma_scalings,
    "detection_benchmark": exp_detection_benchmark,
}


def experiment_parameters(name: str) -> Dict[str, Any]:
    if name not in EXPERIMENTS:
        raise ParameterError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    signature = inspect.signature(EXPERIMENTS[name])
    return {key: _jsonable(param.default) for key, param in signature.parameters.items()}


def run_experiment(name: str, params: Optional[Dict[str, Any]] = None) -> ExperimentReport:
    params = dict(params or {})
    accepted = experiment_parameters(name)
    unknown = sorted(set(params) - set(accepted))
    if unknown:
        raise ParameterError(f"unknown parameters for {name}: {', '.join(unknown)}")
    for key, value in params.items():
        if value == "inf":
            params[key] = math.inf
        elif isinstance(value, list) and "inf" in value:
            params[key] = [math.inf if v == "inf" else v for v in value]
    logger.info("running experiment %s", name)
    return EXPERIMENTS[name](**params)
