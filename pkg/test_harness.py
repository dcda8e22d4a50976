import json
import math

import pytest

from hypwave.exceptions import ParameterError
from hypwave.services import harness


def test_sobolev_equivalence_small_corpus():
    report = harness.exp_sobolev_equivalence(corpus_size=4, J=6, band_cap=4, dilations=(1, 2))
    assert report.experiment == "sobolev_equivalence"
    assert len(report.items) == 4 * 2 * 6
    assert all(item["ratio"] > 0 for item in report.items)
    spreads = [v for v in report.verdicts if v.criterion.startswith("AC5-spread[")]
    drifts = [v for v in report.verdicts if v.criterion.startswith("AC5-drift[")]
    assert len(spreads) == len(drifts) == 6
    assert all(v.passed for v in spreads)
    assert all(v.passed for v in drifts)
    assert "AC5-spread[s=-1,p=1.5,alpha=[1.0, 1.0]]" in {v.criterion for v in spreads}


def test_sobolev_equivalence_parameter_errors():
    with pytest.raises(ParameterError):
        harness.exp_sobolev_equivalence(corpus_size=1, J=6, band_cap=8, dilations=(1, 4))
    with pytest.raises(ParameterError):
        harness.exp_sobolev_equivalence(corpus_size=1, J=6, band_cap=4, s_list=(0.0,), p_list=(2.0, 3.0))
    with pytest.raises(ParameterError):
        harness.exp_sobolev_equivalence(corpus_size=1, J=6, band_cap=4, s_list=(0.0,), p_list=(1.0,))


def test_haar_sobolev_in_range():
    report = harness.exp_haar_sobolev(corpus_size=4, J=6, band_cap=4)
    assert report.parameters["in_range"] is True
    assert report.verdict("AC6-spread").detail.startswith("max/min")
    assert report.spreads[0].count == 4


def test_haar_sobolev_zero_smoothness_parseval():
    report = harness.exp_haar_sobolev(corpus_size=4, s=0.0, p=2.0, J=6, band_cap=4)
    assert report.verdict("AC6-parseval").passed
    assert all(1.0 - 1e-9 <= item["ratio"] <= 2.0 + 1e-9 for item in report.items)


def test_haar_sobolev_outside_range():
    report = harness.exp_haar_sobolev(corpus_size=2, s=0.8, J=6, band_cap=4)
    assert report.parameters["in_range"] is False
    assert "outside characterization range" in report.notes
    assert report.spreads and not report.verdicts


def test_wavelet_sobolev_db4():
    report = harness.exp_wavelet_sobolev(corpus_size=3, J=6, band_cap=4)
    assert report.parameters["wavelet"] == "db4"
    assert report.parameters["in_range"] is True
    assert report.verdict("AC6-cqf-spread")


def test_besov_divergence_triebel():
    report = harness.exp_besov_divergence()
    assert [f.name for f in report.fits] == ["ratio-q1", "ratio-q2", "ratio-q4"]
    assert report.fit("ratio-q2").provenance == "PAPER"
    assert report.fit("ratio-q1").provenance == "DERIVED"
    assert report.verdict("AC8-q2").passed
    assert report.passed
    assert [item["terms"] for item in report.items] == [2, 3, 4, 5]
    assert "N=10 needs host level 11 inside the usable box, i.e. J >= 13, while d=2 grids stop at J=11" in report.notes[0]
    assert report.parameters["N_list"] == [4, 5, 6, 7] and report.parameters["J"] == 10


def test_besov_divergence_besov_variant_is_exact():
    report = harness.exp_besov_divergence(draws=1, space="B")
    for q in (1, 2, 4):
        assert report.fit(f"ratio-q{q}").slope == pytest.approx(1 / q - 0.5, abs=0.02)
    with pytest.raises(ParameterError):
        harness.exp_besov_divergence(space="W")


def test_besov_divergence_level_sweep():
    report = harness.exp_besov_divergence(q_list=(2.0,), N_list=(4, 5, 6), draws=1, ell_sweep=(3, 5, 6))
    assert any("level 3" in note for note in report.notes)
    assert report.verdict("AC8-ell-drift")
    assert len(report.spreads) == 1 and report.spreads[0].count == 2


def test_lemma_family_one():
    report = harness.exp_lemma_scalings(family=1, J=10, N_list=range(4, 8), draws=2)
    assert report.fit("lp").slope == pytest.approx(0.5, abs=1e-6)
    # side frequencies 2^j +- 1 leak into neighbouring bands
    assert report.fit("B0").slope == pytest.approx(0.5, abs=0.02)
    assert report.verdict("AC7-f1-lp").passed and report.verdict("AC7-f1-b").passed
    assert report.parameters["N_list"] == [4, 5, 6, 7]


def test_lemma_family_one_haar_triebel():
    report = harness.exp_lemma_scalings(family=1, q=4.0, J=9, basis="haar", draws=2, space="F")
    assert report.fit("F0").target == 0.25
    assert report.parameters["basis"] == "haar"
    assert [item["terms"] for item in report.items] == [5, 6, 7, 8]


@pytest.mark.parametrize("p, q", [(2.0, 2.0), (3.0, 1.5)])
def test_lemma_family_two_is_exact(p, q):
    report = harness.exp_lemma_scalings(family=2, p=p, q=q, J=10)
    assert report.fit("lp").slope == pytest.approx(1 / p, abs=1e-9)
    assert report.fit("B0").slope == pytest.approx(1 / q, abs=1e-9)
    assert report.passed
    assert report.parameters["draws"] is None


def test_lemma_family_three():
    report = harness.exp_lemma_scalings(family=3, p=2.0, J=12, N_list=range(4, 10))
    assert report.fit("lp-log2").slope == pytest.approx(0.5, abs=0.05)
    assert report.fit("F0").bound == "lower"
    assert report.verdict("AC7-f3-f").passed
    assert report.passed


def test_lemma_family_three_small_p_lower_bound_is_informational():
    report = harness.run_experiment("lemma_scalings", {"family": 3, "p": 1.0, "J": 12, "N_list": [4, 5, 6, 7, 8, 9, 10]})
    assert report.fit("F0").target == 1.0
    assert report.fit("F0").slope > 0.5
    assert "AC7-f3-f" not in {v.criterion for v in report.verdicts}
    assert report.verdict("AC7-f3-lp").passed
    assert report.passed
    assert len(report.notes) == 1 and "informational for p < 2" in report.notes[0]


def test_lemma_family_three_sup_norm():
    report = harness.run_experiment("lemma_scalings", {"family": 3, "p": "inf", "J": 12, "N_list": [4, 5, 6, 7, 8, 9]})
    assert report.parameters["p"] == "inf"
    assert report.fit("lp-log2").target == 1.0
    assert report.notes == ["F0 lower bound only stated for 1 <= p < inf"]
    with pytest.raises(ParameterError):
        harness.exp_lemma_scalings(family=4, J=10)


@pytest.mark.parametrize("mode, realizations", [("deterministic", 1), ("rademacher", 3)])
def test_detection_benchmark(mode, realizations):
    report = harness.exp_detection_benchmark(J=7, mode=mode, realizations=realizations)
    assert [v.criterion for v in report.verdicts] == ["AC9-case0", "AC9-case1", "AC9-case2"]
    assert report.passed
    assert len(report.items) == 3 * realizations
    assert report.parameters["cases"][1] == [0.8, [0.6, 1.4]]


def test_run_experiment_validation():
    with pytest.raises(ParameterError):
        harness.run_experiment("fractal_dimension")
    with pytest.raises(ParameterError):
        harness.run_experiment("haar_sobolev", {"corpus": 3})
    assert harness.experiment_parameters("haar_sobolev")["alpha"] == [1.0, 1.0]
    assert set(harness.EXPERIMENTS) == {
        "sobolev_equivalence", "haar_sobolev", "wavelet_sobolev",
        "besov_divergence", "lemma_scalings", "detection_benchmark",
    }


def test_report_serialization():
    report = harness.run_experiment(
        "detection_benchmark", {"J": 6, "mode": "deterministic", "cases": [[1.0, [1.0, 1.0]]]}
    )
    payload = json.loads(report.to_json())
    assert payload["schema"] == "hypwave-report/1"
    assert payload["experiment"] == "detection_benchmark"
    assert payload["verdicts"][0]["criterion"] == "AC9-case0"
    assert payload["wall_clock"] >= 0


def test_thresholds_come_from_config(thresholds):
    thresholds("HAAR_SPREAD_MAX", 1.0)
    report = harness.exp_haar_sobolev(corpus_size=4, J=6, band_cap=4)
    assert report.verdict("AC6-spread").passed == (report.spreads[0].ratio <= 1.0)
    assert "<= 1.0" in report.verdict("AC6-spread").detail


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, params",
    [
        ("sobolev_equivalence", {}),
        ("haar_sobolev", {}),
        ("detection_benchmark", {}),
        ("lemma_scalings", {"family": 1}),
        ("lemma_scalings", {"family": 2}),
        ("lemma_scalings", {"family": 3}),
        ("besov_divergence", {"draws": 16}),
    ],
)
def test_full_size_experiments(name, params):
    report = harness.run_experiment(name, params)
    assert report.passed, [v for v in report.verdicts if not v.passed]
    assert not math.isnan(report.wall_clock)
