import math

import pytest
from fastapi.testclient import TestClient

from hypwave import __version__
from hypwave.main import app
from hypwave.schemas.synth_schema import RngSpec
from hypwave.services.field_core import lp_norm, make_grid
from hypwave.services.synth import random_bandlimited, synth_cascade

client = TestClient(app)


def _payload(field):
    return {"d": field.grid.d, "J": field.grid.J, "values": field.values.real.tolist()}


@pytest.fixture(scope="module")
def bandlimited():
    return random_bandlimited(make_grid(2, 5), 6, rng=RngSpec(seed=41))


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"message": "hypwave online", "version": __version__}


def test_norm_endpoint(bandlimited):
    response = client.post("/api/norms", json={"field": _payload(bandlimited), "space": "L2"})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "success"
    assert body["norm"] == pytest.approx(lp_norm(bandlimited, 2.0))

    response = client.post(
        "/api/norms",
        json={"field": _payload(bandlimited), "space": "Bt", "s": 0.5, "p": "inf", "q": 1, "alpha": [0.5, 1.5]},
    )
    assert response.status_code == 200
    assert response.json()["truncated"] is False


def test_norm_endpoint_errors(bandlimited):
    response = client.post("/api/norms", json={"field": _payload(bandlimited), "space": "H"})
    assert response.status_code == 422
    assert response.json()["code"] == "PARAMETER"

    bad = {"d": 2, "J": 5, "values": [[0.0] * 32] * 31}
    response = client.post("/api/norms", json={"field": bad, "space": "L2"})
    assert response.status_code == 422
    assert response.json()["code"] == "GRID_MISMATCH"

    ragged = {"d": 2, "J": 5, "values": [[0.0] * 32] * 31 + [[0.0] * 31]}
    response = client.post("/api/norms", json={"field": ragged, "space": "L2"})
    assert response.status_code == 422
    assert response.json()["code"] == "GRID_MISMATCH"

    uneven_imag = {**_payload(bandlimited), "imag": [[0.0] * 32] * 31 + [[0.0, 1.0]]}
    response = client.post("/api/norms", json={"field": uneven_imag, "space": "L2"})
    assert response.status_code == 422
    assert response.json()["code"] == "GRID_MISMATCH"

    response = client.post("/api/norms", json={"field": _payload(bandlimited), "space": "Wt", "p": 1})
    assert response.status_code == 422

    response = client.post("/api/norms", json={"space": "L2"})
    assert response.status_code == 422
    assert "detail" in response.json()


def test_complex_field_payload(bandlimited):
    field = _payload(bandlimited)
    field["imag"] = field["values"]
    response = client.post("/api/norms", json={"field": field, "space": "L2"})
    assert response.json()["norm"] == pytest.approx(math.sqrt(2) * lp_norm(bandlimited, 2.0))


def test_detect_endpoint():
    field, _ = synth_cascade(make_grid(2, 5), 0.8, (0.6, 1.4))
    response = client.post("/api/detect", json={"field": _payload(field)})
    assert response.status_code == 200
    result = response.json()["result"]
    assert result["alpha_hat"]["alphas"] == pytest.approx([0.6, 1.4], abs=1e-9)
    assert result["s_hat"] == pytest.approx(0.8, abs=1e-9)

    response = client.post("/api/detect", json={"field": _payload(field), "j_min": 6})
    assert response.status_code == 422
    assert response.json()["code"] == "INSUFFICIENT_DATA"


def test_admissibility_endpoint():
    response = client.post(
        "/api/admissibility", json={"characterization": "haar-Sobolev", "s": 1, "p": 2}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["valid"] is False
    assert {i["name"]: i["rhs"] for i in body["inequalities"]}["p < inf"] == "inf"

    response = client.post("/api/admissibility", json={"wavelet": "db4", "characterization": "haar-F"})
    assert response.status_code == 422
    assert response.json()["code"] == "UNSUPPORTED_PARAMETER"


def test_experiment_listing():
    response = client.get("/api/experiments")
    assert response.status_code == 200
    listing = response.json()
    assert sorted(listing) == [
        "besov_divergence", "detection_benchmark", "haar_sobolev",
        "lemma_scalings", "sobolev_equivalence", "wavelet_sobolev",
    ]
    assert listing["detection_benchmark"]["realizations"] == 20


def test_experiment_run():
    response = client.post(
        "/api/experiments/detection_benchmark", json={"parameters": {"J": 6, "mode": "deterministic"}}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == "hypwave-report/1"
    assert [v["passed"] for v in body["verdicts"]] == [True, True, True]

    response = client.post("/api/experiments/nonexistent", json={"parameters": {}})
    assert response.status_code == 422
    response = client.post("/api/experiments/haar_sobolev", json={"parameters": {"samples": 2}})
    assert response.status_code == 422
