import pytest
from fastapi.testclient import TestClient

from newtonpoly.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_healthz(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_np_endpoint(client):
    response = client.post("/np", json={"polynomial": "x^3+2x+4", "prime": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["vertices"] == [[0, 0], [2, 1], [3, 2]]
    assert body["edges"][0]["slope"] == {"num": 1, "den": 2}


def test_np_phi_endpoint(client):
    response = client.post(
        "/np", json={"polynomial": "x^4+2x^2+4", "prime": 2, "phi": "x"}
    )
    assert response.status_code == 200
    assert response.json()["vertices"] == [[0, 0], [4, 2]]


def test_value_errors_are_422(client):
    response = client.post(
        "/predict", json={"g": "x^2+2", "f": "x^2+2", "prime": 2, "theorem": "bogus"}
    )
    assert response.status_code == 422
    assert response.json()["error"] == "ValueError"
    response = client.post("/schur", json={"m": 4, "prime": 2, "b": [1, 1]})
    assert response.status_code == 422


def test_domain_errors_are_422(client):
    response = client.post("/np", json={"polynomial": "x^2+2x", "prime": 2})
    assert response.status_code == 422
    assert response.json()["error"] == "ZeroConstantTerm"
    response = client.post("/np", json={"polynomial": "x^2+$", "prime": 2})
    assert response.status_code == 422
    assert response.json()["error"] == "ParseError"
    response = client.post("/np", json={"polynomial": "x^2+1", "prime": 6})
    assert response.status_code == 422
    assert response.json()["error"] == "NonPrimeModulus"


def test_merge_endpoint(client):
    response = client.post(
        "/merge", json={"f": "x^2+2x+2", "g": "x+2", "prime": 2}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["equal"] is True
    assert body["merged"]["vertices"] == [[0, 0], [2, 1], [3, 2]]


def test_predict_endpoint(client):
    response = client.post(
        "/predict", json={"g": "x^3+2x+4", "f": "x^3+2x+4", "prime": 2, "n": 2}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["certificate"]["verdict"] == "satisfied"
    assert body["prediction"]["vertices"] == [[0, 0], [18, 1], [27, 2]]


def test_predict_iterate_when_g_omitted(client):
    response = client.post("/predict", json={"f": "x^3+2x+4", "prime": 2, "n": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["certificate"]["theorem"] == "iterate"
    assert body["prediction"]["vertices"] == [[0, 0], [6, 1], [9, 2]]


def test_verify_endpoint_mismatch(client):
    response = client.post(
        "/verify", json={"g": "x^3+4x+16", "f": "x^3+2x+4", "prime": 2, "n": 1}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["match"] is False
    assert body["first_mismatch"]["index"] == 2


def test_stability_and_purity(client):
    response = client.post("/stability", json={"polynomial": "x^2+2x+4", "prime": 2})
    assert response.json()["verdict"] == "satisfied"
    response = client.post("/purity", json={"polynomial": "x^3+18x+36", "prime": 3})
    assert response.json() == {"kind": "dumas", "prime": 3, "r": 2}


def test_residual_endpoint(client):
    response = client.post("/residual", json={"polynomial": "x^4+2x^2+4", "prime": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["data"][0]["residual_poly"] == "Y^2+Y+1"
    assert body["data"][0]["degree_profile"] == [[2, 1]]


def test_split_endpoint_regular_and_irregular(client):
    response = client.post("/split", json={"polynomial": "x^3+18x+36", "prime": 2})
    assert response.status_code == 200
    assert response.json()["display"] == "2\u00b7Z_K = p1^2 \u00b7 p2"
    response = client.post("/split", json={"polynomial": "x^2+4x+4", "prime": 2})
    assert response.status_code == 422
    assert response.json()["error"] == "NotPRegular"


def test_index_divisor_endpoint(client):
    response = client.post(
        "/index-divisor", json={"polynomial": "x^4+54x^3+432x+3456", "prime": 2}
    )
    body = response.json()
    assert body["common_index_divisor"] is True
    assert body["P_counts"] == {"1": 3}
    assert body["splitting"]["degree_sum"] == 4


def test_schur_endpoint(client):
    response = client.post("/schur", json={"m": 6, "prime": 2, "f": "x^7+6x+6"})
    assert response.status_code == 200
    body = response.json()
    assert [f"{s['num']}/{s['den']}" for s in body["formula_slopes"]] == ["1/2", "3/4"]
    assert body["certificate"]["verdict"] == "satisfied"


def test_paper_examples_endpoint(client):
    response = client.post("/paper-examples")
    assert response.status_code == 200
    body = response.json()
    assert body["all_passed"] is True
    assert len(body["fixtures"]) == 5


def test_search_endpoint_deterministic(client):
    first = client.post("/search", json={"seed": 3, "count": 6}).json()
    second = client.post("/search", json={"seed": 3, "count": 6}).json()
    assert first == second
