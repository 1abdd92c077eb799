import pytest
from fastapi.testclient import TestClient

from app.config import settings
from app.main import app

client = TestClient(app)
API = settings.API_V1_STR


@pytest.mark.api
def test_read_root():
    """
    The root endpoint:
    - Returns 200
    - Carries a welcome message
    """
    response = client.get("/")
    assert response.status_code == 200, "The root endpoint must be available"
    data = response.json()
    assert "message" in data, "The response must contain a message"
    assert isinstance(data["message"], str), "The message must be a string"


@pytest.mark.api
def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


@pytest.mark.security
def test_security_headers():
    """
    Every response carries the security headers with their expected values.
    """
    response = client.get("/")
    headers = response.headers

    security_headers = {
        "X-Content-Type-Options": "nosniff",
        "X-Frame-Options": "DENY",
        "X-XSS-Protection": "1; mode=block",
    }
    for header, expected_value in security_headers.items():
        assert header in headers, f"Missing security header: {header}"
        assert headers[header] == expected_value, \
            f"Wrong value for {header}: expected {expected_value}, found {headers[header]}"

    assert "Content-Security-Policy" in headers, "Must include Content-Security-Policy"
    assert "Strict-Transport-Security" in headers, "Must include Strict-Transport-Security"


@pytest.mark.documentation
def test_api_documentation():
    response = client.get("/docs")
    assert response.status_code == 200, "The documentation must be available"
    assert "swagger-ui" in response.text, "The documentation must include Swagger UI"


@pytest.mark.documentation
def test_openapi_schema():
    response = client.get("/openapi.json")
    assert response.status_code == 200, "The OpenAPI schema must be available"
    schema = response.json()
    for field in ["openapi", "info", "paths", "components"]:
        assert field in schema, f"The schema must include the field: {field}"
    assert f"{API}/verify" in schema["paths"]


@pytest.mark.api
@pytest.mark.parametrize("payload,expected_status,complete", [
    ({"n": 6, "k": 1, "chords": "1-3,1-4"}, 200, True),
    ({"n": 6, "k": 1, "chords": "1-3"}, 200, False),
    ({"n": 6, "k": 2, "chords": "1-3,1-4,2-6"}, 200, True),
    ({"n": 3, "k": 1, "chords": ""}, 422, None),
    ({"n": 6, "k": 0, "chords": "1-3"}, 422, None),
    ({"k": 1}, 422, None),
])
def test_verify(payload, expected_status, complete):
    response = client.post(f"{API}/verify", json=payload)
    assert response.status_code == expected_status, f"Wrong status for payload {payload}"
    if expected_status == 200:
        assert response.json()["complete"] is complete


@pytest.mark.api
@pytest.mark.parametrize("chords,error_code", [
    ("1-2", "ADJACENT_ENDPOINTS"),
    ("1-3,1-3", "DUPLICATE_CHORD"),
    ("1-3;1-4", "CHORD_PARSE_ERROR"),
])
def test_verify_domain_errors(chords, error_code):
    response = client.post(f"{API}/verify", json={"n": 6, "k": 1, "chords": chords})
    assert response.status_code == 422
    body = response.json()
    assert body["error_code"] == error_code
    assert isinstance(body["error"], str)


@pytest.mark.api
def test_spectrum():
    response = client.get(f"{API}/spectrum", params={"diagram": "6: 1-3,1-4"})
    assert response.status_code == 200
    data = response.json()
    assert data["total_cycles"] == 6
    assert data["by_chord_count"] == {"0": [6], "1": [3, 4, 5], "2": [3]}


@pytest.mark.api
def test_canonical():
    response = client.get(f"{API}/canonical", params={"diagram": "6: 2-5"})
    assert response.status_code == 200
    data = response.json()
    assert data["representative"]["chords"] == [[1, 4]]
    assert data["stabilizer_size"] == 4


@pytest.mark.api
def test_oracle():
    response = client.get(f"{API}/oracle", params={"n": 6, "k": 1})
    assert response.status_code == 200
    assert response.json()["realizable"] == [3, 4, 5]
    response = client.get(f"{API}/oracle", params={"n": 12, "k": 1})
    assert response.status_code == 422
    assert response.json()["error_code"] == "N_TOO_LARGE_FOR_ORACLE"


@pytest.mark.api
def test_bounds_endpoints():
    response = client.get(f"{API}/bounds", params={"n": 10, "k": 5})
    assert response.status_code == 200
    assert response.json()["p_threshold"] == 6

    response = client.get(f"{API}/crossover/10")
    assert response.status_code == 200
    assert response.json()["upper_solution"] == pytest.approx(3.4e15, rel=0.05)

    response = client.get(f"{API}/lemma2/3")
    assert response.json() == {"p": 3, "lower": 10, "upper": 15}

    response = client.get(f"{API}/crossover/2")
    assert response.status_code == 422
    assert response.json()["error_code"] == "K_BELOW_3"


@pytest.mark.api
def test_constructions():
    response = client.get(f"{API}/constructions/lemma3", params={"n": 7})
    assert response.status_code == 200
    data = response.json()
    assert data["text"].startswith("7: ")
    assert len(data["diagram"]["chords"]) == 7

    response = client.get(f"{API}/constructions/noncrossing", params={"n": 10, "p": 3})
    assert response.json()["total_cycles"] == 10

    response = client.get(f"{API}/constructions/example1", params={"stage": 9})
    assert response.status_code == 422
    assert response.json()["error_code"] == "BAD_STAGE"


@pytest.mark.api
def test_search():
    response = client.post(f"{API}/search", json={"n": 6, "k": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["value"] == 5
    assert data["status"] == "exact"
    assert len(data["witness"]["chords"]) == 5


@pytest.mark.api
def test_search_size_limit():
    response = client.post(f"{API}/search", json={"n": settings.API_SEARCH_MAX_N + 1, "k": 3})
    assert response.status_code == 422
    assert response.json()["error_code"] == "INSTANCE_TOO_LARGE"


@pytest.mark.api
def test_relativity():
    graph = "6; edges: 1-2,2-3,3-4,4-5,5-6,1-6,1-3,1-4"
    response = client.post(f"{API}/relativity", json={"graph": graph, "k": 1})
    assert response.status_code == 200
    data = response.json()
    assert data["invariant_flag"] is True
    assert data["hamilton_cycles"] == [[1, 2, 3, 4, 5, 6]]


@pytest.mark.api
def test_relativity_without_hamilton_cycle():
    response = client.post(f"{API}/relativity", json={"graph": "6; edges: 1-2,2-3,3-4,4-5,5-6", "k": 1})
    assert response.status_code == 404
    assert response.json()["error_code"] == "NO_HAMILTON_CYCLE"


@pytest.mark.security
def test_health_rate_limit_follows_settings():
    """/health answers RATE_LIMIT_PER_MINUTE requests a minute, then 429."""
    app.state.limiter.reset()
    try:
        for _ in range(settings.RATE_LIMIT_PER_MINUTE):
            assert client.get("/health").status_code == 200
        assert client.get("/health").status_code == 429
    finally:
        app.state.limiter.reset()
