"""HTTP service: sessions, mutation, undo, queries and error codes."""

import pytest
from fastapi.testclient import TestClient

from clusteralg.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, seed=None, field=None):
    body = {"seed": seed or {"B": [[0, 1], [-1, 0]]}}
    if field:
        body["field"] = field
    r = client.post("/api/session", json=body)
    assert r.status_code == 200, r.text
    return r.json()


def test_create_and_read(client):
    state = make_session(client, field="Q")
    assert state["id"] == "s1"
    assert state["field"] == "Q"
    assert state["n"] == 2 and state["m"] == 0
    assert [p["text"] for p in state["exchangePolys"]] == ["1 + x2", "1 + x1"]
    assert state["canUndo"] is False
    assert state["quiver"] == {"n": 2, "m": 0, "arrows": [[1, 2, 1]]}
    r = client.get("/api/session/s1")
    assert r.status_code == 200
    assert r.json()["seed"]["cluster"] == ["x1", "x2"]


def test_session_ids_are_sequential(client):
    assert make_session(client)["id"] == "s1"
    assert make_session(client)["id"] == "s2"


def test_unknown_session_404(client):
    assert client.get("/api/session/shrug").status_code == 404
    assert client.post("/api/session/shrug/mutate", json={"k": 1}).status_code == 404


def test_mutate_and_undo_roundtrip(client):
    sid = make_session(client)["id"]
    r = client.post(f"/api/session/{sid}/mutate", json={"k": 1})
    assert r.status_code == 200
    state = r.json()
    assert state["seed"]["cluster"] == ["x1^-1 + x1^-1*x2", "x2"]
    assert state["canUndo"] is True
    r = client.post(f"/api/session/{sid}/undo")
    assert r.status_code == 200
    assert r.json()["seed"]["cluster"] == ["x1", "x2"]
    r = client.post(f"/api/session/{sid}/undo")
    assert r.status_code == 409
    assert r.json()["error"] == "nothing-to-undo"


def test_mutate_twice_restores(client):
    sid = make_session(client)["id"]
    first = client.post(f"/api/session/{sid}/mutate", json={"k": 2}).json()
    second = client.post(f"/api/session/{sid}/mutate", json={"k": 2}).json()
    assert second["seed"]["cluster"] == ["x1", "x2"]
    assert second["seed"]["history"] == [2, 2]
    assert first["seed"]["history"] == [2]


def test_mutate_validation(client):
    sid = make_session(client)["id"]
    assert client.post(f"/api/session/{sid}/mutate", json={"k": "x"}).status_code == 422
    assert client.post(f"/api/session/{sid}/mutate", json={}).status_code == 422
    r = client.post(f"/api/session/{sid}/mutate", json={"k": 9})
    assert r.status_code == 422
    assert r.json()["error"] == "invalid-index"


def test_malformed_seed_422(client):
    r = client.post("/api/session", json={"seed": {"B": [[0, 1], [1, 0]]}})
    assert r.status_code == 422
    assert r.json()["error"] == "not-skew-symmetrizable"
    r = client.post("/api/session", json={})
    assert r.status_code == 422
    r = client.post("/api/session", json={"seed": {"B": [[0, 1], [-1, 0]]}, "field": "Z/5"})
    assert r.status_code == 422
    assert r.json()["error"] == "unknown-field"


def test_field_override_and_setter(client):
    seed = {"B": [[0, -1, 0, 4], [2, 0, 3, 6], [0, -3, 0, 0], [-4, -3, 0, 0]]}
    sid = make_session(client, seed=seed, field="Q")["id"]
    r = client.get(f"/api/session/{sid}", params={"field": "Q(zeta,12)"})
    assert r.json()["classGroup"]["result"]["rank"] == 4
    # override does not stick
    assert client.get(f"/api/session/{sid}").json()["classGroup"]["result"]["rank"] == 1
    r = client.post(f"/api/session/{sid}/field", json={"field": "Q(zeta,4)"})
    assert r.json()["field"] == "Q(zeta,4)"
    assert client.get(f"/api/session/{sid}").json()["classGroup"]["result"]["rank"] == 3


def test_class_group_endpoint_pinned_keys(client):
    seed = {"B": [[0, -1, 0, 4], [2, 0, 3, 6], [0, -3, 0, 0], [-4, -3, 0, 0]]}
    sid = make_session(client, seed=seed)["id"]
    r = client.get(f"/api/session/{sid}/class-group", params={"field": "Q(zeta,12)"})
    assert r.status_code == 200
    assert set(r.json()) == {"t", "rank", "invariantFactors", "perVariable"}
    assert r.json()["t"] == 8


def test_starfish_refusal_is_409(client):
    sid = make_session(client, seed={"B": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]})["id"]
    r = client.get(f"/api/session/{sid}/class-group")
    assert r.status_code == 409
    assert r.json()["error"] == "starfish-not-established"
    # the state payload embeds the refusal instead of failing
    state = client.get(f"/api/session/{sid}").json()
    assert state["classGroup"]["status"] == "starfish-not-established"
    assert state["ufd"]["status"] == "starfish-not-established"


def test_member_endpoint(client):
    sid = make_session(client, seed={"B": [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]})["id"]
    r = client.post(f"/api/session/{sid}/member",
                    json={"expr": "(x1^2+x2^2+x3^2)/(x1*x2*x3)"})
    assert r.status_code == 200
    body = r.json()
    assert body["member"] is True
    assert body["starfishBasis"] == "upper-bound-only"
    r = client.post(f"/api/session/{sid}/member", json={"expr": "1/x1"})
    assert r.json()["member"] is False


def test_member_with_path_pinned_payload(client):
    sid = make_session(client, seed={"B": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]})["id"]
    r = client.post(f"/api/session/{sid}/member",
                    json={"expr": "(1+x2)/(x1*x3)", "path": [3, 1]})
    assert r.status_code == 200
    assert r.json() == {"laurent_in_seed": False}
    r = client.post(f"/api/session/{sid}/member",
                    json={"expr": "(1+x2)/(x1*x3)", "path": [3]})
    assert r.json() == {"laurent_in_seed": True}


def test_pairing_endpoint(client):
    sid = make_session(client)["id"]
    r = client.post(f"/api/session/{sid}/pairing",
                    json={"expr": "x1^3*(1+x2)", "direction": 1})
    assert r.status_code == 200
    assert r.json() == {"direction": 1, "method": "fast", "value": 4}
    r = client.post(f"/api/session/{sid}/pairing",
                    json={"expr": "x1^3*(1+x2)", "direction": 1, "method": "iterative"})
    assert r.json()["value"] == 4
    r = client.post(f"/api/session/{sid}/pairing",
                    json={"expr": "(1+x1)/x1", "direction": 1})
    assert r.status_code == 409
    assert r.json()["error"] == "not-in-adjacent-ring"


def test_local_factor_endpoint(client):
    sid = make_session(client)["id"]
    r = client.post(f"/api/session/{sid}/local-factor", json={"expr": "x1^2*(1+x2)"})
    assert r.status_code == 200
    assert r.json() == {"exponents": [3, 0], "cofactor": "x1^-1 + x1^-1*x2"}


def test_parse_error_is_422(client):
    sid = make_session(client)["id"]
    r = client.post(f"/api/session/{sid}/member", json={"expr": "x1 +"})
    assert r.status_code == 422
    assert r.json()["error"] == "parse-error"


def test_quiver_absent_for_skew_symmetrizable_only(client):
    seed = {"B": [[0, -1, 0, 4], [2, 0, 3, 6], [0, -3, 0, 0], [-4, -3, 0, 0]]}
    state = make_session(client, seed=seed)
    assert state["quiver"] is None


def test_sharing_listed(client):
    state = make_session(client, seed={"B": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]})
    assert state["sharing"] == [[1, 3]]


def test_fields_listing(client):
    r = client.get("/api/fields")
    assert r.json()["fields"] == ["Z", "Q", "Q(zeta,4)", "Q(zeta,6)", "Q(zeta,12)"]


def test_isolated_direction_in_state(client):
    state = make_session(client, seed={"B": [[0, 0], [0, 0]]}, field="Q")
    assert state["exchangePolys"][0]["factorCount"] is None
    assert state["exchangePolys"][0]["isolated"] is True
    state2 = make_session(client, seed={"B": [[0, 0], [0, 0]]}, field="Z")
    assert state2["exchangePolys"][0]["factorCount"] == 1
