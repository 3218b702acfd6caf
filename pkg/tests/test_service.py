"""REST API: session lifecycle, error codes, analysis endpoints, snapshots."""

import json

import pytest
from fastapi.testclient import TestClient

from qtapsilou.service import SessionStore, create_app


@pytest.fixture()
def client():
    return TestClient(create_app(store=SessionStore()))


def create_session(client, **overrides):
    body = dict(n=16, bet=10, tosser_bankroll=100, gambler_bankroll=100, seed=42)
    body.update(overrides)
    response = client.post("/api/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestHealth:
    def test_ok(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestCreateSession:
    def test_create_echoes_configuration(self, client):
        view = create_session(client)
        assert view["phase"] == "awaiting_tosser"
        assert view["n"] == 16
        assert view["bet"] == 10
        assert view["seed"] == 42
        assert view["history"] == []
        assert view["profile"] is None

    def test_entropy_seed_is_echoed_for_replay(self, client):
        view = create_session(client, seed=None)
        assert isinstance(view["seed"], int)
        assert 0 <= view["seed"] < 2**64

    def test_zero_order_is_invalid(self, client):
        response = client.post(
            "/api/sessions",
            json=dict(n=0, bet=1, tosser_bankroll=10, gambler_bankroll=10),
        )
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_argument"

    def test_odd_order_is_playable(self, client):
        view = create_session(client, n=15)
        assert view["phase"] == "awaiting_tosser"

    def test_unaffordable_bet(self, client):
        response = client.post(
            "/api/sessions",
            json=dict(n=16, bet=60, tosser_bankroll=100, gambler_bankroll=100),
        )
        assert response.status_code == 409
        assert response.json()["code"] == "insufficient_funds"

    def test_malformed_body(self, client):
        response = client.post("/api/sessions", json={"n": "a lot"})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_argument"


class TestMoves:
    def test_tosser_move_advances_phase(self, client):
        session = create_session(client)
        response = client.post(
            f"/api/sessions/{session['id']}/tosser-move", json={"k": 6}
        )
        assert response.status_code == 200
        view = response.json()
        assert view["phase"] == "awaiting_gambler"
        assert view["pending_k"] == 6

    def test_gambler_move_returns_profile(self, client):
        session = create_session(client)
        client.post(f"/api/sessions/{session['id']}/tosser-move", json={"k": 6})
        response = client.post(
            f"/api/sessions/{session['id']}/gambler-move", json={"l": 8}
        )
        assert response.status_code == 200
        profile = response.json()["profile"]
        assert profile["p_tosser"] == pytest.approx(0.146, abs=1e-3)
        assert profile["p_gambler"] == pytest.approx(0.854, abs=1e-3)
        assert profile["p_draw"] == pytest.approx(0.0, abs=1e-3)

    def test_wrong_phase_is_a_conflict(self, client):
        session = create_session(client)
        client.post(f"/api/sessions/{session['id']}/tosser-move", json={"k": 6})
        response = client.post(
            f"/api/sessions/{session['id']}/tosser-move", json={"k": 6}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "protocol_violation"

    def test_out_of_range_move(self, client):
        session = create_session(client)
        response = client.post(
            f"/api/sessions/{session['id']}/tosser-move", json={"k": 16}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_argument"

    def test_unknown_session(self, client):
        response = client.post("/api/sessions/nope/tosser-move", json={"k": 1})
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"


class TestMeasure:
    def run_round(self, client, session_id, k, l):
        client.post(f"/api/sessions/{session_id}/tosser-move", json={"k": k})
        client.post(f"/api/sessions/{session_id}/gambler-move", json={"l": l})
        response = client.post(f"/api/sessions/{session_id}/measure")
        assert response.status_code == 200, response.text
        return response.json()

    def test_certain_tosser_win(self, client):
        session = create_session(client)
        view = self.run_round(client, session["id"], k=8, l=0)
        assert view["outcome"] == "tosser_wins"
        assert view["phase"] == "settled"
        assert view["tosser_bankroll"] == 110
        assert view["gambler_bankroll"] == 90

    def test_certain_gambler_win_pays_double(self, client):
        session = create_session(client)
        view = self.run_round(client, session["id"], k=0, l=0)
        assert view["outcome"] == "gambler_wins"
        assert view["tosser_bankroll"] == 80
        assert view["gambler_bankroll"] == 120
        assert len(view["history"]) == 1

    def test_draw_returns_to_tosser(self, client):
        session = create_session(client)
        view = self.run_round(client, session["id"], k=4, l=4)
        assert view["outcome"] in ("draw_01", "draw_10")
        assert view["phase"] == "awaiting_tosser"
        assert view["tosser_bankroll"] == 100

    def test_premature_measure_is_a_conflict(self, client):
        session = create_session(client)
        response = client.post(f"/api/sessions/{session['id']}/measure")
        assert response.status_code == 409

    def test_replay_with_same_seed_is_identical(self, client):
        outcomes = []
        for _ in range(2):
            session = create_session(client, seed=1234, n=16)
            trace = []
            for _ in range(30):
                view = self.run_round(client, session["id"], k=5, l=3)
                trace.append(view["outcome"])
                if view["phase"] == "settled":
                    break
            outcomes.append(trace)
        assert outcomes[0] == outcomes[1]


class TestBetEndpoint:
    def test_raise_after_draw(self, client):
        session = create_session(client)
        TestMeasure().run_round(client, session["id"], k=4, l=4)
        response = client.post(f"/api/sessions/{session['id']}/bet",
                               json={"amount": 25})
        assert response.status_code == 200
        assert response.json()["bet"] == 25

    def test_lowering_is_invalid(self, client):
        session = create_session(client)
        TestMeasure().run_round(client, session["id"], k=4, l=4)
        response = client.post(f"/api/sessions/{session['id']}/bet",
                               json={"amount": 1})
        assert response.status_code == 400

    def test_rejected_outside_the_draw_loop(self, client):
        session = create_session(client)
        response = client.post(f"/api/sessions/{session['id']}/bet",
                               json={"amount": 25})
        assert response.status_code == 409


class TestSessionView:
    def test_get_view(self, client):
        session = create_session(client)
        client.post(f"/api/sessions/{session['id']}/tosser-move", json={"k": 6})
        view = client.get(f"/api/sessions/{session['id']}").json()
        assert view["phase"] == "awaiting_gambler"
        assert view["pending_k"] == 6

    def test_unknown_session_view(self, client):
        assert client.get("/api/sessions/missing").status_code == 404

    def test_probabilities_use_twelve_significant_digits(self, client):
        session = create_session(client)
        client.post(f"/api/sessions/{session['id']}/tosser-move", json={"k": 6})
        view = client.post(
            f"/api/sessions/{session['id']}/gambler-move", json={"l": 5}
        ).json()
        for value in view["profile"].values():
            assert value == float(f"{value:.12g}")


class TestAnalysisEndpoints:
    def test_phase1(self, client):
        payload = client.get("/api/analysis/phase1", params={"n": 16}).json()
        assert payload["n"] == 16 and payload["fixed_k"] is None
        assert payload["rows"][4]["p_tosser"] == pytest.approx(0.5, abs=1e-9)

    def test_phase2_matches_reference(self, client):
        payload = client.get(
            "/api/analysis/phase2", params={"n": 16, "k": 6}
        ).json()
        tosser = [row["p_tosser"] for row in payload["rows"][:9]]
        expected = [0.854, 0.764, 0.537, 0.271, 0.073, 0.000, 0.037, 0.111, 0.146]
        assert tosser == pytest.approx(expected, abs=1e-3)

    def test_missing_parameter(self, client):
        assert client.get("/api/analysis/phase2", params={"n": 16}).status_code == 400

    def test_invalid_parameter(self, client):
        assert client.get("/api/analysis/phase1", params={"n": "wat"}).status_code == 400
        assert client.get("/api/analysis/phase1", params={"n": 0}).status_code == 400

    def test_duality_passes_for_even_order(self, client):
        payload = client.get("/api/verify/duality", params={"n": 16}).json()
        assert payload["passed"] is True
        assert payload["checked_pairs"] == 256
        assert payload["max_abs_error"] < 1e-12

    def test_duality_odd_order_unsupported(self, client):
        response = client.get("/api/verify/duality", params={"n": 15})
        assert response.status_code == 422
        assert response.json()["code"] == "unsupported_order"


class TestSnapshots:
    def test_snapshot_round_trip_is_byte_identical(self, tmp_path):
        path = tmp_path / "sessions.json"
        store = SessionStore(path)
        client = TestClient(create_app(store=store))
        session = create_session(client, seed=9)
        client.post(f"/api/sessions/{session['id']}/tosser-move", json={"k": 6})

        reloaded = SessionStore(path)
        assert reloaded.ids() == store.ids()
        original = store._sessions[session["id"]].to_dict()
        assert reloaded._sessions[session["id"]].to_dict() == original

    def test_reloaded_store_continues_identically(self, tmp_path):
        path = tmp_path / "sessions.json"
        client = TestClient(create_app(store=SessionStore(path)))
        session = create_session(client, seed=31, n=16)
        TestMeasure().run_round(client, session["id"], k=4, l=5)

        # A twin session with the same seed, played without interruption.
        twin_client = TestClient(create_app(store=SessionStore()))
        twin = create_session(twin_client, seed=31, n=16)
        twin_first = TestMeasure().run_round(twin_client, twin["id"], k=4, l=5)

        reloaded_client = TestClient(create_app(store=SessionStore(path)))
        for _ in range(50):
            view = TestMeasure().run_round(reloaded_client, session["id"], k=5, l=3)
            twin_view = TestMeasure().run_round(twin_client, twin["id"], k=5, l=3)
            assert view["outcome"] == twin_view["outcome"]
            if view["phase"] == "settled":
                assert twin_view["phase"] == "settled"
                assert view["tosser_bankroll"] == twin_view["tosser_bankroll"]
                break
        else:
            pytest.fail("session never settled")

    def test_snapshot_file_is_valid_json(self, tmp_path):
        path = tmp_path / "sessions.json"
        client = TestClient(create_app(store=SessionStore(path)))
        create_session(client)
        payload = json.loads(path.read_text())
        assert len(payload["sessions"]) == 1


class TestConcurrency:
    def test_hammered_session_stays_consistent(self, client):
        import threading

        session = create_session(client, n=16, bet=5)
        session_id = session["id"]
        statuses = []

        def worker(seed_offset):
            for i in range(25):
                step = (i + seed_offset) % 3
                if step == 0:
                    r = client.post(
                        f"/api/sessions/{session_id}/tosser-move",
                        json={"k": (i * 3) % 16},
                    )
                elif step == 1:
                    r = client.post(
                        f"/api/sessions/{session_id}/gambler-move",
                        json={"l": (i * 5) % 16},
                    )
                else:
                    r = client.post(f"/api/sessions/{session_id}/measure")
                statuses.append(r.status_code)

        threads = [threading.Thread(target=worker, args=(t,)) for t in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        assert set(statuses) <= {200, 409}
        view = client.get(f"/api/sessions/{session_id}").json()
        assert view["phase"] in (
            "awaiting_tosser",
            "awaiting_gambler",
            "ready_to_measure",
            "settled",
        )
        assert view["tosser_bankroll"] + view["gambler_bankroll"] == 200
        assert view["tosser_bankroll"] >= 0 and view["gambler_bankroll"] >= 0


class TestStaticClient:
    def test_serves_web_root_when_present(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>table</body></html>")
        client = TestClient(create_app(store=SessionStore(), web_root=tmp_path))
        response = client.get("/")
        assert response.status_code == 200
        assert "table" in response.text

    def test_no_web_root_no_static_mount(self, client):
        assert client.get("/").status_code == 404
