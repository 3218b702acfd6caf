"""REST service for the game and its analysis tables.

Sessions live in an in-memory store keyed by opaque ids, with an optional
JSON snapshot file (written atomically on every mutation, reloaded at
startup) controlled by ``QTG_SNAPSHOT_PATH``.  Each session carries its own
seeded random stream plus the number of draws already consumed, so a
reloaded snapshot continues with the exact same measurement outcomes.

Mutations to one session are serialized by a per-session lock; requests
against different sessions run in parallel.  Errors use a flat JSON shape
``{"code", "message"}`` with codes ``invalid_argument`` (400),
``not_found`` (404), ``protocol_violation`` / ``insufficient_funds`` (409)
and ``unsupported_order`` (422).

When a built web client directory is available (``QTG_WEB_ROOT`` or the
``web_root`` argument), it is served statically under ``/``.
"""

from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import analysis
from .engine import (
    GameSession,
    InsufficientFundsError,
    ProbabilityProfile,
    ProtocolViolationError,
    Round,
)
from .groups import UnsupportedOrderError

SNAPSHOT_ENV = "QTG_SNAPSHOT_PATH"
WEB_ROOT_ENV = "QTG_WEB_ROOT"

__all__ = ["SNAPSHOT_ENV", "WEB_ROOT_ENV", "SessionStore", "create_app"]


class NotFoundError(LookupError):
    pass


class SessionStore:
    """Thread-safe registry of live sessions with optional JSON snapshots."""

    def __init__(self, snapshot_path: str | Path | None = None):
        self._mutex = threading.Lock()
        self._sessions: dict[str, GameSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self.snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self.snapshot_path is not None and self.snapshot_path.exists():
            self.load()

    def add(self, session: GameSession) -> None:
        with self._mutex:
            if session.id in self._sessions:
                raise ValueError(f"duplicate session id {session.id!r}")
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        self.save()

    @contextmanager
    def locked(self, session_id: str, save: bool = True):
        """Yield one session under its lock; snapshot afterwards if mutating."""
        with self._mutex:
            session = self._sessions.get(session_id)
            lock = self._locks.get(session_id)
        if session is None or lock is None:
            raise NotFoundError(f"no session with id {session_id!r}")
        with lock:
            yield session
            if save:
                self.save()

    def ids(self) -> list[str]:
        with self._mutex:
            return list(self._sessions)

    def save(self) -> None:
        if self.snapshot_path is None:
            return
        with self._mutex:
            payload = {"sessions": [s.to_dict() for s in self._sessions.values()]}
        tmp = self.snapshot_path.with_name(self.snapshot_path.name + ".tmp")
        tmp.write_text(json.dumps(payload), encoding="utf-8")
        os.replace(tmp, self.snapshot_path)

    def load(self) -> None:
        payload = json.loads(self.snapshot_path.read_text(encoding="utf-8"))
        with self._mutex:
            self._sessions = {}
            self._locks = {}
            for data in payload["sessions"]:
                session = GameSession.from_dict(data)
                self._sessions[session.id] = session
                self._locks[session.id] = threading.Lock()


class CreateSessionRequest(BaseModel):
    n: int
    bet: int
    tosser_bankroll: int
    gambler_bankroll: int
    seed: int | None = None


class TosserMoveRequest(BaseModel):
    k: int


class GamblerMoveRequest(BaseModel):
    l: int


class BetRequest(BaseModel):
    amount: int


def _profile_payload(profile: ProbabilityProfile) -> dict:
    return {
        "p_tosser": _round12(profile.p_tosser),
        "p_gambler": _round12(profile.p_gambler),
        "p_draw": _round12(profile.p_draw),
    }


def _round12(value: float) -> float:
    return float(f"{value:.12g}")


def _round_payload(round_: Round) -> dict:
    return {
        "k": round_.k,
        "l": round_.l,
        "outcome": round_.outcome.value,
        "bet": round_.bet,
        "profile": _profile_payload(round_.profile),
    }


def session_view(session: GameSession) -> dict:
    profile = session.current_profile()
    return {
        "id": session.id,
        "n": session.n,
        "phase": session.phase.value,
        "pending_k": session.pending_k,
        "pending_l": session.pending_l,
        "bet": session.bet,
        "tosser_bankroll": session.tosser_bankroll,
        "gambler_bankroll": session.gambler_bankroll,
        "seed": session.rng.seed,
        "profile": _profile_payload(profile) if profile is not None else None,
        "history": [_round_payload(r) for r in session.history],
    }


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(
    store: SessionStore | None = None,
    web_root: str | Path | None = None,
) -> FastAPI:
    """Build the application; pass a store for tests, or rely on env vars."""
    if store is None:
        store = SessionStore(os.environ.get(SNAPSHOT_ENV) or None)

    app = FastAPI(title="qtapsilou")

    @app.exception_handler(NotFoundError)
    def _not_found(request, exc):
        return _error(404, "not_found", str(exc))

    @app.exception_handler(ProtocolViolationError)
    def _protocol(request, exc):
        return _error(409, "protocol_violation", str(exc))

    @app.exception_handler(InsufficientFundsError)
    def _funds(request, exc):
        return _error(409, "insufficient_funds", str(exc))

    @app.exception_handler(UnsupportedOrderError)
    def _order(request, exc):
        return _error(422, "unsupported_order", str(exc))

    @app.exception_handler(ValueError)
    def _value(request, exc):
        return _error(400, "invalid_argument", str(exc))

    @app.exception_handler(RequestValidationError)
    def _validation(request, exc):
        return _error(400, "invalid_argument", str(exc))

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        session = GameSession.new(
            n=body.n,
            bet=body.bet,
            tosser_bankroll=body.tosser_bankroll,
            gambler_bankroll=body.gambler_bankroll,
            seed=body.seed,
        )
        store.add(session)
        return session_view(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        with store.locked(session_id, save=False) as session:
            return session_view(session)

    @app.post("/api/sessions/{session_id}/tosser-move")
    def tosser_move(session_id: str, body: TosserMoveRequest):
        with store.locked(session_id) as session:
            session.submit_tosser_move(body.k)
            return session_view(session)

    @app.post("/api/sessions/{session_id}/gambler-move")
    def gambler_move(session_id: str, body: GamblerMoveRequest):
        with store.locked(session_id) as session:
            session.submit_gambler_move(body.l)
            return session_view(session)

    @app.post("/api/sessions/{session_id}/measure")
    def measure(session_id: str):
        with store.locked(session_id) as session:
            round_ = session.resolve()
            return {"outcome": round_.outcome.value, **session_view(session)}

    @app.post("/api/sessions/{session_id}/bet")
    def set_bet(session_id: str, body: BetRequest):
        with store.locked(session_id) as session:
            session.raise_bet(body.amount)
            return session_view(session)

    @app.get("/api/analysis/phase1")
    def analysis_phase1(n: int):
        return analysis.phase1_table(n).to_payload()

    @app.get("/api/analysis/phase2")
    def analysis_phase2(n: int, k: int):
        return analysis.phase2_table(n, k).to_payload()

    @app.get("/api/verify/duality")
    def verify_duality(n: int):
        return analysis.verify_duality(n).to_payload()

    if web_root is None:
        web_root = os.environ.get(WEB_ROOT_ENV)
    if web_root and Path(web_root).is_dir():
        app.mount("/", StaticFiles(directory=web_root, html=True), name="web")

    return app
