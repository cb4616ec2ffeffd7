"""HTTP/WebSocket service exposing the engine to UI clients.

Endpoints:
    POST /sessions                  create a session (seed echoed back)
    POST /sessions/{id}/messages    run one turn, returns the TurnRecord
    GET  /sessions/{id}/state       full snapshot plus the turn log
    GET  /health                    liveness + KB counts
    WS   /sessions/{id}/stream      pushes each TurnRecord as it happens

All payloads are JSON documents carrying a versioned `schema` field.
Sessions are in-memory; per-session posts are strictly serialized, distinct
sessions run concurrently over the shared immutable KB.
"""

from __future__ import annotations

import asyncio
import logging
from typing import Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from socialbot.engine import ChatSession, Engine, GREETING, SessionEnded
from socialbot.reasoner import ReasonerConfig

log = logging.getLogger(__name__)


class CreateSessionBody(BaseModel):
    seed: Optional[int] = None
    p_continue_topic: Optional[float] = None
    p_continue_attr: Optional[float] = None
    p_ask: Optional[float] = None
    recommend_threshold: Optional[int] = None
    fallback_instances: Optional[list[str]] = None


class MessageBody(BaseModel):
    text: str


class _SessionBox:
    def __init__(self, chat: ChatSession):
        self.chat = chat
        self.lock = asyncio.Lock()
        self.streams: set[WebSocket] = set()


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="socialbot service")
    # The browser client may be served from any origin; there is no
    # authentication beyond session ids, so a blanket allow is fine here.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, _SessionBox] = {}
    app.state.engine = engine
    app.state.sessions = sessions

    def _get(session_id: str) -> _SessionBox:
        box = sessions.get(session_id)
        if box is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return box

    @app.get("/health")
    def health() -> dict:
        counts = engine.kb.counts()
        return {"schema": "health/1", "status": "ok", "kb": counts}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody) -> dict:
        base = engine.config
        config = ReasonerConfig(
            p_continue_topic=(
                body.p_continue_topic
                if body.p_continue_topic is not None
                else base.p_continue_topic
            ),
            p_continue_attr=(
                body.p_continue_attr
                if body.p_continue_attr is not None
                else base.p_continue_attr
            ),
            p_ask=body.p_ask if body.p_ask is not None else base.p_ask,
            recommend_threshold=(
                body.recommend_threshold
                if body.recommend_threshold is not None
                else base.recommend_threshold
            ),
            fallback_instances=(
                tuple(body.fallback_instances)
                if body.fallback_instances
                else base.fallback_instances
            ),
        )
        chat = engine.create_session(seed=body.seed, config=config)
        sessions[chat.id] = _SessionBox(chat)
        return {
            "schema": "session/1",
            "session_id": chat.id,
            "seed": chat.session.seed,
            "greeting": GREETING,
        }

    @app.post("/sessions/{session_id}/messages")
    async def post_message(session_id: str, body: MessageBody) -> dict:
        box = _get(session_id)
        async with box.lock:  # one in-flight message per session
            try:
                record = await run_in_threadpool(engine.post, box.chat, body.text)
            except SessionEnded:
                raise HTTPException(status_code=409, detail="session has ended") from None
        doc = record.to_dict()
        dead = []
        for ws in box.streams:
            try:
                await ws.send_json(doc)
            except Exception:
                dead.append(ws)
        for ws in dead:
            box.streams.discard(ws)
        return doc

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict:
        return _get(session_id).chat.state_document()

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        box = sessions.get(session_id)
        if box is None:
            await websocket.close(code=4004)
            return
        await websocket.accept()
        box.streams.add(websocket)
        try:
            while True:
                await websocket.receive_text()  # keepalive pings, ignored
        except WebSocketDisconnect:
            pass
        finally:
            box.streams.discard(websocket)

    return app
