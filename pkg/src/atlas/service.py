"""HTTP explorer service: graph metadata, binary layout buffers, puzzle states,
and steppable server-side search sessions.

The graph and computed layouts are shared immutable; each session carries its
own lock so steps within one session are serialized while everything else runs
in parallel.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import layout as layout_mod
from . import puzzle
from .errors import IdOutOfRange, SessionTerminated
from .graph import StateGraph, compute_stats
from .search import SearchAlgo, SearchSession, SessionStatus

DEFAULT_SESSION_TTL = 1800.0


@dataclass
class _SessionEntry:
    session: SearchSession
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


class SessionRequest(BaseModel):
    algo: str
    start: int | str
    goal: Optional[int | str] = None


def _parse_state_ref(value: int | str, graph: StateGraph) -> int:
    """Accept either a dense id or the nine-digit text form."""
    if isinstance(value, str):
        try:
            return puzzle.rank(puzzle.parse_state(value))
        except (ValueError, IdOutOfRange) as e:
            raise HTTPException(status_code=400, detail=str(e))
        except Exception as e:
            raise HTTPException(status_code=400, detail=str(e))
    if not 0 <= value < graph.node_count:
        raise HTTPException(status_code=400, detail=f"id {value} out of range")
    return int(value)


def create_app(
    graph: StateGraph,
    static_dir: Optional[str] = None,
    session_ttl: float = DEFAULT_SESSION_TTL,
) -> FastAPI:
    app = FastAPI(title="8-puzzle state-space explorer")
    stats = compute_stats(graph)
    sessions: dict[str, _SessionEntry] = {}
    sessions_lock = threading.Lock()
    layout_cache: dict[tuple, bytes] = {}
    layout_lock = threading.Lock()

    def _expire_sessions() -> None:
        now = time.monotonic()
        with sessions_lock:
            dead = [k for k, e in sessions.items() if now - e.last_access > session_ttl]
            for k in dead:
                del sessions[k]

    def _get_session(session_id: str) -> _SessionEntry:
        _expire_sessions()
        with sessions_lock:
            entry = sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown session")
        entry.last_access = time.monotonic()
        return entry

    @app.get("/api/meta")
    def meta():
        return {
            **stats.to_dict(),
            "directed_entry_count": len(graph.neighbors),
            "layouts": [k.value for k in layout_mod.LayoutKind],
            "goal": puzzle.format_state(puzzle.unrank(graph.goal_id)),
            "goal_id": graph.goal_id,
        }

    @app.get("/api/layout/{kind}")
    def layout_buffer(
        kind: str,
        seed: int = 0,
        root: Optional[int] = None,
        iterations: Optional[int] = None,
    ):
        try:
            layout_kind = layout_mod.LayoutKind(kind)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown layout kind {kind!r}")
        root_id = graph.goal_id if root is None else root
        if not 0 <= root_id < graph.node_count:
            raise HTTPException(status_code=400, detail=f"root id {root_id} out of range")
        iters = 300 if iterations is None else iterations
        if iters < 0:
            raise HTTPException(status_code=400, detail="iterations must be >= 0")
        key = (layout_kind, seed, root_id, iters)
        with layout_lock:
            body = layout_cache.get(key)
            if body is None:
                params = layout_mod.LayoutParams(seed=seed, iterations=iters, root=root_id)
                if layout_kind is layout_mod.LayoutKind.HEURISTIC:
                    result = layout_mod.heuristic_layout(graph, goal=root_id, params=params)
                else:
                    result = layout_mod.compute_layout(graph, layout_kind, params)
                body = layout_mod.layout_to_bytes(result)
                layout_cache[key] = body
        return Response(content=body, media_type="application/octet-stream")

    @app.get("/api/state/{state_id}")
    def state_info(state_id: int):
        if not 0 <= state_id < graph.node_count:
            raise HTTPException(status_code=404, detail=f"id {state_id} out of range")
        s = puzzle.unrank(state_id)
        goal = puzzle.unrank(graph.goal_id)
        neighbors = []
        for d in puzzle.legal_moves(s):
            nxt = puzzle.apply_move(s, d)
            neighbors.append({"id": puzzle.rank(nxt), "move": d.value})
        return {
            "id": state_id,
            "cells": puzzle.format_state(s),
            "neighbors": neighbors,
            "h": puzzle.manhattan(s, goal),
        }

    @app.post("/api/session", status_code=201)
    def create_session(req: SessionRequest):
        _expire_sessions()
        try:
            algo = SearchAlgo(req.algo)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown algo {req.algo!r}")
        start = _parse_state_ref(req.start, graph)
        goal = graph.goal_id if req.goal is None else _parse_state_ref(req.goal, graph)
        session = SearchSession(graph, algo, start, goal)
        session_id = uuid.uuid4().hex
        with sessions_lock:
            sessions[session_id] = _SessionEntry(session)
        return _handle_info(session_id, session)

    def _handle_info(session_id: str, session: SearchSession) -> dict:
        return {
            "session_id": session_id,
            "algo": session.algo.value,
            "start": session.start,
            "goal": session.goal,
            "status": session.status.value,
            "steps_emitted": session.steps_emitted,
        }

    @app.post("/api/session/{session_id}/step")
    def step_session(session_id: str, count: int = 1):
        if count < 1:
            raise HTTPException(status_code=400, detail="count must be >= 1")
        entry = _get_session(session_id)
        with entry.lock:
            if entry.session.status is not SessionStatus.RUNNING:
                raise HTTPException(status_code=409, detail="session terminated")
            events = []
            for _ in range(count):
                try:
                    events.append(entry.session.step().to_dict())
                except SessionTerminated:
                    break
            return {
                "events": events,
                "status": entry.session.status.value,
                "steps_emitted": entry.session.steps_emitted,
            }

    @app.post("/api/session/{session_id}/run")
    def run_session(session_id: str):
        entry = _get_session(session_id)
        with entry.lock:
            if entry.session.status is not SessionStatus.RUNNING:
                raise HTTPException(status_code=409, detail="session terminated")
            result = entry.session.run_to_completion()
            return {**result.to_dict(), "status": entry.session.status.value}

    @app.delete("/api/session/{session_id}", status_code=204)
    def delete_session(session_id: str):
        with sessions_lock:
            if session_id not in sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            del sessions[session_id]
        return Response(status_code=204)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
