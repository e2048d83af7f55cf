"""Steppable BFS/DFS/A* sessions over the state graph.

Every session emits one TraceEvent per step. The stream for a fixed
(algo, start, goal, graph) is fully deterministic: BFS discovers neighbors in
ascending id order, DFS pushes descending so it pops ascending, and A* breaks
ties on f by smaller h then insertion order.
"""
from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional

import numpy as np

from . import puzzle
from .errors import IdOutOfRange, SessionTerminated
from .graph import StateGraph


class SearchAlgo(Enum):
    BFS = "bfs"
    DFS = "dfs"
    ASTAR = "astar"


class EventKind(Enum):
    DISCOVER = "discover"
    EXPAND = "expand"
    GOAL = "goal"
    EXHAUSTED = "exhausted"


class SessionStatus(Enum):
    RUNNING = "running"
    SUCCEEDED = "succeeded"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class TraceEvent:
    step: int
    kind: EventKind
    node: int
    parent: Optional[int]
    g: int
    h: int
    f: int

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "kind": self.kind.value,
            "node": self.node,
            "parent": self.parent,
            "g": self.g,
            "h": self.h,
            "f": self.f,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class SearchResult:
    found: bool
    path: List[int]
    expanded_count: int
    discovered_count: int

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "path": self.path,
            "expanded_count": self.expanded_count,
            "discovered_count": self.discovered_count,
        }


def bfs_distance_map(g: StateGraph, source: int) -> np.ndarray:
    """Exact BFS depth of every node from source (-1 is unreachable)."""
    if not 0 <= source < g.node_count:
        raise IdOutOfRange(f"source {source} outside 0..{g.node_count - 1}")
    dist = np.full(g.node_count, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    depth = 0
    offsets = g.offsets.astype(np.int64)
    while len(frontier):
        starts = offsets[frontier]
        counts = offsets[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        shift = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        cand = g.neighbors[base + shift].astype(np.int64)
        fresh = cand[dist[cand] < 0]
        if len(fresh) == 0:
            break
        depth += 1
        dist[fresh] = depth
        frontier = np.unique(fresh)
    return dist


class SearchSession:
    """Single-owner resumable search; not safe for concurrent stepping."""

    def __init__(self, graph: StateGraph, algo: SearchAlgo, start: int, goal: int):
        for name, v in (("start", start), ("goal", goal)):
            if not 0 <= v < graph.node_count:
                raise IdOutOfRange(f"{name} id {v} outside 0..{graph.node_count - 1}")
        self.graph = graph
        self.algo = algo
        self.start = start
        self.goal = goal
        self.status = SessionStatus.RUNNING
        self.steps_emitted = 0
        self.expanded_count = 0
        self.discovered_count = 0

        n = graph.node_count
        self._adj = graph.adjacency_lists()
        self._parent = np.full(n, -1, dtype=np.int64)
        self._g = np.full(n, -1, dtype=np.int64)
        self._discovered = np.zeros(n, dtype=bool)
        self._closed = np.zeros(n, dtype=bool)
        if algo is SearchAlgo.ASTAR:
            goal_state = puzzle.unrank(goal)
            self._h = puzzle.manhattan_all(goal_state).astype(np.int64)
        else:
            self._h = None

        self._g[start] = 0
        self._discovered[start] = True
        if algo is SearchAlgo.BFS:
            self._queue = deque([start])
        elif algo is SearchAlgo.DFS:
            self._stack = [start]
        else:
            self._heap = []
            self._seq = 0
            heapq.heappush(self._heap, (int(self._h[start]), int(self._h[start]), 0, start))
        self._buffer: deque[tuple] = deque()
        self._buffer.append(self._event_tuple(EventKind.DISCOVER, start, None, 0))

    def _event_tuple(self, kind: EventKind, node: int, parent, g: int) -> tuple:
        h = int(self._h[node]) if self._h is not None else 0
        return (kind, node, parent, g, h, g + h)

    def _h_of(self, node: int) -> int:
        return int(self._h[node]) if self._h is not None else 0

    def _pop_next(self) -> Optional[int]:
        if self.algo is SearchAlgo.BFS:
            return self._queue.popleft() if self._queue else None
        if self.algo is SearchAlgo.DFS:
            return self._stack.pop() if self._stack else None
        while self._heap:
            _f, _h, _seq, node = heapq.heappop(self._heap)
            if self._closed[node]:
                continue  # stale entry superseded by a better g
            if _f != self._g[node] + _h:
                continue
            return node
        return None

    def _expand_once(self) -> None:
        u = self._pop_next()
        if u is None:
            self._buffer.append(self._event_tuple(EventKind.EXHAUSTED, self.start, None, 0))
            return
        gu = int(self._g[u])
        if u == self.goal:
            parent = int(self._parent[u]) if self._parent[u] >= 0 else None
            self._buffer.append(self._event_tuple(EventKind.GOAL, u, parent, gu))
            return
        parent = int(self._parent[u]) if self._parent[u] >= 0 else None
        self._buffer.append(self._event_tuple(EventKind.EXPAND, u, parent, gu))
        self._closed[u] = True

        if self.algo is SearchAlgo.DFS:
            neighbors: Iterator[int] = reversed(self._adj[u])
        else:
            neighbors = iter(self._adj[u])
        for v in neighbors:
            if self.algo is SearchAlgo.ASTAR:
                t = gu + 1
                if not self._discovered[v]:
                    self._discovered[v] = True
                    self._g[v] = t
                    self._parent[v] = u
                    self._seq += 1
                    hv = int(self._h[v])
                    heapq.heappush(self._heap, (t + hv, hv, self._seq, v))
                    self._buffer.append(self._event_tuple(EventKind.DISCOVER, v, u, t))
                elif not self._closed[v] and t < self._g[v]:
                    # silent decrease-key: no second discover event
                    self._g[v] = t
                    self._parent[v] = u
                    self._seq += 1
                    hv = int(self._h[v])
                    heapq.heappush(self._heap, (t + hv, hv, self._seq, v))
            else:
                if self._discovered[v]:
                    continue
                self._discovered[v] = True
                self._g[v] = gu + 1
                self._parent[v] = u
                if self.algo is SearchAlgo.BFS:
                    self._queue.append(v)
                else:
                    self._stack.append(v)
                self._buffer.append(self._event_tuple(EventKind.DISCOVER, v, u, gu + 1))

    def step(self) -> TraceEvent:
        if self.status is not SessionStatus.RUNNING:
            raise SessionTerminated(f"session already {self.status.value}")
        if not self._buffer:
            self._expand_once()
        kind, node, parent, g, h, f = self._buffer.popleft()
        event = TraceEvent(self.steps_emitted, kind, node, parent, g, h, f)
        self.steps_emitted += 1
        if kind is EventKind.DISCOVER:
            self.discovered_count += 1
        elif kind in (EventKind.EXPAND, EventKind.GOAL):
            self.expanded_count += 1
        if kind is EventKind.GOAL:
            self.status = SessionStatus.SUCCEEDED
        elif kind is EventKind.EXHAUSTED:
            self.status = SessionStatus.EXHAUSTED
        return event

    def run_to_completion(self) -> SearchResult:
        if self.status is not SessionStatus.RUNNING:
            raise SessionTerminated(f"session already {self.status.value}")
        while self.status is SessionStatus.RUNNING:
            self.step()
        return self.result()

    def result(self) -> SearchResult:
        found = self.status is SessionStatus.SUCCEEDED
        path: List[int] = []
        if found:
            node = self.goal
            while node != -1:
                path.append(int(node))
                if node == self.start:
                    break
                node = int(self._parent[node])
            path.reverse()
        return SearchResult(
            found=found,
            path=path,
            expanded_count=self.expanded_count,
            discovered_count=self.discovered_count,
        )


def new_session(
    graph: StateGraph, algo: SearchAlgo, start: int, goal: int
) -> SearchSession:
    return SearchSession(graph, algo, start, goal)


def run_search(
    graph: StateGraph, algo: SearchAlgo, start: int, goal: int
) -> SearchResult:
    return new_session(graph, algo, start, goal).run_to_completion()


def trace_to_jsonl(events) -> str:
    return "\n".join(e.to_json() for e in events) + "\n"
