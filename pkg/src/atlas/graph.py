"""Reachable state-space graph: construction, validation stats, binary persistence.

Adjacency is CSR with both directed entries stored, neighbors sorted ascending
per node, so construction is byte-deterministic regardless of enumeration
strategy.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from . import puzzle
from .errors import BadChecksum, BadMagic, IdOutOfRange, VersionMismatch

GRAPH_MAGIC = b"8PSS"
GRAPH_VERSION = 1

_SENTINEL = np.uint32(0xFFFFFFFF)

# (blank delta, legality predicate) per direction, same semantics as puzzle._MOVE_DELTA
_DIRECTION_RULES = (
    (-3, lambda blank: blank >= 3),  # up
    (3, lambda blank: blank < 6),  # down
    (-1, lambda blank: blank % 3 > 0),  # left
    (1, lambda blank: blank % 3 < 2),  # right
)


@dataclass(frozen=True)
class StateGraph:
    node_count: int
    offsets: np.ndarray  # uint32, node_count + 1
    neighbors: np.ndarray  # uint32, flat, both directions
    goal_id: int
    _adjacency_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def neighbors_of(self, state_id: int) -> np.ndarray:
        if not 0 <= state_id < self.node_count:
            raise IdOutOfRange(f"id {state_id} outside 0..{self.node_count - 1}")
        return self.neighbors[self.offsets[state_id] : self.offsets[state_id + 1]]

    def adjacency_lists(self) -> list:
        """Python list-of-tuples view, cached; much faster for per-node search loops."""
        cached = self._adjacency_cache.get("lists")
        if cached is None:
            flat = self.neighbors.tolist()
            offs = self.offsets.tolist()
            cached = [tuple(flat[offs[u] : offs[u + 1]]) for u in range(self.node_count)]
            self._adjacency_cache["lists"] = cached
        return cached

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    undirected_edge_count: int
    degree_histogram: Dict[int, int]
    eccentricity_from_goal: int

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "undirected_edge_count": self.undirected_edge_count,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "eccentricity_from_goal": self.eccentricity_from_goal,
        }


def _neighbor_id_matrix(states: np.ndarray) -> np.ndarray:
    """(m, 4) dense-id neighbors per state row, sentinel-padded, one column per direction."""
    m = len(states)
    blank = np.argmin(states, axis=1)
    out = np.full((m, 4), _SENTINEL, dtype=np.uint32)
    rows = np.arange(m)
    for col, (delta, legal) in enumerate(_DIRECTION_RULES):
        mask = legal(blank)
        src = rows[mask]
        b = blank[mask]
        t = b + delta
        moved = states[mask].copy()
        moved[np.arange(len(src)), b] = moved[np.arange(len(src)), t]
        moved[np.arange(len(src)), t] = 0
        out[src, col] = puzzle.rank_many(moved)
    return out


def _csr_from_neighbor_matrix(nbr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ordered = np.sort(nbr, axis=1)  # sentinel is max uint32, sorts last
    degrees = (ordered != _SENTINEL).sum(axis=1).astype(np.uint32)
    offsets = np.zeros(len(nbr) + 1, dtype=np.uint32)
    np.cumsum(degrees, out=offsets[1:])
    flat = ordered.ravel()
    neighbors = flat[flat != _SENTINEL].astype(np.uint32)
    return offsets, neighbors


def build_graph(goal: puzzle.State = puzzle.GOAL, strategy: str = "sweep") -> StateGraph:
    """Enumerate all 181,440 reachable states and build the CSR adjacency.

    strategy 'sweep' ranks every dense id directly; 'bfs' floods outward from
    the goal. Both produce byte-identical CSR arrays.
    """
    goal = puzzle.validate_state(goal)
    goal_id = puzzle.rank(goal)
    states = puzzle.state_table()
    n = len(states)

    if strategy == "sweep":
        nbr = _neighbor_id_matrix(states)
    elif strategy == "bfs":
        nbr = np.full((n, 4), _SENTINEL, dtype=np.uint32)
        seen = np.zeros(n, dtype=bool)
        frontier = np.array([goal_id], dtype=np.uint32)
        seen[goal_id] = True
        while len(frontier):
            rows = _neighbor_id_matrix(states[frontier])
            nbr[frontier] = rows
            found = rows[rows != _SENTINEL]
            fresh = np.unique(found[~seen[found]])
            seen[fresh] = True
            frontier = fresh
        if not seen.all():
            raise AssertionError("BFS enumeration did not reach every solvable state")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    offsets, neighbors = _csr_from_neighbor_matrix(nbr)
    return StateGraph(node_count=n, offsets=offsets, neighbors=neighbors, goal_id=goal_id)


def neighbors_of(g: StateGraph, state_id: int) -> list[int]:
    return [int(v) for v in g.neighbors_of(state_id)]


def compute_stats(g: StateGraph) -> GraphStats:
    from .search import bfs_distance_map  # local import: search depends on graph types

    degrees = g.degrees()
    values, counts = np.unique(degrees, return_counts=True)
    hist = {int(v): int(c) for v, c in zip(values, counts)}
    dist = bfs_distance_map(g, g.goal_id)
    if (dist < 0).any():
        raise AssertionError("graph is not connected from goal")
    return GraphStats(
        node_count=g.node_count,
        undirected_edge_count=len(g.neighbors) // 2,
        degree_histogram=hist,
        eccentricity_from_goal=int(dist.max()),
    )


def save_graph(g: StateGraph, path) -> None:
    header = struct.pack(
        "<4sHHIII",
        GRAPH_MAGIC,
        GRAPH_VERSION,
        0,
        g.node_count,
        len(g.neighbors),
        g.goal_id,
    )
    payload = (
        header
        + g.offsets.astype("<u4").tobytes()
        + g.neighbors.astype("<u4").tobytes()
    )
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    with open(path, "wb") as f:
        f.write(payload)
        f.write(struct.pack("<I", crc))


def load_graph(path) -> StateGraph:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < 4 or data[:4] != GRAPH_MAGIC:
        raise BadMagic(f"{path}: not a graph file")
    if len(data) < 20:
        raise BadChecksum(f"{path}: truncated header")
    version, _reserved, node_count, entry_count, goal_id = struct.unpack(
        "<HHIII", data[4:20]
    )
    if version != GRAPH_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {GRAPH_VERSION}")
    expected = 20 + 4 * (node_count + 1) + 4 * entry_count + 4
    if len(data) != expected:
        raise BadChecksum(f"{path}: size {len(data)}, expected {expected}")
    crc_stored = struct.unpack("<I", data[-4:])[0]
    crc = zlib.crc32(data[:-4]) & 0xFFFFFFFF
    if crc != crc_stored:
        raise BadChecksum(f"{path}: CRC mismatch")
    offs_end = 20 + 4 * (node_count + 1)
    offsets = np.frombuffer(data, dtype="<u4", count=node_count + 1, offset=20).copy()
    neighbors = np.frombuffer(data, dtype="<u4", count=entry_count, offset=offs_end).copy()
    return StateGraph(
        node_count=node_count, offsets=offsets, neighbors=neighbors, goal_id=goal_id
    )
