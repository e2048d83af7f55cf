"""3D layouts of the state space: force-on-sphere, depth shells, heuristic shells.

All layouts are deterministic. Shell layouts place the focal node at the
origin and every node at shell k >= 1 on a sphere of radius
base_radius + (k - 1) * shell_spacing, filled by a Fibonacci lattice in
ascending state-id order. The force layout runs Jacobi-style iterations
(forces computed from a frozen snapshot) so output never depends on
evaluation order.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import puzzle
from .errors import BadChecksum, BadMagic, IdOutOfRange, VersionMismatch
from .graph import StateGraph
from .search import bfs_distance_map

LAYOUT_MAGIC = b"8PLY"
LAYOUT_VERSION = 1

_GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


class LayoutKind(Enum):
    FORCE = "force"
    DEPTH = "depth"
    HEURISTIC = "heuristic"


_KIND_CODE = {LayoutKind.FORCE: 0, LayoutKind.DEPTH: 1, LayoutKind.HEURISTIC: 2}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}


@dataclass(frozen=True)
class LayoutParams:
    seed: int = 0
    iterations: int = 300
    repulsion_strength: float = 1.0
    attraction_strength: float = 0.1
    sample_count: int = 16
    sphere_radius: float = 100.0
    base_radius: float = 10.0
    shell_spacing: float = 6.0
    root: int = 0

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        for name in ("repulsion_strength", "attraction_strength", "sphere_radius",
                     "base_radius", "shell_spacing"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class LayoutResult:
    kind: LayoutKind
    params: LayoutParams
    positions: np.ndarray  # (node_count, 3) float32


def fibonacci_sphere(n: int) -> np.ndarray:
    """n near-uniform points on the unit sphere (golden-angle spiral)."""
    i = np.arange(n, dtype=np.float64)
    z = 1.0 - 2.0 * (i + 0.5) / n
    theta = 2.0 * np.pi * i / _GOLDEN
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def _shell_layout(
    shell_index: np.ndarray, kind: LayoutKind, params: LayoutParams
) -> LayoutResult:
    n = len(shell_index)
    positions = np.zeros((n, 3), dtype=np.float32)
    for k in range(1, int(shell_index.max()) + 1):
        ids = np.nonzero(shell_index == k)[0]  # ascending id order
        if len(ids) == 0:
            continue
        radius = params.base_radius + (k - 1) * params.shell_spacing
        positions[ids] = (fibonacci_sphere(len(ids)) * radius).astype(np.float32)
    return LayoutResult(kind=kind, params=params, positions=positions)


def depth_layout(g: StateGraph, params: LayoutParams = LayoutParams()) -> LayoutResult:
    """Concentric shells by BFS depth from params.root; root at the origin."""
    depth = bfs_distance_map(g, params.root)
    return _shell_layout(depth, LayoutKind.DEPTH, params)


def heuristic_layout(
    g: StateGraph, goal: Optional[int] = None, params: LayoutParams = LayoutParams()
) -> LayoutResult:
    """Concentric shells by Manhattan distance to goal; goal at the origin."""
    goal_id = g.goal_id if goal is None else goal
    if not 0 <= goal_id < g.node_count:
        raise IdOutOfRange(f"goal id {goal_id} outside 0..{g.node_count - 1}")
    h = puzzle.manhattan_all(puzzle.unrank(goal_id)).astype(np.int64)
    return _shell_layout(h, LayoutKind.HEURISTIC, params)


def _seeded_sphere_points(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    pts = rng.standard_normal((n, 3)).astype(np.float32)
    norms = np.linalg.norm(pts, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return pts * (radius / norms)


def force_layout(g: StateGraph, params: LayoutParams = LayoutParams()) -> LayoutResult:
    """Sampled-repulsion force simulation constrained to a sphere.

    PRNG is numpy PCG64 seeded with params.seed; with a fixed seed and
    iteration count the output is bit-identical across runs. Repulsion uses
    sample_count random partners per node per iteration instead of all pairs.
    Displacement is capped at 2% of the sphere radius per iteration and
    positions are re-projected onto the sphere after every update.
    """
    n = g.node_count
    radius = np.float32(params.sphere_radius)
    rng = np.random.default_rng(params.seed)
    pos = _seeded_sphere_points(rng, n, float(radius))

    src = np.repeat(np.arange(n), g.degrees()).astype(np.int64)
    dst = g.neighbors.astype(np.int64)
    degrees = g.degrees().astype(np.float32)
    cap = np.float32(0.02) * radius
    att_k = np.float32(params.attraction_strength)
    rep_k = np.float32(params.repulsion_strength)
    eps = np.float32(1e-6)

    for _ in range(params.iterations):
        force = np.empty((n, 3), dtype=np.float32)
        nb = pos[dst]
        for c in range(3):
            s = np.bincount(src, weights=nb[:, c].astype(np.float64), minlength=n)
            force[:, c] = att_k * (s.astype(np.float32) - degrees * pos[:, c])

        partners = rng.integers(0, n, size=(n, params.sample_count))
        diff = pos[:, None, :] - pos[partners]
        d2 = np.maximum(np.einsum("nkc,nkc->nk", diff, diff), eps)
        force += rep_k * np.einsum("nkc,nk->nc", diff, np.float32(1.0) / d2)

        norm = np.linalg.norm(force, axis=1)
        scale = np.minimum(np.float32(1.0), cap / np.maximum(norm, eps))
        pos = pos + force * scale[:, None]
        norms = np.linalg.norm(pos, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        pos = pos * (radius / norms)

    return LayoutResult(kind=LayoutKind.FORCE, params=params, positions=pos.astype(np.float32))


def mean_neighbor_distance(g: StateGraph, positions: np.ndarray) -> float:
    """Mean Euclidean distance between graph-adjacent nodes."""
    src = np.repeat(np.arange(g.node_count), g.degrees()).astype(np.int64)
    dst = g.neighbors.astype(np.int64)
    d = np.linalg.norm(positions[src].astype(np.float64) - positions[dst].astype(np.float64), axis=1)
    return float(d.mean())


def compute_layout(
    g: StateGraph, kind: LayoutKind, params: LayoutParams = LayoutParams()
) -> LayoutResult:
    if kind is LayoutKind.FORCE:
        return force_layout(g, params)
    if kind is LayoutKind.DEPTH:
        return depth_layout(g, params)
    return heuristic_layout(g, params=params)


def layout_to_bytes(result: LayoutResult) -> bytes:
    header = struct.pack(
        "<4sHBBIQ",
        LAYOUT_MAGIC,
        LAYOUT_VERSION,
        _KIND_CODE[result.kind],
        0,
        len(result.positions),
        result.params.seed,
    )
    payload = header + result.positions.astype("<f4").tobytes()
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    return payload + struct.pack("<I", crc)


def save_layout(result: LayoutResult, path) -> None:
    with open(path, "wb") as f:
        f.write(layout_to_bytes(result))


def layout_from_bytes(data: bytes, source: str = "<bytes>") -> LayoutResult:
    if len(data) < 4 or data[:4] != LAYOUT_MAGIC:
        raise BadMagic(f"{source}: not a layout file")
    if len(data) < 20:
        raise BadChecksum(f"{source}: truncated header")
    version, kind_code, _reserved, node_count, seed = struct.unpack("<HBBIQ", data[4:20])
    if version != LAYOUT_VERSION:
        raise VersionMismatch(f"{source}: format version {version}, expected {LAYOUT_VERSION}")
    if kind_code not in _CODE_KIND:
        raise BadChecksum(f"{source}: unknown layout kind {kind_code}")
    expected = 20 + 12 * node_count + 4
    if len(data) != expected:
        raise BadChecksum(f"{source}: size {len(data)}, expected {expected}")
    crc_stored = struct.unpack("<I", data[-4:])[0]
    if zlib.crc32(data[:-4]) & 0xFFFFFFFF != crc_stored:
        raise BadChecksum(f"{source}: CRC mismatch")
    positions = (
        np.frombuffer(data, dtype="<f4", count=node_count * 3, offset=20)
        .reshape(node_count, 3)
        .copy()
    )
    return LayoutResult(
        kind=_CODE_KIND[kind_code],
        params=LayoutParams(seed=seed),
        positions=positions,
    )


def load_layout(path) -> LayoutResult:
    with open(path, "rb") as f:
        data = f.read()
    return layout_from_bytes(data, source=str(path))
