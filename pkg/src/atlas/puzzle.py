"""Core 8-puzzle model: states, moves, solvability, dense ranking, Manhattan heuristic.

A state is a tuple of 9 ints (row-major, 0 = blank). Move directions name the
motion of the BLANK. All functions here are pure; the enumeration tables are
built once and cached.
"""
from __future__ import annotations

import itertools
from enum import Enum
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import IdOutOfRange, UnreachableState

State = Tuple[int, ...]

N_CELLS = 9
N_STATES = 181_440  # 9!/2, the reachable half of all permutations

GOAL: State = (1, 2, 3, 4, 5, 6, 7, 8, 0)

_FACT = [factorial(i) for i in range(N_CELLS)]


class MoveDir(Enum):
    """Direction the blank moves. Canonical neighbor order is declaration order."""

    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"


# blank-index delta per direction, with board-edge predicate
_MOVE_DELTA = {
    MoveDir.UP: -3,
    MoveDir.DOWN: 3,
    MoveDir.LEFT: -1,
    MoveDir.RIGHT: 1,
}


def inverse(d: MoveDir) -> MoveDir:
    return {
        MoveDir.UP: MoveDir.DOWN,
        MoveDir.DOWN: MoveDir.UP,
        MoveDir.LEFT: MoveDir.RIGHT,
        MoveDir.RIGHT: MoveDir.LEFT,
    }[d]


def canonical_goal() -> State:
    """Tiles 1..8 in row-major order, blank bottom-right."""
    return GOAL


def validate_state(s: Sequence[int]) -> State:
    t = tuple(int(x) for x in s)
    if sorted(t) != list(range(N_CELLS)):
        raise ValueError(f"not a permutation of 0..8: {t!r}")
    return t


def parse_state(text: str) -> State:
    """Parse the nine-digit text form, e.g. '123456780' (0 = blank)."""
    if len(text) != N_CELLS or not text.isdigit():
        raise ValueError(f"state text must be 9 digits, got {text!r}")
    return validate_state(int(c) for c in text)


def format_state(s: State) -> str:
    return "".join(str(c) for c in s)


def _move_legal(blank: int, d: MoveDir) -> bool:
    if d is MoveDir.UP:
        return blank >= 3
    if d is MoveDir.DOWN:
        return blank < 6
    if d is MoveDir.LEFT:
        return blank % 3 > 0
    return blank % 3 < 2


def legal_moves(s: State) -> list[MoveDir]:
    """Moves that keep the blank on the board, in canonical order."""
    blank = s.index(0)
    return [d for d in MoveDir if _move_legal(blank, d)]


def apply_move(s: State, d: MoveDir) -> Optional[State]:
    """Swap the blank with the adjacent tile in direction d, or None if illegal."""
    blank = s.index(0)
    if not _move_legal(blank, d):
        return None
    j = blank + _MOVE_DELTA[d]
    out = list(s)
    out[blank], out[j] = out[j], out[blank]
    return tuple(out)


def inversion_count(s: State) -> int:
    """Inversions over the tile sequence with the blank removed."""
    tiles = [c for c in s if c != 0]
    return sum(
        1
        for i in range(len(tiles))
        for j in range(i + 1, len(tiles))
        if tiles[i] > tiles[j]
    )


def is_solvable(s: State) -> bool:
    """True iff s shares the goal's permutation parity (goal has 0 inversions)."""
    return inversion_count(s) % 2 == 0


@lru_cache(maxsize=1)
def _tables() -> tuple[np.ndarray, np.ndarray]:
    """(states, lehmer_ranks): all solvable permutations in lexicographic order.

    states[id] is the cells array for dense id; lehmer_ranks[id] is its
    lexicographic rank among all 9! permutations (strictly increasing).
    """
    perms = np.array(list(itertools.permutations(range(N_CELLS))), dtype=np.uint8)
    inv = np.zeros(len(perms), dtype=np.int64)
    for i in range(N_CELLS):
        for j in range(i + 1, N_CELLS):
            inv += perms[:, i] > perms[:, j]
    blank = np.argmin(perms, axis=1)
    # inversions involving the blank = number of tiles left of it
    solvable = (inv - blank) % 2 == 0
    states = np.ascontiguousarray(perms[solvable])
    lehmer_ranks = np.nonzero(solvable)[0].astype(np.uint32)
    assert len(states) == N_STATES
    return states, lehmer_ranks


def state_table() -> np.ndarray:
    """(181440, 9) uint8 array: cells of every solvable state, by dense id."""
    return _tables()[0]


def lehmer_rank(s: State) -> int:
    """Lexicographic rank of s among all 9! permutations."""
    r = 0
    for i in range(N_CELLS):
        smaller = sum(1 for j in range(i + 1, N_CELLS) if s[j] < s[i])
        r += smaller * _FACT[N_CELLS - 1 - i]
    return r


def rank(s: State) -> int:
    """Dense id: ordinal of s among solvable permutations in lexicographic order."""
    if not is_solvable(s):
        raise UnreachableState(f"state {format_state(s)} has odd parity")
    _, ranks = _tables()
    r = lehmer_rank(s)
    idx = int(np.searchsorted(ranks, r))
    return idx


def unrank(state_id: int) -> State:
    if not 0 <= state_id < N_STATES:
        raise IdOutOfRange(f"id {state_id} outside 0..{N_STATES - 1}")
    states, _ = _tables()
    return tuple(int(c) for c in states[state_id])


def rank_many(cells: np.ndarray) -> np.ndarray:
    """Vectorized rank over an (m, 9) array of solvable permutations."""
    _, ranks = _tables()
    r = np.zeros(len(cells), dtype=np.uint64)
    for i in range(N_CELLS):
        smaller = np.zeros(len(cells), dtype=np.uint64)
        for j in range(i + 1, N_CELLS):
            smaller += cells[:, j] < cells[:, i]
        r += smaller * _FACT[N_CELLS - 1 - i]
    ids = np.searchsorted(ranks, r)
    return ids.astype(np.uint32)


def manhattan(s: State, goal: State = GOAL) -> int:
    """Sum over tiles 1..8 of grid distance between s and goal placement."""
    pos = {c: i for i, c in enumerate(goal)}
    total = 0
    for i, c in enumerate(s):
        if c == 0:
            continue
        j = pos[c]
        total += abs(i // 3 - j // 3) + abs(i % 3 - j % 3)
    return total


@lru_cache(maxsize=16)
def manhattan_all(goal: State = GOAL) -> np.ndarray:
    """Manhattan distance to goal for every solvable state, indexed by dense id."""
    states = state_table()
    where = np.argsort(states, axis=1)  # where[:, v] = cell index of value v
    h = np.zeros(len(states), dtype=np.uint8)
    goal_pos = {c: i for i, c in enumerate(goal)}
    for tile in range(1, N_CELLS):
        gi = goal_pos[tile]
        idx = where[:, tile]
        h += (np.abs(idx // 3 - gi // 3) + np.abs(idx % 3 - gi % 3)).astype(np.uint8)
    return h
