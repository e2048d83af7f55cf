import collections

import numpy as np
import pytest

from atlas import graph as graph_mod
from atlas import puzzle


@pytest.fixture(scope="session")
def state_graph():
    return graph_mod.build_graph()


@pytest.fixture(scope="session")
def graph_file(state_graph, tmp_path_factory):
    path = tmp_path_factory.mktemp("graph") / "graph.8pss"
    graph_mod.save_graph(state_graph, path)
    return path


@pytest.fixture(scope="session")
def oracle_bfs_distances():
    """Independent BFS over raw puzzle states: no graph, no ranking.

    Returns dict state-tuple -> distance from the canonical goal.
    """
    dist = {puzzle.GOAL: 0}
    frontier = collections.deque([puzzle.GOAL])
    while frontier:
        s = frontier.popleft()
        d = dist[s]
        for mv in puzzle.legal_moves(s):
            nxt = puzzle.apply_move(s, mv)
            if nxt not in dist:
                dist[nxt] = d + 1
                frontier.append(nxt)
    return dist


@pytest.fixture(scope="session")
def oracle_dist_array(oracle_bfs_distances):
    """Oracle distances re-indexed by dense id, for vectorized comparisons."""
    out = np.full(puzzle.N_STATES, -1, dtype=np.int32)
    for s, d in oracle_bfs_distances.items():
        out[puzzle.rank(s)] = d
    assert (out >= 0).all()
    return out
