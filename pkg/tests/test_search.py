import random

import numpy as np
import pytest

from atlas import puzzle, search
from atlas.errors import IdOutOfRange, SessionTerminated
from atlas.search import EventKind, SearchAlgo, SessionStatus


def collect_trace(graph, algo, start, goal):
    session = search.new_session(graph, algo, start, goal)
    events = []
    while session.status is SessionStatus.RUNNING:
        events.append(session.step())
    return events, session.result()


def test_session_validation(state_graph):
    with pytest.raises(IdOutOfRange):
        search.new_session(state_graph, SearchAlgo.BFS, 200_000, 0)
    with pytest.raises(IdOutOfRange):
        search.new_session(state_graph, SearchAlgo.BFS, 0, -1)


def test_start_equals_goal(state_graph):
    for algo in SearchAlgo:
        result = search.run_search(state_graph, algo, state_graph.goal_id, state_graph.goal_id)
        assert result.found
        assert result.path == [state_graph.goal_id]
        assert result.expanded_count == 1


def test_first_event_is_discover_of_start(state_graph):
    for algo in SearchAlgo:
        session = search.new_session(state_graph, algo, 12345, state_graph.goal_id)
        ev = session.step()
        assert ev.step == 0
        assert ev.kind is EventKind.DISCOVER
        assert ev.node == 12345
        assert ev.parent is None
        assert ev.g == 0


def test_step_after_terminal_raises(state_graph):
    session = search.new_session(
        state_graph, SearchAlgo.BFS, state_graph.goal_id, state_graph.goal_id
    )
    session.run_to_completion()
    with pytest.raises(SessionTerminated):
        session.step()
    with pytest.raises(SessionTerminated):
        session.run_to_completion()


def test_bfs_expand_g_matches_distance_map(state_graph):
    start = 54_321
    dist = search.bfs_distance_map(state_graph, start)
    session = search.new_session(state_graph, SearchAlgo.BFS, start, state_graph.goal_id)
    last_g = 0
    for _ in range(20_000):
        ev = session.step()
        if ev.kind in (EventKind.EXPAND, EventKind.GOAL):
            assert ev.g == dist[ev.node]
            assert ev.g >= last_g  # layer monotonicity
            last_g = ev.g
        if session.status is not SessionStatus.RUNNING:
            break


def test_astar_optimal_and_f_monotone(state_graph, oracle_dist_array):
    rng = random.Random(11)
    for _ in range(25):
        start = rng.randrange(state_graph.node_count)
        events, result = collect_trace(
            state_graph, SearchAlgo.ASTAR, start, state_graph.goal_id
        )
        assert result.found
        assert len(result.path) - 1 == oracle_dist_array[start]
        fs = [e.f for e in events if e.kind in (EventKind.EXPAND, EventKind.GOAL)]
        assert all(a <= b for a, b in zip(fs, fs[1:]))


def test_trace_invariants(state_graph):
    events, result = collect_trace(state_graph, SearchAlgo.ASTAR, 777, state_graph.goal_id)
    discovered, expanded = set(), set()
    expand_step = {}
    for ev in events:
        assert ev.f == ev.g + ev.h
        if ev.kind is EventKind.DISCOVER:
            assert ev.node not in discovered
            discovered.add(ev.node)
            if ev.parent is not None:
                assert expand_step[ev.parent] < ev.step
        elif ev.kind in (EventKind.EXPAND, EventKind.GOAL):
            assert ev.node not in expanded
            expanded.add(ev.node)
            expand_step[ev.node] = ev.step
    assert result.discovered_count == len(discovered)
    assert result.expanded_count == len(expanded)


def assert_valid_path(state_graph, path, start, goal):
    assert path[0] == start and path[-1] == goal
    assert len(set(path)) == len(path)
    for u, v in zip(path, path[1:]):
        assert v in set(int(x) for x in state_graph.neighbors_of(u))


def test_dfs_finds_valid_path(state_graph, oracle_dist_array):
    rng = random.Random(3)
    for _ in range(5):
        start = rng.randrange(state_graph.node_count)
        result = search.run_search(state_graph, SearchAlgo.DFS, start, state_graph.goal_id)
        assert result.found
        assert_valid_path(state_graph, result.path, start, state_graph.goal_id)
        assert len(result.path) - 1 >= oracle_dist_array[start]


def test_bfs_path_valid_and_shortest(state_graph, oracle_dist_array):
    rng = random.Random(5)
    for _ in range(10):
        start = rng.randrange(state_graph.node_count)
        result = search.run_search(state_graph, SearchAlgo.BFS, start, state_graph.goal_id)
        assert result.found
        assert_valid_path(state_graph, result.path, start, state_graph.goal_id)
        assert len(result.path) - 1 == oracle_dist_array[start]
        assert len(result.path) - 1 <= 31


def test_determinism_and_partial_step_then_run(state_graph):
    start = 100_000
    for algo in SearchAlgo:
        ev_a, res_a = collect_trace(state_graph, algo, start, state_graph.goal_id)
        ev_b, res_b = collect_trace(state_graph, algo, start, state_graph.goal_id)
        assert [e.to_json() for e in ev_a] == [e.to_json() for e in ev_b]

        partial = search.new_session(state_graph, algo, start, state_graph.goal_id)
        for _ in range(137):
            if partial.status is not SessionStatus.RUNNING:
                break
            partial.step()
        if partial.status is SessionStatus.RUNNING:
            res_partial = partial.run_to_completion()
        else:
            res_partial = partial.result()
        assert res_partial == res_a


def test_bfs_distance_map(state_graph, oracle_dist_array):
    dist = search.bfs_distance_map(state_graph, state_graph.goal_id)
    assert dist[state_graph.goal_id] == 0
    assert np.array_equal(dist, oracle_dist_array)
    assert dist.max() == 31
    values, counts = np.unique(dist, return_counts=True)
    assert counts.sum() == 181_440
    with pytest.raises(IdOutOfRange):
        search.bfs_distance_map(state_graph, 181_440)


def test_astar_expands_no_more_than_bfs_usually(state_graph):
    rng = random.Random(13)
    wins = 0
    trials = 10
    for _ in range(trials):
        start = rng.randrange(state_graph.node_count)
        a = search.run_search(state_graph, SearchAlgo.ASTAR, start, state_graph.goal_id)
        b = search.run_search(state_graph, SearchAlgo.BFS, start, state_graph.goal_id)
        if a.expanded_count <= b.expanded_count:
            wins += 1
    assert wins >= trials * 0.9
