import numpy as np
import pytest

from atlas import graph as graph_mod
from atlas import puzzle
from atlas.errors import BadChecksum, BadMagic, IdOutOfRange, VersionMismatch


def blank_census():
    """Brute-force census of states grouped by blank cell, straight off the table."""
    blanks = np.argmin(puzzle.state_table(), axis=1)
    return {cell: int((blanks == cell).sum()) for cell in range(9)}


def test_counts(state_graph):
    assert state_graph.node_count == 181_440
    assert len(state_graph.neighbors) == 483_840
    assert len(state_graph.neighbors) // 2 == 241_920


def test_degree_histogram_matches_blank_census(state_graph):
    census = blank_census()
    # degree is determined by the blank's cell: corners 2, edges 3, center 4
    corner_cells, edge_cells, center_cells = (0, 2, 6, 8), (1, 3, 5, 7), (4,)
    expected = {
        2: sum(census[c] for c in corner_cells),
        3: sum(census[c] for c in edge_cells),
        4: sum(census[c] for c in center_cells),
    }
    degrees = state_graph.degrees()
    values, counts = np.unique(degrees, return_counts=True)
    assert {int(v): int(c) for v, c in zip(values, counts)} == expected
    assert all(count == 20_160 for count in census.values())


def test_edge_symmetry_and_sortedness(state_graph):
    g = state_graph
    src = np.repeat(np.arange(g.node_count, dtype=np.int64), g.degrees())
    dst = g.neighbors.astype(np.int64)
    fwd = np.sort(src * g.node_count + dst)
    rev = np.sort(dst * g.node_count + src)
    assert np.array_equal(fwd, rev)
    # sorted ascending, duplicate-free within each node's slice
    boundaries = g.offsets[1:-1].astype(np.int64)
    diffs = np.diff(dst)
    interior = np.ones(len(diffs), dtype=bool)
    interior[boundaries - 1] = False
    assert (diffs[interior] > 0).all()


def test_neighbors_of_against_puzzle_core(state_graph):
    rng = np.random.default_rng(7)
    for sid in rng.integers(0, state_graph.node_count, size=1000):
        sid = int(sid)
        s = puzzle.unrank(sid)
        expected = sorted(
            puzzle.rank(puzzle.apply_move(s, d)) for d in puzzle.legal_moves(s)
        )
        assert graph_mod.neighbors_of(state_graph, sid) == expected


def test_neighbors_of_bounds(state_graph):
    goal_neighbors = graph_mod.neighbors_of(state_graph, state_graph.goal_id)
    assert len(goal_neighbors) == 2  # goal blank is in a corner
    with pytest.raises(IdOutOfRange):
        graph_mod.neighbors_of(state_graph, 181_440)


def test_compute_stats(state_graph, oracle_bfs_distances):
    stats = graph_mod.compute_stats(state_graph)
    assert stats.node_count == 181_440
    assert stats.undirected_edge_count == 241_920
    assert sum(stats.degree_histogram.values()) == 181_440
    assert stats.eccentricity_from_goal == max(oracle_bfs_distances.values())
    assert stats.eccentricity_from_goal == 31


def test_bfs_and_sweep_construction_agree(state_graph):
    bfs_built = graph_mod.build_graph(strategy="bfs")
    assert np.array_equal(bfs_built.offsets, state_graph.offsets)
    assert np.array_equal(bfs_built.neighbors, state_graph.neighbors)
    assert bfs_built.goal_id == state_graph.goal_id


def test_save_load_round_trip(state_graph, tmp_path):
    path = tmp_path / "g.8pss"
    graph_mod.save_graph(state_graph, path)
    loaded = graph_mod.load_graph(path)
    assert np.array_equal(loaded.offsets, state_graph.offsets)
    assert np.array_equal(loaded.neighbors, state_graph.neighbors)
    assert loaded.goal_id == state_graph.goal_id
    # saving the loaded graph reproduces the same bytes
    path2 = tmp_path / "g2.8pss"
    graph_mod.save_graph(loaded, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_load_rejects_corrupt_files(graph_file, tmp_path):
    data = graph_file.read_bytes()

    truncated = tmp_path / "trunc.8pss"
    truncated.write_bytes(data[: len(data) // 2])
    with pytest.raises(BadChecksum):
        graph_mod.load_graph(truncated)

    flipped = tmp_path / "flip.8pss"
    corrupt = bytearray(data)
    corrupt[100] ^= 0xFF
    flipped.write_bytes(bytes(corrupt))
    with pytest.raises(BadChecksum):
        graph_mod.load_graph(flipped)

    wrong_magic = tmp_path / "magic.8pss"
    wrong_magic.write_bytes(b"NOPE" + data[4:])
    with pytest.raises(BadMagic):
        graph_mod.load_graph(wrong_magic)

    wrong_version = tmp_path / "ver.8pss"
    bumped = bytearray(data)
    bumped[4] = 99
    wrong_version.write_bytes(bytes(bumped))
    with pytest.raises(VersionMismatch):
        graph_mod.load_graph(wrong_version)
