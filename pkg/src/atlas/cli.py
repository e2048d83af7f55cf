"""`atlas` command line: build, validate, layout, search, export, serve."""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

import numpy as np

from . import layout as layout_mod
from . import puzzle, search
from .errors import AtlasError
from .graph import build_graph, compute_stats, load_graph, save_graph


def _parse_state_arg(text: str) -> puzzle.State:
    try:
        return puzzle.parse_state(text)
    except ValueError as e:
        raise AtlasError(str(e))


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    elif not args.quiet:
        print(human)


def cmd_build(args) -> int:
    goal = _parse_state_arg(args.goal)
    g = build_graph(goal)
    save_graph(g, args.out)
    stats = compute_stats(g)
    _emit(
        args,
        {"out": args.out, **stats.to_dict()},
        f"wrote {args.out}: {stats.node_count} nodes, "
        f"{stats.undirected_edge_count} undirected edges",
    )
    return 0


def cmd_validate(args) -> int:
    g = load_graph(args.graph)
    failures = []
    if g.node_count != puzzle.N_STATES:
        failures.append(f"node_count {g.node_count} != {puzzle.N_STATES}")
    degrees = g.degrees()
    if not np.isin(degrees, (2, 3, 4)).all():
        failures.append("degree outside {2,3,4}")
    # symmetry: every (u, v) entry has a matching (v, u) entry
    src = np.repeat(np.arange(g.node_count, dtype=np.int64), degrees)
    dst = g.neighbors.astype(np.int64)
    fwd = src * g.node_count + dst
    rev = dst * g.node_count + src
    if not np.array_equal(np.sort(fwd), np.sort(rev)):
        failures.append("adjacency is not symmetric")
    per_node = [g.neighbors[g.offsets[u]: g.offsets[u + 1]] for u in (0, g.node_count // 2)]
    for sl in per_node:
        if not (np.diff(sl.astype(np.int64)) > 0).all():
            failures.append("neighbor slice not strictly ascending")
    stats = compute_stats(g)
    if stats.undirected_edge_count != 241_920:
        failures.append(f"undirected_edge_count {stats.undirected_edge_count} != 241920")
    payload = {**stats.to_dict(), "failures": failures}
    _emit(
        args,
        payload,
        f"node_count {stats.node_count}\n"
        f"undirected_edge_count {stats.undirected_edge_count}\n"
        f"degree_histogram {stats.degree_histogram}\n"
        f"eccentricity_from_goal {stats.eccentricity_from_goal}",
    )
    if failures:
        for f in failures:
            print(f"invariant failed: {f}", file=sys.stderr)
        return 1
    return 0


def cmd_layout(args) -> int:
    g = load_graph(args.graph)
    kind = layout_mod.LayoutKind(args.kind)
    root = g.goal_id if args.root is None else puzzle.rank(_parse_state_arg(args.root))
    params = layout_mod.LayoutParams(seed=args.seed, iterations=args.iterations, root=root)
    if kind is layout_mod.LayoutKind.HEURISTIC:
        result = layout_mod.heuristic_layout(g, goal=root, params=params)
    else:
        result = layout_mod.compute_layout(g, kind, params)
    layout_mod.save_layout(result, args.out)
    _emit(
        args,
        {"out": args.out, "kind": kind.value, "node_count": len(result.positions)},
        f"wrote {args.out}: {kind.value} layout, {len(result.positions)} positions",
    )
    return 0


def cmd_search(args) -> int:
    g = load_graph(args.graph)
    algo = search.SearchAlgo(args.algo)
    start = puzzle.rank(_parse_state_arg(args.start))
    goal = puzzle.rank(_parse_state_arg(args.goal))
    session = search.new_session(g, algo, start, goal)
    events = []
    while session.status is search.SessionStatus.RUNNING:
        ev = session.step()
        if args.trace:
            events.append(ev)
    result = session.result()
    if args.trace:
        with open(args.trace, "w") as f:
            f.write(search.trace_to_jsonl(events))
    _emit(
        args,
        result.to_dict(),
        f"{algo.value}: found={result.found} path_length={len(result.path)} "
        f"expanded={result.expanded_count} discovered={result.discovered_count}",
    )
    return 0


def cmd_export(args) -> int:
    if args.format == "edgelist":
        g = load_graph(args.graph)
        src = np.repeat(np.arange(g.node_count, dtype=np.int64), g.degrees())
        dst = g.neighbors.astype(np.int64)
        keep = src < dst
        pairs = np.column_stack([src[keep], dst[keep]])
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        with open(args.out, "w") as f:
            for u, v in pairs[order]:
                f.write(f"{u} {v}\n")
        count = len(pairs)
    elif args.format == "csv-positions":
        if not args.positions:
            raise AtlasError("csv-positions requires --positions")
        result = layout_mod.load_layout(args.positions)
        with open(args.out, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["id", "x", "y", "z"])
            for i, (x, y, z) in enumerate(result.positions):
                w.writerow([i, repr(float(x)), repr(float(y)), repr(float(z))])
        count = len(result.positions)
    else:  # argparse choices already reject this
        raise AtlasError(f"unsupported format {args.format}")
    _emit(args, {"out": args.out, "rows": count}, f"wrote {args.out}: {count} rows")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    g = load_graph(args.graph)
    bind = os.environ.get("ATLAS_BIND", args.bind)
    host, _, port = bind.rpartition(":")
    if not host or not port.isdigit():
        raise AtlasError(f"bad bind address {bind!r}, expected host:port")
    app = create_app(g, static_dir=args.static, session_ttl=args.session_ttl)
    uvicorn.run(app, host=host, port=int(port), log_level="warning" if args.quiet else "info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atlas", description=__doc__)
    parser.add_argument("--quiet", action="store_true", help="suppress normal output")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="enumerate the state space and write a graph file")
    p.add_argument("--out", required=True)
    p.add_argument("--goal", default=puzzle.format_state(puzzle.GOAL))
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="check a graph file's invariants and print stats")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("layout", help="compute a layout and write a position file")
    p.add_argument("--kind", required=True, choices=[k.value for k in layout_mod.LayoutKind])
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=300)
    p.add_argument("--root", default=None, help="focal state, nine digits")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("search", help="run one search and print the result")
    p.add_argument("--algo", required=True, choices=[a.value for a in search.SearchAlgo])
    p.add_argument("--start", required=True, help="start state, nine digits")
    p.add_argument("--goal", default=puzzle.format_state(puzzle.GOAL))
    p.add_argument("--graph", required=True)
    p.add_argument("--trace", default=None, help="write JSONL trace here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export", help="export interoperable formats")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", required=True, choices=["edgelist", "csv-positions"])
    p.add_argument("--positions", default=None, help="8PLY file for csv-positions")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="start the explorer HTTP service")
    p.add_argument("--graph", required=True)
    p.add_argument("--bind", default="127.0.0.1:8080")
    p.add_argument("--session-ttl", type=float, default=1800.0)
    p.add_argument("--static", default=None, help="directory of built web explorer assets")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AtlasError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
