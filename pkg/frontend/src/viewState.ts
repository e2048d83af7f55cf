// Pure view-state logic: highlight sets driven exclusively by service trace
// events, so the whole UI state is replayable from a trace log.

import type { LayoutKind } from "./layoutBuffer";
import type { TraceEvent } from "./types";

export type PlaybackMode =
    | { kind: "paused" }
    | { kind: "stepping" }
    | { kind: "auto"; rate: number }; // events per second

export interface ViewState {
    layoutKind: LayoutKind;
    selected: number | null;
    goalId: number;
    frontier: Set<number>;
    visited: Set<number>;
    path: number[];
    parents: Map<number, number | null>;
    playback: PlaybackMode;
    edgesVisible: boolean;
    finished: boolean;
    exhausted: boolean;
}

export function initialViewState(goalId: number): ViewState {
    return {
        layoutKind: "force",
        selected: null,
        goalId,
        frontier: new Set(),
        visited: new Set(),
        path: [],
        parents: new Map(),
        playback: { kind: "paused" },
        edgesVisible: false,
        finished: false,
        exhausted: false,
    };
}

/** Walk parent links back from the goal event's node. */
export function reconstructPath(
    parents: Map<number, number | null>,
    goalNode: number,
): number[] {
    const path: number[] = [];
    let node: number | null = goalNode;
    const guard = new Set<number>();
    while (node !== null && !guard.has(node)) {
        guard.add(node);
        path.push(node);
        node = parents.get(node) ?? null;
    }
    path.reverse();
    return path;
}

/**
 * Apply a batch of trace events in order. Discover puts a node in the
 * frontier; Expand moves it from frontier to visited; Goal additionally
 * freezes the solution path. Frontier and visited stay disjoint.
 */
export function applyEvents(state: ViewState, events: TraceEvent[]): void {
    for (const ev of events) {
        switch (ev.kind) {
            case "discover":
                state.parents.set(ev.node, ev.parent);
                if (!state.visited.has(ev.node)) {
                    state.frontier.add(ev.node);
                }
                break;
            case "expand":
                state.frontier.delete(ev.node);
                state.visited.add(ev.node);
                break;
            case "goal":
                state.frontier.delete(ev.node);
                state.visited.add(ev.node);
                state.path = reconstructPath(state.parents, ev.node);
                state.finished = true;
                state.playback = { kind: "paused" };
                break;
            case "exhausted":
                state.finished = true;
                state.exhausted = true;
                state.playback = { kind: "paused" };
                break;
        }
    }
}

/** Clear all search highlights; selection, camera, and layout are untouched. */
export function clearSearchState(state: ViewState): void {
    state.frontier = new Set();
    state.visited = new Set();
    state.path = [];
    state.parents = new Map();
    state.finished = false;
    state.exhausted = false;
    state.playback = { kind: "paused" };
}

/** Switching layouts keeps every highlight set: ids are layout-independent. */
export function switchLayout(state: ViewState, kind: LayoutKind): void {
    state.layoutKind = kind;
}

export function countExpandEvents(events: TraceEvent[]): number {
    return events.filter((e) => e.kind === "expand" || e.kind === "goal").length;
}
