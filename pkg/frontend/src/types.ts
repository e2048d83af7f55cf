export type MoveDir = "up" | "down" | "left" | "right";

export type AlgoName = "bfs" | "dfs" | "astar";

export type EventKind = "discover" | "expand" | "goal" | "exhausted";

export interface TraceEvent {
    step: number;
    kind: EventKind;
    node: number;
    parent: number | null;
    g: number;
    h: number;
    f: number;
}

export interface SearchResult {
    found: boolean;
    path: number[];
    expanded_count: number;
    discovered_count: number;
}

export interface Meta {
    node_count: number;
    undirected_edge_count: number;
    directed_entry_count: number;
    degree_histogram: Record<string, number>;
    eccentricity_from_goal: number;
    layouts: string[];
    goal: string;
    goal_id: number;
}

export interface StateNeighbor {
    id: number;
    move: MoveDir;
}

export interface StateInfo {
    id: number;
    cells: string;
    neighbors: StateNeighbor[];
    h: number;
}

export interface SessionHandle {
    session_id: string;
    algo: AlgoName;
    start: number;
    goal: number;
    status: string;
    steps_emitted: number;
}

export interface StepBatch {
    events: TraceEvent[];
    status: string;
    steps_emitted: number;
}
