import { ApiClient } from "./api";
import type { LayoutKind } from "./layoutBuffer";
import { moveForTileClick } from "./puzzle";
import { CloudRenderer } from "./renderer";
import type { MoveDir, StateInfo } from "./types";
import {
    applyEvents,
    clearSearchState,
    initialViewState,
    switchLayout,
    type ViewState,
} from "./viewState";

const api = new ApiClient();

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
}

const canvas = el<HTMLCanvasElement>("cloud");
const statusLine = el<HTMLDivElement>("status");
const metaLine = el<HTMLDivElement>("meta");
const layoutSelect = el<HTMLSelectElement>("layout-kind");
const layoutSeed = el<HTMLInputElement>("layout-seed");
const layoutIterations = el<HTMLInputElement>("layout-iterations");
const algoSelect = el<HTMLSelectElement>("algo");
const stepButton = el<HTMLButtonElement>("step");
const runButton = el<HTMLButtonElement>("run");
const pauseButton = el<HTMLButtonElement>("pause");
const resetButton = el<HTMLButtonElement>("reset");
const rateInput = el<HTMLInputElement>("rate");
const rateLabel = el<HTMLSpanElement>("rate-label");
const edgeToggle = el<HTMLInputElement>("edges");
const puzzleGrid = el<HTMLDivElement>("puzzle");
const stateLabel = el<HTMLDivElement>("state-label");
const searchStats = el<HTMLDivElement>("search-stats");
const randomButton = el<HTMLButtonElement>("random-state");

let view: ViewState;
let renderer: CloudRenderer;
let currentState: StateInfo | null = null;
let sessionId: string | null = null;
let nodeCount = 0;
let stepInFlight = false;
let autoTimer: number | null = null;

function setStatus(text: string) {
    statusLine.textContent = text;
}

function updateControls() {
    const hasSession = sessionId !== null && !view.finished;
    stepButton.disabled = !hasSession && view.selected === null;
    runButton.disabled = !hasSession && view.selected === null;
    pauseButton.disabled = view.playback.kind !== "auto";
    resetButton.disabled = sessionId === null;
    searchStats.textContent =
        `frontier ${view.frontier.size} | visited ${view.visited.size}` +
        (view.path.length ? ` | path ${view.path.length}` : "");
}

function renderPuzzle(info: StateInfo) {
    puzzleGrid.innerHTML = "";
    const cells = info.cells.split("").map(Number);
    cells.forEach((value, index) => {
        const tile = document.createElement("button");
        tile.className = value === 0 ? "tile blank" : "tile";
        tile.textContent = value === 0 ? "" : String(value);
        tile.addEventListener("click", () => {
            const dir = moveForTileClick(info.cells, index);
            if (dir) void doMove(dir);
            else shakePuzzle();
        });
        puzzleGrid.appendChild(tile);
    });
    stateLabel.textContent = `state ${info.id} | cells ${info.cells} | h ${info.h}`;
}

function shakePuzzle() {
    puzzleGrid.classList.remove("shake");
    void puzzleGrid.offsetWidth; // restart the animation
    puzzleGrid.classList.add("shake");
}

async function select(id: number, focus = true) {
    const info = await api.state(id);
    currentState = info;
    view.selected = id;
    renderPuzzle(info);
    renderer.setViewState(view);
    if (focus) renderer.focusNode(id);
    refreshNeighborhoodEdges();
    updateControls();
}

function refreshNeighborhoodEdges() {
    if (view.edgesVisible && currentState) {
        renderer.setNeighborhood(
            currentState.id,
            currentState.neighbors.map((n) => n.id),
        );
    } else {
        renderer.setNeighborhood(0, []);
    }
}

async function doMove(dir: MoveDir) {
    if (!currentState) return;
    const neighbor = currentState.neighbors.find((n) => n.move === dir);
    if (!neighbor) {
        shakePuzzle();
        return;
    }
    await select(neighbor.id);
}

async function loadLayout(kind: LayoutKind) {
    setStatus(`computing ${kind} layout…`);
    try {
        const parsed = await api.layout(kind, {
            seed: Number(layoutSeed.value) || 0,
            iterations: kind === "force" ? Number(layoutIterations.value) || 300 : undefined,
        });
        if (parsed.nodeCount !== nodeCount) {
            throw new Error(`layout has ${parsed.nodeCount} nodes, expected ${nodeCount}`);
        }
        switchLayout(view, kind);
        renderer.setPositions(parsed.positions);
        renderer.setViewState(view);
        refreshNeighborhoodEdges();
        setStatus(`${kind} layout loaded`);
    } catch (err) {
        setStatus(`layout failed: ${(err as Error).message}`);
    }
}

async function ensureSession(): Promise<string | null> {
    if (sessionId) return sessionId;
    if (view.selected === null) {
        setStatus("select a start state first (shift-click the cloud or use the puzzle)");
        return null;
    }
    const algo = algoSelect.value as "bfs" | "dfs" | "astar";
    const handle = await api.createSession(algo, view.selected);
    sessionId = handle.session_id;
    clearSearchState(view);
    setStatus(`${algo} session from state ${handle.start}`);
    return sessionId;
}

async function stepBatch(count: number) {
    if (stepInFlight) return;
    const id = await ensureSession();
    if (!id) return;
    stepInFlight = true;
    try {
        const batch = await api.step(id, count);
        applyEvents(view, batch.events);
        renderer.setViewState(view);
        updateControls();
        if (view.finished) {
            stopAuto();
            setStatus(
                view.exhausted
                    ? "search exhausted the space"
                    : `goal reached; path length ${view.path.length}`,
            );
        }
    } catch (err) {
        stopAuto();
        setStatus(`step failed: ${(err as Error).message}`);
    } finally {
        stepInFlight = false;
    }
}

function startAuto() {
    stopAuto();
    const rate = Number(rateInput.value);
    view.playback = { kind: "auto", rate };
    autoTimer = window.setInterval(() => {
        if (view.finished) {
            stopAuto();
            return;
        }
        void stepBatch(Math.max(1, Math.round(rate / 10)));
    }, 100);
    updateControls();
}

function stopAuto() {
    if (autoTimer !== null) {
        window.clearInterval(autoTimer);
        autoTimer = null;
    }
    if (view.playback.kind === "auto") view.playback = { kind: "paused" };
    updateControls();
}

async function resetSession() {
    stopAuto();
    if (sessionId) {
        await api.deleteSession(sessionId);
        sessionId = null;
    }
    clearSearchState(view);
    renderer.setViewState(view);
    updateControls();
    setStatus("session cleared");
}

async function bootstrap() {
    setStatus("loading metadata…");
    const meta = await api.meta();
    nodeCount = meta.node_count;
    view = initialViewState(meta.goal_id);
    metaLine.textContent =
        `${meta.node_count.toLocaleString()} states | ` +
        `${meta.undirected_edge_count.toLocaleString()} edges | ` +
        `eccentricity ${meta.eccentricity_from_goal}`;

    renderer = new CloudRenderer(canvas);
    renderer.onPick = (nodeId) => void select(nodeId);

    // depth layout first: cheap to compute, so the cloud appears quickly
    view.layoutKind = "depth";
    layoutSelect.value = "depth";
    await loadLayout("depth");
    await select(meta.goal_id);

    layoutSelect.addEventListener("change", () => {
        void loadLayout(layoutSelect.value as LayoutKind);
    });
    stepButton.addEventListener("click", () => void stepBatch(1));
    runButton.addEventListener("click", () => startAuto());
    pauseButton.addEventListener("click", () => stopAuto());
    resetButton.addEventListener("click", () => void resetSession());
    algoSelect.addEventListener("change", () => void resetSession());
    rateInput.addEventListener("input", () => {
        rateLabel.textContent = `${rateInput.value}/s`;
        if (view.playback.kind === "auto") startAuto();
    });
    edgeToggle.addEventListener("change", () => {
        view.edgesVisible = edgeToggle.checked;
        refreshNeighborhoodEdges();
    });
    randomButton.addEventListener("click", () => {
        void select(Math.floor(Math.random() * nodeCount));
    });
    window.addEventListener("keydown", (e) => {
        const dirs: Record<string, MoveDir> = {
            ArrowUp: "up",
            ArrowDown: "down",
            ArrowLeft: "left",
            ArrowRight: "right",
        };
        const dir = dirs[e.key];
        if (dir) {
            e.preventDefault();
            void doMove(dir);
        }
    });
    updateControls();
}

void bootstrap().catch((err) => setStatus(`failed to start: ${(err as Error).message}`));
