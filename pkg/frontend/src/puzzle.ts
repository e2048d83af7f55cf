// Client-side 3x3 board helpers for the draggable puzzle widget. The service
// stays authoritative for transitions; these helpers only drive rendering and
// map user gestures onto move directions.

import type { MoveDir } from "./types";

export function cellsToGrid(cells: string): number[] {
    if (!/^[0-8]{9}$/.test(cells)) {
        throw new Error(`bad cells string ${JSON.stringify(cells)}`);
    }
    const values = cells.split("").map(Number);
    if (new Set(values).size !== 9) {
        throw new Error(`cells is not a permutation: ${cells}`);
    }
    return values;
}

export function blankIndex(cells: string): number {
    return cellsToGrid(cells).indexOf(0);
}

/** Directions the blank may legally move, in canonical order. */
export function legalMoves(cells: string): MoveDir[] {
    const blank = blankIndex(cells);
    const moves: MoveDir[] = [];
    if (blank >= 3) moves.push("up");
    if (blank < 6) moves.push("down");
    if (blank % 3 > 0) moves.push("left");
    if (blank % 3 < 2) moves.push("right");
    return moves;
}

/** Clicking a tile slides it into the blank; returns the blank's move direction. */
export function moveForTileClick(cells: string, tileIndex: number): MoveDir | null {
    const blank = blankIndex(cells);
    if (tileIndex === blank - 3 && blank >= 3) return "up";
    if (tileIndex === blank + 3 && blank < 6) return "down";
    if (tileIndex === blank - 1 && blank % 3 > 0) return "left";
    if (tileIndex === blank + 1 && blank % 3 < 2) return "right";
    return null;
}

/** Local preview of a move; must agree with the neighbor the service reports. */
export function applyMove(cells: string, dir: MoveDir): string | null {
    if (!legalMoves(cells).includes(dir)) return null;
    const grid = cellsToGrid(cells);
    const blank = grid.indexOf(0);
    const delta = { up: -3, down: 3, left: -1, right: 1 }[dir];
    const target = blank + delta;
    grid[blank] = grid[target];
    grid[target] = 0;
    return grid.join("");
}
