// Thin typed client for the explorer service.

import { parseLayoutBuffer, type LayoutKind, type ParsedLayout } from "./layoutBuffer";
import type {
    AlgoName,
    Meta,
    SearchResult,
    SessionHandle,
    StateInfo,
    StepBatch,
} from "./types";

async function getJson<T>(url: string): Promise<T> {
    const res = await fetch(url);
    if (!res.ok) {
        throw new Error(`${url}: ${res.status} ${await res.text()}`);
    }
    return (await res.json()) as T;
}

export class ApiClient {
    constructor(private base: string = "") {}

    meta(): Promise<Meta> {
        return getJson(`${this.base}/api/meta`);
    }

    async layout(kind: LayoutKind, opts: { seed?: number; root?: number; iterations?: number } = {}): Promise<ParsedLayout> {
        const params = new URLSearchParams();
        if (opts.seed !== undefined) params.set("seed", String(opts.seed));
        if (opts.root !== undefined) params.set("root", String(opts.root));
        if (opts.iterations !== undefined) params.set("iterations", String(opts.iterations));
        const query = params.size ? `?${params}` : "";
        const res = await fetch(`${this.base}/api/layout/${kind}${query}`);
        if (!res.ok) {
            throw new Error(`layout ${kind}: ${res.status} ${await res.text()}`);
        }
        return parseLayoutBuffer(await res.arrayBuffer());
    }

    state(id: number): Promise<StateInfo> {
        return getJson(`${this.base}/api/state/${id}`);
    }

    async createSession(algo: AlgoName, start: number, goal?: number): Promise<SessionHandle> {
        const res = await fetch(`${this.base}/api/session`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ algo, start, goal }),
        });
        if (!res.ok) {
            throw new Error(`create session: ${res.status} ${await res.text()}`);
        }
        return (await res.json()) as SessionHandle;
    }

    async step(sessionId: string, count: number): Promise<StepBatch> {
        const res = await fetch(`${this.base}/api/session/${sessionId}/step?count=${count}`, {
            method: "POST",
        });
        if (!res.ok) {
            throw new Error(`step: ${res.status} ${await res.text()}`);
        }
        return (await res.json()) as StepBatch;
    }

    async run(sessionId: string): Promise<SearchResult> {
        const res = await fetch(`${this.base}/api/session/${sessionId}/run`, {
            method: "POST",
        });
        if (!res.ok) {
            throw new Error(`run: ${res.status} ${await res.text()}`);
        }
        return (await res.json()) as SearchResult;
    }

    async deleteSession(sessionId: string): Promise<void> {
        await fetch(`${this.base}/api/session/${sessionId}`, { method: "DELETE" });
    }
}
