// Parser for the binary position-buffer format served at /api/layout/{kind}.
// Little-endian: "8PLY", version u16, kind u8, reserved u8, node_count u32,
// seed u64, node_count*3 float32, CRC-32 of everything before the trailer.

export type LayoutKind = "force" | "depth" | "heuristic";

const KIND_BY_CODE: Record<number, LayoutKind> = {
    0: "force",
    1: "depth",
    2: "heuristic",
};

export interface ParsedLayout {
    kind: LayoutKind;
    nodeCount: number;
    seed: bigint;
    positions: Float32Array; // length nodeCount * 3
}

let crcTable: Uint32Array | null = null;

function buildCrcTable(): Uint32Array {
    const table = new Uint32Array(256);
    for (let n = 0; n < 256; n++) {
        let c = n;
        for (let k = 0; k < 8; k++) {
            c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
        }
        table[n] = c >>> 0;
    }
    return table;
}

export function crc32(bytes: Uint8Array): number {
    if (!crcTable) crcTable = buildCrcTable();
    let c = 0xffffffff;
    for (let i = 0; i < bytes.length; i++) {
        c = crcTable[(c ^ bytes[i]) & 0xff] ^ (c >>> 8);
    }
    return (c ^ 0xffffffff) >>> 0;
}

export function parseLayoutBuffer(buffer: ArrayBuffer): ParsedLayout {
    const view = new DataView(buffer);
    if (buffer.byteLength < 24) {
        throw new Error("layout buffer truncated");
    }
    const magic = String.fromCharCode(
        view.getUint8(0), view.getUint8(1), view.getUint8(2), view.getUint8(3),
    );
    if (magic !== "8PLY") {
        throw new Error(`bad magic ${JSON.stringify(magic)}`);
    }
    const version = view.getUint16(4, true);
    if (version !== 1) {
        throw new Error(`unsupported layout format version ${version}`);
    }
    const kindCode = view.getUint8(6);
    const kind = KIND_BY_CODE[kindCode];
    if (kind === undefined) {
        throw new Error(`unknown layout kind code ${kindCode}`);
    }
    const nodeCount = view.getUint32(8, true);
    const seed = view.getBigUint64(12, true);
    const expected = 20 + nodeCount * 12 + 4;
    if (buffer.byteLength !== expected) {
        throw new Error(`layout buffer is ${buffer.byteLength} bytes, expected ${expected}`);
    }
    const stored = view.getUint32(buffer.byteLength - 4, true);
    const actual = crc32(new Uint8Array(buffer, 0, buffer.byteLength - 4));
    if (stored !== actual) {
        throw new Error("layout buffer CRC mismatch");
    }
    // copy: the slice must stay valid if the source buffer is reused
    const positions = new Float32Array(buffer.slice(20, 20 + nodeCount * 12));
    return { kind, nodeCount, seed, positions };
}
