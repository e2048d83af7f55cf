import { describe, expect, it } from "vitest";
import { crc32, parseLayoutBuffer } from "../src/layoutBuffer";

function buildBuffer(kindCode: number, positions: number[][], seed = 7n): ArrayBuffer {
    const n = positions.length;
    const buffer = new ArrayBuffer(20 + n * 12 + 4);
    const view = new DataView(buffer);
    view.setUint8(0, "8".charCodeAt(0));
    view.setUint8(1, "P".charCodeAt(0));
    view.setUint8(2, "L".charCodeAt(0));
    view.setUint8(3, "Y".charCodeAt(0));
    view.setUint16(4, 1, true);
    view.setUint8(6, kindCode);
    view.setUint8(7, 0);
    view.setUint32(8, n, true);
    view.setBigUint64(12, seed, true);
    positions.forEach(([x, y, z], i) => {
        view.setFloat32(20 + i * 12, x, true);
        view.setFloat32(20 + i * 12 + 4, y, true);
        view.setFloat32(20 + i * 12 + 8, z, true);
    });
    const crc = crc32(new Uint8Array(buffer, 0, buffer.byteLength - 4));
    view.setUint32(buffer.byteLength - 4, crc, true);
    return buffer;
}

describe("8PLY parsing", () => {
    const pts = [[1, 2, 3], [-4.5, 0, 9.25], [0, 0, 0]];

    it("round-trips a well-formed buffer", () => {
        const parsed = parseLayoutBuffer(buildBuffer(1, pts));
        expect(parsed.kind).toBe("depth");
        expect(parsed.nodeCount).toBe(3);
        expect(parsed.seed).toBe(7n);
        expect([...parsed.positions]).toEqual(pts.flat());
    });

    it("decodes every kind code", () => {
        expect(parseLayoutBuffer(buildBuffer(0, pts)).kind).toBe("force");
        expect(parseLayoutBuffer(buildBuffer(1, pts)).kind).toBe("depth");
        expect(parseLayoutBuffer(buildBuffer(2, pts)).kind).toBe("heuristic");
    });

    it("rejects corruption", () => {
        const good = buildBuffer(2, pts);
        expect(() => parseLayoutBuffer(good.slice(0, 30))).toThrow(/bytes|truncated/);

        const badMagic = good.slice(0);
        new DataView(badMagic).setUint8(0, 88);
        expect(() => parseLayoutBuffer(badMagic)).toThrow(/magic/);

        const badVersion = good.slice(0);
        new DataView(badVersion).setUint16(4, 9, true);
        expect(() => parseLayoutBuffer(badVersion)).toThrow(/version/);

        const badKind = good.slice(0);
        new DataView(badKind).setUint8(6, 9);
        expect(() => parseLayoutBuffer(badKind)).toThrow(/kind/);

        const flipped = good.slice(0);
        new DataView(flipped).setFloat32(24, 999, true);
        expect(() => parseLayoutBuffer(flipped)).toThrow(/CRC/);
    });

    it("computes the standard CRC-32", () => {
        // check value from the CRC-32 specification
        const bytes = new TextEncoder().encode("123456789");
        expect(crc32(bytes)).toBe(0xcbf43926);
    });
});
