import { describe, expect, it } from "vitest";

import { MapData } from "../src/api";
import { layoutVertices } from "../src/layout";

const coordMap: MapData = {
    vertices: [
        { id: 0, x: 0, y: 0 },
        { id: 1, x: 10, y: 0 },
        { id: 2, x: 10, y: 10 },
    ],
    edges: [
        { from: 0, to: 1 },
        { from: 1, to: 2 },
    ],
};

const bareMap: MapData = {
    vertices: [{ id: 0 }, { id: 1 }, { id: 2 }, { id: 3 }],
    edges: [
        { from: 0, to: 1 },
        { from: 1, to: 2 },
        { from: 2, to: 3 },
        { from: 3, to: 0 },
    ],
};

describe("layoutVertices", () => {
    it("scales shipped coordinates into the viewport", () => {
        const pos = layoutVertices(coordMap, 100, 100);
        expect(pos.size).toBe(3);
        const p0 = pos.get(0)!;
        const p2 = pos.get(2)!;
        expect(p0.x).toBeLessThan(p2.x);
        expect(p0.y).toBeLessThan(p2.y);
        for (const p of pos.values()) {
            expect(p.x).toBeGreaterThanOrEqual(0);
            expect(p.x).toBeLessThanOrEqual(100);
            expect(p.y).toBeGreaterThanOrEqual(0);
            expect(p.y).toBeLessThanOrEqual(100);
        }
    });

    it("computes a force layout when coordinates are missing", () => {
        const pos = layoutVertices(bareMap, 200, 200);
        expect(pos.size).toBe(4);
        const points = [...pos.values()];
        for (let i = 0; i < points.length; i++) {
            for (let j = i + 1; j < points.length; j++) {
                const d = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
                expect(d).toBeGreaterThan(5);
            }
        }
    });

    it("is deterministic", () => {
        const a = layoutVertices(bareMap, 200, 200);
        const b = layoutVertices(bareMap, 200, 200);
        expect(a).toEqual(b);
    });
});
