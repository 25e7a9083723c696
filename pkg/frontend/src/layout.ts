/** Vertex placement for the map view.
 *
 * Maps that ship coordinates are just scaled to the viewport.  Maps
 * without coordinates get a deterministic force-directed layout,
 * display-only: the server never sees these positions.
 */

import { MapData } from "./api";

export interface Point {
    x: number;
    y: number;
}

const MARGIN = 30;

function scaleToViewport(
    positions: Map<number, Point>,
    width: number,
    height: number,
): Map<number, Point> {
    let minX = Infinity;
    let maxX = -Infinity;
    let minY = Infinity;
    let maxY = -Infinity;
    for (const p of positions.values()) {
        minX = Math.min(minX, p.x);
        maxX = Math.max(maxX, p.x);
        minY = Math.min(minY, p.y);
        maxY = Math.max(maxY, p.y);
    }
    const spanX = maxX - minX || 1;
    const spanY = maxY - minY || 1;
    const out = new Map<number, Point>();
    for (const [v, p] of positions) {
        out.set(v, {
            x: MARGIN + ((p.x - minX) / spanX) * (width - 2 * MARGIN),
            y: MARGIN + ((p.y - minY) / spanY) * (height - 2 * MARGIN),
        });
    }
    return out;
}

/** Small deterministic PRNG so layouts are stable across reloads. */
function mulberry32(seed: number): () => number {
    let a = seed >>> 0;
    return () => {
        a = (a + 0x6d2b79f5) >>> 0;
        let t = a;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

function forceLayout(map: MapData, iterations: number): Map<number, Point> {
    const n = map.vertices.length;
    const rand = mulberry32(1234);
    const pos = new Map<number, Point>();
    for (const v of map.vertices) {
        const angle = (2 * Math.PI * v.id) / Math.max(n, 1);
        pos.set(v.id, {
            x: Math.cos(angle) + 0.1 * rand(),
            y: Math.sin(angle) + 0.1 * rand(),
        });
    }
    const ideal = 1.5 / Math.sqrt(Math.max(n, 1));
    for (let iter = 0; iter < iterations; iter++) {
        const disp = new Map<number, Point>();
        for (const v of map.vertices) {
            disp.set(v.id, { x: 0, y: 0 });
        }
        for (const a of map.vertices) {
            for (const b of map.vertices) {
                if (a.id >= b.id) {
                    continue;
                }
                const pa = pos.get(a.id)!;
                const pb = pos.get(b.id)!;
                const dx = pa.x - pb.x;
                const dy = pa.y - pb.y;
                const dist = Math.max(Math.hypot(dx, dy), 1e-6);
                const repulse = (ideal * ideal) / dist;
                const fx = (dx / dist) * repulse;
                const fy = (dy / dist) * repulse;
                const da = disp.get(a.id)!;
                const db = disp.get(b.id)!;
                da.x += fx;
                da.y += fy;
                db.x -= fx;
                db.y -= fy;
            }
        }
        for (const e of map.edges) {
            const pa = pos.get(e.from)!;
            const pb = pos.get(e.to)!;
            const dx = pa.x - pb.x;
            const dy = pa.y - pb.y;
            const dist = Math.max(Math.hypot(dx, dy), 1e-6);
            const attract = (dist * dist) / ideal;
            const fx = (dx / dist) * attract;
            const fy = (dy / dist) * attract;
            const da = disp.get(e.from)!;
            const db = disp.get(e.to)!;
            da.x -= fx;
            da.y -= fy;
            db.x += fx;
            db.y += fy;
        }
        const temp = 0.1 * (1 - iter / iterations);
        for (const v of map.vertices) {
            const d = disp.get(v.id)!;
            const len = Math.max(Math.hypot(d.x, d.y), 1e-6);
            const p = pos.get(v.id)!;
            p.x += (d.x / len) * Math.min(len, temp);
            p.y += (d.y / len) * Math.min(len, temp);
        }
    }
    return pos;
}

/** Positions for every vertex, scaled into a width x height viewport. */
export function layoutVertices(
    map: MapData,
    width: number,
    height: number,
    iterations = 200,
): Map<number, Point> {
    const withCoords = map.vertices.filter((v) => v.x !== undefined && v.y !== undefined);
    let raw: Map<number, Point>;
    if (withCoords.length === map.vertices.length && map.vertices.length > 0) {
        raw = new Map(map.vertices.map((v) => [v.id, { x: v.x!, y: v.y! }]));
    } else {
        raw = forceLayout(map, iterations);
    }
    return scaleToViewport(raw, width, height);
}
