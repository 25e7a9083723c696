/** SVG rendering of the map, partition and plan preview.
 *
 * Produces markup strings; the page wires interactivity through event
 * delegation on data-vertex attributes, which keeps this module free
 * of DOM dependencies and easy to test.
 */

import { MapData } from "./api";
import { Point } from "./layout";
import { colorForSubgraph, EditorState } from "./state";

const VERTEX_RADIUS = 12;
const UNCOMMITTED = "#dddddd";

function esc(text: string): string {
    return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderMapSvg(
    state: EditorState,
    positions: Map<number, Point>,
    width: number,
    height: number,
    robotAt?: Map<number, number>,
): string {
    const map: MapData = state.map;
    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
            `viewBox="0 0 ${width} ${height}">`,
    );
    parts.push(
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ' +
            'markerWidth="6" markerHeight="6" orient="auto-start-reverse">' +
            '<path d="M 0 0 L 10 5 L 0 10 z" fill="#888"/></marker></defs>',
    );
    for (const e of map.edges) {
        const a = positions.get(e.from);
        const b = positions.get(e.to);
        if (!a || !b) {
            continue;
        }
        const marker = e.directed ? ' marker-end="url(#arrow)"' : "";
        parts.push(
            `<line x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
                `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" ` +
                `stroke="#888" stroke-width="2"${marker}/>`,
        );
    }
    const suggested = new Set<number>();
    for (const s of state.suggestions) {
        for (const v of s.vertices) {
            suggested.add(v);
        }
    }
    for (const v of map.vertices) {
        const p = positions.get(v.id);
        if (!p) {
            continue;
        }
        const sub = state.subgraphOf(v.id);
        const fill = sub === null ? UNCOMMITTED : colorForSubgraph(sub);
        const selected = state.selection.includes(v.id);
        const stroke = selected ? "#000000" : suggested.has(v.id) ? "#e15759" : "#555555";
        const strokeWidth = selected || suggested.has(v.id) ? 3 : 1;
        parts.push(
            `<circle data-vertex="${v.id}" cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" ` +
                `r="${VERTEX_RADIUS}" fill="${fill}" stroke="${stroke}" ` +
                `stroke-width="${strokeWidth}" style="cursor:pointer"/>`,
        );
        parts.push(
            `<text x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}" ` +
                'text-anchor="middle" font-size="10" pointer-events="none">' +
                `${v.id}</text>`,
        );
    }
    if (robotAt) {
        for (const [robot, vertex] of robotAt) {
            const p = positions.get(vertex);
            if (!p) {
                continue;
            }
            parts.push(
                `<circle cx="${p.x.toFixed(1)}" cy="${(p.y - 18).toFixed(1)}" r="7" ` +
                    'fill="#222222"/>',
            );
            parts.push(
                `<text x="${p.x.toFixed(1)}" y="${(p.y - 15).toFixed(1)}" ` +
                    'text-anchor="middle" font-size="9" fill="#ffffff" ' +
                    `pointer-events="none">${robot}</text>`,
            );
        }
    }
    parts.push("</svg>");
    return parts.join("");
}

export function renderSuggestionList(state: EditorState): string {
    if (state.suggestions.length === 0) {
        return "<p>No pending suggestions.</p>";
    }
    const items = state.suggestions.map(
        (s, i) =>
            `<li><button data-suggestion="${i}">commit</button> ` +
            `${esc(s.kind)} of ${s.vertices.length}: [${s.vertices.join(", ")}]</li>`,
    );
    return `<ol>${items.join("")}</ol>`;
}

export function renderStatus(state: EditorState): string {
    const lines: string[] = [];
    if (state.lastError) {
        lines.push(`<p class="error">${esc(state.lastError)}</p>`);
    }
    if (state.violations !== null) {
        if (state.violations.length === 0) {
            lines.push('<p class="ok">Partition is valid.</p>');
        } else {
            const items = state.violations.map((v) => `<li>${esc(v)}</li>`);
            lines.push(`<ul class="error">${items.join("")}</ul>`);
        }
    }
    if (state.preview) {
        const m = state.preview;
        const steps = m.plan?.steps.length ?? 0;
        lines.push(
            `<p>Preview: ${esc(m.outcome)}, depth ${m.goal_depth}, ` +
                `${m.nodes_expanded} expanded, ${steps} concrete steps.</p>`,
        );
    }
    return lines.join("");
}
