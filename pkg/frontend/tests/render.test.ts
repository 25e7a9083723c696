import { describe, expect, it } from "vitest";

import { ApiClient, MapData } from "../src/api";
import { layoutVertices } from "../src/layout";
import { renderMapSvg, renderStatus, renderSuggestionList } from "../src/render";
import { EditorState } from "../src/state";
import { fakeFetch } from "./fakeServer";

const map: MapData = {
    vertices: [{ id: 0 }, { id: 1 }, { id: 2 }],
    edges: [
        { from: 0, to: 1 },
        { from: 1, to: 2, directed: true },
    ],
};

async function loadedState(): Promise<EditorState> {
    const state = new EditorState(new ApiClient("http://test.local", fakeFetch(map)));
    await state.load();
    return state;
}

describe("renderMapSvg", () => {
    it("emits one clickable circle per vertex and one line per edge", async () => {
        const state = await loadedState();
        const svg = renderMapSvg(state, layoutVertices(map, 300, 300), 300, 300);
        expect(svg.match(/data-vertex=/g)?.length).toBe(3);
        expect(svg.match(/<line /g)?.length).toBe(2);
        expect(svg).toContain('marker-end="url(#arrow)"');
    });

    it("marks selected vertices and draws robots", async () => {
        const state = await loadedState();
        state.clickVertex(1);
        const robots = new Map([[7, 2]]);
        const svg = renderMapSvg(state, layoutVertices(map, 300, 300), 300, 300, robots);
        expect(svg).toContain('stroke="#000000"');
        expect(svg).toContain(">7</text>");
    });

    it("colors committed vertices by subgraph", async () => {
        const state = await loadedState();
        await state.commit({ kind: "hall", vertices: [0, 1] });
        const svg = renderMapSvg(state, layoutVertices(map, 300, 300), 300, 300);
        expect(svg).toContain('fill="#4e79a7"');
        expect(svg).toContain('fill="#dddddd"');
    });
});

describe("renderSuggestionList and renderStatus", () => {
    it("lists suggestions with commit buttons", async () => {
        const state = await loadedState();
        state.clickVertex(0);
        state.clickVertex(1);
        await state.requestSuggestions();
        const html = renderSuggestionList(state);
        expect(html).toContain('data-suggestion="0"');
        expect(html).toContain("hall of 2");
    });

    it("escapes error text", async () => {
        const state = await loadedState();
        state.lastError = "<script>";
        expect(renderStatus(state)).toContain("&lt;script&gt;");
    });

    it("shows a clean validation result", async () => {
        const state = await loadedState();
        state.violations = [];
        expect(renderStatus(state)).toContain("valid");
    });
});
