import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, MapData } from "../src/api";
import { colorForSubgraph, EditorState } from "../src/state";
import { fakeFetch } from "./fakeServer";

const squareMap: MapData = {
    vertices: [{ id: 0 }, { id: 1 }, { id: 2 }, { id: 3 }],
    edges: [
        { from: 0, to: 1 },
        { from: 1, to: 2 },
        { from: 2, to: 3 },
        { from: 3, to: 0 },
    ],
};

function makeState(): EditorState {
    const api = new ApiClient("http://test.local", fakeFetch(squareMap));
    return new EditorState(api);
}

describe("EditorState", () => {
    let state: EditorState;

    beforeEach(async () => {
        state = makeState();
        await state.load();
    });

    it("loads the map and an empty partition", () => {
        expect(state.map.vertices.length).toBe(4);
        expect(state.partition.subgraphs).toEqual([]);
    });

    it("keeps at most two selected vertices", () => {
        state.clickVertex(0);
        state.clickVertex(1);
        state.clickVertex(2);
        expect(state.selection).toEqual([1, 2]);
        state.clickVertex(2);
        expect(state.selection).toEqual([1]);
    });

    it("suggestion plus commit updates the partition and clears selection", async () => {
        state.clickVertex(0);
        state.clickVertex(1);
        await state.requestSuggestions();
        expect(state.suggestions).toEqual([{ kind: "hall", vertices: [0, 1] }]);
        await state.commitCandidate(0);
        expect(state.partition.subgraphs.length).toBe(1);
        expect(state.selection).toEqual([]);
        expect(state.subgraphOf(0)).toBe(0);
        expect(state.subgraphOf(2)).toBeNull();
    });

    it("surfaces a 409 without losing the selection", async () => {
        await state.commit({ kind: "hall", vertices: [0, 1] });
        state.clickVertex(2);
        state.clickVertex(3);
        await state.requestSuggestions();
        await state.commit({ kind: "hall", vertices: [1, 2] });
        expect(state.lastError).toContain("409");
        expect(state.selection).toEqual([2, 3]);
        expect(state.suggestions.length).toBe(1);
        expect(state.partition.subgraphs.length).toBe(1);
    });

    it("surfaces a 422 for structurally invalid commits", async () => {
        await state.commit({ kind: "ring", vertices: [0, 1] });
        expect(state.lastError).toContain("422");
        expect(state.partition.subgraphs.length).toBe(0);
    });

    it("undo restores the previous partition", async () => {
        const before = JSON.stringify(state.partition);
        await state.commit({ kind: "hall", vertices: [0, 1] });
        expect(JSON.stringify(state.partition)).not.toBe(before);
        await state.undo();
        expect(JSON.stringify(state.partition)).toBe(before);
    });

    it("refuses to select a committed vertex", async () => {
        await state.commit({ kind: "hall", vertices: [0, 1] });
        state.clickVertex(0);
        expect(state.selection).toEqual([]);
        expect(state.lastError).toContain("already committed");
    });

    it("reports validation violations", async () => {
        await state.commit({ kind: "hall", vertices: [0, 1] });
        const violations = await state.validate();
        expect(violations.length).toBe(2);
    });

    it("steps the plan preview", async () => {
        const problem = { robots: [{ id: 0, start: 0, goal: 1 }] };
        await state.runPreview(problem, "naive");
        expect(state.preview?.outcome).toBe("solved");
        expect(state.previewPositions(problem).get(0)).toBe(0);
        state.previewStep = 1;
        expect(state.previewPositions(problem).get(0)).toBe(1);
    });

    it("assigns stable colors per subgraph index", () => {
        expect(colorForSubgraph(0)).toBe(colorForSubgraph(0));
        expect(colorForSubgraph(0)).not.toBe(colorForSubgraph(1));
    });
});
