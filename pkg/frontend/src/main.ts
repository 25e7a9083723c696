/** Browser entry point: wires the editor state to the page. */

import { ApiClient, Problem } from "./api";
import { layoutVertices } from "./layout";
import { renderMapSvg, renderStatus, renderSuggestionList } from "./render";
import { EditorState } from "./state";

const WIDTH = 900;
const HEIGHT = 600;

function parseProblem(text: string): Problem | null {
    try {
        const data = JSON.parse(text);
        if (!Array.isArray(data.robots)) {
            return null;
        }
        return data as Problem;
    } catch {
        return null;
    }
}

async function boot(): Promise<void> {
    const params = new URLSearchParams(window.location.search);
    const server = params.get("server") ?? "http://127.0.0.1:8008";
    const state = new EditorState(new ApiClient(server));
    await state.load();
    const positions = layoutVertices(state.map, WIDTH, HEIGHT);

    const mapDiv = document.getElementById("map")!;
    const suggestDiv = document.getElementById("suggestions")!;
    const statusDiv = document.getElementById("status")!;
    const problemBox = document.getElementById("problem") as HTMLTextAreaElement;
    const algoSelect = document.getElementById("algorithm") as HTMLSelectElement;
    const stepSlider = document.getElementById("step") as HTMLInputElement;

    let currentProblem: Problem | null = null;

    const redraw = () => {
        let robotAt;
        if (currentProblem && state.preview?.plan) {
            robotAt = state.previewPositions(currentProblem);
            stepSlider.max = String(state.preview.plan.steps.length);
            stepSlider.value = String(state.previewStep);
        }
        mapDiv.innerHTML = renderMapSvg(state, positions, WIDTH, HEIGHT, robotAt);
        suggestDiv.innerHTML = renderSuggestionList(state);
        statusDiv.innerHTML = renderStatus(state);
    };

    mapDiv.addEventListener("click", (ev) => {
        const target = ev.target as Element;
        const vertex = target.getAttribute("data-vertex");
        if (vertex !== null) {
            state.clickVertex(Number(vertex));
            redraw();
        }
    });

    suggestDiv.addEventListener("click", async (ev) => {
        const target = ev.target as Element;
        const index = target.getAttribute("data-suggestion");
        if (index !== null) {
            await state.commitCandidate(Number(index));
            redraw();
        }
    });

    document.getElementById("suggest")!.addEventListener("click", async () => {
        await state.requestSuggestions();
        redraw();
    });
    document.getElementById("undo")!.addEventListener("click", async () => {
        await state.undo();
        redraw();
    });
    document.getElementById("validate")!.addEventListener("click", async () => {
        await state.validate();
        redraw();
    });
    document.getElementById("download")!.addEventListener("click", () => {
        const blob = new Blob([state.partitionJson()], { type: "application/json" });
        const a = document.createElement("a");
        a.href = URL.createObjectURL(blob);
        a.download = "partition.json";
        a.click();
        URL.revokeObjectURL(a.href);
    });
    document.getElementById("preview")!.addEventListener("click", async () => {
        currentProblem = parseProblem(problemBox.value);
        if (!currentProblem) {
            state.lastError = "problem must be JSON with a robots list";
            redraw();
            return;
        }
        await state.runPreview(currentProblem, algoSelect.value);
        redraw();
    });
    stepSlider.addEventListener("input", () => {
        state.previewStep = Number(stepSlider.value);
        redraw();
    });

    redraw();
}

boot().catch((err) => {
    document.getElementById("status")!.textContent = `failed to start: ${err}`;
});
