/** Editor session state.
 *
 * Mirrors the server's working partition after every call.  API errors
 * (overlap conflicts, invalid structures) are surfaced on lastError
 * without discarding the current selection, so the operator can adjust
 * and retry.
 */

import {
    ApiClient,
    ApiError,
    MapData,
    PartitionData,
    PlanPreview,
    Problem,
    Subgraph,
    SubgraphKind,
} from "./api";

export const SUBGRAPH_COLORS = [
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
];

/** Stable color per subgraph index within the working partition. */
export function colorForSubgraph(index: number): string {
    return SUBGRAPH_COLORS[index % SUBGRAPH_COLORS.length];
}

export class EditorState {
    api: ApiClient;
    map: MapData = { vertices: [], edges: [] };
    partition: PartitionData = { subgraphs: [] };
    selection: number[] = [];
    suggestions: Subgraph[] = [];
    violations: string[] | null = null;
    lastError: string | null = null;
    preview: PlanPreview | null = null;
    previewStep = 0;

    constructor(api: ApiClient) {
        this.api = api;
    }

    async load(): Promise<void> {
        this.map = await this.api.getMap();
        this.partition = await this.api.getPartition();
    }

    /** Index of the committed subgraph covering a vertex, or null. */
    subgraphOf(vertex: number): number | null {
        for (let i = 0; i < this.partition.subgraphs.length; i++) {
            if (this.partition.subgraphs[i].vertices.includes(vertex)) {
                return i;
            }
        }
        return null;
    }

    /** Toggle a vertex in the seed selection (at most two vertices). */
    clickVertex(vertex: number): void {
        this.lastError = null;
        const at = this.selection.indexOf(vertex);
        if (at >= 0) {
            this.selection.splice(at, 1);
        } else {
            if (this.subgraphOf(vertex) !== null) {
                this.lastError = `vertex ${vertex} is already committed`;
                return;
            }
            this.selection.push(vertex);
            if (this.selection.length > 2) {
                this.selection.shift();
            }
        }
        this.suggestions = [];
    }

    async requestSuggestions(kind?: SubgraphKind): Promise<void> {
        if (this.selection.length !== 2) {
            this.lastError = "select two adjacent vertices first";
            return;
        }
        this.lastError = null;
        try {
            this.suggestions = await this.api.suggest(
                [this.selection[0], this.selection[1]],
                kind,
            );
            if (this.suggestions.length === 0) {
                this.lastError = "no structure grows from this seed";
            }
        } catch (err) {
            this.handleError(err);
        }
    }

    async commitCandidate(index: number): Promise<void> {
        const candidate = this.suggestions[index];
        if (!candidate) {
            this.lastError = `no suggestion ${index}`;
            return;
        }
        await this.commit(candidate);
    }

    async commit(subgraph: Subgraph): Promise<void> {
        this.lastError = null;
        try {
            this.partition = await this.api.commit(subgraph);
            this.selection = [];
            this.suggestions = [];
            this.violations = null;
        } catch (err) {
            // keep selection and suggestions so the operator can retry
            this.handleError(err);
        }
    }

    async undo(): Promise<void> {
        this.lastError = null;
        this.partition = await this.api.undo();
        this.violations = null;
    }

    async validate(): Promise<string[]> {
        this.lastError = null;
        this.violations = await this.api.validate();
        return this.violations;
    }

    async runPreview(problem: Problem, algorithm = "subgraph"): Promise<void> {
        this.lastError = null;
        try {
            this.preview = await this.api.previewPlan(problem, algorithm);
            this.previewStep = 0;
        } catch (err) {
            this.handleError(err);
        }
    }

    /** Robot positions after the first `previewStep` plan steps. */
    previewPositions(problem: Problem): Map<number, number> {
        const at = new Map<number, number>();
        for (const r of problem.robots) {
            at.set(r.id, r.start);
        }
        const steps = this.preview?.plan?.steps ?? [];
        for (let i = 0; i < Math.min(this.previewStep, steps.length); i++) {
            at.set(steps[i].robot, steps[i].to);
        }
        return at;
    }

    /** Download-ready partition JSON, interchangeable with the CLI. */
    partitionJson(): string {
        return JSON.stringify(this.partition, null, 2) + "\n";
    }

    private handleError(err: unknown): void {
        if (err instanceof ApiError) {
            this.lastError = `${err.status}: ${err.message}`;
        } else {
            this.lastError = String(err);
        }
    }
}
