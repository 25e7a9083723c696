/** Typed client for the partition editor HTTP API.
 *
 * The UI never builds partitions itself; every mutation goes through
 * these endpoints and the server response is the source of truth.
 */

export interface MapVertex {
    id: number;
    x?: number;
    y?: number;
}

export interface MapEdge {
    from: number;
    to: number;
    directed?: boolean;
}

export interface MapData {
    vertices: MapVertex[];
    edges: MapEdge[];
}

export type SubgraphKind = "stack" | "hall" | "clique" | "ring" | "singleton";

export interface Subgraph {
    kind: SubgraphKind;
    vertices: number[];
}

export interface PartitionData {
    subgraphs: Subgraph[];
}

export interface RobotSpec {
    id: number;
    start: number;
    goal: number;
}

export interface Problem {
    robots: RobotSpec[];
}

export interface PlanStep {
    robot: number;
    from: number;
    to: number;
}

export interface PlanPreview {
    outcome: string;
    nodes_generated: number;
    nodes_expanded: number;
    goal_depth: number;
    branching_factor: number;
    plan: { steps: PlanStep[] } | null;
}

export class ApiError extends Error {
    status: number;

    constructor(status: number, message: string) {
        super(message);
        this.status = status;
    }
}

export type FetchFn = typeof fetch;

export class ApiClient {
    private baseUrl: string;
    private fetchFn: FetchFn;

    constructor(baseUrl: string, fetchFn: FetchFn = fetch) {
        this.baseUrl = baseUrl.replace(/\/$/, "");
        this.fetchFn = fetchFn;
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const init: RequestInit = { method };
        if (body !== undefined) {
            init.headers = { "Content-Type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const resp = await this.fetchFn(this.baseUrl + path, init);
        const data = await resp.json();
        if (!resp.ok) {
            const message =
                data && typeof data.error === "string" ? data.error : `HTTP ${resp.status}`;
            throw new ApiError(resp.status, message);
        }
        return data as T;
    }

    getMap(): Promise<MapData> {
        return this.request("GET", "/map");
    }

    getPartition(): Promise<PartitionData> {
        return this.request("GET", "/partition");
    }

    suggest(seed: [number, number], kind?: SubgraphKind): Promise<Subgraph[]> {
        const body: Record<string, unknown> = { seed };
        if (kind) {
            body.kind = kind;
        }
        return this.request<{ candidates: Subgraph[] }>("POST", "/suggest", body).then(
            (r) => r.candidates,
        );
    }

    commit(subgraph: Subgraph): Promise<PartitionData> {
        return this.request("POST", "/partition/commit", { subgraph });
    }

    undo(): Promise<PartitionData> {
        return this.request("POST", "/partition/undo");
    }

    validate(): Promise<string[]> {
        return this.request<{ violations: string[] }>("POST", "/partition/validate").then(
            (r) => r.violations,
        );
    }

    previewPlan(problem: Problem, algorithm = "subgraph"): Promise<PlanPreview> {
        return this.request("POST", "/plan/preview", { problem, algorithm });
    }
}
