/** Typed client for the local /v1 scenario service. */

export type Json = Record<string, unknown>;

export interface Derived {
  validation: {
    valid: boolean;
    nodal: boolean;
    issues: string[];
    relaxations: string[];
  };
  adjoint: Json;
  residual: Json;
  regularity: { verdict: string; "sign-vector": number[] | null; detail?: string };
}

export interface CreateResponse {
  id: string;
  deformable: boolean;
  derived: Derived;
}

export type Segment = [[number, number], [number, number]];

export interface GeometryPayload {
  tag: "render";
  viewport: number[];
  boundary: Segment[][];
  adjoint: Segment[];
  sides: { component: number; points: [number, number][] }[];
  vertices: [number, number][];
  "residual-points": [number, number][];
}

export interface DeformResponse {
  polycon: Json;
  "adjoint-unchanged"?: { pass: boolean; proportionality: string | null };
  "preserved-objects"?: {
    pass: boolean;
    "matrix-identities": boolean;
    "fixed-intersections": boolean;
    "fixed-line": boolean;
    details: string[];
  };
  derived: Derived;
  "current-t": string[][];
}

export interface Report {
  tag: "exact";
  id: string;
  polycon: Json;
  "current-t": string[][];
  history: Json[];
  derived: Derived;
  "interior-witness": {
    segment: Json[];
    values: string[];
    "product-negative": boolean;
  } | null;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service error ${status}: ${JSON.stringify(detail)}`);
  }
}

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(this.base + path, init);
    const body = await res.json();
    if (!res.ok) throw new ApiError(res.status, (body as Json)["detail"] ?? body);
    return body as T;
  }

  createScenario(polycon: Json): Promise<CreateResponse> {
    return this.call("/v1/scenario", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ polycon }),
    });
  }

  deformGamma(id: string, gamma: string): Promise<DeformResponse> {
    return this.call(`/v1/scenario/${id}/deform`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ gamma }),
    });
  }

  deformMatrix(id: string, matrix: string[][]): Promise<DeformResponse> {
    return this.call(`/v1/scenario/${id}/deform`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ matrix }),
    });
  }

  geometry(id: string, resolution = 40): Promise<GeometryPayload> {
    return this.call(`/v1/scenario/${id}/geometry?resolution=${resolution}`);
  }

  report(id: string): Promise<Report> {
    return this.call(`/v1/scenario/${id}/report`);
  }
}
