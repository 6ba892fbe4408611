/** Deterministic in-memory stand-in for the /v1 service, shaped by recorded
 * responses from the real one.  Geometry is a pure function of the scenario's
 * event history (the adjoint layer is shifted by a history digest), while the
 * first boundary component is always the recorded one -- mirroring the real
 * service, where the shear family preserves that component exactly.  This
 * makes replay determinism and fixed-layer assertions meaningful.
 */

import fixturesJson from "./fixtures/service.json";
import type { FetchLike } from "../src/api.js";

type Json = Record<string, unknown>;

const fixtures = fixturesJson as unknown as {
  create: Json;
  geometry: Json;
  report: Json;
  deform_1_10: Json;
  deform_zero: Json;
  polycon: Json;
};

interface FakeScenario {
  history: { gamma?: string; matrix?: string[][] }[];
}

export interface Recorded {
  method: string;
  path: string;
  body: Json | null;
}

export class FakeService {
  scenarios = new Map<string, FakeScenario>();
  counter = 0;
  log: Recorded[] = [];

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? (JSON.parse(init.body as string) as Json) : null;
    this.log.push({ method, path, body });
    return this.route(method, path, body);
  };

  private respond(status: number, payload: unknown): Response {
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  }

  private digest(sc: FakeScenario): number {
    // deterministic small number from the exact history
    const s = JSON.stringify(sc.history);
    let h = 0;
    for (let i = 0; i < s.length; i++) h = (h * 31 + s.charCodeAt(i)) % 9973;
    return h / 9973;
  }

  private route(method: string, path: string, body: Json | null): Response {
    if (method === "POST" && path === "/v1/scenario") {
      const id = `f${++this.counter}`;
      this.scenarios.set(id, { history: [] });
      return this.respond(201, { ...fixtures.create, id });
    }
    const deform = path.match(/^\/v1\/scenario\/([^/]+)\/deform$/);
    if (method === "POST" && deform) {
      const sc = this.scenarios.get(deform[1]!);
      if (!sc) return this.respond(404, { detail: "unknown scenario" });
      if (!body || (!("gamma" in body) && !("matrix" in body))) {
        return this.respond(400, { detail: "need gamma or matrix" });
      }
      if ("matrix" in body) {
        const m = body["matrix"] as string[][];
        if (m.length !== 3 || m.some((row) => row.length !== 3)) {
          return this.respond(400, { detail: "basis change must be a 3x3 matrix" });
        }
      }
      sc.history.push(body as { gamma?: string });
      const base = "gamma" in body ? fixtures.deform_1_10 : fixtures.deform_zero;
      return this.respond(200, { ...base });
    }
    const geo = path.match(/^\/v1\/scenario\/([^/]+)\/geometry/);
    if (method === "GET" && geo) {
      const sc = this.scenarios.get(geo[1]!);
      if (!sc) return this.respond(404, { detail: "unknown scenario" });
      const g = JSON.parse(JSON.stringify(fixtures.geometry)) as {
        adjoint: [number[], number[]][];
        boundary: unknown[];
      };
      const d = this.digest(sc);
      g.adjoint = g.adjoint.map(([a, b]) => [
        [a[0]! + d, a[1]! + d],
        [b[0]! + d, b[1]! + d],
      ]) as never;
      return this.respond(200, g);
    }
    const rep = path.match(/^\/v1\/scenario\/([^/]+)\/report$/);
    if (method === "GET" && rep) {
      const sc = this.scenarios.get(rep[1]!);
      if (!sc) return this.respond(404, { detail: "unknown scenario" });
      return this.respond(200, { ...fixtures.report, history: sc.history });
    }
    return this.respond(404, { detail: `no route ${method} ${path}` });
  }
}

export const fixturePolycon = fixtures.polycon;
