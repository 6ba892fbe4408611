/** View state and the replayable event log.
 *
 * Every applied deformation lands in the log as its exact request payload;
 * replaying the log against a fresh scenario reproduces the current scene,
 * which is what the replay test asserts.
 */

import { Client, Derived, DeformResponse, GeometryPayload } from "./api.js";
import { Rat, fmtRat, parseRat, snap } from "./rational.js";

export type DeformEvent =
  | { kind: "gamma"; gamma: string }
  | { kind: "matrix"; matrix: string[][] };

export interface Layers {
  boundary: boolean;
  sides: boolean;
  adjoint: boolean;
  residual: boolean;
  vertices: boolean;
  fixed: boolean;
}

export interface ViewState {
  scenarioId: string | null;
  deformable: boolean;
  gammaSlider: Rat;
  gammaRange: { min: number; max: number; maxDen: number };
  layers: Layers;
  derived: Derived | null;
  geometry: GeometryPayload | null;
  baseGeometry: GeometryPayload | null; // frozen at load: source of fixed layers
  eventLog: DeformEvent[];
  lastCertificates: {
    adjointUnchanged: { pass: boolean; proportionality: string | null } | null;
    preserved: DeformResponse["preserved-objects"] | null;
  };
  badge: string; // regularity verdict or the failing chart-exit certificate
}

export function initialState(): ViewState {
  return {
    scenarioId: null,
    deformable: false,
    gammaSlider: { n: 0n, d: 1n },
    gammaRange: { min: -1, max: 1, maxDen: 1000 },
    layers: {
      boundary: true,
      sides: true,
      adjoint: true,
      residual: true,
      vertices: true,
      fixed: true,
    },
    derived: null,
    geometry: null,
    baseGeometry: null,
    eventLog: [],
    lastCertificates: { adjointUnchanged: null, preserved: null },
    badge: "no scenario",
  };
}

export class Explorer {
  state: ViewState = initialState();

  constructor(
    private readonly client: Client,
    private readonly resolution = 40,
  ) {}

  async load(polycon: Record<string, unknown>): Promise<void> {
    const res = await this.client.createScenario(polycon);
    const geometry = await this.client.geometry(res.id, this.resolution);
    this.state = {
      ...initialState(),
      scenarioId: res.id,
      deformable: res.deformable,
      derived: res.derived,
      geometry,
      baseGeometry: geometry,
      badge: res.derived.regularity.verdict,
    };
  }

  /** Slider input: snap to a bounded-denominator rational, then deform. */
  async onGammaSlide(value: number): Promise<void> {
    const snapped = snap(value, this.state.gammaRange.maxDen);
    await this.applyGamma(fmtRat(snapped));
  }

  /** Free-typed exact parameter: validated as p/q and sent verbatim. */
  async onGammaTyped(text: string): Promise<void> {
    await this.applyGamma(fmtRat(parseRat(text)));
  }

  async applyGamma(gamma: string): Promise<void> {
    if (!this.state.scenarioId) throw new Error("no active scenario");
    this.state = { ...this.state, gammaSlider: parseRat(gamma) };
    await this.applyEvent({ kind: "gamma", gamma });
  }

  async applyMatrix(matrix: string[][]): Promise<void> {
    await this.applyEvent({ kind: "matrix", matrix });
  }

  private async applyEvent(ev: DeformEvent): Promise<void> {
    const id = this.state.scenarioId;
    if (!id) throw new Error("no active scenario");
    let res: DeformResponse;
    try {
      res =
        ev.kind === "gamma"
          ? await this.client.deformGamma(id, ev.gamma)
          : await this.client.deformMatrix(id, ev.matrix);
    } catch (err) {
      // chart exit: keep the last valid scene, surface the certificate
      this.state = { ...this.state, badge: `deformation rejected: ${String(err)}` };
      return;
    }
    const geometry = await this.client.geometry(id, this.resolution);
    this.state = {
      ...this.state,
      derived: res.derived,
      geometry,
      eventLog: [...this.state.eventLog, ev],
      lastCertificates: {
        adjointUnchanged: res["adjoint-unchanged"] ?? null,
        preserved: res["preserved-objects"] ?? null,
      },
      badge: res.derived.regularity.verdict,
    };
  }

  toggleLayer(name: keyof Layers): void {
    this.state = {
      ...this.state,
      layers: { ...this.state.layers, [name]: !this.state.layers[name] },
    };
  }

  /** Replay the event log against a fresh scenario; returns the new explorer. */
  async replay(polycon: Record<string, unknown>): Promise<Explorer> {
    const fresh = new Explorer(this.client, this.resolution);
    await fresh.load(polycon);
    for (const ev of this.state.eventLog) {
      await fresh.applyEvent(ev);
    }
    fresh.state = { ...fresh.state, layers: { ...this.state.layers } };
    return fresh;
  }
}
