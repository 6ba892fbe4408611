/** Scene construction: geometry payload + view state -> draw commands.
 *
 * Pure and canvas-free so tests can assert on the command list; a thin
 * adapter paints the commands onto a 2d context.  The shaded interior and
 * the distinguishable adjoint ovals live here.
 */

import { GeometryPayload, Segment } from "./api.js";
import { ViewState } from "./state.js";

export type DrawCommand =
  | { op: "segment"; layer: string; a: [number, number]; b: [number, number]; style: Style }
  | { op: "polyline"; layer: string; points: [number, number][]; style: Style }
  | { op: "dot"; layer: string; at: [number, number]; style: Style }
  | { op: "fill"; layer: string; points: [number, number][]; style: Style };

export interface Style {
  color: string;
  width?: number;
  dash?: number[];
  radius?: number;
  alpha?: number;
}

export const STYLES = {
  boundary: { color: "#e08214", width: 1.2 },
  side: { color: "#b35806", width: 3 },
  adjoint: { color: "#542788", width: 1.8 },
  fixedComponent: { color: "#1b7837", width: 2.2, dash: [6, 4] },
  residual: { color: "#542788", radius: 4 },
  vertex: { color: "#e08214", radius: 5 },
  interior: { color: "#fee0b6", alpha: 0.5 },
} as const satisfies Record<string, Style>;

export function buildScene(state: ViewState): DrawCommand[] {
  const g = state.geometry;
  if (!g) return [];
  const cmds: DrawCommand[] = [];
  const layers = state.layers;
  if (layers.sides) {
    // shaded interior: the side polylines bound the region
    const hull: [number, number][] = [];
    for (const side of g.sides) {
      hull.push(...side.points);
    }
    if (hull.length > 2) {
      cmds.push({ op: "fill", layer: "interior", points: hull, style: STYLES.interior });
    }
  }
  if (layers.boundary) {
    for (const comp of g.boundary) {
      for (const [a, b] of comp) {
        cmds.push({ op: "segment", layer: "boundary", a, b, style: STYLES.boundary });
      }
    }
  }
  if (layers.sides) {
    for (const side of g.sides) {
      cmds.push({
        op: "polyline",
        layer: `side-${side.component}`,
        points: side.points,
        style: STYLES.side,
      });
    }
  }
  if (layers.adjoint) {
    for (const [a, b] of g.adjoint) {
      cmds.push({ op: "segment", layer: "adjoint", a, b, style: STYLES.adjoint });
    }
  }
  if (layers.fixed && state.baseGeometry) {
    // the first boundary component is preserved by the shear family: draw the
    // base scenario's copy as a fixed reference layer
    const fixed = state.baseGeometry.boundary[0] ?? [];
    for (const [a, b] of fixed) {
      cmds.push({ op: "segment", layer: "fixed-c1", a, b, style: STYLES.fixedComponent });
    }
  }
  if (layers.residual) {
    for (const at of g["residual-points"]) {
      cmds.push({ op: "dot", layer: "residual", at, style: STYLES.residual });
    }
  }
  if (layers.vertices) {
    for (const at of g.vertices) {
      cmds.push({ op: "dot", layer: "vertices", at, style: STYLES.vertex });
    }
  }
  return cmds;
}

export interface CanvasLike {
  width: number;
  height: number;
  getContext(kind: "2d"): CanvasRenderingContext2D | null;
}

/** Paint commands with the viewport mapped onto the canvas. */
export function paint(canvas: CanvasLike, viewport: number[], cmds: DrawCommand[]): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const [x0, y0, x1, y1] = viewport as [number, number, number, number];
  const sx = canvas.width / (x1 - x0);
  const sy = canvas.height / (y1 - y0);
  const tx = (p: [number, number]): [number, number] => [
    (p[0] - x0) * sx,
    canvas.height - (p[1] - y0) * sy,
  ];
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (const c of cmds) {
    ctx.globalAlpha = c.style.alpha ?? 1;
    if (c.op === "fill") {
      ctx.fillStyle = c.style.color;
      ctx.beginPath();
      c.points.map(tx).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
      ctx.closePath();
      ctx.fill();
    } else if (c.op === "segment") {
      ctx.strokeStyle = c.style.color;
      ctx.lineWidth = c.style.width ?? 1;
      ctx.setLineDash(c.style.dash ?? []);
      const [ax, ay] = tx(c.a);
      const [bx, by] = tx(c.b);
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
      ctx.stroke();
    } else if (c.op === "polyline") {
      ctx.strokeStyle = c.style.color;
      ctx.lineWidth = c.style.width ?? 1;
      ctx.setLineDash(c.style.dash ?? []);
      ctx.beginPath();
      c.points.map(tx).forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
      ctx.stroke();
    } else {
      ctx.fillStyle = c.style.color;
      const [x, y] = tx(c.at);
      ctx.beginPath();
      ctx.arc(x, y, c.style.radius ?? 3, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
  ctx.globalAlpha = 1;
  ctx.setLineDash([]);
}
