/** The three live indicators steering the hunt for degenerations: smooth
 * boundaries, regularity, and a thickness estimate of the interior. */

import { Derived, GeometryPayload } from "./api.js";

export interface Indicators {
  smoothBoundaries: boolean;
  regularity: string;
  thickness: number | null; // presentation float; null when sides are missing
}

export function computeIndicators(
  derived: Derived | null,
  geometry: GeometryPayload | null,
): Indicators {
  const smooth =
    !!derived &&
    derived.validation.valid &&
    !derived.validation.relaxations.some((r) => r.includes("tangential")) &&
    !derived.validation.issues.length;
  const verdict = derived?.regularity.verdict ?? "unknown";
  return {
    smoothBoundaries: smooth,
    regularity: verdict,
    thickness: geometry ? thicknessEstimate(geometry) : null,
  };
}

/** Minimal distance between side polylines of distinct components: tends to 0
 * as two deflated sides approach tangency. */
export function thicknessEstimate(g: GeometryPayload): number | null {
  const sides = g.sides;
  if (sides.length < 2) return null;
  let best = Infinity;
  for (let i = 0; i < sides.length; i++) {
    for (let j = i + 1; j < sides.length; j++) {
      const a = sides[i]!.points;
      const b = sides[j]!.points;
      for (let u = 0; u < a.length; u += 2) {
        const p = a[u]!;
        for (let v = 0; v < b.length; v += 2) {
          const q = b[v]!;
          const d = Math.hypot(p[0] - q[0], p[1] - q[1]);
          if (d < best) best = d;
        }
      }
    }
  }
  return Number.isFinite(best) ? best : null;
}
