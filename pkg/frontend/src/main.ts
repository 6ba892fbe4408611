/** DOM wiring: slider, exact-parameter box, matrix editor, layer toggles,
 * badges, tooltips with exact coordinates, and the event log with replay. */

import { Client, Report } from "./api.js";
import { computeIndicators } from "./indicators.js";
import { fmtRat, ratToNumber } from "./rational.js";
import { buildScene, paint } from "./scene.js";
import { Explorer } from "./state.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

async function boot(): Promise<void> {
  const client = new Client("");
  const explorer = new Explorer(client);
  const canvas = $("scene") as unknown as HTMLCanvasElement;
  const badge = $("badge");
  const certs = $("certs");
  const logEl = $("eventlog");
  const tooltip = $("tooltip");
  let report: Report | null = null;

  async function refresh(): Promise<void> {
    const st = explorer.state;
    if (st.geometry) {
      paint(canvas as never, st.geometry.viewport, buildScene(st));
    }
    badge.textContent = st.badge;
    badge.className = st.badge === "regular" ? "badge ok" : "badge warn";
    const ind = computeIndicators(st.derived, st.geometry);
    $("ind-smooth").textContent = ind.smoothBoundaries ? "smooth" : "degenerate";
    $("ind-reg").textContent = ind.regularity;
    $("ind-thick").textContent =
      ind.thickness === null ? "n/a" : ind.thickness.toFixed(3);
    const ac = st.lastCertificates.adjointUnchanged;
    const po = st.lastCertificates.preserved;
    certs.textContent = [
      ac ? `adjoint unchanged: ${ac.pass} (factor ${ac.proportionality})` : "",
      po ? `preserved objects: ${po.pass}` : "",
    ]
      .filter(Boolean)
      .join("  |  ");
    logEl.innerHTML = "";
    for (const ev of st.eventLog) {
      const li = document.createElement("li");
      li.textContent = ev.kind === "gamma" ? `gamma = ${ev.gamma}` : "matrix";
      logEl.appendChild(li);
    }
    if (st.scenarioId) {
      report = await client.report(st.scenarioId);
    }
  }

  const polycon = await (await fetch("counterexample.json")).json();
  await explorer.load(polycon);
  await refresh();

  const slider = $("gamma") as unknown as HTMLInputElement;
  const gammaText = $("gamma-text") as unknown as HTMLInputElement;
  let inflight = false;
  let pending: number | null = null;
  slider.addEventListener("change", async () => {
    const value = Number(slider.value);
    if (inflight) {
      pending = value; // later slider events coalesce
      return;
    }
    inflight = true;
    try {
      await explorer.onGammaSlide(value);
      gammaText.value = fmtRat(explorer.state.gammaSlider);
      await refresh();
    } finally {
      inflight = false;
      if (pending !== null) {
        const v = pending;
        pending = null;
        slider.value = String(v);
        slider.dispatchEvent(new Event("change"));
      }
    }
  });
  gammaText.addEventListener("change", async () => {
    try {
      await explorer.onGammaTyped(gammaText.value);
      slider.value = String(ratToNumber(explorer.state.gammaSlider));
      await refresh();
    } catch (e) {
      badge.textContent = String(e);
    }
  });
  $("apply-matrix").addEventListener("click", async () => {
    const rows: string[][] = [];
    for (let i = 0; i < 3; i++) {
      const row: string[] = [];
      for (let j = 0; j < 3; j++) {
        row.push(($(`t${i}${j}`) as unknown as HTMLInputElement).value.trim() || "0");
      }
      rows.push(row);
    }
    await explorer.applyMatrix(rows);
    await refresh();
  });
  for (const name of ["boundary", "sides", "adjoint", "residual", "vertices", "fixed"] as const) {
    $(`layer-${name}`).addEventListener("change", async () => {
      explorer.toggleLayer(name);
      await refresh();
    });
  }
  $("replay").addEventListener("click", async () => {
    const fresh = await explorer.replay(polycon);
    Object.assign(explorer, { state: fresh.state });
    await refresh();
  });

  canvas.addEventListener("mousemove", (ev) => {
    if (!report || !explorer.state.geometry) return;
    const rect = canvas.getBoundingClientRect();
    const [x0, y0, x1, y1] = explorer.state.geometry.viewport as [
      number, number, number, number,
    ];
    const px = x0 + ((ev.clientX - rect.left) / rect.width) * (x1 - x0);
    const py = y0 + (1 - (ev.clientY - rect.top) / rect.height) * (y1 - y0);
    // tooltip: nearest vertex within a pixel radius shows its exact coords
    const verts = (report.polycon as { vertices?: { coords?: string[] }[] }).vertices ?? [];
    const geo = explorer.state.geometry.vertices;
    let hit: string | null = null;
    geo.forEach((v, i) => {
      if (Math.hypot(v[0] - px, v[1] - py) < (x1 - x0) / 60) {
        const exact = verts[i]?.coords;
        if (exact) hit = `(${exact.join(" : ")})`;
      }
    });
    if (hit) {
      tooltip.textContent = hit;
      tooltip.style.left = `${ev.clientX + 12}px`;
      tooltip.style.top = `${ev.clientY + 12}px`;
      tooltip.style.display = "block";
    } else {
      tooltip.style.display = "none";
    }
  });
}

boot().catch((e) => {
  const badge = document.getElementById("badge");
  if (badge) badge.textContent = `failed to start: ${e}`;
});
