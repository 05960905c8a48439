/**
 * HTML and SVG fragments for the console.
 *
 * Pure string builders: PanelState in, markup out.  The shell mounts
 * the strings and routes clicks through data-action attributes, so
 * everything visible here can be exercised without a browser.
 */

import type { CycleReport, State, TrajectoryPoint } from "./api.js";
import { AXIS_NAMES, SLOT_NAMES, THRUSTER_NAMES } from "./api.js";
import type { ChartLayout } from "./chart.js";
import type { PanelState } from "./panel.js";
import type { FlightScene } from "./projection.js";
import type { Playback } from "./animation.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number, digits = 3): string {
  return value.toFixed(digits);
}

function triState(
  action: string,
  extra: string,
  selected: number,
  disabled: boolean,
): string {
  const options: [number, string][] = [
    [-1, "NEG"],
    [0, "ZERO"],
    [1, "POS"],
  ];
  const buttons = options
    .map(([value, label]) => {
      const on = value === selected ? " on" : "";
      const dis = disabled ? " disabled" : "";
      return (
        `<button class="tri${on}" data-action="${action}" ${extra} ` +
        `data-value="${value}"${dis}>${label}</button>`
      );
    })
    .join("");
  return `<span class="tri-group">${buttons}</span>`;
}

/** The hand-controller panel: session row, mode and AAH switches,
 * grip slots, override block, cycle count and Run. */
export function controllerView(panel: PanelState): string {
  const dis = panel.pending;
  const parts: string[] = [];

  if (panel.sessionLost) {
    parts.push(
      `<p class="banner lost">Session lost — the gateway no longer knows it. ` +
        `<button data-action="new-session"${dis ? " disabled" : ""}>Create a new session</button></p>`,
    );
  } else if (panel.sessionId === null) {
    parts.push(
      `<p class="banner">No session yet. ` +
        `<button data-action="new-session"${dis ? " disabled" : ""}>Create session</button></p>`,
    );
  } else {
    parts.push(
      `<p class="banner">Session <code>${escapeHtml(panel.sessionId)}</code> ` +
        `<button data-action="new-session"${dis ? " disabled" : ""}>New</button> ` +
        `<button data-action="reset"${dis ? " disabled" : ""}>Reset</button></p>`,
    );
  }
  if (panel.lastError !== null) {
    parts.push(`<p class="banner error">${escapeHtml(panel.lastError)}</p>`);
  }

  const modeButtons = (["TRAN", "ROT"] as const)
    .map(
      (m) =>
        `<button class="tri${panel.mode === m ? " on" : ""}" data-action="mode" ` +
        `data-value="${m}"${dis ? " disabled" : ""}>${m}</button>`,
    )
    .join("");
  const aahButtons = (["UP", "DOWN"] as const)
    .map(
      (b) =>
        `<button class="tri${panel.aahButton === b ? " on" : ""}" data-action="aah-button" ` +
        `data-value="${b}"${dis ? " disabled" : ""}>${b}</button>`,
    )
    .join("");
  parts.push(
    `<div class="row"><label>Mode</label><span class="tri-group">${modeButtons}</span>` +
      `<label>AAH button</label><span class="tri-group">${aahButtons}</span></div>`,
  );

  const slots = SLOT_NAMES.map(
    (name, i) =>
      `<div class="row"><label>${name}</label>` +
      triState("slot", `data-slot="${i}"`, panel.grip[i], dis) +
      `</div>`,
  );
  parts.push(`<div class="slots">${slots.join("")}</div>`);

  const overrideOn = panel.aahOverride !== null;
  const axisRows = overrideOn
    ? AXIS_NAMES.map(
        (name, i) =>
          `<div class="row"><label>${name}</label>` +
          triState("override-axis", `data-axis="${i}"`, panel.aahOverride![i], dis) +
          `</div>`,
      ).join("")
    : "";
  parts.push(
    `<div class="override"><label><input type="checkbox" data-action="override-toggle"` +
      `${overrideOn ? " checked" : ""}${dis ? " disabled" : ""}> AAH override</label>${axisRows}</div>`,
  );

  const canRun = panel.sessionId !== null && !panel.sessionLost && !dis;
  parts.push(
    `<div class="row"><label>Cycles</label>` +
      `<input id="cycle-count" type="number" min="1" max="10000" value="${panel.cycleCount}"` +
      `${dis ? " disabled" : ""}>` +
      `<button id="run" data-action="run"${canRun ? "" : " disabled"}>` +
      `${panel.pending ? "Running…" : "Run"}</button></div>`,
  );
  return parts.join("\n");
}

/** Current clock, position, velocity, rates and AAH status. */
export function statusView(state: State | null): string {
  if (state === null) return `<p class="muted">no state yet</p>`;
  const [x, y, z] = state.posData.x;
  const s = state.sensors;
  const axes = state.aah.activeAxes.length > 0 ? state.aah.activeAxes.join(" ") : "-";
  return [
    `<dl>`,
    `<dt>clock</dt><dd>${state.clock} (t = ${fmt(state.clock * state.step, 2)} s)</dd>`,
    `<dt>position</dt><dd>${fmt(x)} ${fmt(y)} ${fmt(z)} m</dd>`,
    `<dt>velocity</dt><dd>${fmt(s.vx)} ${fmt(s.vy)} ${fmt(s.vz)} m/s</dd>`,
    `<dt>rates</dt><dd>${fmt(s.rollRate)} ${fmt(s.pitchRate)} ${fmt(s.yawRate)} rad/s</dd>`,
    `<dt>AAH</dt><dd>${state.aah.engage} [${axes}]</dd>`,
    `</dl>`,
  ].join("");
}

/** Per-thruster broken toggles; broken ones highlighted. */
export function faultPanelView(failed: readonly string[], pending: boolean): string {
  const buttons = THRUSTER_NAMES.map((name) => {
    const broken = failed.includes(name);
    return (
      `<button class="thruster${broken ? " broken" : ""}" data-action="fault" ` +
      `data-thruster="${name}"${pending ? " disabled" : ""}>${name}</button>`
    );
  });
  return `<div class="thruster-grid">${buttons.join("")}</div>`;
}

/** Fired-thruster and AAH-axes table, one row per recorded cycle,
 * newest first; broken thrusters are highlighted where they fired. */
export function firedTableView(
  trajectory: readonly TrajectoryPoint[],
  failed: readonly string[],
): string {
  const rows = trajectory
    .filter((p) => p.clock > 0)
    .map((p) => {
      const fired =
        p.fired.length > 0
          ? p.fired
              .map((name) =>
                failed.includes(name)
                  ? `<span class="broken">${escapeHtml(name)}</span>`
                  : escapeHtml(name),
              )
              .join(" ")
          : "-";
      const aah = p.aah.length > 0 ? p.aah.map(escapeHtml).join(" ") : "-";
      return `<tr><td>${p.clock}</td><td>${fired}</td><td>${aah}</td></tr>`;
    })
    .reverse();
  if (rows.length === 0) {
    return `<p class="muted">nothing recorded yet</p>`;
  }
  return (
    `<table><thead><tr><th>cycle</th><th>fired</th><th>AAH axes</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table>`
  );
}

/** Contract violations from the most recent run, if any. */
export function violationsView(reports: readonly CycleReport[]): string {
  const items: string[] = [];
  for (const report of reports) {
    for (const v of report.violations) {
      items.push(
        `<li>cycle ${report.clock}: ${escapeHtml(v.kind)} at ` +
          `<code>${escapeHtml(v.location)}</code> — ${escapeHtml(v.detail)}</li>`,
      );
    }
  }
  if (items.length === 0) return `<p class="muted">violations: 0</p>`;
  return `<ul class="violations">${items.join("")}</ul>`;
}

/** Playback transport for the recorded history. */
export function playbackView(playback: Playback, frameCount: number, pending: boolean): string {
  const disabled = pending || frameCount <= 1;
  const label = playback.playing ? "Stop" : "Play";
  const action = playback.playing ? "stop" : "play";
  return (
    `<button data-action="${action}"${disabled ? " disabled" : ""}>${label}</button> ` +
    `<span class="muted">frame ${playback.frame + 1} / ${Math.max(frameCount, 1)}</span>`
  );
}

function segmentSvg(seg: { color: string; from: { x: number; y: number }; to: { x: number; y: number }; label: string }): string {
  return (
    `<line x1="${r2(seg.from.x)}" y1="${r2(seg.from.y)}" x2="${r2(seg.to.x)}" y2="${r2(seg.to.y)}" ` +
    `stroke="${seg.color}" stroke-width="2"/>` +
    `<text x="${r2(seg.to.x)}" y="${r2(seg.to.y)}" fill="${seg.color}" font-size="11">${escapeHtml(seg.label)}</text>`
  );
}

/** The 3-D flight view as an SVG document. */
export function flightSvg(scene: FlightScene, width: number, height: number): string {
  const pathPoints = scene.path.map((p) => `${r2(p.x)},${r2(p.y)}`).join(" ");
  const dots = scene.path
    .map((p) => `<circle cx="${r2(p.x)}" cy="${r2(p.y)}" r="1.4" class="dot"/>`)
    .join("");
  const parts = [
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg" class="flight">`,
    `<rect width="${width}" height="${height}" class="backdrop"/>`,
    scene.path.length > 1 ? `<polyline points="${pathPoints}" class="path" fill="none"/>` : "",
    dots,
    ...scene.triad.map(segmentSvg),
    ...scene.arrows.map(segmentSvg),
    `<circle cx="${r2(scene.current.x)}" cy="${r2(scene.current.y)}" r="3.5" class="current"/>`,
    `</svg>`,
  ];
  return parts.filter((p) => p !== "").join("\n");
}

/** The angular-velocity chart as an SVG document. */
export function chartSvg(layout: ChartLayout): string {
  const { plot } = layout;
  const parts = [
    `<svg viewBox="0 0 ${layout.width} ${layout.height}" xmlns="http://www.w3.org/2000/svg" class="chart">`,
    `<rect width="${layout.width}" height="${layout.height}" class="backdrop"/>`,
    `<line x1="${plot.left}" y1="${plot.bottom}" x2="${plot.right}" y2="${plot.bottom}" class="axis"/>`,
    `<line x1="${plot.left}" y1="${plot.top}" x2="${plot.left}" y2="${plot.bottom}" class="axis"/>`,
  ];
  if (layout.zeroY !== null) {
    parts.push(
      `<line x1="${plot.left}" y1="${layout.zeroY}" x2="${plot.right}" y2="${layout.zeroY}" class="zero"/>`,
    );
  }
  for (const tick of layout.xTicks) {
    parts.push(
      `<line x1="${tick.at}" y1="${plot.bottom}" x2="${tick.at}" y2="${plot.bottom + 4}" class="axis"/>`,
      `<text x="${tick.at}" y="${plot.bottom + 16}" class="tick" text-anchor="middle">${tick.label}</text>`,
    );
  }
  for (const tick of layout.yTicks) {
    parts.push(
      `<line x1="${plot.left - 4}" y1="${tick.at}" x2="${plot.left}" y2="${tick.at}" class="axis"/>`,
      `<text x="${plot.left - 7}" y="${tick.at + 3}" class="tick" text-anchor="end">${tick.label}</text>`,
    );
  }
  for (const line of layout.polylines) {
    parts.push(`<polyline points="${line.points}" fill="none" stroke="${line.color}" stroke-width="1.5"/>`);
  }
  const legend = layout.polylines
    .map(
      (line, i) =>
        `<text x="${plot.right - 70}" y="${plot.top + 12 + 14 * i}" fill="${line.color}" ` +
        `font-size="11">${escapeHtml(line.name)}</text>`,
    )
    .join("");
  parts.push(legend, `</svg>`);
  return parts.filter((p) => p !== "").join("\n");
}

function r2(v: number): number {
  return Math.round(v * 100) / 100;
}
