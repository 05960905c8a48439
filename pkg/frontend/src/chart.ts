/**
 * Angular-velocity-vs-cycle chart.
 *
 * Built from the recorded trajectory rows — one sample per control
 * cycle, three series for the body rates — and laid out as SVG
 * polylines inside a fixed viewport.  The chart shows exactly what
 * the gateway recorded; the only arithmetic here is the pixel
 * mapping.
 */

import type { TrajectoryPoint } from "./api.js";
import { AXIS_COLORS } from "./projection.js";

export interface Series {
  name: string;
  color: string;
  values: number[];
}

export interface ChartData {
  /** Cycle numbers, one per sample. */
  cycles: number[];
  series: Series[];
}

/** The three body-rate series over the recorded cycles. */
export function angularVelocitySeries(trajectory: readonly TrajectoryPoint[]): ChartData {
  return {
    cycles: trajectory.map((p) => p.clock),
    series: [
      { name: "ω1 (roll)", color: AXIS_COLORS[0], values: trajectory.map((p) => p.omega1) },
      { name: "ω2 (pitch)", color: AXIS_COLORS[1], values: trajectory.map((p) => p.omega2) },
      { name: "ω3 (yaw)", color: AXIS_COLORS[2], values: trajectory.map((p) => p.omega3) },
    ],
  };
}

export interface Tick {
  /** Pixel position along the axis. */
  at: number;
  label: string;
}

export interface Polyline {
  name: string;
  color: string;
  /** SVG points attribute: "x,y x,y …". */
  points: string;
}

export interface ChartLayout {
  width: number;
  height: number;
  /** Plot rectangle inside the axis margins. */
  plot: { left: number; top: number; right: number; bottom: number };
  polylines: Polyline[];
  xTicks: Tick[];
  yTicks: Tick[];
  /** Pixel y of the zero line, or null when zero is out of range. */
  zeroY: number | null;
}

/** Round a raw interval up to a 1/2/5 × 10^k tick step. */
export function niceStep(raw: number): number {
  if (!(raw > 0) || !Number.isFinite(raw)) return 1;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const unit = raw / power;
  if (unit <= 1) return power;
  if (unit <= 2) return 2 * power;
  if (unit <= 5) return 5 * power;
  return 10 * power;
}

function tickLabel(value: number): string {
  const rounded = Math.round(value * 1e9) / 1e9;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

const MARGIN = { left: 52, top: 12, right: 10, bottom: 26 };

/** Map chart data onto a width-by-height SVG viewport. */
export function buildChart(data: ChartData, width: number, height: number): ChartLayout {
  const plot = {
    left: MARGIN.left,
    top: MARGIN.top,
    right: width - MARGIN.right,
    bottom: height - MARGIN.bottom,
  };
  const layout: ChartLayout = {
    width,
    height,
    plot,
    polylines: [],
    xTicks: [],
    yTicks: [],
    zeroY: null,
  };
  if (data.cycles.length === 0) return layout;

  const xMin = Math.min(...data.cycles);
  const xMax = Math.max(...data.cycles);
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of data.series) {
    for (const v of s.values) {
      yMin = Math.min(yMin, v);
      yMax = Math.max(yMax, v);
    }
  }
  if (!Number.isFinite(yMin)) {
    yMin = 0;
    yMax = 0;
  }
  // Pad a flat range so the line sits mid-plot instead of on an edge.
  if (yMax - yMin < 1e-12) {
    const pad = Math.max(Math.abs(yMax), 1e-3);
    yMin -= pad;
    yMax += pad;
  }

  const xSpan = Math.max(xMax - xMin, 1);
  const toX = (c: number) => plot.left + ((c - xMin) / xSpan) * (plot.right - plot.left);
  const toY = (v: number) => plot.bottom - ((v - yMin) / (yMax - yMin)) * (plot.bottom - plot.top);

  layout.polylines = data.series.map((s) => ({
    name: s.name,
    color: s.color,
    points: s.values.map((v, i) => `${round2(toX(data.cycles[i]))},${round2(toY(v))}`).join(" "),
  }));

  const xStep = Math.max(1, Math.round(niceStep(xSpan / 6)));
  for (let c = Math.ceil(xMin / xStep) * xStep; c <= xMax; c += xStep) {
    layout.xTicks.push({ at: round2(toX(c)), label: tickLabel(c) });
  }
  const yStep = niceStep((yMax - yMin) / 4);
  for (let v = Math.ceil(yMin / yStep) * yStep; v <= yMax + 1e-12; v += yStep) {
    layout.yTicks.push({ at: round2(toY(v)), label: tickLabel(v) });
  }
  if (yMin <= 0 && 0 <= yMax) layout.zeroY = round2(toY(0));
  return layout;
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}
