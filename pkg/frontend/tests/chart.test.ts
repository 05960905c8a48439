import { describe, expect, it } from "vitest";

import { restPoint, type TrajectoryPoint } from "../src/api.js";
import { angularVelocitySeries, buildChart, niceStep } from "../src/chart.js";

function ratePoint(clock: number, omega: [number, number, number]): TrajectoryPoint {
  return {
    ...restPoint(),
    clock,
    t: 0.25 * clock,
    omega1: omega[0],
    omega2: omega[1],
    omega3: omega[2],
  };
}

describe("angularVelocitySeries", () => {
  it("extracts one sample per recorded cycle for all three rates", () => {
    const trajectory = [
      restPoint(),
      ratePoint(1, [0.01, -0.02, 0.03]),
      ratePoint(2, [0.02, -0.04, 0.06]),
    ];

    const data = angularVelocitySeries(trajectory);

    expect(data.cycles).toEqual([0, 1, 2]);
    expect(data.series).toHaveLength(3);
    expect(data.series[0].values).toEqual([0, 0.01, 0.02]);
    expect(data.series[1].values).toEqual([0, -0.02, -0.04]);
    expect(data.series[2].values).toEqual([0, 0.03, 0.06]);
    expect(data.series.map((s) => s.name)).toEqual(["ω1 (roll)", "ω2 (pitch)", "ω3 (yaw)"]);
  });
});

describe("niceStep", () => {
  it.each([
    [0.9, 1],
    [1.2, 2],
    [3, 5],
    [7, 10],
    [0.03, 0.05],
    [25, 50],
  ])("rounds %s up to %s", (raw, expected) => {
    expect(niceStep(raw)).toBeCloseTo(expected, 12);
  });

  it("falls back to 1 on degenerate input", () => {
    expect(niceStep(0)).toBe(1);
    expect(niceStep(-2)).toBe(1);
    expect(niceStep(Infinity)).toBe(1);
    expect(niceStep(NaN)).toBe(1);
  });
});

describe("buildChart", () => {
  it("returns an empty layout for no data", () => {
    const layout = buildChart({ cycles: [], series: [] }, 640, 240);

    expect(layout.polylines).toEqual([]);
    expect(layout.xTicks).toEqual([]);
    expect(layout.yTicks).toEqual([]);
    expect(layout.zeroY).toBeNull();
  });

  it("spans the plot rectangle with the data extremes", () => {
    const data = {
      cycles: [0, 10],
      series: [{ name: "ω2 (pitch)", color: "#000", values: [0, 1] }],
    };

    const layout = buildChart(data, 640, 240);
    const pairs = layout.polylines[0].points
      .split(" ")
      .map((pair) => pair.split(",").map(Number));

    expect(pairs).toHaveLength(2);
    expect(pairs[0][0]).toBeCloseTo(layout.plot.left, 1);
    expect(pairs[0][1]).toBeCloseTo(layout.plot.bottom, 1);
    expect(pairs[1][0]).toBeCloseTo(layout.plot.right, 1);
    expect(pairs[1][1]).toBeCloseTo(layout.plot.top, 1);
  });

  it("keeps a flat all-zero history finite and centred", () => {
    const trajectory = [restPoint(), ratePoint(1, [0, 0, 0]), ratePoint(2, [0, 0, 0])];

    const layout = buildChart(angularVelocitySeries(trajectory), 640, 240);

    expect(layout.polylines).toHaveLength(3);
    for (const line of layout.polylines) {
      expect(line.points).not.toMatch(/NaN|Infinity/);
    }
    const [, y] = layout.polylines[0].points.split(" ")[0].split(",").map(Number);
    expect(y).toBeCloseTo((layout.plot.top + layout.plot.bottom) / 2, 0);
    expect(layout.zeroY).not.toBeNull();
  });

  it("emits a valid SVG points attribute", () => {
    const trajectory = [restPoint(), ratePoint(1, [0.01, 0.02, -0.03])];

    const layout = buildChart(angularVelocitySeries(trajectory), 640, 240);

    for (const line of layout.polylines) {
      expect(line.points).toMatch(/^-?\d+(\.\d+)?,-?\d+(\.\d+)?( -?\d+(\.\d+)?,-?\d+(\.\d+)?)*$/);
    }
  });

  it("places ticks inside the plot and marks the zero line", () => {
    const trajectory = [
      restPoint(),
      ratePoint(1, [0.05, -0.02, 0]),
      ratePoint(2, [0.1, -0.04, 0]),
      ratePoint(3, [0.15, -0.06, 0]),
    ];

    const layout = buildChart(angularVelocitySeries(trajectory), 640, 240);

    expect(layout.xTicks.length).toBeGreaterThan(0);
    expect(layout.yTicks.length).toBeGreaterThan(0);
    for (const tick of layout.xTicks) {
      expect(tick.at).toBeGreaterThanOrEqual(layout.plot.left);
      expect(tick.at).toBeLessThanOrEqual(layout.plot.right);
    }
    for (const tick of layout.yTicks) {
      expect(tick.at).toBeGreaterThanOrEqual(layout.plot.top - 0.01);
      expect(tick.at).toBeLessThanOrEqual(layout.plot.bottom + 0.01);
    }
    expect(layout.zeroY).not.toBeNull();
    expect(layout.zeroY!).toBeGreaterThan(layout.plot.top);
    expect(layout.zeroY!).toBeLessThan(layout.plot.bottom);
  });
});
