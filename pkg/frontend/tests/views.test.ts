import { describe, expect, it } from "vitest";

import { restPoint, type CycleReport, type State, type TrajectoryPoint } from "../src/api.js";
import { angularVelocitySeries, buildChart } from "../src/chart.js";
import { initialPanel, setCycleCount, setSlot, toggleOverride } from "../src/panel.js";
import { buildFlightScene } from "../src/projection.js";
import { initialPlayback } from "../src/animation.js";
import {
  chartSvg,
  controllerView,
  escapeHtml,
  faultPanelView,
  firedTableView,
  flightSvg,
  playbackView,
  statusView,
  violationsView,
} from "../src/views.js";

function makeState(): State {
  return {
    clock: 2,
    step: 0.25,
    posData: { x: [0, 0.006, 0], v: [0, 0.048, 0], angles: [0, 0, 0], omega: [0, 0, 0] },
    sensors: {
      rollRate: 0, pitchRate: 0.1, yawRate: 0,
      vx: 0, vy: 0.048, vz: 0,
      ax: 0, ay: 0.096, az: 0,
    },
    aah: { engage: "ON", activeAxes: ["PITCH", "YAW"], ignoreHcm: [], pressClock: 1 },
    failed: ["F2"],
    lastFired: ["R2F"],
    trajectoryLength: 3,
  };
}

function firedPoint(clock: number, fired: string[], aah: string[]): TrajectoryPoint {
  return { ...restPoint(), clock, t: 0.25 * clock, fired, aah };
}

describe("controllerView", () => {
  it("prompts for the first session", () => {
    const html = controllerView(initialPanel());

    expect(html).toContain("No session yet");
    expect(html).toContain(`data-action="new-session"`);
  });

  it("marks the default selections active", () => {
    const html = controllerView(initialPanel());

    // Four ZERO slots, TRAN and UP: six highlighted selectors.
    expect(html.match(/class="tri on"/g)).toHaveLength(6);
    expect(html).toContain(`value="1"`);
  });

  it("shows the session id with Run enabled once created", () => {
    const panel = initialPanel();
    panel.sessionId = "cafe0123";
    setSlot(panel, 2, 1);
    setCycleCount(panel, 15);

    const html = controllerView(panel);

    expect(html).toContain("cafe0123");
    expect(html).toContain(`value="15"`);
    expect(html).toContain(`<button id="run" data-action="run">Run</button>`);
  });

  it("disables everything while a request is in flight", () => {
    const panel = initialPanel();
    panel.sessionId = "cafe0123";
    panel.pending = true;

    const html = controllerView(panel);

    expect(html).toContain("Running…");
    expect(html).toContain(`<button id="run" data-action="run" disabled>`);
    expect(html).not.toContain(`data-action="slot" data-slot="0" data-value="-1">`);
  });

  it("prompts to create a new session when the old one is lost", () => {
    const panel = initialPanel();
    panel.sessionId = "cafe0123";
    panel.sessionLost = true;

    const html = controllerView(panel);

    expect(html).toContain("Session lost");
    expect(html).toContain("Create a new session");
  });

  it("reveals the override axes only when enabled", () => {
    const panel = initialPanel();

    const before = controllerView(panel);
    toggleOverride(panel);
    const after = controllerView(panel);

    expect(before).not.toContain(`data-action="override-axis"`);
    expect(after).toContain(`data-action="override-axis"`);
    expect(after).toContain("checked");
  });

  it("shows the last rejected request", () => {
    const panel = initialPanel();
    panel.lastError = "invalid field count: too big";

    expect(controllerView(panel)).toContain("invalid field count: too big");
  });
});

describe("statusView", () => {
  it("renders a placeholder before the first state arrives", () => {
    expect(statusView(null)).toContain("no state yet");
  });

  it("shows clock, motion and AAH status", () => {
    const html = statusView(makeState());

    expect(html).toContain("2 (t = 0.50 s)");
    expect(html).toContain("0.048");
    expect(html).toContain("ON [PITCH YAW]");
  });
});

describe("faultPanelView", () => {
  it("renders one toggle per thruster", () => {
    const html = faultPanelView([], false);

    expect(html.match(/data-action="fault"/g)).toHaveLength(24);
    expect(html).toContain(`data-thruster="F2"`);
  });

  it("highlights broken thrusters", () => {
    const html = faultPanelView(["F2"], false);

    expect(html).toContain(`class="thruster broken" data-action="fault" data-thruster="F2"`);
    expect(html).toContain(`class="thruster" data-action="fault" data-thruster="F1"`);
  });

  it("disables toggles while a request is pending", () => {
    expect(faultPanelView([], true)).toContain("disabled");
  });
});

describe("firedTableView", () => {
  it("lists recorded cycles newest first, skipping the rest sample", () => {
    const trajectory = [
      restPoint(),
      firedPoint(1, ["R2F", "R2R"], []),
      firedPoint(2, [], ["PITCH"]),
    ];

    const html = firedTableView(trajectory, []);

    expect(html.indexOf("<td>2</td>")).toBeLessThan(html.indexOf("<td>1</td>"));
    expect(html).toContain("R2F R2R");
    expect(html).toContain("PITCH");
    expect(html).not.toContain("<td>0</td>");
  });

  it("highlights broken thrusters where they fired", () => {
    const trajectory = [restPoint(), firedPoint(1, ["F2", "F3"], [])];

    const html = firedTableView(trajectory, ["F2"]);

    expect(html).toContain(`<span class="broken">F2</span> F3`);
  });

  it("renders a placeholder for an empty history", () => {
    expect(firedTableView([restPoint()], [])).toContain("nothing recorded yet");
  });
});

describe("violationsView", () => {
  const cleanReport: CycleReport = {
    clock: 1,
    fired: [],
    activeAxes: [],
    ignoreHcm: [],
    posData: { x: [0, 0, 0], v: [0, 0, 0], angles: [0, 0, 0], omega: [0, 0, 0] },
    sensors: {
      rollRate: 0, pitchRate: 0, yawRate: 0,
      vx: 0, vy: 0, vz: 0, ax: 0, ay: 0, az: 0,
    },
    violations: [],
  };

  it("reports a clean history as zero", () => {
    expect(violationsView([cleanReport])).toContain("violations: 0");
  });

  it("lists each embedded violation", () => {
    const dirty: CycleReport = {
      ...cleanReport,
      clock: 3,
      violations: [{ kind: "postcondition", location: "selected_thrusters", detail: "too many" }],
    };

    const html = violationsView([cleanReport, dirty]);

    expect(html).toContain("cycle 3");
    expect(html).toContain("postcondition");
    expect(html).toContain("selected_thrusters");
  });
});

describe("playbackView", () => {
  it("offers Play when idle and Stop while running", () => {
    const playback = initialPlayback();

    expect(playbackView(playback, 5, false)).toContain(`data-action="play"`);
    playback.playing = true;
    expect(playbackView(playback, 5, false)).toContain(`data-action="stop"`);
  });

  it("disables the transport with nothing to replay", () => {
    expect(playbackView(initialPlayback(), 1, false)).toContain("disabled");
  });
});

describe("flightSvg", () => {
  it("draws the path, triad, vectors and current marker", () => {
    const trajectory = [
      restPoint(),
      { ...restPoint(), clock: 1, t: 0.25, y: 0.0015, vy: 0.024 },
      { ...restPoint(), clock: 2, t: 0.5, y: 0.006, vy: 0.048, omega3: 0.05 },
    ];

    const svg = flightSvg(buildFlightScene(trajectory, 640, 430), 640, 430);

    expect(svg).toContain("<svg");
    expect(svg).toContain("<polyline");
    expect(svg.match(/<line /g)!.length).toBeGreaterThanOrEqual(5); // triad + v + ω
    expect(svg).toContain(`class="current"`);
    expect(svg).toContain(">+X</text>");
    expect(svg).toContain(">v</text>");
  });

  it("omits the path line for a single point", () => {
    const svg = flightSvg(buildFlightScene([restPoint()], 640, 430), 640, 430);

    expect(svg).not.toContain("<polyline");
    expect(svg).toContain(`class="current"`);
  });
});

describe("chartSvg", () => {
  it("draws axes, series and legend", () => {
    const trajectory = [
      restPoint(),
      { ...restPoint(), clock: 1, t: 0.25, omega2: 0.0432 },
      { ...restPoint(), clock: 2, t: 0.5, omega2: 0.0864 },
    ];

    const svg = chartSvg(buildChart(angularVelocitySeries(trajectory), 640, 240));

    expect(svg).toContain("<svg");
    expect(svg.match(/<polyline/g)).toHaveLength(3);
    expect(svg).toContain("ω2 (pitch)");
    expect(svg).toContain(`class="zero"`);
  });
});

describe("escapeHtml", () => {
  it("neutralizes markup metacharacters", () => {
    expect(escapeHtml(`<b a="1">&`)).toBe("&lt;b a=&quot;1&quot;&gt;&amp;");
  });
});
