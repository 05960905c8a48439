/**
 * Browser shell.
 *
 * The only module that touches the DOM: it mounts the rendered
 * fragments, routes clicks through data-action attributes to the
 * panel transitions and the gateway controller, and drives the
 * playback timer.  All state, rendering and protocol logic lives in
 * the DOM-free modules next to this one.
 */

import { HttpGatewayClient } from "./api.js";
import {
  clampPlayback,
  initialPlayback,
  playbackView as playbackSlice,
  startPlayback,
  stepPlayback,
  stopPlayback,
} from "./animation.js";
import { angularVelocitySeries, buildChart } from "./chart.js";
import { PanelController } from "./controller.js";
import {
  setAahButton,
  setCycleCount,
  setMode,
  setOverrideAxis,
  setSlot,
  toggleOverride,
} from "./panel.js";
import { buildFlightScene } from "./projection.js";
import {
  chartSvg,
  controllerView,
  faultPanelView,
  firedTableView,
  flightSvg,
  playbackView,
  statusView,
  violationsView,
} from "./views.js";

const FLIGHT_W = 640;
const FLIGHT_H = 430;
const CHART_W = 640;
const CHART_H = 240;
/** One recorded cycle per animation frame, at the cycle period. */
const FRAME_MS = 250;

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  if (override !== null && override !== "") return override;
  const host = window.location.hostname !== "" ? window.location.hostname : "127.0.0.1";
  return `http://${host}:8000`;
}

function mount(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing mount point #${id}`);
  return el;
}

const controllerEl = mount("controller");
const statusEl = mount("status");
const faultsEl = mount("faults");
const flightEl = mount("flight");
const playbackEl = mount("playback");
const chartEl = mount("chart");
const tableEl = mount("table");
const violationsEl = mount("violations");

const playback = initialPlayback();
const controller = new PanelController(new HttpGatewayClient(apiBase()), render);
const panel = controller.panel;

function render(): void {
  clampPlayback(playback, panel.trajectory.length);
  const frames = playbackSlice(panel.trajectory, playback);
  const failed = panel.state?.failed ?? [];

  controllerEl.innerHTML = controllerView(panel);
  statusEl.innerHTML = statusView(panel.state);
  faultsEl.innerHTML = faultPanelView(failed, panel.pending);
  flightEl.innerHTML = flightSvg(buildFlightScene(frames, FLIGHT_W, FLIGHT_H), FLIGHT_W, FLIGHT_H);
  playbackEl.innerHTML = playbackView(playback, panel.trajectory.length, panel.pending);
  chartEl.innerHTML = chartSvg(buildChart(angularVelocitySeries(panel.trajectory), CHART_W, CHART_H));
  tableEl.innerHTML = firedTableView(panel.trajectory, failed);
  violationsEl.innerHTML = violationsView(panel.reports);
}

function dispatch(action: string, el: HTMLElement): void {
  const value = Number(el.dataset.value);
  switch (action) {
    case "new-session":
      void controller.newSession();
      return;
    case "run":
      // A fresh run should steer the live state, not a replay.
      stopPlayback(playback);
      void controller.run();
      return;
    case "reset":
      void controller.reset();
      return;
    case "fault":
      void controller.toggleFault(el.dataset.thruster ?? "");
      return;
    case "mode":
      setMode(panel, el.dataset.value === "ROT" ? "ROT" : "TRAN");
      break;
    case "aah-button":
      setAahButton(panel, el.dataset.value === "DOWN" ? "DOWN" : "UP");
      break;
    case "slot":
      setSlot(panel, Number(el.dataset.slot), value);
      break;
    case "override-toggle":
      toggleOverride(panel);
      break;
    case "override-axis":
      setOverrideAxis(panel, Number(el.dataset.axis), value);
      break;
    case "play":
      startPlayback(playback, panel.trajectory.length);
      break;
    case "stop":
      stopPlayback(playback);
      break;
    default:
      return;
  }
  render();
}

document.body.addEventListener("click", (event) => {
  const el = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (el === null || el.hasAttribute("disabled")) return;
  const action = el.dataset.action;
  if (action !== undefined) dispatch(action, el);
});

document.body.addEventListener("change", (event) => {
  const el = event.target as HTMLElement;
  if (el.id === "cycle-count") {
    setCycleCount(panel, Number((el as HTMLInputElement).value));
    render();
  }
});

window.setInterval(() => {
  if (playback.playing) {
    stepPlayback(playback, panel.trajectory.length);
    render();
  }
}, FRAME_MS);

render();
void controller.newSession();
