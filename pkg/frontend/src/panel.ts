/**
 * Hand-controller panel state.
 *
 * PanelState is everything the console knows: the selected inputs
 * (mode, AAH button, four tri-state grip slots, cycle count, optional
 * AAH override), the session id, and the buffers echoed back by the
 * gateway (state snapshot, cycle reports, recorded trajectory).  The
 * transition functions here keep the invariants — grip slots are
 * always one of NEG/ZERO/POS, the cycle count is always at least 1 —
 * and build the cycle request verbatim; they never touch the network.
 */

import type {
  AahButton,
  CycleReport,
  CycleRequest,
  Mode,
  SlotValue,
  State,
  TrajectoryPoint,
} from "./api.js";
import { restPoint } from "./api.js";

/** Largest cycle count one request may carry. */
export const MAX_CYCLE_COUNT = 10_000;

export interface PanelState {
  /** Gateway session id, or null before the first session exists. */
  sessionId: string | null;
  /** True once the gateway stopped recognizing the session. */
  sessionLost: boolean;
  mode: Mode;
  aahButton: AahButton;
  /** Vertical, twist, lateral, longitudinal deflections. */
  grip: [SlotValue, SlotValue, SlotValue, SlotValue];
  /** Cycles per Run press; always ≥ 1. */
  cycleCount: number;
  /** Manual roll/pitch/yaw hold command, or null to let the
   * simulated AAH drive it. */
  aahOverride: [SlotValue, SlotValue, SlotValue] | null;
  /** Latest full state snapshot from the gateway. */
  state: State | null;
  /** Cycle reports in execution order since the session started. */
  reports: CycleReport[];
  /** Recorded path, starting with the at-rest sample. */
  trajectory: TrajectoryPoint[];
  /** True while a request is in flight; Run is disabled then. */
  pending: boolean;
  /** Detail string of the last rejected request, or null. */
  lastError: string | null;
}

/** Fresh panel: all slots ZERO, TRAN mode, button up, one cycle. */
export function initialPanel(): PanelState {
  return {
    sessionId: null,
    sessionLost: false,
    mode: "TRAN",
    aahButton: "UP",
    grip: [0, 0, 0, 0],
    cycleCount: 1,
    aahOverride: null,
    state: null,
    reports: [],
    trajectory: [restPoint()],
    pending: false,
    lastError: null,
  };
}

function checkSlotValue(value: number): SlotValue {
  if (value !== -1 && value !== 0 && value !== 1) {
    throw new RangeError(`slot value must be -1, 0 or 1, got ${value}`);
  }
  return value;
}

export function setSlot(panel: PanelState, slot: number, value: number): void {
  if (!Number.isInteger(slot) || slot < 0 || slot > 3) {
    throw new RangeError(`grip slot must be 0..3, got ${slot}`);
  }
  panel.grip[slot] = checkSlotValue(value);
}

export function setMode(panel: PanelState, mode: Mode): void {
  panel.mode = mode;
}

export function setAahButton(panel: PanelState, button: AahButton): void {
  panel.aahButton = button;
}

/** Clamp arbitrary user input into a valid cycle count. */
export function setCycleCount(panel: PanelState, raw: number): void {
  const n = Math.floor(raw);
  panel.cycleCount = Number.isFinite(n) ? Math.min(Math.max(n, 1), MAX_CYCLE_COUNT) : 1;
}

/** Switch between simulated AAH output and manual override. */
export function toggleOverride(panel: PanelState): void {
  panel.aahOverride = panel.aahOverride === null ? [0, 0, 0] : null;
}

export function setOverrideAxis(panel: PanelState, axis: number, value: number): void {
  if (panel.aahOverride === null) {
    throw new RangeError("override is off; toggle it on first");
  }
  if (!Number.isInteger(axis) || axis < 0 || axis > 2) {
    throw new RangeError(`override axis must be 0..2, got ${axis}`);
  }
  panel.aahOverride[axis] = checkSlotValue(value);
}

/** The POST .../cycle body for the current selections. */
export function buildCycleRequest(panel: PanelState): CycleRequest {
  const request: CycleRequest = {
    mode: panel.mode,
    aahButton: panel.aahButton,
    grip: [...panel.grip],
    count: panel.cycleCount,
  };
  if (panel.aahOverride !== null) request.aahOverride = [...panel.aahOverride];
  return request;
}
