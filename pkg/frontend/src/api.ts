/**
 * Typed client for the simulator gateway.
 *
 * Mirrors the JSON shapes of `safersim serve` exactly: session state,
 * cycle reports, fault and reset responses, and the recorded
 * trajectory.  The console computes no physics and no selection
 * logic; every displayed value originates from one of these
 * responses.
 */

/** Tri-state deflection of a grip slot or override axis. */
export type SlotValue = -1 | 0 | 1;

/** Hand-controller mode switch. */
export type Mode = "TRAN" | "ROT";

/** AAH pushbutton position for the next cycle. */
export type AahButton = "UP" | "DOWN";

/** Rotation axis names as the gateway spells them. */
export type Axis = "ROLL" | "PITCH" | "YAW";

/** AAH engage-machine states. */
export type EngageState = "OFF" | "STARTED" | "ON" | "PRESSED_ONCE" | "CLOSING";

/** Grip slot labels, in request order. */
export const SLOT_NAMES = ["vertical", "twist", "lateral", "longitudinal"] as const;

/** Override axis labels, in request order. */
export const AXIS_NAMES: readonly Axis[] = ["ROLL", "PITCH", "YAW"];

/** Every thruster name the gateway accepts for fault toggles. */
export const THRUSTER_NAMES: readonly string[] = [
  "B1", "B2", "B3", "B4",
  "F1", "F2", "F3", "F4",
  "L1F", "L1R", "L3F", "L3R",
  "R2F", "R2R", "R4F", "R4R",
  "U1F", "U1R", "U3F", "U3R",
  "D2F", "D2R", "D4F", "D4R",
];

export type Triple = [number, number, number];

/** Position, velocity, attitude angles and body rates. */
export interface PosData {
  x: Triple;
  v: Triple;
  angles: Triple;
  omega: Triple;
}

/** What the inertial reference unit reports after a cycle. */
export interface Sensors {
  rollRate: number;
  pitchRate: number;
  yawRate: number;
  vx: number;
  vy: number;
  vz: number;
  ax: number;
  ay: number;
  az: number;
}

/** AAH engage machine and axis bookkeeping. */
export interface AahStatus {
  engage: EngageState;
  activeAxes: Axis[];
  ignoreHcm: Axis[];
  pressClock: number;
}

/** Complete simulator state (GET .../state). */
export interface State {
  clock: number;
  step: number;
  posData: PosData;
  sensors: Sensors;
  aah: AahStatus;
  failed: string[];
  lastFired: string[];
  trajectoryLength: number;
}

/** One contract violation embedded in a cycle report. */
export interface Violation {
  kind: string;
  location: string;
  detail: string;
}

/** One executed control cycle (POST .../cycle response entry). */
export interface CycleReport {
  clock: number;
  fired: string[];
  activeAxes: Axis[];
  ignoreHcm: Axis[];
  posData: PosData;
  sensors: Sensors;
  violations: Violation[];
}

/** Body of POST .../cycle. */
export interface CycleRequest {
  mode: Mode;
  aahButton: AahButton;
  grip: [SlotValue, SlotValue, SlotValue, SlotValue];
  aahOverride?: [SlotValue, SlotValue, SlotValue];
  count: number;
}

/** One recorded trajectory row, keyed by column name. */
export interface TrajectoryPoint {
  clock: number;
  t: number;
  x: number;
  y: number;
  z: number;
  vx: number;
  vy: number;
  vz: number;
  phi: number;
  theta: number;
  psi: number;
  omega1: number;
  omega2: number;
  omega3: number;
  fired: string[];
  aah: string[];
}

/** The at-rest sample every session starts from and resets to. */
export function restPoint(): TrajectoryPoint {
  return {
    clock: 0, t: 0,
    x: 0, y: 0, z: 0,
    vx: 0, vy: 0, vz: 0,
    phi: 0, theta: 0, psi: 0,
    omega1: 0, omega2: 0, omega3: 0,
    fired: [], aah: [],
  };
}

/** Raised when the gateway answers 404: the session expired or the
 * service restarted, and the console should offer a fresh one. */
export class SessionLostError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "SessionLostError";
  }
}

/** Any other non-2xx gateway answer, with the served detail string. */
export class GatewayError extends Error {
  readonly status: number;
  constructor(status: number, detail: string) {
    super(detail);
    this.name = "GatewayError";
    this.status = status;
  }
}

function splitNames(cell: string): string[] {
  return cell === "" ? [] : cell.split(";");
}

/** Turn a trajectory response (columns + rows) into keyed points. */
export function parseTrajectory(
  columns: string[],
  rows: (number | string)[][],
): TrajectoryPoint[] {
  const at = new Map(columns.map((name, i) => [name, i]));
  const num = (row: (number | string)[], name: string): number => {
    const i = at.get(name);
    if (i === undefined) throw new GatewayError(200, `trajectory column ${name} missing`);
    return Number(row[i]);
  };
  const str = (row: (number | string)[], name: string): string => {
    const i = at.get(name);
    if (i === undefined) throw new GatewayError(200, `trajectory column ${name} missing`);
    return String(row[i]);
  };
  return rows.map((row) => ({
    clock: num(row, "clock"),
    t: num(row, "t"),
    x: num(row, "x"),
    y: num(row, "y"),
    z: num(row, "z"),
    vx: num(row, "vx"),
    vy: num(row, "vy"),
    vz: num(row, "vz"),
    phi: num(row, "phi"),
    theta: num(row, "theta"),
    psi: num(row, "psi"),
    omega1: num(row, "omega1"),
    omega2: num(row, "omega2"),
    omega3: num(row, "omega3"),
    fired: splitNames(str(row, "fired")),
    aah: splitNames(str(row, "aah")),
  }));
}

/** Minimal fetch signature so tests can substitute a fake transport. */
export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** What the console needs from the gateway; HttpGatewayClient is the
 * real transport, tests provide fakes. */
export interface GatewayClient {
  createSession(): Promise<{ sessionId: string; state: State }>;
  getState(sessionId: string): Promise<State>;
  runCycles(sessionId: string, request: CycleRequest): Promise<CycleReport[]>;
  setFault(sessionId: string, thruster: string, broken: boolean): Promise<State>;
  reset(sessionId: string): Promise<State>;
  getTrajectory(sessionId: string): Promise<TrajectoryPoint[]>;
}

/** HTTP/JSON transport against a running `safersim serve`. */
export class HttpGatewayClient implements GatewayClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (response.ok) return (await response.json()) as T;
    let detail = `${response.status}`;
    try {
      const payload = (await response.json()) as { detail?: unknown };
      if (typeof payload.detail === "string") detail = payload.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    if (response.status === 404) throw new SessionLostError(detail);
    throw new GatewayError(response.status, detail);
  }

  createSession(): Promise<{ sessionId: string; state: State }> {
    return this.request("POST", "/api/session");
  }

  getState(sessionId: string): Promise<State> {
    return this.request("GET", `/api/session/${sessionId}/state`);
  }

  runCycles(sessionId: string, request: CycleRequest): Promise<CycleReport[]> {
    return this.request("POST", `/api/session/${sessionId}/cycle`, request);
  }

  setFault(sessionId: string, thruster: string, broken: boolean): Promise<State> {
    return this.request("POST", `/api/session/${sessionId}/fault`, { thruster, broken });
  }

  reset(sessionId: string): Promise<State> {
    return this.request("POST", `/api/session/${sessionId}/reset`);
  }

  async getTrajectory(sessionId: string): Promise<TrajectoryPoint[]> {
    const payload = await this.request<{ columns: string[]; rows: (number | string)[][] }>(
      "GET", `/api/session/${sessionId}/trajectory`,
    );
    return parseTrajectory(payload.columns, payload.rows);
  }
}
