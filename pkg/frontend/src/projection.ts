/**
 * Display geometry for the flight view.
 *
 * A simple perspective projection: an orbiting camera looks at the
 * centre of the recorded path, and world points map to screen pixels
 * through a pinhole model.  The body-axes triad uses the same proper
 * Euler (Z-X-Z) convention as the simulator — the triad directions
 * are the columns of the body-to-fixed matrix built from the recorded
 * angles, so nothing is recomputed, only re-expressed for drawing.
 * The path itself is piecewise linear between the recorded cycle
 * points; there is no extrapolation.
 */

import type { TrajectoryPoint } from "./api.js";

export type Vec3 = readonly [number, number, number];
export type Mat3 = readonly [Vec3, Vec3, Vec3];

export function add(a: Vec3, b: Vec3): Vec3 {
  return [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
}

export function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

export function scale(a: Vec3, s: number): Vec3 {
  return [a[0] * s, a[1] * s, a[2] * s];
}

export function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export function norm(a: Vec3): number {
  return Math.hypot(a[0], a[1], a[2]);
}

export function normalize(a: Vec3): Vec3 {
  const n = norm(a);
  return n === 0 ? [0, 0, 0] : scale(a, 1 / n);
}

function matMul(a: Mat3, b: Mat3): Mat3 {
  const rows = [0, 1, 2].map((i) =>
    [0, 1, 2].map((j) => a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]),
  );
  return rows as unknown as Mat3;
}

/** Coordinate turn about the first axis. */
function d1(theta: number): Mat3 {
  const c = Math.cos(theta);
  const s = Math.sin(theta);
  return [
    [1, 0, 0],
    [0, c, s],
    [0, -s, c],
  ];
}

/** Coordinate turn about the third axis. */
function d3(psi: number): Mat3 {
  const c = Math.cos(psi);
  const s = Math.sin(psi);
  return [
    [c, s, 0],
    [-s, c, 0],
    [0, 0, 1],
  ];
}

/** Body-to-fixed rotation from (phi, theta, psi): the transpose of
 * D3(psi) D1(theta) D3(phi). */
export function attitudeMatrix(angles: Vec3): Mat3 {
  const [phi, theta, psi] = angles;
  const m = matMul(d3(psi), matMul(d1(theta), d3(phi)));
  return [
    [m[0][0], m[1][0], m[2][0]],
    [m[0][1], m[1][1], m[2][1]],
    [m[0][2], m[1][2], m[2][2]],
  ];
}

/** The three body axes expressed in the fixed frame: the columns of
 * the body-to-fixed matrix. */
export function bodyAxes(angles: Vec3): [Vec3, Vec3, Vec3] {
  const m = attitudeMatrix(angles);
  return [
    [m[0][0], m[1][0], m[2][0]],
    [m[0][1], m[1][1], m[2][1]],
    [m[0][2], m[1][2], m[2][2]],
  ];
}

/** Map a body-frame vector into the fixed frame. */
export function toFixed(angles: Vec3, v: Vec3): Vec3 {
  const m = attitudeMatrix(angles);
  return [dot(m[0], v), dot(m[1], v), dot(m[2], v)];
}

/** Orbiting pinhole camera.  The fixed frame has Z pointing down
 * (toward the feet), so the display treats -Z as up. */
export interface Camera {
  target: Vec3;
  position: Vec3;
  right: Vec3;
  up: Vec3;
  forward: Vec3;
  focal: number;
  cx: number;
  cy: number;
  near: number;
}

export interface ViewAngles {
  azimuth: number;
  elevation: number;
}

export const DEFAULT_VIEW: ViewAngles = { azimuth: -2.2, elevation: 0.45 };

const DISPLAY_UP: Vec3 = [0, 0, -1];

/** Fit the camera so every point sits comfortably inside the
 * width-by-height viewport. */
export function fitCamera(
  points: readonly Vec3[],
  width: number,
  height: number,
  view: ViewAngles = DEFAULT_VIEW,
): Camera {
  let lo: Vec3 = [0, 0, 0];
  let hi: Vec3 = [0, 0, 0];
  if (points.length > 0) {
    lo = points[0];
    hi = points[0];
    for (const p of points) {
      lo = [Math.min(lo[0], p[0]), Math.min(lo[1], p[1]), Math.min(lo[2], p[2])];
      hi = [Math.max(hi[0], p[0]), Math.max(hi[1], p[1]), Math.max(hi[2], p[2])];
    }
  }
  const target = scale(add(lo, hi), 0.5);
  let radius = 0;
  for (const p of points) radius = Math.max(radius, norm(sub(p, target)));
  radius = Math.max(radius, 0.5);

  // Keep the camera off the display-up pole so `right` stays defined.
  const elevation = Math.max(-1.4, Math.min(1.4, view.elevation));
  const ca = Math.cos(view.azimuth);
  const sa = Math.sin(view.azimuth);
  const ce = Math.cos(elevation);
  const se = Math.sin(elevation);
  // Elevation lifts the camera toward display-up, i.e. toward -Z.
  const offset: Vec3 = [ce * ca, ce * sa, -se];
  const distance = 4 * radius;
  const position = add(target, scale(offset, distance));
  const forward = normalize(sub(target, position));
  const right = normalize(cross(forward, DISPLAY_UP));
  const up = cross(right, forward);
  // A point `radius` off-centre at the target's depth should land at
  // ~42% of the smaller viewport dimension from the centre.
  const focal = (0.42 * Math.min(width, height) * distance) / radius;
  return {
    target,
    position,
    right,
    up,
    forward,
    focal,
    cx: width / 2,
    cy: height / 2,
    near: 0.05 * distance,
  };
}

export interface ScreenPoint {
  x: number;
  y: number;
  /** Distance along the view axis; larger is farther away. */
  depth: number;
}

export function projectPoint(camera: Camera, p: Vec3): ScreenPoint {
  const d = sub(p, camera.position);
  const depth = Math.max(dot(d, camera.forward), camera.near);
  const x = camera.cx + (camera.focal * dot(d, camera.right)) / depth;
  const y = camera.cy - (camera.focal * dot(d, camera.up)) / depth;
  return { x, y, depth };
}

/** One drawable line segment with its legend label and colour. */
export interface SceneSegment {
  label: string;
  color: string;
  from: ScreenPoint;
  to: ScreenPoint;
}

export const AXIS_COLORS: readonly string[] = ["#ff5f56", "#27c93f", "#4da6ff"];
export const VELOCITY_COLOR = "#f0c040";
export const OMEGA_COLOR = "#c792ea";

/** Everything the flight view draws, in screen coordinates. */
export interface FlightScene {
  path: ScreenPoint[];
  current: ScreenPoint;
  triad: SceneSegment[];
  arrows: SceneSegment[];
}

/** Project the recorded path and decorate its last point with the
 * body-axes triad and the velocity / angular-velocity vectors.  Pass
 * a prefix of the trajectory to render an animation frame. */
export function buildFlightScene(
  trajectory: readonly TrajectoryPoint[],
  width: number,
  height: number,
  view: ViewAngles = DEFAULT_VIEW,
): FlightScene {
  if (trajectory.length === 0) {
    throw new RangeError("flight view needs at least one trajectory point");
  }
  const positions = trajectory.map((p): Vec3 => [p.x, p.y, p.z]);
  const camera = fitCamera(positions, width, height, view);
  const path = positions.map((p) => projectPoint(camera, p));

  const last = trajectory[trajectory.length - 1];
  const origin = positions[positions.length - 1];
  let radius = 0;
  for (const p of positions) radius = Math.max(radius, norm(sub(p, camera.target)));
  radius = Math.max(radius, 0.5);
  const axisLength = 0.45 * radius;

  const angles: Vec3 = [last.phi, last.theta, last.psi];
  const axes = bodyAxes(angles);
  const triad = axes.map((axis, i): SceneSegment => ({
    label: ["+X", "+Y", "+Z"][i],
    color: AXIS_COLORS[i],
    from: projectPoint(camera, origin),
    to: projectPoint(camera, add(origin, scale(axis, axisLength))),
  }));

  let vMax = 0;
  let wMax = 0;
  for (const p of trajectory) {
    vMax = Math.max(vMax, norm([p.vx, p.vy, p.vz]));
    wMax = Math.max(wMax, norm([p.omega1, p.omega2, p.omega3]));
  }
  const arrows: SceneSegment[] = [];
  if (vMax > 0) {
    const v = scale([last.vx, last.vy, last.vz], (0.6 * radius) / vMax);
    arrows.push({
      label: "v",
      color: VELOCITY_COLOR,
      from: projectPoint(camera, origin),
      to: projectPoint(camera, add(origin, v)),
    });
  }
  if (wMax > 0) {
    // Body rates re-expressed in the fixed frame for drawing.
    const w = toFixed(angles, [last.omega1, last.omega2, last.omega3]);
    arrows.push({
      label: "ω",
      color: OMEGA_COLOR,
      from: projectPoint(camera, origin),
      to: projectPoint(camera, add(origin, scale(w, (0.6 * radius) / wMax))),
    });
  }
  return { path, current: path[path.length - 1], triad, arrows };
}
