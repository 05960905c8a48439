/**
 * Play-through over the recorded history.
 *
 * The playback cursor walks the trajectory one frame per tick; the
 * flight view renders the prefix up to the cursor, so the path grows
 * exactly as it was recorded.  The shell owns the wall-clock timer;
 * this module owns the cursor arithmetic.
 */

import type { TrajectoryPoint } from "./api.js";

export interface Playback {
  /** Index into the trajectory buffer of the frame on display. */
  frame: number;
  playing: boolean;
}

export function initialPlayback(): Playback {
  return { frame: 0, playing: false };
}

/** Start from the first frame (a no-op on an empty history). */
export function startPlayback(playback: Playback, frameCount: number): void {
  if (frameCount <= 0) return;
  playback.frame = 0;
  playback.playing = true;
}

export function stopPlayback(playback: Playback): void {
  playback.playing = false;
}

/** Advance one frame; stops on the last one. */
export function stepPlayback(playback: Playback, frameCount: number): void {
  if (!playback.playing) return;
  if (playback.frame >= frameCount - 1) {
    playback.playing = false;
    return;
  }
  playback.frame += 1;
  if (playback.frame >= frameCount - 1) playback.playing = false;
}

/** Keep the cursor inside a history that just changed size; a live
 * (non-playing) display follows the newest frame. */
export function clampPlayback(playback: Playback, frameCount: number): void {
  const last = Math.max(frameCount - 1, 0);
  if (!playback.playing || playback.frame > last) playback.frame = last;
}

/** The trajectory prefix the current frame displays. */
export function playbackView(
  trajectory: readonly TrajectoryPoint[],
  playback: Playback,
): readonly TrajectoryPoint[] {
  const end = Math.min(playback.frame, trajectory.length - 1);
  return trajectory.slice(0, end + 1);
}
