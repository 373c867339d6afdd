/**
 * Scene clock: simulation seconds since J2000, advanced by a live speed
 * multiplier (simulation seconds per wall second), clamped to the
 * scenario range. Playback stops when a range edge is reached.
 */

export const SPEED_PRESETS = [1, 60, 3600, 86400];

/** The J2000 instant as a Unix millisecond timestamp. */
export const J2000_UNIX_MS = Date.UTC(2000, 0, 1, 11, 58, 55, 816);

export interface ClockState {
  currentTime: number;
  speed: number;
  playing: boolean;
}

export interface SceneClock {
  state(): ClockState;
  /** Advance by wall-clock seconds; no-op while paused. */
  advance(wallDelta: number): void;
  play(): void;
  pause(): void;
  toggle(): void;
  setSpeed(speed: number): void;
  /** Jump straight to a simulation time (clamped to the range). */
  scrub(t: number): void;
}

export function createClock(
  startTime: number,
  endTime: number,
  initial?: Partial<ClockState>,
): SceneClock {
  let currentTime = clamp(initial?.currentTime ?? startTime);
  let speed = initial?.speed ?? 1;
  let playing = initial?.playing ?? true;

  function clamp(t: number): number {
    return Math.min(Math.max(t, startTime), endTime);
  }

  return {
    state: () => ({ currentTime, speed, playing }),
    advance(wallDelta: number) {
      if (!playing || wallDelta <= 0) return;
      const next = currentTime + speed * wallDelta;
      currentTime = clamp(next);
      if (next !== currentTime) playing = false; // hit an edge
    },
    play() {
      playing = true;
    },
    pause() {
      playing = false;
    },
    toggle() {
      playing = !playing;
    },
    setSpeed(value: number) {
      if (Number.isFinite(value)) speed = value;
    },
    scrub(t: number) {
      const clamped = clamp(t);
      if (clamped !== t) playing = false;
      currentTime = clamped;
    },
  };
}

/** Civil-date rendering of a seconds-since-J2000 epoch (UTC ISO form). */
export function formatCivil(secondsSinceJ2000: number): string {
  return new Date(J2000_UNIX_MS + secondsSinceJ2000 * 1000).toISOString();
}

export function formatReadout(secondsSinceJ2000: number): string {
  return `${secondsSinceJ2000.toFixed(1)} s | ${formatCivil(secondsSinceJ2000)}`;
}
