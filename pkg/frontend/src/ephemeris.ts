/**
 * Sampling of ephemeris tables: exact at knots, linear in position and
 * shortest-angular-arc in rotation between them, matching how the
 * compute side generated the files.
 */

import type { EphemerisTable, Vec3 } from "./bundleData";

export interface BodyState {
  position: Vec3;
  rotation: Vec3 | null;
}

/** Largest index i with times[i] <= t (binary search). */
function knotBefore(times: number[], t: number): number {
  let lo = 0;
  let hi = times.length - 1;
  while (lo < hi) {
    const mid = (lo + hi + 1) >> 1;
    if (times[mid] <= t) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

function wrapDegrees(angle: number): number {
  const a = angle % 360;
  const wrapped = a < 0 ? a + 360 : a;
  return wrapped >= 360 ? 0 : wrapped;
}

function lerpAngleDeg(a: number, b: number, fraction: number): number {
  // Shortest arc: 350 -> 10 passes through 0, never through 180.
  const delta = ((((b - a + 180) % 360) + 360) % 360) - 180;
  return wrapDegrees(a + fraction * delta);
}

export function sampleTable(table: EphemerisTable, t: number): BodyState {
  const times = table.times;
  if (t < times[0] || t > times[times.length - 1]) {
    throw new RangeError(`time ${t} outside table span [${times[0]}, ${times[times.length - 1]}]`);
  }
  const i = knotBefore(times, t);
  if (times[i] === t) {
    return {
      position: table.positions[i],
      rotation: table.rotations ? table.rotations[i] : null,
    };
  }
  const f = (t - times[i]) / (times[i + 1] - times[i]);
  const g = 1 - f;
  const a = table.positions[i];
  const b = table.positions[i + 1];
  const position: Vec3 = [
    g * a[0] + f * b[0],
    g * a[1] + f * b[1],
    g * a[2] + f * b[2],
  ];
  let rotation: Vec3 | null = null;
  if (table.rotations) {
    const ra = table.rotations[i];
    const rb = table.rotations[i + 1];
    rotation = [
      lerpAngleDeg(ra[0], rb[0], f),
      lerpAngleDeg(ra[1], rb[1], f),
      lerpAngleDeg(ra[2], rb[2], f),
    ];
  }
  return { position, rotation };
}
