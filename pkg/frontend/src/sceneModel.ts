/**
 * Pure scene state: every body's world position at a time, origin
 * shifting, the set of active contact windows, and orbit trails. All
 * math stays in float64 here; only the render layer casts to float32.
 */

import type { ContactWindow, EphemerisTable, ScenarioConfig, Vec3 } from "./bundleData";
import { sampleTable } from "./ephemeris";

export interface SceneModel {
  config: ScenarioConfig;
  plan: ContactWindow[];
  planetTables: Map<string, EphemerisTable>;
  nodeTables: Map<string, EphemerisTable>;
  nodeHost: Map<string, string>;
  /** Plan indices sorted by window start, for the active-set query. */
  planByStart: number[];
}

export function buildSceneModel(
  config: ScenarioConfig,
  plan: ContactWindow[],
  planetTables: Map<string, EphemerisTable>,
  nodeTables: Map<string, EphemerisTable>,
): SceneModel {
  const nodeHost = new Map<string, string>();
  for (const planet of config.planets) {
    if (!planetTables.has(planet.name)) {
      throw new Error(`missing position table for planet ${planet.name}`);
    }
    for (const node of planet.nodes) {
      if (!nodeTables.has(node.id)) {
        throw new Error(`missing position table for node ${node.id}`);
      }
      nodeHost.set(node.id, planet.name);
    }
  }
  for (const window of plan) {
    for (const endpoint of [window.sourceId, window.destinationId]) {
      if (!nodeHost.has(endpoint)) {
        throw new Error(`contact references unknown node ${endpoint}`);
      }
    }
  }
  const planByStart = plan.map((_, i) => i).sort((a, b) => plan[a].start - plan[b].start);
  return { config, plan, planetTables, nodeTables, nodeHost, planByStart };
}

export interface WorldState {
  /** Star, planets, and nodes by name/ID, heliocentric km. */
  positions: Map<string, Vec3>;
  /** Planet Euler X-Y-Z rotations in degrees. */
  rotations: Map<string, Vec3>;
}

export function worldState(model: SceneModel, t: number): WorldState {
  const positions = new Map<string, Vec3>();
  const rotations = new Map<string, Vec3>();
  positions.set(model.config.starName, [0, 0, 0]);
  for (const [name, table] of model.planetTables) {
    const state = sampleTable(table, t);
    positions.set(name, state.position);
    if (state.rotation) rotations.set(name, state.rotation);
  }
  for (const [id, table] of model.nodeTables) {
    const local = sampleTable(table, t).position;
    const host = positions.get(model.nodeHost.get(id)!)!;
    positions.set(id, [host[0] + local[0], host[1] + local[1], host[2] + local[2]]);
  }
  return { positions, rotations };
}

/**
 * Rebase world positions so the focus body sits exactly at the origin:
 * rendered(X) = world(X) - world(focus), computed in float64 before any
 * cast to the GPU's float32.
 */
export function applyOriginShift(
  positions: Map<string, Vec3>,
  focusName: string,
): Map<string, Vec3> {
  const focus = positions.get(focusName);
  if (!focus) throw new Error(`unknown focus body ${focusName}`);
  const rendered = new Map<string, Vec3>();
  for (const [name, p] of positions) {
    rendered.set(name, [p[0] - focus[0], p[1] - focus[1], p[2] - focus[2]]);
  }
  return rendered;
}

/** Exactly the windows whose [start, end] contains t. */
export function activeWindows(model: SceneModel, t: number): ContactWindow[] {
  // Candidates have start <= t; binary search the start-sorted order,
  // then keep those still open.
  const order = model.planByStart;
  let lo = 0;
  let hi = order.length;
  while (lo < hi) {
    const mid = (lo + hi) >> 1;
    if (model.plan[order[mid]].start <= t) lo = mid + 1;
    else hi = mid;
  }
  const active: ContactWindow[] = [];
  for (let k = 0; k < lo; k++) {
    const window = model.plan[order[k]];
    if (window.end >= t) active.push(window);
  }
  active.sort((a, b) =>
    a.sourceId < b.sourceId ? -1 : a.sourceId > b.sourceId ? 1 :
    a.destinationId < b.destinationId ? -1 : a.destinationId > b.destinationId ? 1 :
    a.start - b.start,
  );
  return active;
}

/**
 * Trailing polyline of a node's last `count` planet-local positions at
 * the table's own spacing, newest last, anchored at the host's current
 * world position (so the orbit shape stays around the planet).
 */
export function orbitTrail(
  model: SceneModel,
  nodeId: string,
  t: number,
  count = 256,
): Vec3[] {
  if (count <= 0) return [];
  const table = model.nodeTables.get(nodeId);
  if (!table) throw new Error(`unknown node ${nodeId}`);
  const spacing = table.times.length > 1 ? table.times[1] - table.times[0] : 0;
  const clampedT = Math.min(Math.max(t, table.times[0]), table.times[table.times.length - 1]);
  const points: Vec3[] = [];
  for (let k = count - 1; k >= 0; k--) {
    const when = clampedT - k * spacing;
    if (when < table.times[0]) continue;
    points.push(sampleTable(table, when).position);
  }
  return points;
}
