/**
 * Scenario bundle file shapes and parsing.
 *
 * Mirrors the server's JSON contract: config.json, contactPlan.json, one
 * <Planet>.json with rotations, one <node_id>.json without. Parsers take
 * decoded JSON values so they stay fetch-free and unit-testable.
 */

export type Vec3 = [number, number, number];
export type Rgb = [number, number, number];

export interface NodeInfo {
  id: string;
  name: string;
}

export interface PlanetInfo {
  name: string;
  radius: number;
  nodes: NodeInfo[];
}

export interface ScenarioConfig {
  startTime: number;
  endTime: number;
  step: number;
  starName: string;
  starRadius: number;
  planets: PlanetInfo[];
}

export interface ContactWindow {
  sourceId: string;
  destinationId: string;
  start: number;
  end: number;
  color: Rgb | null;
}

function asNumber(value: unknown, where: string): number {
  const n = typeof value === "string" ? Number(value) : value;
  if (typeof n !== "number" || !Number.isFinite(n)) {
    throw new Error(`${where}: expected a number, got ${JSON.stringify(value)}`);
  }
  return n;
}

function asString(value: unknown, where: string): string {
  if (typeof value !== "string" || value === "") {
    throw new Error(`${where}: expected a non-empty string`);
  }
  return value;
}

function asRecord(value: unknown, where: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new Error(`${where}: expected an object`);
  }
  return value as Record<string, unknown>;
}

function asArray(value: unknown, where: string): unknown[] {
  if (!Array.isArray(value)) throw new Error(`${where}: expected an array`);
  return value;
}

export function parseConfig(json: unknown): ScenarioConfig {
  const root = asRecord(json, "config");
  const time = asRecord(root.Time, "Time");
  const star = asRecord(root.Star, "Star");
  const planets = asArray(root.Planets, "Planets").map((raw, p) => {
    const planet = asRecord(raw, `Planets[${p}]`);
    const nodes = asArray(planet.Nodes, `Planets[${p}].Nodes`).map((nodeRaw, n) => {
      const node = asRecord(nodeRaw, `Planets[${p}].Nodes[${n}]`);
      return {
        id: asString(node.ID, `Planets[${p}].Nodes[${n}].ID`),
        name: asString(node.Name, `Planets[${p}].Nodes[${n}].Name`),
      };
    });
    return {
      name: asString(planet.Name, `Planets[${p}].Name`),
      radius: asNumber(planet.Radius, `Planets[${p}].Radius`),
      nodes,
    };
  });
  return {
    startTime: asNumber(time.SimulationStartTime, "Time.SimulationStartTime"),
    endTime: asNumber(time.SimulationEndTime, "Time.SimulationEndTime"),
    step: asNumber(time.Step, "Time.Step"),
    starName: asString(star.Name, "Star.Name"),
    starRadius: asNumber(star.Radius, "Star.Radius"),
    planets,
  };
}

export function parseContactPlan(json: unknown): ContactWindow[] {
  const root = asRecord(json, "contactPlan");
  return asArray(root.ContactPlan, "ContactPlan").map((raw, i) => {
    const entry = asRecord(raw, `ContactPlan[${i}]`);
    let color: Rgb | null = null;
    if (entry.Color !== undefined) {
      const rgb = asArray(entry.Color, `ContactPlan[${i}].Color`);
      if (rgb.length !== 3) throw new Error(`ContactPlan[${i}].Color: expected three components`);
      color = [
        asNumber(rgb[0], `ContactPlan[${i}].Color[0]`),
        asNumber(rgb[1], `ContactPlan[${i}].Color[1]`),
        asNumber(rgb[2], `ContactPlan[${i}].Color[2]`),
      ];
    }
    return {
      sourceId: asString(entry.SourceID, `ContactPlan[${i}].SourceID`),
      destinationId: asString(entry.DestinationID, `ContactPlan[${i}].DestinationID`),
      start: asNumber(entry.StartTime, `ContactPlan[${i}].StartTime`),
      end: asNumber(entry.EndTime, `ContactPlan[${i}].EndTime`),
      color,
    };
  });
}

export interface EphemerisTable {
  times: number[];
  positions: Vec3[];
  /** Euler X-Y-Z triples in degrees; null for node tables. */
  rotations: Vec3[] | null;
}

export function parsePositions(json: unknown, kind: "planet" | "node"): EphemerisTable {
  const root = asRecord(json, "positions");
  const entries = asArray(root.Positions, "Positions");
  if (entries.length === 0) throw new Error("Positions: file holds no samples");
  const times: number[] = [];
  const positions: Vec3[] = [];
  const rotations: Vec3[] = [];
  entries.forEach((raw, i) => {
    const entry = asRecord(raw, `Positions[${i}]`);
    const t = asNumber(entry.Time, `Positions[${i}].Time`);
    if (i > 0 && t <= times[i - 1]) {
      throw new Error(`Positions[${i}].Time: times must be strictly increasing`);
    }
    times.push(t);
    positions.push([
      asNumber(entry.PositionX, `Positions[${i}].PositionX`),
      asNumber(entry.PositionY, `Positions[${i}].PositionY`),
      asNumber(entry.PositionZ, `Positions[${i}].PositionZ`),
    ]);
    if (kind === "planet") {
      rotations.push([
        asNumber(entry.RotationX, `Positions[${i}].RotationX`),
        asNumber(entry.RotationY, `Positions[${i}].RotationY`),
        asNumber(entry.RotationZ, `Positions[${i}].RotationZ`),
      ]);
    } else if ("RotationX" in entry || "RotationY" in entry || "RotationZ" in entry) {
      throw new Error(`Positions[${i}]: node files must not carry rotations`);
    }
  });
  return { times, positions, rotations: kind === "planet" ? rotations : null };
}
