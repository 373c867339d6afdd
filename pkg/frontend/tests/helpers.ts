import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import {
  parseConfig,
  parseContactPlan,
  parsePositions,
  type ContactWindow,
  type EphemerisTable,
  type ScenarioConfig,
  type Vec3,
} from "../src/bundleData";
import { buildSceneModel, type SceneModel } from "../src/sceneModel";

const FIXTURE_DIR = fileURLToPath(new URL("./fixtures/demo/", import.meta.url));

export function fixtureJson(name: string): unknown {
  return JSON.parse(readFileSync(FIXTURE_DIR + name, "utf-8"));
}

export interface FixtureBundle {
  config: ScenarioConfig;
  plan: ContactWindow[];
  model: SceneModel;
}

export function loadFixtureBundle(): FixtureBundle {
  const config = parseConfig(fixtureJson("config.json"));
  const plan = parseContactPlan(fixtureJson("contactPlan.json"));
  const planetTables = new Map<string, EphemerisTable>();
  const nodeTables = new Map<string, EphemerisTable>();
  for (const planet of config.planets) {
    planetTables.set(planet.name, parsePositions(fixtureJson(`${planet.name}.json`), "planet"));
    for (const node of planet.nodes) {
      nodeTables.set(node.id, parsePositions(fixtureJson(`${node.id}.json`), "node"));
    }
  }
  return { config, plan, model: buildSceneModel(config, plan, planetTables, nodeTables) };
}

/** Deterministic linear-congruential values in [0, 1). */
export function makeRng(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

export function syntheticModel(nodeCount: number, plan: ContactWindow[]): SceneModel {
  const times = [0, 1000];
  const config: ScenarioConfig = {
    startTime: 0,
    endTime: 1000,
    step: 1000,
    starName: "Star",
    starRadius: 1000,
    planets: [
      {
        name: "World",
        radius: 500,
        nodes: Array.from({ length: nodeCount }, (_, i) => ({
          id: `n${i + 1}`,
          name: `Node ${i + 1}`,
        })),
      },
    ],
  };
  const planetTables = new Map([
    [
      "World",
      {
        times,
        positions: [[1e6, 0, 0] as Vec3, [1.001e6, 0, 0] as Vec3],
        rotations: [[0, 0, 0] as Vec3, [0, 0, 90] as Vec3],
      },
    ],
  ]);
  const nodeTables = new Map<string, EphemerisTable>(
    Array.from({ length: nodeCount }, (_, i): [string, EphemerisTable] => {
      const angle = (2 * Math.PI * i) / nodeCount;
      const position: Vec3 = [800 * Math.cos(angle), 800 * Math.sin(angle), 10 * i];
      const drifted: Vec3 = [position[0], position[1], position[2] + 5];
      return [`n${i + 1}`, { times, positions: [position, drifted], rotations: null }];
    }),
  );
  return buildSceneModel(config, plan, planetTables, nodeTables);
}
