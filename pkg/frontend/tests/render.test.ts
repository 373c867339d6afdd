import { describe, expect, it } from "vitest";

import type { ContactWindow } from "../src/bundleData";
import { createSceneView } from "../src/render";
import { textureForBody } from "../src/textures";
import { loadFixtureBundle, syntheticModel } from "./helpers";

describe("texture mapping", () => {
  it("matches known bodies case-insensitively", () => {
    expect(textureForBody("Mars")).toBe("textures/mars.png");
    expect(textureForBody("MARS")).toBe("textures/mars.png");
    expect(textureForBody("sun")).toBe("textures/sun.png");
  });

  it("unknown bodies get no texture", () => {
    expect(textureForBody("Xanadu")).toBeNull();
  });
});

describe("scene view", () => {
  it("builds one mesh per body and node", () => {
    const { config, model } = loadFixtureBundle();
    const view = createSceneView(model);
    const names = view.bodyNames();
    expect(names).toContain(config.starName);
    expect(names).toContain("Earth");
    expect(names).toContain("Mars");
    for (const id of ["node_1", "node_2", "node_3", "node_4"]) {
      expect(names).toContain(id);
    }
    view.dispose();
  });

  it("focus body renders at the origin after update", () => {
    const { config, model } = loadFixtureBundle();
    const view = createSceneView(model, { focus: "Mars" });
    view.update(config.startTime + 120);
    expect(view.renderedPosition("Mars")).toEqual([0, 0, 0]);
    const earth = view.renderedPosition("Earth");
    expect(Math.hypot(...earth)).toBeGreaterThan(1e7);
    view.dispose();
  });

  it("focus switch transitions progressively and settles", () => {
    const { config, model } = loadFixtureBundle();
    const view = createSceneView(model, { focus: config.starName });
    view.update(config.startTime, 0.016);
    view.setFocus("Earth");
    view.update(config.startTime, 0.1); // mid transition
    const midway = view.renderedPosition("Earth");
    expect(Math.hypot(...midway)).toBeGreaterThan(0);
    for (let frame = 0; frame < 20; frame++) view.update(config.startTime, 0.1);
    expect(view.renderedPosition("Earth")).toEqual([0, 0, 0]);
    view.dispose();
  });

  it("pair toggles hide both directions", () => {
    const windows: ContactWindow[] = [
      { sourceId: "n1", destinationId: "n2", start: 0, end: 1000, color: null },
      { sourceId: "n2", destinationId: "n1", start: 0, end: 1000, color: null },
      { sourceId: "n1", destinationId: "n3", start:  0, end: 1000, color: null },
    ];
    const model = syntheticModel(3, windows);
    const view = createSceneView(model);
    view.update(500);
    expect(view.activeLinkCount()).toBe(3);
    view.setPairVisible("n1", "n2", false);
    view.update(500);
    expect(view.activeLinkCount()).toBe(1);
    view.setPairVisible("n1", "n2", true);
    view.update(500);
    expect(view.activeLinkCount()).toBe(3);
    view.dispose();
  });

  it("no links outside any window", () => {
    const windows: ContactWindow[] = [
      { sourceId: "n1", destinationId: "n2", start: 100, end: 200, color: null },
    ];
    const model = syntheticModel(2, windows);
    const view = createSceneView(model);
    view.update(50);
    expect(view.activeLinkCount()).toBe(0);
    view.update(150);
    expect(view.activeLinkCount()).toBe(1);
    view.update(201);
    expect(view.activeLinkCount()).toBe(0);
    view.dispose();
  });

  it("radius exaggeration scales meshes without touching link endpoints", () => {
    const windows: ContactWindow[] = [
      { sourceId: "n1", destinationId: "n2", start: 0, end: 1000, color: null },
    ];
    const model = syntheticModel(2, windows);
    const view = createSceneView(model, { focus: "World" });
    view.update(500);
    const before = view.renderedPosition("n1");
    view.setRadiusScale(100);
    view.update(500);
    expect(view.renderedPosition("n1")).toEqual(before);
    const mesh = view.scene.getObjectByName("World")!;
    expect(mesh.scale.x).toBe(100);
    view.dispose();
  });
});
