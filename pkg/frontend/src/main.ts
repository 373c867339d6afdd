/**
 * Browser entry point: fetch the bundle from the serving origin, build
 * the scene, and run the render loop. URL query parameters set the
 * initial view: ?t=<seconds>&focus=<body>&speed=<multiplier>.
 */

import * as THREE from "three";
import { OrbitControls } from "three/examples/jsm/controls/OrbitControls.js";

import {
  parseConfig,
  parseContactPlan,
  parsePositions,
  type EphemerisTable,
} from "./bundleData";
import { createClock } from "./clock";
import { buildSceneModel } from "./sceneModel";
import { createSceneView } from "./render";
import { createControls, showErrorBanner } from "./ui";

async function fetchJson(name: string): Promise<unknown> {
  const response = await fetch(name);
  if (!response.ok) throw new Error(`failed to load ${name}: HTTP ${response.status}`);
  return response.json();
}

async function boot(): Promise<void> {
  const config = parseConfig(await fetchJson("config.json"));
  const plan = parseContactPlan(await fetchJson("contactPlan.json"));
  const planetTables = new Map<string, EphemerisTable>();
  const nodeTables = new Map<string, EphemerisTable>();
  for (const planet of config.planets) {
    planetTables.set(
      planet.name,
      parsePositions(await fetchJson(`${planet.name}.json`), "planet"),
    );
    for (const node of planet.nodes) {
      nodeTables.set(node.id, parsePositions(await fetchJson(`${node.id}.json`), "node"));
    }
  }
  const model = buildSceneModel(config, plan, planetTables, nodeTables);

  const params = new URLSearchParams(window.location.search);
  const initialTime = params.has("t") ? Number(params.get("t")) : config.startTime;
  const initialSpeed = params.has("speed") ? Number(params.get("speed")) : 60;
  const requestedFocus = params.get("focus");
  const bodyChoices = [config.starName, ...config.planets.map((p) => p.name)];
  const initialFocus =
    requestedFocus && bodyChoices.includes(requestedFocus) ? requestedFocus : config.starName;

  const clock = createClock(config.startTime, config.endTime, {
    currentTime: initialTime,
    speed: Number.isFinite(initialSpeed) ? initialSpeed : 60,
    playing: true,
  });

  const textureLoader = new THREE.TextureLoader();
  const view = createSceneView(model, {
    focus: initialFocus,
    loadTexture: (path) => textureLoader.load(path),
  });

  const canvas = document.querySelector<HTMLCanvasElement>("#scene")!;
  const renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
  renderer.setPixelRatio(Math.min(window.devicePixelRatio, 2));
  const camera = new THREE.PerspectiveCamera(50, 1, 1, 1e10);
  camera.position.set(0, -4e5, 2e5);
  const controls = new OrbitControls(camera, canvas);
  controls.enableDamping = true;

  function resize(): void {
    const width = window.innerWidth;
    const height = window.innerHeight;
    renderer.setSize(width, height, false);
    camera.aspect = width / height;
    camera.updateProjectionMatrix();
  }
  window.addEventListener("resize", resize);
  resize();

  const pairs: [string, string][] = [];
  const seen = new Set<string>();
  for (const window of plan) {
    const key =
      window.sourceId < window.destinationId
        ? `${window.sourceId}|${window.destinationId}`
        : `${window.destinationId}|${window.sourceId}`;
    if (!seen.has(key)) {
      seen.add(key);
      const [a, b] = key.split("|");
      pairs.push([a, b]);
    }
  }

  const ui = createControls(
    document.body,
    clock,
    config.startTime,
    config.endTime,
    bodyChoices,
    pairs,
    {
      onFocusChange: (name) => view.setFocus(name),
      onPairToggle: (a, b, visible) => view.setPairVisible(a, b, visible),
      onRadiusScale: (scale) => view.setRadiusScale(scale),
    },
  );

  let lastFrame = performance.now();
  function frame(now: number): void {
    const wallDelta = Math.min((now - lastFrame) / 1000, 0.25);
    lastFrame = now;
    clock.advance(wallDelta);
    view.update(clock.state().currentTime, wallDelta);
    ui.refresh();
    controls.update();
    renderer.render(view.scene, camera);
    requestAnimationFrame(frame);
  }
  requestAnimationFrame(frame);
}

boot().catch((error: unknown) => {
  showErrorBanner(error instanceof Error ? error.message : String(error));
});
