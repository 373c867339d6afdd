/**
 * three.js layer: builds the scene graph for a scenario and updates it
 * per frame. All positions are computed in float64 by the scene model
 * and rebased to the focus body before they ever touch a float32 GPU
 * buffer; the focus body always sits exactly at the origin.
 *
 * Body meshes scale with the radius-exaggeration factor, but link
 * endpoints and trails always use true positions. Node markers are
 * spheres sized relative to their host planet (5% of its radius).
 */

import * as THREE from "three";

import type { ContactWindow, Vec3 } from "./bundleData";
import type { SceneModel } from "./sceneModel";
import { activeWindows, applyOriginShift, orbitTrail, worldState } from "./sceneModel";
import { fallbackColor, textureForBody } from "./textures";

const DEG = Math.PI / 180;
const TRANSITION_SECONDS = 0.8;

export interface SceneViewOptions {
  radiusScale?: number;
  trailLength?: number;
  focus?: string;
  /** Browser texture loading hook; tests leave it unset for flat colors. */
  loadTexture?: (path: string) => THREE.Texture;
}

export interface SceneView {
  scene: THREE.Scene;
  update(t: number, wallDelta?: number): void;
  setFocus(name: string): void;
  focusName(): string;
  setRadiusScale(scale: number): void;
  setTrailLength(length: number): void;
  setPairVisible(a: string, b: string, visible: boolean): void;
  activeLinkCount(): number;
  /** Rendered (origin-shifted, still float64) position of a body. */
  renderedPosition(name: string): Vec3;
  bodyNames(): string[];
  dispose(): void;
}

function pairKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

export function createSceneView(model: SceneModel, options: SceneViewOptions = {}): SceneView {
  const scene = new THREE.Scene();
  let radiusScale = options.radiusScale ?? 1;
  let trailLength = options.trailLength ?? 256;
  let focus = options.focus ?? model.config.starName;
  const hiddenPairs = new Set<string>();
  const disposables: { dispose(): void }[] = [];

  scene.add(new THREE.AmbientLight(0xffffff, 0.35));
  const starLight = new THREE.PointLight(0xffffff, 2.5, 0, 0);
  scene.add(starLight);

  function bodyMaterial(name: string): THREE.MeshStandardMaterial {
    const texturePath = textureForBody(name);
    const material = new THREE.MeshStandardMaterial(
      texturePath && options.loadTexture
        ? { map: options.loadTexture(texturePath) }
        : { color: texturePath ? 0xbbbbbb : fallbackColor(name) },
    );
    disposables.push(material);
    return material;
  }

  const bodyMeshes = new Map<string, THREE.Mesh>();

  function addBody(name: string, radius: number, emissive: boolean): void {
    const geometry = new THREE.SphereGeometry(radius, 48, 24);
    disposables.push(geometry);
    const material = bodyMaterial(name);
    if (emissive) {
      material.emissive = new THREE.Color(0xffcc55);
      material.emissiveIntensity = 1.0;
    }
    const mesh = new THREE.Mesh(geometry, material);
    mesh.name = name;
    bodyMeshes.set(name, mesh);
    scene.add(mesh);
  }

  addBody(model.config.starName, model.config.starRadius, true);
  for (const planet of model.config.planets) {
    addBody(planet.name, planet.radius, false);
    const markerRadius = planet.radius * 0.05;
    for (const node of planet.nodes) {
      const geometry = new THREE.SphereGeometry(markerRadius, 12, 8);
      disposables.push(geometry);
      const material = new THREE.MeshBasicMaterial({ color: 0xffffff });
      disposables.push(material);
      const marker = new THREE.Mesh(geometry, material);
      marker.name = node.id;
      bodyMeshes.set(node.id, marker);
      scene.add(marker);
    }
  }

  // One shared buffer for every link segment, grown on demand.
  let linkCapacity = Math.max(model.plan.length, 64);
  let linkGeometry = makeLinkGeometry(linkCapacity);
  const linkMaterial = new THREE.LineBasicMaterial({ vertexColors: true });
  disposables.push(linkMaterial);
  let links = new THREE.LineSegments(linkGeometry, linkMaterial);
  links.frustumCulled = false;
  scene.add(links);
  let currentLinkCount = 0;

  function makeLinkGeometry(capacity: number): THREE.BufferGeometry {
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute(
      "position",
      new THREE.BufferAttribute(new Float32Array(capacity * 6), 3),
    );
    geometry.setAttribute("color", new THREE.BufferAttribute(new Float32Array(capacity * 6), 3));
    geometry.setDrawRange(0, 0);
    disposables.push(geometry);
    return geometry;
  }

  const trailLines = new Map<string, THREE.Line>();
  for (const [nodeId] of model.nodeTables) {
    const geometry = new THREE.BufferGeometry();
    geometry.setAttribute(
      "position",
      new THREE.BufferAttribute(new Float32Array(Math.max(trailLength, 1) * 3), 3),
    );
    geometry.setDrawRange(0, 0);
    disposables.push(geometry);
    const material = new THREE.LineBasicMaterial({
      color: 0x88aaff,
      transparent: true,
      opacity: 0.7,
    });
    disposables.push(material);
    const line = new THREE.Line(geometry, material);
    line.frustumCulled = false;
    scene.add(line);
    trailLines.set(nodeId, line);
  }

  // Focus transitions blend the origin offset from the old focus to the
  // new one over a short wall-clock interval.
  let transitionFrom: string | null = null;
  let transitionProgress = 1;
  const renderedPositions = new Map<string, Vec3>();

  function smoothstep(x: number): number {
    const s = Math.min(Math.max(x, 0), 1);
    return s * s * (3 - 2 * s);
  }

  function currentOffset(positions: Map<string, Vec3>): Vec3 {
    const target = positions.get(focus)!;
    if (transitionFrom === null || transitionProgress >= 1) return target;
    const from = positions.get(transitionFrom)!;
    const blend = smoothstep(transitionProgress);
    return [
      from[0] + (target[0] - from[0]) * blend,
      from[1] + (target[1] - from[1]) * blend,
      from[2] + (target[2] - from[2]) * blend,
    ];
  }

  function update(t: number, wallDelta = 0): void {
    if (transitionFrom !== null && transitionProgress < 1) {
      transitionProgress = Math.min(1, transitionProgress + wallDelta / TRANSITION_SECONDS);
      if (transitionProgress >= 1) transitionFrom = null;
    }
    const world = worldState(model, t);
    const offset = currentOffset(world.positions);
    const settled = transitionFrom === null;
    renderedPositions.clear();

    for (const [name, position] of world.positions) {
      const rendered: Vec3 = settled && name === focus
        ? [0, 0, 0]
        : [position[0] - offset[0], position[1] - offset[1], position[2] - offset[2]];
      renderedPositions.set(name, rendered);
      const mesh = bodyMeshes.get(name);
      if (mesh) {
        mesh.position.set(rendered[0], rendered[1], rendered[2]);
        mesh.scale.setScalar(radiusScale);
        const rotation = world.rotations.get(name);
        if (rotation) {
          mesh.rotation.set(rotation[0] * DEG, rotation[1] * DEG, rotation[2] * DEG, "XYZ");
        }
      }
    }
    starLight.position.copy(bodyMeshes.get(model.config.starName)!.position);

    updateLinks(t);
    updateTrails(t, world.positions, offset);
  }

  function updateLinks(t: number): void {
    const active = activeWindows(model, t).filter(
      (w) => !hiddenPairs.has(pairKey(w.sourceId, w.destinationId)),
    );
    if (active.length > linkCapacity) {
      scene.remove(links);
      linkCapacity = Math.max(active.length, linkCapacity * 2);
      linkGeometry = makeLinkGeometry(linkCapacity);
      links = new THREE.LineSegments(linkGeometry, linkMaterial);
      links.frustumCulled = false;
      scene.add(links);
    }
    const positions = linkGeometry.getAttribute("position") as THREE.BufferAttribute;
    const colors = linkGeometry.getAttribute("color") as THREE.BufferAttribute;
    let v = 0;
    for (const window of active) {
      const a = renderedPositions.get(window.sourceId);
      const b = renderedPositions.get(window.destinationId);
      if (!a || !b) continue;
      const [r, g, bl] = window.color ?? [255, 255, 255];
      positions.setXYZ(v, a[0], a[1], a[2]);
      colors.setXYZ(v, r / 255, g / 255, bl / 255);
      v += 1;
      positions.setXYZ(v, b[0], b[1], b[2]);
      colors.setXYZ(v, r / 255, g / 255, bl / 255);
      v += 1;
    }
    positions.needsUpdate = true;
    colors.needsUpdate = true;
    linkGeometry.setDrawRange(0, v);
    currentLinkCount = v / 2;
  }

  function updateTrails(t: number, world: Map<string, Vec3>, offset: Vec3): void {
    for (const [nodeId, line] of trailLines) {
      const geometry = line.geometry as THREE.BufferGeometry;
      const attribute = geometry.getAttribute("position") as THREE.BufferAttribute;
      if (trailLength <= 0) {
        geometry.setDrawRange(0, 0);
        continue;
      }
      if (attribute.count < trailLength) {
        geometry.setAttribute(
          "position",
          new THREE.BufferAttribute(new Float32Array(trailLength * 3), 3),
        );
      }
      const points = orbitTrail(model, nodeId, t, trailLength);
      const host = world.get(model.nodeHost.get(nodeId)!)!;
      const positionAttr = geometry.getAttribute("position") as THREE.BufferAttribute;
      points.forEach((local, i) => {
        positionAttr.setXYZ(
          i,
          host[0] + local[0] - offset[0],
          host[1] + local[1] - offset[1],
          host[2] + local[2] - offset[2],
        );
      });
      positionAttr.needsUpdate = true;
      geometry.setDrawRange(0, points.length);
    }
  }

  return {
    scene,
    update,
    setFocus(name: string) {
      if (name === focus) return;
      if (!bodyMeshes.has(name)) throw new Error(`unknown focus body ${name}`);
      transitionFrom = focus;
      transitionProgress = 0;
      focus = name;
    },
    focusName: () => focus,
    setRadiusScale(scale: number) {
      if (scale > 0) radiusScale = scale;
    },
    setTrailLength(length: number) {
      trailLength = Math.max(0, Math.floor(length));
    },
    setPairVisible(a: string, b: string, visible: boolean) {
      if (visible) hiddenPairs.delete(pairKey(a, b));
      else hiddenPairs.add(pairKey(a, b));
    },
    activeLinkCount: () => currentLinkCount,
    renderedPosition(name: string): Vec3 {
      const p = renderedPositions.get(name);
      if (!p) throw new Error(`no rendered position for ${name}; call update first`);
      return p;
    },
    bodyNames: () => [...bodyMeshes.keys()],
    dispose() {
      for (const d of disposables) d.dispose();
    },
  };
}
