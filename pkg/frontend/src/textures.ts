/**
 * Body name to bundled texture path. Matching is case-insensitive; any
 * body outside the bundled set renders with a neutral material.
 */

const BUNDLED = new Set([
  "sun",
  "mercury",
  "venus",
  "earth",
  "mars",
  "jupiter",
  "saturn",
  "uranus",
  "neptune",
  "pluto",
]);

export function textureForBody(name: string): string | null {
  const key = name.toLowerCase();
  return BUNDLED.has(key) ? `textures/${key}.png` : null;
}

/** Fallback tint for untextured bodies (stable hash of the name). */
export function fallbackColor(name: string): number {
  let hash = 0;
  for (const ch of name) hash = (hash * 31 + ch.codePointAt(0)!) >>> 0;
  const hue = hash % 360;
  return hslToRgbInt(hue, 0.25, 0.65);
}

function hslToRgbInt(h: number, s: number, l: number): number {
  const c = (1 - Math.abs(2 * l - 1)) * s;
  const x = c * (1 - Math.abs(((h / 60) % 2) - 1));
  const m = l - c / 2;
  let rgb: [number, number, number];
  if (h < 60) rgb = [c, x, 0];
  else if (h < 120) rgb = [x, c, 0];
  else if (h < 180) rgb = [0, c, x];
  else if (h < 240) rgb = [0, x, c];
  else if (h < 300) rgb = [x, 0, c];
  else rgb = [c, 0, x];
  const [r, g, b] = rgb.map((v) => Math.round((v + m) * 255));
  return (r << 16) | (g << 8) | b;
}
