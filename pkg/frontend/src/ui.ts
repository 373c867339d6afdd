/**
 * DOM controls: play/pause, speed presets plus free entry, scrub bar,
 * time readout (seconds since J2000 and civil date), focus selector,
 * per-pair link toggles, radius exaggeration, and the load-error banner.
 */

import { SPEED_PRESETS, formatReadout, type SceneClock } from "./clock";

export interface UiCallbacks {
  onFocusChange(name: string): void;
  onPairToggle(a: string, b: string, visible: boolean): void;
  onRadiusScale(scale: number): void;
}

export interface ViewerUi {
  /** Reflect the clock into the readout and scrub position. */
  refresh(): void;
}

export function showErrorBanner(message: string): void {
  let banner = document.querySelector<HTMLDivElement>(".error-banner");
  if (!banner) {
    banner = document.createElement("div");
    banner.className = "error-banner";
    document.body.appendChild(banner);
  }
  banner.textContent = message;
}

export function createControls(
  container: HTMLElement,
  clock: SceneClock,
  startTime: number,
  endTime: number,
  focusChoices: string[],
  pairs: [string, string][],
  callbacks: UiCallbacks,
): ViewerUi {
  const bar = document.createElement("div");
  bar.className = "control-bar";

  const playButton = document.createElement("button");
  playButton.className = "play-button";
  playButton.addEventListener("click", () => {
    clock.toggle();
    sync();
  });

  const speedSelect = document.createElement("select");
  for (const preset of SPEED_PRESETS) {
    const option = document.createElement("option");
    option.value = String(preset);
    option.textContent = `${preset}x`;
    speedSelect.appendChild(option);
  }
  const custom = document.createElement("option");
  custom.value = "custom";
  custom.textContent = "custom";
  speedSelect.appendChild(custom);
  speedSelect.addEventListener("change", () => {
    if (speedSelect.value !== "custom") clock.setSpeed(Number(speedSelect.value));
    speedInput.value = String(clock.state().speed);
  });

  const speedInput = document.createElement("input");
  speedInput.type = "number";
  speedInput.className = "speed-input";
  speedInput.title = "simulation seconds per wall second";
  speedInput.value = String(clock.state().speed);
  speedInput.addEventListener("change", () => {
    const value = Number(speedInput.value);
    if (Number.isFinite(value)) {
      clock.setSpeed(value);
      speedSelect.value = SPEED_PRESETS.includes(value) ? String(value) : "custom";
    }
  });

  const scrub = document.createElement("input");
  scrub.type = "range";
  scrub.className = "scrub";
  scrub.min = String(startTime);
  scrub.max = String(endTime);
  scrub.step = "any";
  scrub.addEventListener("input", () => {
    clock.scrub(Number(scrub.value));
    sync();
  });

  const readout = document.createElement("span");
  readout.className = "readout";

  const focusSelect = document.createElement("select");
  for (const name of focusChoices) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    focusSelect.appendChild(option);
  }
  focusSelect.addEventListener("change", () => callbacks.onFocusChange(focusSelect.value));

  const radius = document.createElement("input");
  radius.type = "range";
  radius.min = "1";
  radius.max = "500";
  radius.value = "1";
  radius.title = "body radius exaggeration";
  radius.addEventListener("input", () => callbacks.onRadiusScale(Number(radius.value)));

  const pairList = document.createElement("details");
  pairList.className = "pair-toggles";
  const summary = document.createElement("summary");
  summary.textContent = "links";
  pairList.appendChild(summary);
  for (const [a, b] of pairs) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = true;
    box.addEventListener("change", () => callbacks.onPairToggle(a, b, box.checked));
    label.append(box, ` ${a} ↔ ${b}`);
    pairList.appendChild(label);
  }

  bar.append(playButton, speedSelect, speedInput, scrub, readout, focusSelect, radius, pairList);
  container.appendChild(bar);

  function sync(): void {
    const state = clock.state();
    playButton.textContent = state.playing ? "pause" : "play";
    readout.textContent = formatReadout(state.currentTime);
    if (document.activeElement !== scrub) scrub.value = String(state.currentTime);
  }
  sync();
  return { refresh: sync };
}
