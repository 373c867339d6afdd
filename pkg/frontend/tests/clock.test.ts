import { describe, expect, it } from "vitest";

import { SPEED_PRESETS, createClock, formatCivil, formatReadout } from "../src/clock";

describe("scene clock", () => {
  it("advances by speed times wall seconds", () => {
    const clock = createClock(0, 100_000, { speed: 3600, playing: true });
    clock.advance(1.0);
    expect(clock.state().currentTime).toBeCloseTo(3600, 9);
  });

  it("is frozen while paused", () => {
    const clock = createClock(0, 1000, { speed: 60, playing: true });
    clock.pause();
    clock.advance(5);
    clock.advance(5);
    expect(clock.state().currentTime).toBe(0);
    expect(clock.state().playing).toBe(false);
  });

  it("clamps at the end and stops playback", () => {
    const clock = createClock(0, 100, { speed: 60, playing: true });
    clock.advance(10); // would reach 600
    expect(clock.state().currentTime).toBe(100);
    expect(clock.state().playing).toBe(false);
  });

  it("supports reverse playback clamped at the start", () => {
    const clock = createClock(0, 100, { currentTime: 50, speed: -30, playing: true });
    clock.advance(1);
    expect(clock.state().currentTime).toBe(20);
    clock.advance(10);
    expect(clock.state().currentTime).toBe(0);
    expect(clock.state().playing).toBe(false);
  });

  it("scrub sets time directly and clamps", () => {
    const clock = createClock(0, 100, { playing: true });
    clock.scrub(42.5);
    expect(clock.state().currentTime).toBe(42.5);
    expect(clock.state().playing).toBe(true);
    clock.scrub(1e9);
    expect(clock.state().currentTime).toBe(100);
    expect(clock.state().playing).toBe(false);
  });

  it("is monotone under positive speed without scrubbing", () => {
    const clock = createClock(0, 1e6, { speed: 123.4, playing: true });
    let previous = clock.state().currentTime;
    for (let frame = 0; frame < 500; frame++) {
      clock.advance(0.016);
      const now = clock.state().currentTime;
      expect(now).toBeGreaterThanOrEqual(previous);
      previous = now;
    }
  });

  it("offers the documented presets plus free entry", () => {
    expect(SPEED_PRESETS).toEqual([1, 60, 3600, 86400]);
    const clock = createClock(0, 10);
    clock.setSpeed(1234.5);
    expect(clock.state().speed).toBe(1234.5);
  });

  it("renders the J2000 civil instant", () => {
    expect(formatCivil(0)).toBe("2000-01-01T11:58:55.816Z");
    expect(formatCivil(86400)).toBe("2000-01-02T11:58:55.816Z");
    expect(formatReadout(0)).toContain("0.0 s");
    expect(formatReadout(0)).toContain("2000-01-01");
  });
});
