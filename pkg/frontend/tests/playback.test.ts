import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { PlaybackState } from "../src/playback.js";
import { rebinDoc } from "./mockservice.js";

describe("PlaybackState", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  function record() {
    const shown: number[] = [];
    const doc = rebinDoc(4, 2, 11);
    const playback = new PlaybackState(doc, (_, cursor) => shown.push(cursor), 10);
    return { shown, playback };
  }

  it("scrubs to the nearest frame", () => {
    const { shown, playback } = record();
    playback.scrub(0);
    playback.scrub(1);
    playback.scrub(0.5);
    playback.scrub(0.949); // 0.949 * 10 = 9.49 -> frame 9
    expect(shown).toEqual([0, 10, 5, 9]);
  });

  it("clamps scrub positions", () => {
    const { shown, playback } = record();
    playback.scrub(-3);
    playback.scrub(42);
    expect(shown).toEqual([0, 10]);
  });

  it("plays forward at the configured rate and stops at the end", () => {
    const { shown, playback } = record();
    playback.play();
    expect(playback.playing).toBe(true);
    vi.advanceTimersByTime(100 * 10); // 10 fps, 10 steps
    expect(shown).toEqual([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    expect(playback.playing).toBe(false);
  });

  it("pause freezes the cursor", () => {
    const { shown, playback } = record();
    playback.play();
    vi.advanceTimersByTime(300);
    playback.pause();
    vi.advanceTimersByTime(1000);
    expect(shown[shown.length - 1]).toBe(3);
  });

  it("replays from the start when played at the end", () => {
    const { playback } = record();
    playback.scrub(1);
    playback.play();
    expect(playback.cursor).toBe(0);
  });

  it("rejects a non-positive speed", () => {
    expect(() => new PlaybackState(rebinDoc(2, 2, 2), () => {}, 0)).toThrow();
  });
});
