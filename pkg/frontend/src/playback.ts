// Frame-accurate playback over a fixed frames.json stream. Scrubbing maps
// a [0, 1] position to the nearest frame index; playing advances the
// cursor at a fixed frames-per-second rate. No interpolation happens here.

import type { FrameData, FramesDoc } from "./types.js";

export class PlaybackState {
  readonly doc: FramesDoc;
  cursor = 0;
  playing = false;
  speed: number;

  private timer: ReturnType<typeof setInterval> | null = null;
  private onFrame: (frame: FrameData, cursor: number) => void;

  constructor(
    doc: FramesDoc,
    onFrame: (frame: FrameData, cursor: number) => void,
    speed = 30,
  ) {
    if (speed <= 0) throw new Error("speed must be positive");
    this.doc = doc;
    this.speed = speed;
    this.onFrame = onFrame;
  }

  get frameCount(): number {
    return this.doc.frames.length;
  }

  current(): FrameData {
    const frame = this.doc.frames[this.cursor];
    if (!frame) throw new Error(`cursor ${this.cursor} out of range`);
    return frame;
  }

  private emit(): void {
    this.onFrame(this.current(), this.cursor);
  }

  /** Jump to the nearest frame for a scrub position in [0, 1]. */
  scrub(position: number): void {
    this.pause();
    const clamped = Math.min(1, Math.max(0, position));
    this.cursor = Math.round(clamped * (this.frameCount - 1));
    this.emit();
  }

  showFrame(index: number): void {
    if (index < 0 || index >= this.frameCount) {
      throw new Error(`frame index ${index} out of range`);
    }
    this.cursor = index;
    this.emit();
  }

  play(): void {
    if (this.playing) return;
    if (this.cursor >= this.frameCount - 1) this.cursor = 0;
    this.playing = true;
    this.emit();
    this.timer = setInterval(() => this.step(), 1000 / this.speed);
  }

  pause(): void {
    this.playing = false;
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  dispose(): void {
    this.pause();
  }

  private step(): void {
    if (this.cursor + 1 >= this.frameCount) {
      this.pause();
      return;
    }
    this.cursor += 1;
    this.emit();
    if (this.cursor >= this.frameCount - 1) this.pause();
  }
}
