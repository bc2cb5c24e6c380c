// The aquaview controller: wires data loading, the bin-count slider, the
// stacked-bar alignment demo, and transport controls to the transition
// service. All geometry comes from the service; this file only decides
// which certified frames to show and when.

import { ApiClient, ApiError, StaleResponse } from "./api.js";
import { parseCsvValues, summarize } from "./csv.js";
import { demoStackedScene } from "./demo.js";
import { debounce, type Debounced } from "./debounce.js";
import { docBounds, frameTotalArea } from "./frames.js";
import { PlaybackState } from "./playback.js";
import { DEFAULT_VIEW, renderFrame, Transform, type ViewBox } from "./render.js";
import type { FrameData, FramesDoc, SceneObj } from "./types.js";

export type Mode = "histogram" | "stacked";

export interface AppElements {
  fileInput: HTMLInputElement;
  dataSummary: HTMLElement;
  binSlider: HTMLInputElement;
  binLabel: HTMLElement;
  modeSelect: HTMLSelectElement;
  chart: SVGSVGElement;
  scrubber: HTMLInputElement;
  playButton: HTMLButtonElement;
  pauseButton: HTMLButtonElement;
  areaReadout: HTMLElement;
  toast: HTMLElement;
}

export interface AppOptions {
  debounceMs?: number;
  framesPerRequest?: number;
  speed?: number;
  view?: ViewBox;
}

export class AquaviewApp {
  readonly elements: AppElements;
  readonly client: ApiClient;

  mode: Mode = "histogram";
  values: number[] | null = null;
  currentBins: number;
  selection = new Set<string>();
  readonly scene: SceneObj = demoStackedScene();

  playback: PlaybackState | null = null;
  lastShownFrame: FrameData | null = null;

  private transform: Transform | null = null;
  private lastAlignDoc: FramesDoc | null = null;
  private readonly colorOf = new Map<string, string>();
  private readonly view: ViewBox;
  private readonly framesPerRequest: number;
  private readonly speed: number;
  private readonly requestRebinDebounced: Debounced<[number]>;
  private toastTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(elements: AppElements, client = new ApiClient(), options: AppOptions = {}) {
    this.elements = elements;
    this.client = client;
    this.view = options.view ?? DEFAULT_VIEW;
    this.framesPerRequest = options.framesPerRequest ?? 60;
    this.speed = options.speed ?? 30;
    this.currentBins = Number(elements.binSlider.value) || 8;

    this.requestRebinDebounced = debounce(
      (bins: number) => void this.requestRebin(bins),
      options.debounceMs ?? 150,
    );

    elements.fileInput.addEventListener("change", () => this.onFileChosen());
    elements.binSlider.addEventListener("input", () => this.onSliderInput());
    elements.modeSelect.addEventListener("change", () => {
      this.setMode(elements.modeSelect.value as Mode);
    });
    elements.scrubber.addEventListener("input", () => {
      this.scrub(Number(elements.scrubber.value));
    });
    elements.playButton.addEventListener("click", () => this.play());
    elements.pauseButton.addEventListener("click", () => this.pause());

    this.setControlsEnabled(false);
  }

  // --- data loading ---------------------------------------------------------

  private onFileChosen(): void {
    const file = this.elements.fileInput.files?.[0];
    if (!file) return;
    const reader = new FileReader();
    reader.onload = () => this.loadData(String(reader.result ?? ""));
    reader.readAsText(file);
  }

  /** Ingest CSV text: show a summary or an inline error with line number. */
  loadData(text: string): void {
    const result = parseCsvValues(text);
    if (result.error) {
      this.values = null;
      this.setControlsEnabled(false);
      this.elements.dataSummary.textContent =
        `line ${result.error.line}: not a number: ${result.error.text}`;
      this.elements.dataSummary.classList.add("error");
      return;
    }
    const summary = summarize(result.values);
    this.elements.dataSummary.classList.remove("error");
    if (!summary) {
      this.values = null;
      this.setControlsEnabled(false);
      this.elements.dataSummary.textContent = "no rows";
      return;
    }
    this.values = result.values;
    this.elements.dataSummary.textContent =
      `${summary.count} rows in [${summary.min}, ${summary.max}]`;
    this.setControlsEnabled(true);
    // Show the current binning immediately via an identity transition.
    void this.requestRebin(this.currentBins);
  }

  private setControlsEnabled(enabled: boolean): void {
    this.elements.binSlider.disabled = !enabled;
    const havePlayback = this.playback !== null;
    this.elements.scrubber.disabled = !havePlayback && !enabled;
    this.elements.playButton.disabled = !havePlayback && !enabled;
    this.elements.pauseButton.disabled = !havePlayback && !enabled;
  }

  // --- histogram re-binning ---------------------------------------------------

  private onSliderInput(): void {
    const bins = Number(this.elements.binSlider.value);
    this.elements.binLabel.textContent = String(bins);
    this.requestRebinDebounced(bins);
  }

  /** Ask the service for a transition from the last rest bin count. */
  async requestRebin(toBins: number): Promise<void> {
    if (this.values === null || this.values.length === 0) return;
    try {
      const doc = await this.client.rebin({
        data: this.values,
        from_bins: this.currentBins,
        to_bins: toBins,
        frames: this.framesPerRequest,
      });
      this.currentBins = toBins;
      this.attachDoc(doc, true);
    } catch (error) {
      this.handleRequestError(error);
    }
  }

  // --- stacked-bar alignment ----------------------------------------------------

  setMode(mode: Mode): void {
    if (mode === this.mode) return;
    this.mode = mode;
    this.elements.modeSelect.value = mode;
    if (mode === "stacked") {
      // Identity alignment paints the untouched stacked chart.
      void this.requestAlign();
    } else if (this.values !== null) {
      void this.requestRebin(this.currentBins);
    }
  }

  /** Toggle one segment's membership in the aligned set. */
  toggleSegment(segmentId: string): void {
    if (this.mode !== "stacked") return;
    if (this.selection.has(segmentId)) {
      this.selection.delete(segmentId);
    } else {
      // One aligned segment per container: a new pick replaces any
      // sibling already selected in the same container.
      const container = this.scene.segments.find((s) => s.id === segmentId)?.container_id;
      for (const other of [...this.selection]) {
        const otherContainer = this.scene.segments.find((s) => s.id === other)?.container_id;
        if (otherContainer === container) this.selection.delete(other);
      }
      this.selection.add(segmentId);
    }
    void this.requestAlign();
  }

  async requestAlign(): Promise<void> {
    try {
      const doc = await this.client.align({
        scene: this.scene,
        select: [...this.selection],
        frames: this.framesPerRequest,
      });
      // The service always animates from the untouched scene. To move
      // smoothly from whatever arrangement is on screen, replay the
      // previous alignment backwards first; every frame shown is still
      // one the engine produced.
      let frames = doc.frames;
      if (this.lastAlignDoc && this.lastAlignDoc.frames.length > 0) {
        frames = [...this.lastAlignDoc.frames].reverse().concat(doc.frames);
      }
      this.lastAlignDoc = doc;
      this.attachDoc({ version: 1, frames }, true);
    } catch (error) {
      this.handleRequestError(error);
    }
  }

  // --- playback -------------------------------------------------------------------

  private attachDoc(doc: FramesDoc, autoplay: boolean): void {
    this.playback?.dispose();
    this.transform = new Transform(docBounds(doc), this.view);
    this.playback = new PlaybackState(
      doc,
      (frame, cursor) => this.showFrame(frame, cursor),
      this.speed,
    );
    this.setControlsEnabled(true);
    if (autoplay && doc.frames.length > 1) {
      this.playback.play();
    } else {
      this.playback.showFrame(0);
    }
  }

  private showFrame(frame: FrameData, cursor: number): void {
    if (!this.transform || !this.playback) return;
    renderFrame(this.elements.chart, frame, this.transform, this.view, {
      accentSegments: this.mode === "stacked" ? this.selection : undefined,
      colorOf: this.colorOf,
      onSegmentClick:
        this.mode === "stacked" ? (id) => this.toggleSegment(id) : undefined,
    });
    this.lastShownFrame = frame;
    this.elements.areaReadout.textContent = `area ${frameTotalArea(frame).toFixed(9)}`;
    const denominator = Math.max(this.playback.frameCount - 1, 1);
    this.elements.scrubber.value = (cursor / denominator).toFixed(4);
  }

  scrub(position: number): void {
    this.playback?.scrub(position);
  }

  play(): void {
    this.playback?.play();
  }

  pause(): void {
    this.playback?.pause();
  }

  // --- errors ----------------------------------------------------------------------

  private handleRequestError(error: unknown): void {
    if (error instanceof StaleResponse) return;
    if (error instanceof DOMException && error.name === "AbortError") return;
    if (error instanceof ApiError) {
      this.showToast(`${error.body.code}: ${error.body.message}`);
      return;
    }
    this.showToast(error instanceof Error ? error.message : String(error));
  }

  private showToast(message: string): void {
    const toast = this.elements.toast;
    toast.textContent = message;
    toast.classList.add("visible");
    if (this.toastTimer !== null) clearTimeout(this.toastTimer);
    this.toastTimer = setTimeout(() => toast.classList.remove("visible"), 4000);
  }
}
