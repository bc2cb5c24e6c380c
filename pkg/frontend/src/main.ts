import { AquaviewApp, type AppElements } from "./app.js";

function mustGet<T extends Element>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as unknown as T;
}

const elements: AppElements = {
  fileInput: mustGet<HTMLInputElement>("file"),
  dataSummary: mustGet<HTMLElement>("summary"),
  binSlider: mustGet<HTMLInputElement>("bins"),
  binLabel: mustGet<HTMLElement>("bins-label"),
  modeSelect: mustGet<HTMLSelectElement>("mode"),
  chart: mustGet<SVGSVGElement>("chart"),
  scrubber: mustGet<HTMLInputElement>("scrubber"),
  playButton: mustGet<HTMLButtonElement>("play"),
  pauseButton: mustGet<HTMLButtonElement>("pause"),
  areaReadout: mustGet<HTMLElement>("area"),
  toast: mustGet<HTMLElement>("toast"),
};

new AquaviewApp(elements);
