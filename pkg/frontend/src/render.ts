// Renders engine frames onto an <svg> element, verbatim: one <rect> per
// frame rect, one dashed line per guide. A single transform derived from
// the whole stream's bounds keeps sizes comparable while scrubbing.

import type { Bounds } from "./frames.js";
import type { FrameData } from "./types.js";

export const PALETTE = [
  "#0072b2",
  "#e69f00",
  "#009e73",
  "#56b4e9",
  "#f0e442",
  "#d55e00",
  "#cc79a7",
  "#999999",
];

export const ACCENT = "#ff00ff";

export interface ViewBox {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_VIEW: ViewBox = { width: 720, height: 420, margin: 24 };

export class Transform {
  private readonly scale: number;
  private readonly ox: number;
  private readonly oy: number;

  constructor(
    private readonly bounds: Bounds,
    private readonly view: ViewBox,
  ) {
    const innerW = view.width - 2 * view.margin;
    const innerH = view.height - 2 * view.margin;
    const spanX = bounds.x1 - bounds.x0 || 1;
    const spanY = bounds.y1 - bounds.y0 || 1;
    this.scale = Math.min(innerW / spanX, innerH / spanY);
    this.ox = view.margin + (innerW - this.scale * spanX) / 2;
    this.oy = view.margin + (innerH - this.scale * spanY) / 2;
  }

  x(modelX: number): number {
    return this.ox + (modelX - this.bounds.x0) * this.scale;
  }

  /** Model y (up) to screen y (down). */
  y(modelY: number): number {
    return this.view.height - this.oy - (modelY - this.bounds.y0) * this.scale;
  }

  length(modelLength: number): number {
    return modelLength * this.scale;
  }
}

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderOptions {
  /** Segment ids drawn in the accent color. */
  accentSegments?: ReadonlySet<string>;
  /** Stable color assignment; extended in place as new keys appear. */
  colorOf: Map<string, string>;
  /** Called when a segment rect is clicked. */
  onSegmentClick?: (segmentId: string) => void;
}

export function colorFor(map: Map<string, string>, key: string): string {
  let color = map.get(key);
  if (color === undefined) {
    color = PALETTE[map.size % PALETTE.length] ?? PALETTE[0]!;
    map.set(key, color);
  }
  return color;
}

export function renderFrame(
  svg: SVGSVGElement,
  frame: FrameData,
  transform: Transform,
  view: ViewBox,
  options: RenderOptions,
): void {
  svg.setAttribute("viewBox", `0 0 ${view.width} ${view.height}`);
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const axis = document.createElementNS(SVG_NS, "line");
  const axisY = transform.y(0);
  axis.setAttribute("x1", String(view.margin));
  axis.setAttribute("x2", String(view.width - view.margin));
  axis.setAttribute("y1", axisY.toFixed(2));
  axis.setAttribute("y2", axisY.toFixed(2));
  axis.setAttribute("stroke", "#404040");
  svg.appendChild(axis);

  for (const rect of frame.rects) {
    const el = document.createElementNS(SVG_NS, "rect");
    el.setAttribute("x", transform.x(rect.x).toFixed(2));
    el.setAttribute("y", (transform.y(rect.y) - transform.length(rect.height)).toFixed(2));
    el.setAttribute("width", transform.length(rect.width).toFixed(2));
    el.setAttribute("height", transform.length(rect.height).toFixed(2));
    const accent = options.accentSegments?.has(rect.segment_id) ?? false;
    el.setAttribute("fill", accent ? ACCENT : colorFor(options.colorOf, rect.color_key));
    el.dataset.segment = rect.segment_id;
    if (options.onSegmentClick) {
      el.addEventListener("click", () => options.onSegmentClick?.(rect.segment_id));
      el.setAttribute("cursor", "pointer");
    }
    svg.appendChild(el);
  }

  for (const guide of frame.guides) {
    const el = document.createElementNS(SVG_NS, "line");
    const y = transform.y(guide.y);
    el.setAttribute("x1", String(view.margin));
    el.setAttribute("x2", String(view.width - view.margin));
    el.setAttribute("y1", y.toFixed(2));
    el.setAttribute("y2", y.toFixed(2));
    el.setAttribute("stroke", "#707070");
    el.setAttribute("stroke-dasharray", "4 3");
    el.dataset.role = guide.role;
    svg.appendChild(el);
  }
}
