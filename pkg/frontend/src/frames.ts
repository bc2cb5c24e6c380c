// frames.json handling: structural validation and the couple of derived
// quantities the UI needs. The client never invents geometry — every
// rectangle shown is one the engine emitted.

import type { FrameData, FramesDoc, GuideData, RectData } from "./types.js";

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function asNumber(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new Error(`${what} must be a finite number`);
  }
  return value;
}

function asString(value: unknown, what: string): string {
  if (typeof value !== "string") throw new Error(`${what} must be a string`);
  return value;
}

function parseRect(value: unknown, where: string): RectData {
  if (!isRecord(value)) throw new Error(`${where} must be an object`);
  return {
    x: asNumber(value.x, `${where}.x`),
    y: asNumber(value.y, `${where}.y`),
    width: asNumber(value.width, `${where}.width`),
    height: asNumber(value.height, `${where}.height`),
    color_key: asString(value.color_key, `${where}.color_key`),
    segment_id: asString(value.segment_id, `${where}.segment_id`),
  };
}

function parseGuide(value: unknown, where: string): GuideData {
  if (!isRecord(value)) throw new Error(`${where} must be an object`);
  const role = asString(value.role, `${where}.role`);
  if (role !== "start" && role !== "end") {
    throw new Error(`${where}.role must be "start" or "end"`);
  }
  return {
    container_id: asString(value.container_id, `${where}.container_id`),
    y: asNumber(value.y, `${where}.y`),
    role,
  };
}

export function parseFramesDoc(value: unknown): FramesDoc {
  if (!isRecord(value)) throw new Error("frames document must be an object");
  if (value.version !== 1) throw new Error(`unsupported frames version ${value.version}`);
  if (!Array.isArray(value.frames) || value.frames.length === 0) {
    throw new Error("frames must be a non-empty array");
  }
  const frames: FrameData[] = value.frames.map((raw, i) => {
    if (!isRecord(raw)) throw new Error(`frames[${i}] must be an object`);
    if (!Array.isArray(raw.rects)) throw new Error(`frames[${i}].rects must be an array`);
    if (!Array.isArray(raw.guides)) throw new Error(`frames[${i}].guides must be an array`);
    return {
      t: asNumber(raw.t, `frames[${i}].t`),
      rects: raw.rects.map((r, j) => parseRect(r, `frames[${i}].rects[${j}]`)),
      guides: raw.guides.map((g, j) => parseGuide(g, `frames[${i}].guides[${j}]`)),
    };
  });
  return { version: 1, frames };
}

/** Total drawn area of one frame; constant across a conserving transition. */
export function frameTotalArea(frame: FrameData): number {
  let total = 0;
  for (const r of frame.rects) total += r.width * r.height;
  return total;
}

export interface Bounds {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** Union bounding box over every frame, so scrubbing never rescales. */
export function docBounds(doc: FramesDoc): Bounds {
  let x0 = Infinity;
  let y0 = Infinity;
  let x1 = -Infinity;
  let y1 = -Infinity;
  for (const frame of doc.frames) {
    for (const r of frame.rects) {
      x0 = Math.min(x0, r.x);
      y0 = Math.min(y0, r.y);
      x1 = Math.max(x1, r.x + r.width);
      y1 = Math.max(y1, r.y + r.height);
    }
    for (const g of frame.guides) {
      y0 = Math.min(y0, g.y);
      y1 = Math.max(y1, g.y);
    }
  }
  if (!Number.isFinite(x0)) return { x0: 0, y0: 0, x1: 1, y1: 1 };
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) y1 = y0 + 1;
  return { x0, y0, x1, y1 };
}
