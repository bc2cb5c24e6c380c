// Wire types shared with the transition service.

export interface RectData {
  x: number;
  y: number;
  width: number;
  height: number;
  color_key: string;
  segment_id: string;
}

export interface GuideData {
  container_id: string;
  y: number;
  role: "start" | "end";
}

export interface FrameData {
  t: number;
  rects: RectData[];
  guides: GuideData[];
}

export interface FramesDoc {
  version: 1;
  frames: FrameData[];
}

export interface ApiErrorBody {
  code: "BadRequest" | "UnprocessableScene" | "ConservationViolation" | "Internal";
  message: string;
  detail: string | null;
}

export interface SceneContainer {
  id: string;
  x: number;
  width: number;
  baseline_y: number;
}

export interface SceneSegment {
  id: string;
  color_key: string;
  area: number;
  container_id: string;
  stack_index: number;
}

export interface SceneObj {
  version: 1;
  containers: SceneContainer[];
  segments: SceneSegment[];
}

export interface RebinRequest {
  data?: number[];
  csv?: string;
  from_bins: number;
  to_bins: number;
  frames?: number;
  ease?: "linear" | "smoothstep";
}

export interface AlignRequest {
  scene: SceneObj;
  select: string[];
  frames?: number;
}
