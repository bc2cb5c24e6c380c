// Built-in stacked bar chart used by the alignment demo: three quarterly
// bars, each stacked from the same three product lines.

import type { SceneObj } from "./types.js";

export function demoStackedScene(): SceneObj {
  const containers = [
    { id: "q1", x: 0.0, width: 1.0, baseline_y: 0.0 },
    { id: "q2", x: 1.4, width: 1.0, baseline_y: 0.0 },
    { id: "q3", x: 2.8, width: 1.0, baseline_y: 0.0 },
  ];
  const stacks: Record<string, number[]> = {
    q1: [2.0, 1.2, 0.8],
    q2: [1.1, 2.3, 0.9],
    q3: [0.7, 1.0, 1.9],
  };
  const lines = ["basic", "plus", "pro"];
  const segments = containers.flatMap((c) =>
    (stacks[c.id] ?? []).map((area, index) => ({
      id: `${c.id}-${lines[index] ?? index}`,
      color_key: lines[index] ?? `line${index}`,
      area,
      container_id: c.id,
      stack_index: index,
    })),
  );
  return { version: 1, containers, segments };
}
