// Monochrome icon artwork for the canonical icon set, plus badge marks.
// Each icon is SVG path data in a 24x24 box. `fillRule: evenodd` entries
// punch holes (the record variants) so the filled style keeps its hole.

export interface IconDef {
  path: string;
  evenodd?: boolean;
}

const circle = (cx: number, cy: number, r: number) =>
  `M ${cx - r} ${cy} a ${r} ${r} 0 1 0 ${2 * r} 0 a ${r} ${r} 0 1 0 ${-2 * r} 0 Z`;

export const ICONS: Record<string, IconDef> = {
  solution: { path: "M12 2 L22 12 L12 22 L2 12 Z" },
  project: { path: "M3 6 h6 l2 2 h10 v11 h-18 Z" },
  package: {
    path: "M12 2 L21 7 V17 L12 22 L3 17 V7 Z M3 7 L12 12 M21 7 L12 12 M12 12 V22",
  },
  namespace: {
    path:
      "M9 3 C6 3 7.5 8 5 9 C4 9.5 4 9.5 4 12 C4 14.5 4 14.5 5 15 C7.5 16 6 21 9 21 " +
      "M15 3 C18 3 16.5 8 19 9 C20 9.5 20 9.5 20 12 C20 14.5 20 14.5 19 15 C16.5 16 18 21 15 21",
  },
  class: { path: "M5 4 H19 V20 H5 Z M5 9 H19" },
  recordClass: { path: `${circle(12, 12, 9)} ${circle(12, 12, 3)}`, evenodd: true },
  struct: { path: "M5 5 H19 V19 H5 Z M12 5 V19 M5 12 H19" },
  recordStruct: { path: `M5 5 H19 V19 H5 Z ${circle(12, 12, 2.5)}`, evenodd: true },
  enum: { path: "M5 4 H19 V20 H5 Z M8 9 H16 M8 13 H16 M8 17 H16" },
  interface: { path: `${circle(12, 8, 4)} M12 12 V21 M8 21 H16` },
  delegate: { path: "M4 12 H17 M17 12 L12 7 M17 12 L12 17 M20 5 V19" },
  field: { path: "M7 7 H17 V17 H7 Z" },
  method: { path: "M8 5 L19 12 L8 19 Z" },
  property: { path: `${circle(8, 10, 3.5)} M11 12.5 L20 19 M17 17 L15.5 19.5 M19 15 L21 17` },
  event: { path: "M13 2 L5 14 H11 L9 22 L19 9 H12 Z" },
  parameter: { path: circle(12, 12, 4.5) },
};

// Corner badges for non-public accessibility levels.
export const ACCESS_BADGES: Record<string, string> = {
  private: "M9 11 V8.5 A3 3 0 0 1 15 8.5 V11 M7 11 H17 V19 H7 Z",
  internal: "M4 12 L12 4 L20 12 M7 10 V19 H17 V10",
  protected: "M12 3 L19 6 V12 C19 16 16 19 12 21 C8 19 5 16 5 12 V6 Z",
  protectedInternal:
    "M12 3 L19 6 V12 C19 16 16 19 12 21 C8 19 5 16 5 12 V6 Z M8 11 H16",
  privateProtected:
    "M9 11 V8.5 A3 3 0 0 1 15 8.5 V11 M7 11 H17 V19 H7 Z M9.5 15 H14.5",
};

// Corner badges for the specialized method kinds.
export const METHOD_BADGES: Record<string, string> = {
  constructor: "M12 4 V20 M5 8 L19 16 M19 8 L5 16",
  getter: "M19 12 H7 M11 8 L7 12 L11 16 M19 5 V19",
  setter: "M5 12 H17 M13 8 L17 12 L13 16 M5 5 V19",
  operator: "M7 8 H17 M12 3.5 V12.5 M7 17 H17",
};
