/** SVG rendering of the 6x6 rhombus board with the heatmap overlay.
 *
 * Pointy-top hexagons; each row shifts half a cell right, producing the
 * rhombus. The top and bottom borders are drawn in Black's color and the
 * left and right borders in White's, matching edge ownership.
 */

import { InterpretResponse } from "./api";
import { StoreState } from "./store";

export const SIZE = 6;
const R = 26; // hexagon circumradius in SVG units
const W = Math.sqrt(3) * R; // hexagon width
const PAD = 18;

export const BLACK_COLOR = "#1c1c1e";
export const WHITE_COLOR = "#e8e4da";
const BOARD_COLOR = "#c8a165";

export function cellCenter(row: number, col: number): { x: number; y: number } {
  return {
    x: PAD + W / 2 + col * W + row * (W / 2),
    y: PAD + R + row * 1.5 * R,
  };
}

function hexPoints(cx: number, cy: number): string {
  const points: string[] = [];
  for (let k = 0; k < 6; k += 1) {
    const angle = (Math.PI / 180) * (60 * k - 30);
    points.push(`${cx + R * Math.cos(angle)},${cy + R * Math.sin(angle)}`);
  }
  return points.join(" ");
}

export interface OverlayCell {
  color: string;
  opacity: number;
  count: number;
}

/** Per-cell overlay fills: opacity is count / maxCount, the max cell fully
 *  opaque. With "both" the stronger color of the two wins the fill but the
 *  hover text reports both counts. */
export function overlayCells(
  interpretation: InterpretResponse | null,
  mode: StoreState["overlayMode"],
): (OverlayCell | null)[] {
  const cells: (OverlayCell | null)[] = new Array(36).fill(null);
  if (!interpretation || mode === "none") return cells;
  const black = interpretation.blackCounts;
  const white = interpretation.whiteCounts;
  const useBlack = mode === "blackCounts" || mode === "both";
  const useWhite = mode === "whiteCounts" || mode === "both";
  const considered = (i: number): [number, number] => [
    useBlack ? (black[i] ?? 0) : 0,
    useWhite ? (white[i] ?? 0) : 0,
  ];
  let max = 0;
  for (let i = 0; i < 36; i += 1) {
    const [b, w] = considered(i);
    max = Math.max(max, b, w);
  }
  if (max === 0) return cells;
  for (let i = 0; i < 36; i += 1) {
    const [b, w] = considered(i);
    if (b === 0 && w === 0) continue;
    cells[i] = {
      color: b >= w ? "#2563eb" : "#dc2626",
      opacity: Math.max(b, w) / max,
      count: Math.max(b, w),
    };
  }
  return cells;
}

function borderPath(edge: "top" | "bottom" | "left" | "right"): string {
  const corner = (row: number, col: number, k: number): string => {
    const { x, y } = cellCenter(row, col);
    const angle = (Math.PI / 180) * (60 * k - 30);
    return `${x + R * Math.cos(angle)},${y + R * Math.sin(angle)}`;
  };
  const points: string[] = [];
  if (edge === "top" || edge === "bottom") {
    const row = edge === "top" ? 0 : SIZE - 1;
    const ks = edge === "top" ? [3, 4, 5] : [0, 1, 2];
    for (let col = 0; col < SIZE; col += 1) {
      const cs = edge === "top" ? col : SIZE - 1 - col;
      for (const k of ks) points.push(corner(row, cs, k));
    }
  } else {
    const col = edge === "left" ? 0 : SIZE - 1;
    const ks = edge === "left" ? [2, 3] : [5, 0];
    for (let row = 0; row < SIZE; row += 1) {
      const rs = edge === "left" ? SIZE - 1 - row : row;
      for (const k of ks) points.push(corner(rs, col, k));
    }
  }
  return points.join(" ");
}

export interface BoardCallbacks {
  onCellClick: (index: number) => void;
}

export function renderBoard(
  svg: SVGSVGElement,
  state: StoreState,
  callbacks: BoardCallbacks,
): void {
  const width = PAD * 2 + W * SIZE + (W / 2) * (SIZE - 1);
  const height = PAD * 2 + R * 2 + 1.5 * R * (SIZE - 1);
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.replaceChildren();

  for (const edge of ["top", "bottom", "left", "right"] as const) {
    const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
    line.setAttribute("points", borderPath(edge));
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", edge === "top" || edge === "bottom" ? BLACK_COLOR : WHITE_COLOR);
    line.setAttribute("stroke-width", "7");
    line.setAttribute("stroke-linecap", "round");
    line.classList.add(`edge-${edge}`);
    svg.appendChild(line);
  }

  const overlay = overlayCells(
    state.shownBoard ? state.interpretation : null,
    state.overlayMode,
  );

  for (let i = 0; i < 36; i += 1) {
    const row = Math.floor(i / SIZE);
    const col = i % SIZE;
    const { x, y } = cellCenter(row, col);

    const hex = document.createElementNS("http://www.w3.org/2000/svg", "polygon");
    hex.setAttribute("points", hexPoints(x, y));
    hex.setAttribute("fill", BOARD_COLOR);
    hex.setAttribute("stroke", "#6b4f2a");
    hex.setAttribute("stroke-width", "1.5");
    hex.classList.add("cell");
    hex.dataset.index = String(i);
    hex.addEventListener("click", () => callbacks.onCellClick(i));
    svg.appendChild(hex);

    const cellOverlay = overlay[i];
    if (cellOverlay) {
      const heat = document.createElementNS("http://www.w3.org/2000/svg", "polygon");
      heat.setAttribute("points", hexPoints(x, y));
      heat.setAttribute("fill", cellOverlay.color);
      heat.setAttribute("fill-opacity", cellOverlay.opacity.toFixed(4));
      heat.setAttribute("pointer-events", "none");
      heat.classList.add("heat");
      heat.dataset.index = String(i);
      heat.dataset.count = String(cellOverlay.count);
      const title = document.createElementNS("http://www.w3.org/2000/svg", "title");
      const black = state.interpretation?.blackCounts[i] ?? 0;
      const white = state.interpretation?.whiteCounts[i] ?? 0;
      title.textContent = `black ${black} / white ${white}`;
      heat.appendChild(title);
      svg.appendChild(heat);
    }

    const value = state.cells[i];
    if (value === 1 || value === 2) {
      const stone = document.createElementNS("http://www.w3.org/2000/svg", "circle");
      stone.setAttribute("cx", String(x));
      stone.setAttribute("cy", String(y));
      stone.setAttribute("r", String(R * 0.62));
      stone.setAttribute("fill", value === 1 ? BLACK_COLOR : WHITE_COLOR);
      stone.setAttribute("stroke", "#3f3f46");
      stone.classList.add("stone", value === 1 ? "stone-black" : "stone-white");
      stone.dataset.index = String(i);
      stone.addEventListener("click", () => callbacks.onCellClick(i));
      svg.appendChild(stone);
    }
  }
}
