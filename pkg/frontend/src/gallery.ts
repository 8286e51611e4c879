/** Clause gallery: each ranked clause as a mini-board pattern.
 *
 * Mark conventions match the CLI text rendering: "B"/"W" are required
 * pieces (solid discs), "!b"/"!w" forbidden pieces (hollow, struck
 * through), "." no constraint. A cell may carry several marks.
 */

import { ClauseEntry } from "./api";
import { BLACK_COLOR, WHITE_COLOR } from "./board";

export interface CellMarks {
  requireBlack: boolean;
  requireWhite: boolean;
  forbidBlack: boolean;
  forbidWhite: boolean;
}

export function parseMark(mark: string): CellMarks {
  const marks: CellMarks = {
    requireBlack: false,
    requireWhite: false,
    forbidBlack: false,
    forbidWhite: false,
  };
  let rest = mark;
  while (rest.length > 0 && rest !== ".") {
    if (rest.startsWith("!b")) {
      marks.forbidBlack = true;
      rest = rest.slice(2);
    } else if (rest.startsWith("!w")) {
      marks.forbidWhite = true;
      rest = rest.slice(2);
    } else if (rest.startsWith("B")) {
      marks.requireBlack = true;
      rest = rest.slice(1);
    } else if (rest.startsWith("W")) {
      marks.requireWhite = true;
      rest = rest.slice(1);
    } else {
      throw new Error(`unknown pattern mark ${JSON.stringify(mark)}`);
    }
  }
  return marks;
}

const MINI = 14; // mini-board cell pitch in SVG units

function miniBoard(pattern: string[]): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  const width = MINI * 6 + MINI * 2.5 + 4;
  const height = MINI * 6 + 4;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.classList.add("mini-board");
  for (let i = 0; i < 36; i += 1) {
    const row = Math.floor(i / 6);
    const col = i % 6;
    const x = 2 + col * MINI + row * (MINI / 2);
    const y = 2 + row * MINI;
    const cell = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    cell.setAttribute("x", String(x));
    cell.setAttribute("y", String(y));
    cell.setAttribute("width", String(MINI - 1));
    cell.setAttribute("height", String(MINI - 1));
    cell.setAttribute("fill", "#d9c49a");
    svg.appendChild(cell);

    const marks = parseMark(pattern[i] ?? ".");
    const discs: { fill: string; hollow: boolean }[] = [];
    if (marks.requireBlack) discs.push({ fill: BLACK_COLOR, hollow: false });
    if (marks.requireWhite) discs.push({ fill: WHITE_COLOR, hollow: false });
    if (marks.forbidBlack) discs.push({ fill: BLACK_COLOR, hollow: true });
    if (marks.forbidWhite) discs.push({ fill: WHITE_COLOR, hollow: true });
    discs.forEach((disc, slot) => {
      const cx = x + (MINI - 1) / 2 + (slot - (discs.length - 1) / 2) * 4;
      const cy = y + (MINI - 1) / 2;
      const dot = document.createElementNS("http://www.w3.org/2000/svg", "circle");
      dot.setAttribute("cx", String(cx));
      dot.setAttribute("cy", String(cy));
      dot.setAttribute("r", String(MINI * 0.32));
      dot.setAttribute("fill", disc.hollow ? "none" : disc.fill);
      dot.setAttribute("stroke", disc.fill === WHITE_COLOR ? "#6b7280" : disc.fill);
      dot.setAttribute("stroke-width", "1.4");
      svg.appendChild(dot);
      if (disc.hollow) {
        const strike = document.createElementNS("http://www.w3.org/2000/svg", "line");
        strike.setAttribute("x1", String(cx - MINI * 0.32));
        strike.setAttribute("y1", String(cy + MINI * 0.32));
        strike.setAttribute("x2", String(cx + MINI * 0.32));
        strike.setAttribute("y2", String(cy - MINI * 0.32));
        strike.setAttribute("stroke", "#b91c1c");
        strike.setAttribute("stroke-width", "1.4");
        svg.appendChild(strike);
      }
    });
  }
  return svg;
}

export function renderGallery(container: HTMLElement, clauses: ClauseEntry[]): void {
  container.replaceChildren();
  for (const clause of clauses) {
    const card = document.createElement("figure");
    card.classList.add("clause-card");
    card.appendChild(miniBoard(clause.pattern));
    const caption = document.createElement("figcaption");
    caption.textContent =
      `#${clause.clauseIndex} (${clause.polarity}) ` +
      `score ${clause.score.toFixed(4)} · ` +
      `precision ${clause.precision.toFixed(2)} · ` +
      `coverage ${clause.coverage.toFixed(2)}`;
    card.appendChild(caption);
    container.appendChild(card);
  }
}

export function renderLegend(container: HTMLElement): void {
  container.replaceChildren();
  const entries: [string, string][] = [
    ["B", "black stone required"],
    ["W", "white stone required"],
    ["!b", "black stone forbidden"],
    ["!w", "white stone forbidden"],
    [".", "no constraint"],
  ];
  for (const [mark, meaning] of entries) {
    const item = document.createElement("span");
    item.classList.add("legend-entry");
    item.textContent = `${mark} = ${meaning}`;
    container.appendChild(item);
  }
}
