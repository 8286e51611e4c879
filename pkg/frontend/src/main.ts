/** Entry point: wires the store, board view, gauge, and clause gallery. */

import { ApiClient } from "./api";
import { renderBoard } from "./board";
import { renderGallery, renderLegend } from "./gallery";
import { OverlayMode, Store } from "./store";

const params = new URLSearchParams(window.location.search);
const baseUrl =
  params.get("service") ??
  (import.meta.env?.VITE_SERVICE_URL as string | undefined) ??
  "http://127.0.0.1:8000";

const api = new ApiClient(baseUrl);
const store = new Store(api);

const svg = document.querySelector<SVGSVGElement>("#board")!;
const gauge = document.querySelector<HTMLElement>("#gauge")!;
const gaugeFill = document.querySelector<HTMLElement>("#gauge-fill")!;
const gaugeText = document.querySelector<HTMLElement>("#gauge-text")!;
const banner = document.querySelector<HTMLElement>("#banner")!;
const toMoveText = document.querySelector<HTMLElement>("#to-move")!;
const undoButton = document.querySelector<HTMLButtonElement>("#undo")!;
const clearButton = document.querySelector<HTMLButtonElement>("#clear")!;
const freeEdit = document.querySelector<HTMLInputElement>("#free-edit")!;
const overlaySelect = document.querySelector<HTMLSelectElement>("#overlay")!;
const gallery = document.querySelector<HTMLElement>("#gallery")!;
const legend = document.querySelector<HTMLElement>("#legend")!;
const polaritySelect = document.querySelector<HTMLSelectElement>("#polarity")!;
const topK = document.querySelector<HTMLInputElement>("#top-k")!;

store.subscribe((state) => {
  renderBoard(svg, state, { onCellClick: (i) => store.clickCell(i) });
  toMoveText.textContent = state.freeEdit
    ? "free edit"
    : state.toMove === 1
      ? "Black to move"
      : "White to move";
  undoButton.disabled = !state.canUndo;

  if (state.error) {
    banner.textContent = `service error: ${state.error}`;
    banner.hidden = false;
    gauge.classList.add("stale");
  } else {
    banner.hidden = true;
    gauge.classList.toggle("stale", state.prediction === null);
  }

  if (state.prediction) {
    const { label, voteSum, margin } = state.prediction;
    // margin in [-1, 1]; map to a Black (left) <-> White (right) gauge
    const towardWhite = label === "white" ? margin : -margin;
    gaugeFill.style.left = `${50 + 50 * Math.min(0, towardWhite)}%`;
    gaugeFill.style.width = `${50 * Math.abs(towardWhite)}%`;
    gaugeFill.style.background = label === "white" ? "#9ca3af" : "#1c1c1e";
    gaugeText.textContent = `${label} favored · voteSum ${voteSum} · margin ${margin.toFixed(3)}`;
  } else {
    gaugeFill.style.width = "0%";
    gaugeText.textContent = "no prediction yet";
  }
});

undoButton.addEventListener("click", () => store.undo());
clearButton.addEventListener("click", () => store.clear());
freeEdit.addEventListener("change", () => store.setFreeEdit(freeEdit.checked));
overlaySelect.addEventListener("change", () =>
  store.setOverlayMode(overlaySelect.value as OverlayMode),
);

async function refreshGallery(): Promise<void> {
  const polarity = polaritySelect.value === "-" ? "-" : "+";
  const k = Math.max(1, Number(topK.value) || 10);
  try {
    const response = await api.topClauses(polarity, k);
    renderGallery(gallery, response.clauses);
  } catch (err) {
    gallery.replaceChildren();
    const note = document.createElement("p");
    note.textContent = `clause ranking unavailable: ${err instanceof Error ? err.message : err}`;
    gallery.appendChild(note);
  }
}

polaritySelect.addEventListener("change", () => void refreshGallery());
topK.addEventListener("change", () => void refreshGallery());

renderLegend(legend);
store.requestSync();
void refreshGallery();
