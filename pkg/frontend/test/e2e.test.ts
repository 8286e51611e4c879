// @vitest-environment jsdom
/** Scripted end-to-end runs against the stubbed service: the UI-level
 *  promises (final-board prediction, zero illegal requests, faithful
 *  heatmap intensities, gallery sizes) in one place. */

import { describe, expect, it } from "vitest";

import { ApiClient, boardWire } from "../src/api";
import { renderBoard } from "../src/board";
import { renderGallery } from "../src/gallery";
import { Store } from "../src/store";
import { StubService, stubCounts, stubPrediction } from "./stub";

describe("scripted interaction", () => {
  it("ten rapid placements show exactly the final board's prediction", async () => {
    const stub = new StubService();
    const store = new Store(new ApiClient("", stub.fetch));
    const script = [14, 21, 15, 20, 8, 27, 9, 26, 2, 33];
    for (const index of script) {
      expect(store.clickCell(index)).toBe(true);
    }
    await store.idle();

    const state = store.state();
    const finalWire = boardWire(state.cells);
    expect(state.cells.filter((c) => c !== 0)).toHaveLength(10);
    expect(state.shownBoard).toBe(finalWire);
    expect(state.prediction).toEqual(stubPrediction(finalWire));
    expect(state.interpretation?.blackCounts).toEqual(
      stubCounts(finalWire).blackCounts,
    );
    // zero illegal requests during the whole scripted run
    expect(stub.rejectedCount).toBe(0);
    // every shown response belongs to the shown board (sequence property)
    expect(state.interpretation?.prediction).toEqual(state.prediction);
  });

  it("heatmap intensities match the stub's counts", async () => {
    const stub = new StubService();
    const store = new Store(new ApiClient("", stub.fetch));
    store.setOverlayMode("blackCounts");
    for (const index of [0, 1, 7, 6]) store.clickCell(index);
    await store.idle();

    const state = store.state();
    const counts = stubCounts(state.shownBoard!).blackCounts;
    const max = Math.max(...counts);

    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    renderBoard(svg, state, { onCellClick: () => {} });
    const heats = svg.querySelectorAll<SVGPolygonElement>(".heat");
    expect(heats.length).toBe(counts.filter((c) => c > 0).length);
    for (const heat of heats) {
      const index = Number(heat.dataset.index);
      expect(Number(heat.dataset.count)).toBe(counts[index]);
      expect(Number(heat.getAttribute("fill-opacity"))).toBeCloseTo(
        counts[index]! / max,
        4,
      );
    }
    expect(stub.rejectedCount).toBe(0);
  });

  it.each([1, 10])("clause gallery renders k=%i patterns end to end", async (k) => {
    const stub = new StubService();
    const client = new ApiClient("", stub.fetch);
    const response = await client.topClauses("+", k);
    const container = document.createElement("div");
    renderGallery(container, response.clauses);
    expect(container.querySelectorAll(".clause-card")).toHaveLength(k);
    expect(stub.rejectedCount).toBe(0);
  });
});
