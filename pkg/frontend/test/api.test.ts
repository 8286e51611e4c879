import { describe, expect, it } from "vitest";

import { ApiClient, boardWire, ServiceError } from "../src/api";
import { StubService } from "./stub";

describe("boardWire", () => {
  it("maps tri-state cells to the flat wire form", () => {
    const cells = new Array(36).fill(0);
    cells[0] = 1;
    cells[7] = 2;
    const wire = boardWire(cells);
    expect(wire).toHaveLength(36);
    expect(wire[0]).toBe("B");
    expect(wire[7]).toBe("W");
    expect(wire.slice(1, 7)).toBe("......");
  });
});

describe("ApiClient", () => {
  const stub = new StubService();
  const client = new ApiClient("", stub.fetch);

  it("posts predict bodies and parses responses", async () => {
    const board = "B" + ".".repeat(35);
    const response = await client.predict(board);
    expect(response.label === "black" || response.label === "white").toBe(true);
    expect(typeof response.voteSum).toBe("number");
    const logged = stub.requests.at(-1)!;
    expect(logged.method).toBe("POST");
    expect(logged.path).toBe("/predict");
    expect(logged.board).toBe(board);
  });

  it("embeds the same prediction in interpret responses", async () => {
    const board = "BW" + ".".repeat(34);
    const inter = await client.interpret(board);
    const pred = await client.predict(board);
    expect(inter.prediction).toEqual(pred);
    expect(inter.blackCounts).toHaveLength(36);
    expect(inter.whiteCounts).toHaveLength(36);
  });

  it("raises ServiceError with the server's message on 400", async () => {
    await expect(client.predict("nonsense")).rejects.toThrowError(ServiceError);
    await expect(client.predict("nonsense")).rejects.toThrow("illegal board");
  });

  it("encodes clause ranking queries", async () => {
    const response = await client.topClauses("-", 3, 5);
    expect(response.polarity).toBe("-");
    expect(response.clauses).toHaveLength(3);
    const scores = response.clauses.map((c) => c.score);
    expect([...scores].sort((a, b) => b - a)).toEqual(scores);
  });

  it("reports health", async () => {
    const health = await client.health();
    expect(health.status).toBe("ok");
    expect(health.modelInfo?.o).toBe(72);
  });
});
