/** In-memory stand-in for the prediction service.
 *
 * Implements the documented wire contract (paths, bodies, field names,
 * error shapes) over deterministic functions of the board, records every
 * request, and counts rejections so tests can assert the UI never sends an
 * illegal board.
 */

import { ClauseEntry } from "../src/api";

export interface StubRequest {
  method: string;
  path: string;
  board?: string;
  status: number;
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function boardLegal(board: string): boolean {
  if (board.length !== 36 || /[^.BW]/.test(board)) return false;
  const blacks = (board.match(/B/g) ?? []).length;
  const whites = (board.match(/W/g) ?? []).length;
  return blacks - whites === 0 || blacks - whites === 1;
}

function boardHash(board: string): number {
  let h = 0;
  for (let i = 0; i < board.length; i += 1) {
    const v = board[i] === "B" ? 1 : board[i] === "W" ? 2 : 0;
    h += (i + 1) * v;
  }
  return h;
}

export function stubPrediction(board: string) {
  const voteSum = boardHash(board) - 100;
  const label = voteSum >= 0 ? "black" : "white";
  const margin = Math.max(-1, Math.min(1, voteSum / 1600));
  return { label, voteSum, margin };
}

export function stubCounts(board: string) {
  const stones = 36 - (board.match(/\./g) ?? []).length;
  const hash = boardHash(board);
  const blackCounts = Array.from({ length: 36 }, (_, i) => (i + stones) % 9);
  const whiteCounts = Array.from({ length: 36 }, (_, i) => (i * 3 + hash) % 7);
  return { blackCounts, whiteCounts };
}

export function stubClauses(polarity: "+" | "-", k: number): ClauseEntry[] {
  const marks = ["B", "W", "!b", "!w", ".", "BW", "!b!w"];
  return Array.from({ length: k }, (_, rank) => ({
    clauseIndex: polarity === "+" ? rank * 2 : rank * 2 + 1,
    polarity,
    score: 1 - rank / (k + 1),
    precision: 0.9 - rank * 0.01,
    coverage: 0.5,
    tp: 50 - rank,
    fp: rank,
    fn: 50,
    weight: 1,
    literals: [{ feature: rank + 1, negated: false }],
    pattern: Array.from({ length: 36 }, (_, i) => marks[(i + rank) % marks.length]!),
  }));
}

export class StubService {
  requests: StubRequest[] = [];
  /** When set, responses wait until release() is called. */
  gated = false;
  failNext = 0; // number of upcoming requests to answer with a 500
  private gateQueue: (() => void)[] = [];
  private pendingByPath = new Map<string, number>();
  maxConcurrentByPath = new Map<string, number>();

  release(count = Infinity): void {
    for (let i = 0; i < count && this.gateQueue.length > 0; i += 1) {
      this.gateQueue.shift()!();
    }
  }

  get rejectedCount(): number {
    return this.requests.filter((r) => r.status === 400).length;
  }

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input), "http://stub.local");
    const method = init?.method ?? "GET";
    const path = url.pathname;

    this.pendingByPath.set(path, (this.pendingByPath.get(path) ?? 0) + 1);
    this.maxConcurrentByPath.set(
      path,
      Math.max(this.maxConcurrentByPath.get(path) ?? 0, this.pendingByPath.get(path)!),
    );
    if (this.gated) {
      await new Promise<void>((resolve) => this.gateQueue.push(resolve));
    } else {
      await Promise.resolve(); // settle on a microtask like a real response
    }
    this.pendingByPath.set(path, this.pendingByPath.get(path)! - 1);

    const log = (status: number, board?: string) => {
      this.requests.push({ method, path, board, status });
      return status;
    };

    if (this.failNext > 0) {
      this.failNext -= 1;
      return jsonResponse(log(500), { error: "stub outage" });
    }

    if (method === "POST" && (path === "/predict" || path === "/interpret")) {
      const body = JSON.parse(String(init?.body ?? "null")) as { board?: unknown };
      const board = typeof body?.board === "string" ? body.board : "";
      if (!boardLegal(board)) {
        return jsonResponse(log(400, board), { error: "illegal board" });
      }
      log(200, board);
      const prediction = stubPrediction(board);
      if (path === "/predict") return jsonResponse(200, prediction);
      return jsonResponse(200, { ...stubCounts(board), prediction });
    }

    if (method === "GET" && path === "/clauses/top") {
      const polarity = url.searchParams.get("polarity") ?? "pos";
      const k = Number(url.searchParams.get("k") ?? "10");
      const pol = ["+", "pos", "positive", " ", ""].includes(polarity)
        ? "+"
        : ["-", "neg", "negative"].includes(polarity)
          ? "-"
          : null;
      if (pol === null || !Number.isInteger(k) || k < 1) {
        return jsonResponse(log(400), { error: "bad query" });
      }
      log(200);
      return jsonResponse(200, {
        polarity: pol,
        truncated: false,
        clauses: stubClauses(pol, k),
      });
    }

    if (method === "GET" && path === "/health") {
      log(200);
      return jsonResponse(200, {
        status: "ok",
        modelInfo: { path: "stub.tm", nClauses: 2000, o: 72, loadTimeMs: 1.5 },
      });
    }

    return jsonResponse(log(404), { error: "no such endpoint" });
  };
}
