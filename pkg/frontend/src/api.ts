/** Typed client for the prediction service's HTTP interface. */

export type CellValue = 0 | 1 | 2; // empty, black, white

export interface PredictResponse {
  label: "black" | "white";
  voteSum: number;
  margin: number;
}

export interface InterpretResponse {
  blackCounts: number[];
  whiteCounts: number[];
  prediction: PredictResponse;
}

export interface ClauseEntry {
  clauseIndex: number;
  polarity: "+" | "-";
  score: number;
  precision: number;
  coverage: number;
  tp: number;
  fp: number;
  fn: number;
  weight: number;
  literals: { feature: number; negated: boolean }[];
  pattern: string[]; // 36 marks, concatenations of B, W, !b, !w, or "."
}

export interface TopClausesResponse {
  polarity: "+" | "-";
  truncated: boolean;
  clauses: ClauseEntry[];
}

export interface HealthResponse {
  status: "ok" | "no_model";
  modelInfo: {
    path: string;
    nClauses: number;
    o: number;
    loadTimeMs: number;
  } | null;
}

export class ServiceError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** Flat 36-character wire form, row 1 first. */
export function boardWire(cells: readonly CellValue[]): string {
  return cells.map((c) => ".BW"[c]).join("");
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = (body as { error?: string }).error ?? response.statusText;
    throw new ServiceError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => parse<T>(r));
  }

  predict(board: string): Promise<PredictResponse> {
    return this.post("/predict", { board });
  }

  interpret(board: string): Promise<InterpretResponse> {
    return this.post("/interpret", { board });
  }

  topClauses(
    polarity: "+" | "-",
    k: number,
    alpha = 10,
  ): Promise<TopClausesResponse> {
    const query = new URLSearchParams({
      polarity: polarity === "+" ? "pos" : "neg",
      k: String(k),
      alpha: String(alpha),
    });
    return this.fetchFn(`${this.baseUrl}/clauses/top?${query}`).then((r) =>
      parse<TopClausesResponse>(r),
    );
  }

  health(): Promise<HealthResponse> {
    return this.fetchFn(`${this.baseUrl}/health`).then((r) =>
      parse<HealthResponse>(r),
    );
  }
}
