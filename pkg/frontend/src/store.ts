/** Single UI state store.
 *
 * All service traffic funnels through here: at most one in-flight request
 * per endpoint, every sync tagged with a sequence number, and a response is
 * shown only if no newer board superseded it. Board edits are validated
 * before anything is sent, so the service never sees an illegal board.
 */

import {
  ApiClient,
  boardWire,
  CellValue,
  InterpretResponse,
  PredictResponse,
} from "./api";

export type OverlayMode = "none" | "blackCounts" | "whiteCounts" | "both";

export interface StoreState {
  cells: CellValue[];
  toMove: 1 | 2;
  freeEdit: boolean;
  overlayMode: OverlayMode;
  prediction: PredictResponse | null;
  interpretation: InterpretResponse | null;
  /** Wire form of the board the displayed responses belong to. */
  shownBoard: string | null;
  error: string | null;
  busy: boolean;
  canUndo: boolean;
}

export type Listener = (state: StoreState) => void;

function countsAreLegal(blacks: number, whites: number): boolean {
  const lead = blacks - whites;
  return lead === 0 || lead === 1;
}

export class Store {
  private cells: CellValue[] = new Array(36).fill(0) as CellValue[];
  private undoStack: CellValue[][] = [];
  private freeEdit = false;
  private overlayMode: OverlayMode = "none";
  private prediction: PredictResponse | null = null;
  private interpretation: InterpretResponse | null = null;
  private shownBoard: string | null = null;
  private error: string | null = null;

  private seq = 0;
  private inflight = false;
  private dirty = false;
  private listeners: Listener[] = [];
  /** Resolves whenever no request is in flight; for tests and spinners. */
  private idleResolvers: (() => void)[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    listener(this.state());
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  state(): StoreState {
    const blacks = this.cells.filter((c) => c === 1).length;
    const whites = this.cells.filter((c) => c === 2).length;
    return {
      cells: [...this.cells],
      toMove: blacks === whites ? 1 : 2,
      freeEdit: this.freeEdit,
      overlayMode: this.overlayMode,
      prediction: this.prediction,
      interpretation: this.interpretation,
      shownBoard: this.shownBoard,
      error: this.error,
      busy: this.inflight,
      canUndo: this.undoStack.length > 0,
    };
  }

  /** Place on an empty cell or remove an occupied one (what-if editing).
   *  Returns false and sends nothing when the edit would be illegal. */
  clickCell(index: number, color?: 1 | 2): boolean {
    const current = this.cells[index];
    if (current === undefined) return false;
    const next = [...this.cells];
    if (current === 0) {
      const piece = this.freeEdit ? (color ?? this.state().toMove)
                                  : this.state().toMove;
      if (!this.freeEdit && color !== undefined && color !== piece) {
        return false; // alternation enforced unless free-edit mode is on
      }
      next[index] = piece;
    } else {
      next[index] = 0;
    }
    const blacks = next.filter((c) => c === 1).length;
    const whites = next.filter((c) => c === 2).length;
    if (!countsAreLegal(blacks, whites)) return false;
    this.undoStack.push([...this.cells]);
    this.cells = next;
    this.requestSync();
    return true;
  }

  undo(): boolean {
    const prior = this.undoStack.pop();
    if (!prior) return false;
    this.cells = prior;
    this.requestSync();
    return true;
  }

  clear(): void {
    if (this.cells.every((c) => c === 0)) return;
    this.undoStack.push([...this.cells]);
    this.cells = new Array(36).fill(0) as CellValue[];
    this.requestSync();
  }

  setFreeEdit(on: boolean): void {
    this.freeEdit = on;
    this.emit();
  }

  setOverlayMode(mode: OverlayMode): void {
    this.overlayMode = mode;
    this.emit();
  }

  /** Promise that settles once all queued service traffic has drained. */
  idle(): Promise<void> {
    if (!this.inflight) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  requestSync(): void {
    this.seq += 1;
    if (this.inflight) {
      this.dirty = true;
      this.emit();
      return;
    }
    void this.syncLoop();
  }

  private async syncLoop(): Promise<void> {
    this.inflight = true;
    this.emit();
    try {
      do {
        this.dirty = false;
        const mySeq = this.seq;
        const board = boardWire(this.cells);
        try {
          const [prediction, interpretation] = await Promise.all([
            this.api.predict(board),
            this.api.interpret(board),
          ]);
          if (mySeq === this.seq) {
            this.prediction = prediction;
            this.interpretation = interpretation;
            this.shownBoard = board;
            this.error = null;
          }
        } catch (err) {
          if (mySeq === this.seq) {
            this.error = err instanceof Error ? err.message : String(err);
          }
        }
      } while (this.dirty);
    } finally {
      this.inflight = false;
      this.emit();
      for (const resolve of this.idleResolvers.splice(0)) resolve();
    }
  }

  private emit(): void {
    const snapshot = this.state();
    for (const listener of this.listeners) listener(snapshot);
  }
}
