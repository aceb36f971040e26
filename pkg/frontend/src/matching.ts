// The matching grid. Matched pairs stay face up with a color change; a
// mismatched pair is shown for a client-side delay before flipping back (the
// server already resolved it). Clicks are ignored while an action or the
// flip-back animation is pending.

import { ApiClient, VersionConflict } from "./api";
import { playWordAudio } from "./audio";
import type { FlipOutcome, MatchingStateView } from "./types";

export interface MatchingBoardOptions {
  mismatchDelayMs?: number;
  onFinished?: (view: MatchingStateView) => void;
}

interface RevealedFace {
  spelling: string;
  audio: string | null;
}

export class MatchingBoard {
  view: MatchingStateView;
  private pending = false;
  private mismatchDelayMs: number;
  // faces being shown during the mismatch animation, by card index
  private transientFaces = new Map<number, RevealedFace>();

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private gameId: string,
    initial: MatchingStateView,
    private options: MatchingBoardOptions = {},
  ) {
    this.view = initial;
    this.mismatchDelayMs = options.mismatchDelayMs ?? 1500;
    this.render();
  }

  get busy(): boolean {
    return this.pending;
  }

  async flip(index: number): Promise<void> {
    if (this.pending || this.view.paused || this.view.finished) return;
    const card = this.view.cards[index];
    if (!card || card.status !== "face_down") return;
    this.pending = true;
    try {
      const response = await this.api.act<MatchingStateView, FlipOutcome>(
        this.gameId, this.view.version, { type: "flip", value: index },
      );
      const outcome = response.outcome;
      this.view = response.state;
      if (outcome?.resolution && !outcome.resolution.matched) {
        // server already flipped them back; show both faces briefly
        for (const face of outcome.resolution.cards) {
          this.transientFaces.set(face.index, { spelling: face.spelling, audio: face.audio });
        }
        this.render();
        await new Promise((resolve) => setTimeout(resolve, this.mismatchDelayMs));
        this.transientFaces.clear();
      }
    } catch (error) {
      if (error instanceof VersionConflict) {
        this.view = (await this.api.getGame<MatchingStateView>(this.gameId)).state;
      } else {
        throw error;
      }
    } finally {
      this.pending = false;
      this.render();
      if (this.view.finished) this.options.onFinished?.(this.view);
    }
  }

  async togglePause(): Promise<void> {
    if (this.pending) return;
    this.pending = true;
    try {
      const response = await this.api.act<MatchingStateView, null>(
        this.gameId, this.view.version, { type: this.view.paused ? "resume" : "pause" },
      );
      this.view = response.state;
    } catch (error) {
      if (error instanceof VersionConflict) {
        this.view = (await this.api.getGame<MatchingStateView>(this.gameId)).state;
      } else {
        throw error;
      }
    } finally {
      this.pending = false;
      this.render();
    }
  }

  render(): void {
    const view = this.view;
    this.root.innerHTML = "";
    const panel = el("div", "matching-panel");

    const status = el("div", "progress");
    status.textContent = view.finished
      ? "All pairs found!"
      : `${view.matched_count / 2} of ${view.card_count / 2} pairs found`;
    panel.append(status);

    const pauseButton = el("button", "pause-toggle");
    pauseButton.textContent = view.paused ? "Resume" : "Pause";
    pauseButton.disabled = view.finished;
    pauseButton.addEventListener("click", () => void this.togglePause());
    panel.append(pauseButton);

    const grid = el("div", "card-grid");
    for (const card of view.cards) {
      const cell = el("button", "card");
      cell.dataset.index = String(card.index);
      const transient = this.transientFaces.get(card.index);
      if (card.status === "matched") {
        cell.classList.add("matched", `category-${cssSafe(card.category)}`);
        cell.textContent = card.spelling;
        cell.disabled = true;
        cell.addEventListener("click", () => void playWordAudio(this.api, card.audio));
        cell.disabled = false; // matched cards replay their audio
      } else if (transient) {
        cell.classList.add("face-up", "mismatch");
        cell.textContent = transient.spelling;
        cell.disabled = true;
      } else if (card.status === "face_up") {
        cell.classList.add("face-up");
        cell.textContent = card.spelling;
        cell.disabled = true;
      } else {
        cell.classList.add("face-down");
        cell.textContent = "?";
        cell.disabled = view.paused;
        cell.addEventListener("click", () => void this.flip(card.index));
      }
      grid.append(cell);
    }
    panel.append(grid);
    this.root.append(panel);
  }
}

function cssSafe(value: string): string {
  return value.replace(/[^a-z0-9-]/gi, "-");
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}
