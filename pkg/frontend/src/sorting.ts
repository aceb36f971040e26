// The three sorting screens: choose the sound, pick the spelling pattern
// (correct button turns green), then type the word. All correctness feedback
// comes from server outcomes; this module only renders what it is told.

import { ApiClient, VersionConflict } from "./api";
import { playWordAudio } from "./audio";
import type { GameAction, SortingStateView, SortOutcome } from "./types";

export interface SortingScreenOptions {
  feedbackDelayMs?: number;
  onFinished?: (view: SortingStateView) => void;
}

export class SortingScreen {
  view: SortingStateView;
  private pending = false;
  private feedbackDelayMs: number;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private gameId: string,
    initial: SortingStateView,
    private options: SortingScreenOptions = {},
  ) {
    this.view = initial;
    this.feedbackDelayMs = options.feedbackDelayMs ?? 600;
    this.render();
  }

  get busy(): boolean {
    return this.pending;
  }

  // One user action maps to exactly one API request; extra clicks are dropped.
  private async submit(action: GameAction, feedbackTarget?: HTMLElement): Promise<void> {
    if (this.pending || this.view.paused || this.view.finished) return;
    this.pending = true;
    try {
      const response = await this.api.act<SortingStateView, SortOutcome>(
        this.gameId, this.view.version, action,
      );
      const outcome = response.outcome;
      if (outcome && feedbackTarget) {
        feedbackTarget.classList.add(outcome.correct ? "correct" : "incorrect");
        if (this.feedbackDelayMs > 0) {
          await new Promise((resolve) => setTimeout(resolve, this.feedbackDelayMs));
        }
      }
      this.view = response.state;
    } catch (error) {
      if (error instanceof VersionConflict) {
        // another tab/retry got there first: trust the server and re-render
        this.view = (await this.api.getGame<SortingStateView>(this.gameId)).state;
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
    await this.submit({ type: this.view.paused ? "resume" : "pause" });
  }

  render(): void {
    const view = this.view;
    this.root.innerHTML = "";
    const panel = el("div", "sorting-panel");
    if (view.current) panel.dataset.wordId = view.current.word_id;
    panel.dataset.stage = view.stage;

    const progress = el("div", "progress");
    progress.textContent = view.finished
      ? `All ${view.word_count} words done!`
      : `Word ${view.word_position + 1} of ${view.word_count}`;
    panel.append(progress);

    const pauseButton = el("button", "pause-toggle");
    pauseButton.textContent = view.paused ? "Resume" : "Pause";
    pauseButton.disabled = view.finished;
    pauseButton.addEventListener("click", () => void this.togglePause());
    panel.append(pauseButton);

    if (view.finished) {
      panel.append(this.completedList());
      this.root.append(panel);
      return;
    }

    const speaker = el("button", "speaker");
    speaker.textContent = "🔊 hear the word";
    speaker.disabled = view.paused;
    speaker.addEventListener("click", () => {
      void playWordAudio(this.api, view.current?.audio ?? null);
    });
    panel.append(speaker);

    if (view.stage === "sound_sort") {
      const prompt = el("p", "prompt");
      prompt.textContent = "Which sound does this word have?";
      panel.append(prompt);
      const row = el("div", "choice-row sound-choices");
      for (const category of view.choices.categories ?? []) {
        const button = el("button", "choice sound-choice");
        button.textContent = category;
        button.dataset.value = category;
        button.disabled = view.paused;
        button.addEventListener("click", () =>
          void this.submit({ type: "sound_choice", value: category }, button));
        row.append(button);
      }
      panel.append(row);
    } else if (view.stage === "pattern_choice") {
      const prompt = el("p", "prompt");
      prompt.textContent = "Which pattern spells that sound here?";
      panel.append(prompt);
      const row = el("div", "choice-row pattern-choices");
      for (const pattern of view.choices.patterns ?? []) {
        const button = el("button", "choice pattern-choice");
        button.textContent = pattern;
        button.dataset.value = pattern;
        button.disabled = view.paused;
        button.addEventListener("click", () =>
          void this.submit({ type: "pattern_choice", value: pattern }, button));
        row.append(button);
      }
      panel.append(row);
    } else if (view.stage === "spelling") {
      const prompt = el("p", "prompt");
      prompt.textContent = "Now spell the word:";
      panel.append(prompt);
      const form = el("form", "spelling-form");
      const input = el("input", "spelling-input");
      input.type = "text";
      input.autocomplete = "off";
      input.disabled = view.paused;
      const go = el("button", "spelling-submit");
      go.textContent = "Check";
      go.disabled = view.paused;
      form.append(input, go);
      form.addEventListener("submit", (event) => {
        event.preventDefault();
        if (input.value.trim() === "") return;
        void this.submit({ type: "spelling", value: input.value }, go);
      });
      panel.append(form);
    }

    if (view.attempts_this_stage > 0) {
      const hint = el("p", "retry-hint");
      hint.textContent = "Not quite, try again!";
      panel.append(hint);
    }
    panel.append(this.completedList());
    this.root.append(panel);
  }

  private completedList(): HTMLElement {
    const list = el("ul", "completed-words");
    for (const done of this.view.completed) {
      const item = el("li", "completed-word");
      item.textContent = `✓ ${done.spelling}`;
      list.append(item);
    }
    return list;
  }
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}
