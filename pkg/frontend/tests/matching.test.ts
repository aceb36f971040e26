import { beforeEach, describe, expect, it, vi } from "vitest";

import type { ApiClient } from "../src/api";
import { MatchingBoard } from "../src/matching";
import type { MatchingStateView } from "../src/types";

function faceDown(count: number): MatchingStateView {
  return {
    game_id: "g-2",
    kind: "matching",
    version: 0,
    paused: false,
    finished: false,
    card_count: count,
    matched_count: 0,
    cards: Array.from({ length: count }, (_, index) => ({ index, status: "face_down" as const })),
  };
}

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = `<div id="root"></div>`;
  root = document.getElementById("root")!;
});

function fakeApi(overrides: Partial<ApiClient> = {}): ApiClient {
  return {
    act: vi.fn(),
    getGame: vi.fn(),
    audioBytes: vi.fn().mockResolvedValue(new Blob()),
    ...overrides,
  } as unknown as ApiClient;
}

describe("MatchingBoard", () => {
  it("renders opaque face-down cards", () => {
    new MatchingBoard(fakeApi(), root, "g-2", faceDown(4), { mismatchDelayMs: 0 });
    const cards = [...root.querySelectorAll(".card")];
    expect(cards).toHaveLength(4);
    expect(cards.every((c) => c.textContent === "?")).toBe(true);
  });

  it("keeps a matched pair face up with the category color", async () => {
    const resolved: MatchingStateView = {
      ...faceDown(4),
      version: 2,
      matched_count: 2,
      cards: [
        { index: 0, status: "matched", word_id: "w010", spelling: "rope", audio: null, category: "long-o" },
        { index: 1, status: "matched", word_id: "w014", spelling: "home", audio: null, category: "long-o" },
        { index: 2, status: "face_down" },
        { index: 3, status: "face_down" },
      ],
    };
    const act = vi.fn().mockResolvedValue({
      outcome: {
        flipped: { index: 1, word_id: "w014", spelling: "home", audio: null },
        resolution: {
          indices: [0, 1], matched: true, category: "long-o",
          cards: [
            { index: 0, word_id: "w010", spelling: "rope", audio: null },
            { index: 1, word_id: "w014", spelling: "home", audio: null },
          ],
        },
        finished: false,
      },
      state: resolved,
    });
    const board = new MatchingBoard(fakeApi({ act } as Partial<ApiClient>), root, "g-2", faceDown(4), {
      mismatchDelayMs: 0,
    });
    root.querySelector<HTMLButtonElement>('[data-index="1"]')!.click();
    await vi.waitFor(() => expect(board.view.matched_count).toBe(2));
    const matched = root.querySelectorAll(".card.matched");
    expect(matched).toHaveLength(2);
    expect(matched[0].classList.contains("category-long-o")).toBe(true);
    expect(matched[0].textContent).toBe("rope");
  });

  it("shows a mismatched pair for the delay, then flips both back", async () => {
    const flippedBack: MatchingStateView = { ...faceDown(4), version: 2 };
    const act = vi.fn().mockResolvedValue({
      outcome: {
        flipped: { index: 1, word_id: "w018", spelling: "hide", audio: null },
        resolution: {
          indices: [0, 1], matched: false,
          cards: [
            { index: 0, word_id: "w010", spelling: "rope", audio: null },
            { index: 1, word_id: "w018", spelling: "hide", audio: null },
          ],
        },
        finished: false,
      },
      state: flippedBack,
    });
    const board = new MatchingBoard(fakeApi({ act } as Partial<ApiClient>), root, "g-2", faceDown(4), {
      mismatchDelayMs: 250,
    });
    root.querySelector<HTMLButtonElement>('[data-index="1"]')!.click();

    await vi.waitFor(
      () => expect(root.querySelectorAll(".card.mismatch")).toHaveLength(2),
      { interval: 10 },
    );
    const shown = [...root.querySelectorAll(".card.mismatch")].map((c) => c.textContent);
    expect(shown).toEqual(["rope", "hide"]);
    expect(board.busy).toBe(true); // clicks are ignored during the animation

    await vi.waitFor(() => expect(board.busy).toBe(false));
    const faces = [...root.querySelectorAll(".card")].map((c) => c.textContent);
    expect(faces).toEqual(["?", "?", "?", "?"]);
  });

  it("drops clicks while a flip is pending", async () => {
    let release: (value: unknown) => void = () => {};
    const gate = new Promise((resolve) => (release = resolve));
    const act = vi.fn().mockImplementation(async () => {
      await gate;
      return { outcome: { flipped: { index: 0, word_id: "w", spelling: "s", audio: null }, resolution: null, finished: false }, state: { ...faceDown(4), version: 1 } };
    });
    const board = new MatchingBoard(fakeApi({ act } as Partial<ApiClient>), root, "g-2", faceDown(4), {
      mismatchDelayMs: 0,
    });
    root.querySelector<HTMLButtonElement>('[data-index="0"]')!.click();
    root.querySelector<HTMLButtonElement>('[data-index="2"]')!.click();
    release(null);
    await vi.waitFor(() => expect(board.busy).toBe(false));
    expect(act).toHaveBeenCalledTimes(1);
  });

  it("paused board disables every face-down card", () => {
    new MatchingBoard(fakeApi(), root, "g-2", { ...faceDown(4), paused: true }, { mismatchDelayMs: 0 });
    for (const card of root.querySelectorAll<HTMLButtonElement>(".card.face-down")) {
      expect(card.disabled).toBe(true);
    }
  });
});
