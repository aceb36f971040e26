// Application shell: login, the student game menu, both game screens and the
// teacher dashboard, glued together with a tiny hash router.

import { ApiClient, ApiError } from "./api";
import { renderAccessDenied, renderClassReport } from "./dashboard";
import { MatchingBoard } from "./matching";
import { SortingScreen } from "./sorting";
import type {
  MatchingConfig,
  MatchingStateView,
  SortingConfig,
  SortingStateView,
  UserInfo,
} from "./types";

const SOUND_CONTRAST = {
  category_a: "long-o",
  category_b: "long-i",
  patterns: {
    "long-o": ["oa", "ow", "oCe"],
    "long-i": ["igh", "y", "iCe"],
  } as Record<string, string[]>,
};

export interface AppOptions {
  feedbackDelayMs?: number;
  mismatchDelayMs?: number;
}

export class App {
  api: ApiClient | null = null;
  user: UserInfo | null = null;
  activeSorting: SortingScreen | null = null;
  activeMatching: MatchingBoard | null = null;

  constructor(
    private root: HTMLElement,
    private defaultBase = "http://127.0.0.1:8570",
    private options: AppOptions = {},
  ) {}

  start(): void {
    this.renderLogin();
  }

  renderLogin(error?: string): void {
    this.root.innerHTML = `
      <form class="login-form">
        <h1>Wordification</h1>
        <label>Server <input name="base" value="${this.defaultBase}"></label>
        <label>Name <input name="name" autocomplete="username"></label>
        <label>Password <input name="credential" type="password"></label>
        <button type="submit">Sign in</button>
        ${error ? `<p class="login-error">${error}</p>` : ""}
      </form>`;
    const form = this.root.querySelector("form")!;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const data = new FormData(form);
      void this.login(
        String(data.get("base")),
        String(data.get("name")),
        String(data.get("credential")),
      );
    });
  }

  async login(base: string, name: string, credential: string): Promise<void> {
    const api = new ApiClient(base);
    try {
      await api.login(name, credential);
    } catch (err) {
      this.renderLogin(err instanceof ApiError ? "Name or password not recognized" : "Server unreachable");
      return;
    }
    this.api = api;
    this.user = await api.whoami();
    if (this.user.role === "teacher") {
      await this.showDashboard();
    } else {
      await this.showMenu();
    }
  }

  async showMenu(): Promise<void> {
    if (!this.api || !this.user) return;
    this.root.innerHTML = `
      <div class="menu">
        <h1>Hello, ${this.user.name}!</h1>
        <button class="start-sorting">Play Word Sorting</button>
        <button class="start-matching">Play Word Matching</button>
        <button class="open-dashboard">Class dashboard</button>
        <ul class="resume-list"></ul>
      </div>`;
    this.root.querySelector(".start-sorting")!.addEventListener("click", () => {
      void this.startSorting();
    });
    this.root.querySelector(".start-matching")!.addEventListener("click", () => {
      void this.startMatching();
    });
    this.root.querySelector(".open-dashboard")!.addEventListener("click", () => {
      void this.showDashboard();
    });

    const unfinished = (await this.api.listGames()).games.filter((g) => !g.finished);
    const list = this.root.querySelector(".resume-list")!;
    for (const game of unfinished) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.className = "resume-game";
      button.textContent = `Resume ${game.kind} game ${game.game_id}`;
      button.addEventListener("click", () => void this.resumeGame(game.game_id, game.kind));
      item.append(button);
      list.append(item);
    }
  }

  // Word lists come from the server's own pattern matching, so game setup
  // involves no client-side answer logic.
  private async contrastWordIds(): Promise<Record<string, string[]>> {
    const api = this.api!;
    const pools: Record<string, string[]> = {};
    for (const category of [SOUND_CONTRAST.category_a, SOUND_CONTRAST.category_b]) {
      const ids = new Set<string>();
      for (const pattern of SOUND_CONTRAST.patterns[category]) {
        for (const word of await api.words({ category, pattern })) ids.add(word.id);
      }
      pools[category] = [...ids].sort();
    }
    return pools;
  }

  async startSorting(config?: SortingConfig): Promise<void> {
    if (!this.api) return;
    if (!config) {
      const pools = await this.contrastWordIds();
      config = {
        category_a: SOUND_CONTRAST.category_a,
        category_b: SOUND_CONTRAST.category_b,
        patterns_by_category: SOUND_CONTRAST.patterns,
        word_ids: [
          ...pools[SOUND_CONTRAST.category_a].slice(0, 2),
          ...pools[SOUND_CONTRAST.category_b].slice(0, 2),
        ],
        rng_seed: Date.now() % 2147483647,
      };
    }
    const created = await this.api.createGame<SortingStateView>("sorting", config);
    this.mountSorting(created.game_id, created.state);
  }

  async startMatching(config?: MatchingConfig): Promise<void> {
    if (!this.api) return;
    if (!config) {
      const pools = await this.contrastWordIds();
      config = {
        contrast: [SOUND_CONTRAST.category_a, SOUND_CONTRAST.category_b],
        cards_per_category: 2,
        word_pool: pools,
        rng_seed: Date.now() % 2147483647,
      };
    }
    const created = await this.api.createGame<MatchingStateView>("matching", config);
    this.mountMatching(created.game_id, created.state);
  }

  async resumeGame(gameId: string, kind: string): Promise<void> {
    if (!this.api) return;
    if (kind === "sorting") {
      const fetched = await this.api.getGame<SortingStateView>(gameId);
      this.mountSorting(gameId, fetched.state);
    } else {
      const fetched = await this.api.getGame<MatchingStateView>(gameId);
      this.mountMatching(gameId, fetched.state);
    }
  }

  mountSorting(gameId: string, state: SortingStateView): SortingScreen {
    this.root.innerHTML = `<div class="screen sorting-screen"></div>`;
    this.activeSorting = new SortingScreen(
      this.api!,
      this.root.querySelector<HTMLElement>(".screen")!,
      gameId,
      state,
      {
        feedbackDelayMs: this.options.feedbackDelayMs ?? 600,
        onFinished: () => this.onGameDone(),
      },
    );
    return this.activeSorting;
  }

  mountMatching(gameId: string, state: MatchingStateView): MatchingBoard {
    this.root.innerHTML = `<div class="screen matching-screen"></div>`;
    this.activeMatching = new MatchingBoard(
      this.api!,
      this.root.querySelector<HTMLElement>(".screen")!,
      gameId,
      state,
      {
        mismatchDelayMs: this.options.mismatchDelayMs ?? 1500,
        onFinished: () => this.onGameDone(),
      },
    );
    return this.activeMatching;
  }

  private onGameDone(): void {
    const banner = document.createElement("div");
    banner.className = "celebration";
    banner.textContent = "🎉 Great job!";
    const back = document.createElement("button");
    back.className = "back-to-menu";
    back.textContent = "Back to menu";
    back.addEventListener("click", () => void this.showMenu());
    banner.append(back);
    this.root.append(banner);
  }

  async showDashboard(): Promise<void> {
    if (!this.api || !this.user) return;
    if (this.user.role !== "teacher") {
      renderAccessDenied(this.root);
      return;
    }
    const report = await this.api.classReport(this.user.id);
    renderClassReport(this.root, report);
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (root) new App(root).start();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
