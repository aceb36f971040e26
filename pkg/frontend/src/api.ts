// Thin typed client over the wordify HTTP API. The client never computes
// correctness itself: every judgement comes back from the server, and a
// version-conflict (409) is surfaced so screens can refetch and re-render.

import type {
  ActionResponse,
  ClassReport,
  GameAction,
  MatchingConfig,
  SortingConfig,
  StateView,
  UserInfo,
  WordSummary,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export class VersionConflict extends Error {
  constructor(
    public currentVersion: number,
    public state: StateView,
  ) {
    super(`stored version is ${currentVersion}`);
  }
}

export class ApiClient {
  private token: string | null = null;

  constructor(public baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  get authenticated(): boolean {
    return this.token !== null;
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (response.status === 409) {
      throw new VersionConflict(payload.current_version, payload.state);
    }
    if (!response.ok) {
      throw new ApiError(response.status, payload.error ?? "error", payload.detail ?? "");
    }
    return payload as T;
  }

  async login(name: string, credential: string): Promise<void> {
    const body = await this.request<{ token: string }>("POST", "/api/v1/sessions", {
      name,
      credential,
    });
    this.token = body.token;
  }

  logout(): void {
    this.token = null;
  }

  whoami(): Promise<UserInfo> {
    return this.request("GET", "/api/v1/users/me");
  }

  async words(params: { grade?: number; category?: string; pattern?: string } = {}): Promise<WordSummary[]> {
    const query = new URLSearchParams();
    if (params.grade !== undefined) query.set("grade", String(params.grade));
    if (params.category) query.set("category", params.category);
    if (params.pattern) query.set("pattern", params.pattern);
    const suffix = query.toString() ? `?${query}` : "";
    const body = await this.request<{ words: WordSummary[] }>("GET", `/api/v1/words${suffix}`);
    return body.words;
  }

  createGame<V extends StateView>(
    kind: "sorting" | "matching",
    config: SortingConfig | MatchingConfig,
    assignee?: string,
  ): Promise<{ game_id: string; state: V }> {
    return this.request("POST", "/api/v1/games", { kind, config, assignee });
  }

  getGame<V extends StateView>(gameId: string): Promise<{ game_id: string; state: V }> {
    return this.request("GET", `/api/v1/games/${gameId}`);
  }

  listGames(studentId?: string): Promise<{ games: { game_id: string; kind: string; finished: boolean }[] }> {
    const suffix = studentId ? `?student=${encodeURIComponent(studentId)}` : "";
    return this.request("GET", `/api/v1/games${suffix}`);
  }

  act<V extends StateView, O>(
    gameId: string,
    expectedVersion: number,
    action: GameAction,
  ): Promise<ActionResponse<V, O>> {
    return this.request("POST", `/api/v1/games/${gameId}/actions`, {
      expected_version: expectedVersion,
      action,
    });
  }

  studentProgress(studentId: string): Promise<{ student_id: string; totals: ClassReport["totals"] }> {
    return this.request("GET", `/api/v1/students/${studentId}/progress`);
  }

  classReport(teacherId: string): Promise<ClassReport> {
    return this.request("GET", `/api/v1/teachers/${teacherId}/class-report`);
  }

  async audioBytes(assetKey: string): Promise<Blob> {
    const response = await fetch(`${this.baseUrl}/api/v1/audio/${assetKey}`, {
      headers: this.token ? { Authorization: `Bearer ${this.token}` } : {},
    });
    if (!response.ok) throw new ApiError(response.status, "audio_unavailable", assetKey);
    return response.blob();
  }
}
