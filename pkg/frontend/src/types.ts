// Wire types mirroring the server's JSON bodies. The server never sends
// answer keys; everything here is safe to hold in the browser.

export interface SessionResponse {
  token: string;
}

export interface UserInfo {
  id: string;
  name: string;
  role: "student" | "teacher" | "administrator" | "developer" | "system_administrator";
  teacher_id: string | null;
  school_id: string | null;
}

export interface WordSummary {
  id: string;
  spelling: string;
  grade: number;
  sentence: string;
  audio: string | null;
  pronunciation: string[];
  units: { letters: number[]; phonemes: string[]; grapheme: string }[];
}

export interface CompletedWord {
  word_id: string;
  spelling: string;
  sentence: string;
  audio: string | null;
}

export interface SortingStateView {
  game_id: string;
  kind: "sorting";
  version: number;
  paused: boolean;
  finished: boolean;
  stage: "sound_sort" | "pattern_choice" | "spelling" | "finished";
  word_position: number;
  word_count: number;
  attempts_this_stage: number;
  current: { word_id: string; audio: string | null } | null;
  choices: { categories?: string[]; patterns?: string[] };
  completed: CompletedWord[];
}

export type CardView =
  | { index: number; status: "face_down" }
  | { index: number; status: "face_up"; word_id: string; spelling: string; audio: string | null }
  | {
      index: number;
      status: "matched";
      word_id: string;
      spelling: string;
      audio: string | null;
      category: string;
    };

export interface MatchingStateView {
  game_id: string;
  kind: "matching";
  version: number;
  paused: boolean;
  finished: boolean;
  card_count: number;
  matched_count: number;
  cards: CardView[];
}

export type StateView = SortingStateView | MatchingStateView;

export interface SortOutcome {
  correct: boolean;
  stage: string;
  attempt_no: number;
  finished: boolean;
}

export interface FlipOutcome {
  flipped: { index: number; word_id: string; spelling: string; audio: string | null };
  resolution: {
    indices: [number, number];
    matched: boolean;
    category?: string;
    cards: { index: number; word_id: string; spelling: string; audio: string | null }[];
  } | null;
  finished: boolean;
}

export type GameAction =
  | { type: "sound_choice"; value: string }
  | { type: "pattern_choice"; value: string }
  | { type: "spelling"; value: string }
  | { type: "flip"; value: number }
  | { type: "pause" }
  | { type: "resume" };

export interface ActionResponse<V extends StateView, O> {
  outcome: O | null;
  state: V;
}

export interface Tally {
  correct: number;
  incorrect: number;
}

export interface StudentSummary {
  student_id: string;
  student_name: string;
  games: number;
  finished_games: number;
  per_word: Record<string, Record<string, number>>;
  per_pattern: Record<string, Tally>;
  per_category: Record<string, Tally>;
}

export interface ClassReport {
  teacher_id: string;
  students: StudentSummary[];
  totals: {
    per_word: Record<string, Record<string, number>>;
    per_pattern: Record<string, Tally>;
    per_category: Record<string, Tally>;
  };
}

export interface SortingConfig {
  category_a: string;
  category_b: string;
  patterns_by_category: Record<string, string[]>;
  word_ids: string[];
  rng_seed: number;
}

export interface MatchingConfig {
  contrast: string[];
  cards_per_category: number;
  word_pool: Record<string, string[]>;
  rng_seed: number;
}
