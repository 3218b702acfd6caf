// Wire types mirroring the service JSON. The client renders these verbatim
// and never computes probabilities itself.

export type Phase =
  | "awaiting_tosser"
  | "awaiting_gambler"
  | "ready_to_measure"
  | "settled";

export type Outcome = "tosser_wins" | "gambler_wins" | "draw_01" | "draw_10";

export interface ProfileView {
  p_tosser: number;
  p_gambler: number;
  p_draw: number;
}

export interface RoundView {
  k: number;
  l: number;
  outcome: Outcome;
  bet: number;
  profile: ProfileView;
}

export interface SessionView {
  id: string;
  n: number;
  phase: Phase;
  pending_k: number | null;
  pending_l: number | null;
  bet: number;
  tosser_bankroll: number;
  gambler_bankroll: number;
  seed: number;
  profile: ProfileView | null;
  history: RoundView[];
}

export interface MeasureResponse extends SessionView {
  outcome: Outcome;
}

export interface SweepRowView {
  index: number;
  p_tosser: number;
  p_gambler: number;
  p_draw: number;
}

export interface SweepReportView {
  n: number;
  fixed_k: number | null;
  rows: SweepRowView[];
}

export interface DualityReportView {
  n: number;
  max_abs_error: number;
  checked_pairs: number;
  passed: boolean;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
