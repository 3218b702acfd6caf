// Pure client-side rules: screen routing, control guards, inline setup
// validation, the dual-index hint, and display formatting. No I/O here so
// the whole module is unit-testable.

import type { Outcome, Phase, ProfileView } from "./types.js";

export const MAX_ORDER = 1024;

export type Screen = "setup" | "tosser" | "gambler" | "measure";

export function screenFor(phase: Phase): Screen {
  switch (phase) {
    case "awaiting_tosser":
      return "tosser";
    case "awaiting_gambler":
      return "gambler";
    case "ready_to_measure":
    case "settled":
      return "measure";
  }
}

// Buttons may only fire in their own phase; everything else stays disabled.
export function canSubmit(
  action: "tosser" | "gambler" | "measure" | "bet",
  phase: Phase,
  hasDrawHistory = false,
): boolean {
  switch (action) {
    case "tosser":
      return phase === "awaiting_tosser";
    case "gambler":
      return phase === "awaiting_gambler";
    case "measure":
      return phase === "ready_to_measure";
    case "bet":
      return phase === "awaiting_tosser" && hasDrawHistory;
  }
}

export interface SetupForm {
  n: number;
  bet: number;
  tosserBankroll: number;
  gamblerBankroll: number;
  seed: number | null;
}

// Mirrors the service preconditions so an invalid form never issues a
// request; the message is rendered inline next to the form.
export function validateSetup(form: SetupForm): string | null {
  if (!Number.isInteger(form.n) || form.n < 1 || form.n > MAX_ORDER) {
    return `group order must be an integer in [1, ${MAX_ORDER}]`;
  }
  if (!Number.isInteger(form.bet) || form.bet < 0) {
    return "bet must be a non-negative integer";
  }
  if (!Number.isInteger(form.tosserBankroll) || form.tosserBankroll < 0) {
    return "tosser bankroll must be a non-negative integer";
  }
  if (!Number.isInteger(form.gamblerBankroll) || form.gamblerBankroll < 0) {
    return "gambler bankroll must be a non-negative integer";
  }
  if (form.bet > form.gamblerBankroll) {
    return "the gambler cannot cover that bet";
  }
  if (2 * form.bet > form.tosserBankroll) {
    return "the tosser cannot cover double that bet";
  }
  if (form.seed !== null && (!Number.isInteger(form.seed) || form.seed < 0)) {
    return "seed must be a non-negative integer";
  }
  return null;
}

// The half-turn dual of a gambler exponent; undefined for odd orders.
export function dualIndex(l: number, n: number): number | null {
  if (n % 2 !== 0) {
    return null;
  }
  return (l + n / 2) % n;
}

// Probabilities are displayed to 3 decimals, like the reference tables.
export function fmtProb(p: number): string {
  return p.toFixed(3);
}

export function fmtProfile(profile: ProfileView): string {
  return (
    `tosser ${fmtProb(profile.p_tosser)} · ` +
    `gambler ${fmtProb(profile.p_gambler)} · ` +
    `draw ${fmtProb(profile.p_draw)}`
  );
}

export function outcomeLabel(outcome: Outcome): string {
  switch (outcome) {
    case "tosser_wins":
      return "Both heads — the tosser wins";
    case "gambler_wins":
      return "Both tails — the gambler wins";
    case "draw_01":
    case "draw_10":
      return "One of each — draw, toss again";
  }
}

export function isDraw(outcome: Outcome): boolean {
  return outcome === "draw_01" || outcome === "draw_10";
}

// Signed transfer seen by the tosser for a settled round (the gambler sees
// the negation); draws move nothing.
export function tosserDelta(outcome: Outcome, bet: number): number {
  switch (outcome) {
    case "tosser_wins":
      return bet;
    case "gambler_wins":
      return -2 * bet;
    default:
      return 0;
  }
}
