// Application shell: renders one screen per game phase into #app and talks
// to the service. All state shown comes from the last server response; the
// client never advances the game on its own.

import { api, ApiError } from "./api.js";
import { chartLegend, chartModel, renderChart } from "./chart.js";
import {
  canSubmit,
  fmtProb,
  fmtProfile,
  isDraw,
  outcomeLabel,
  screenFor,
  tosserDelta,
  validateSetup,
} from "./state.js";
import type { Outcome, SessionView, SweepReportView } from "./types.js";

interface AppState {
  session: SessionView | null;
  lastOutcome: Outcome | null;
  phase1Report: SweepReportView | null;
  phase2Report: SweepReportView | null;
  selectedK: number | null;
  selectedL: number | null;
  hoverBar: number | null;
  showResult: boolean;
  busy: boolean;
  error: string | null;
}

const state: AppState = {
  session: null,
  lastOutcome: null,
  phase1Report: null,
  phase2Report: null,
  selectedK: null,
  selectedL: null,
  hoverBar: null,
  showResult: false,
  busy: false,
  error: null,
};

const root = document.getElementById("app") as HTMLElement;

// --- mutation plumbing: at most one in-flight request --------------------

async function mutate(action: () => Promise<void>): Promise<void> {
  if (state.busy) {
    return;
  }
  state.busy = true;
  state.error = null;
  render();
  try {
    await action();
  } catch (error) {
    await handleError(error);
  } finally {
    state.busy = false;
    render();
  }
}

async function handleError(error: unknown): Promise<void> {
  if (error instanceof ApiError) {
    state.error = `${error.code}: ${error.message}`;
    if (error.status === 409 && state.session) {
      // Stale phase: re-sync with the server instead of guessing.
      try {
        state.session = await api.getSession(state.session.id);
      } catch {
        /* keep the original error */
      }
    }
  } else {
    state.error = `network error: ${String(error)} — retry when ready`;
  }
}

// --- views ----------------------------------------------------------------

function render(): void {
  const session = state.session;
  let body: string;
  if (!session) {
    body = setupView();
  } else if (state.showResult) {
    body = resultView(session);
  } else {
    switch (screenFor(session.phase)) {
      case "tosser":
        body = tosserView(session);
        break;
      case "gambler":
        body = gamblerView(session);
        break;
      default:
        body = measureView(session);
        break;
    }
  }
  root.innerHTML = `
    ${headerView(session)}
    ${state.error ? `<div class="error">${state.error}</div>` : ""}
    ${body}
  `;
}

function headerView(session: SessionView | null): string {
  if (!session) {
    return `<div class="status"><strong>New table</strong></div>`;
  }
  const oddBadge =
    session.n % 2 === 1
      ? `<span class="badge">n odd: duality N/A</span>`
      : "";
  return `
    <div class="status">
      <span>order <strong>${session.n}</strong></span>
      <span>bet <strong>${session.bet}</strong></span>
      <span>tosser <strong>${session.tosser_bankroll}</strong></span>
      <span>gambler <strong>${session.gambler_bankroll}</strong></span>
      <span>seed <strong>${session.seed}</strong></span>
      ${oddBadge}
    </div>`;
}

function setupView(): string {
  return `
    <section>
      <h2>Set up the table</h2>
      <p>Pick the rotation-group order and the stakes. The tosser pays
         double when both coins come up tails.</p>
      <div class="form">
        <label>group order n <input id="setup-n" type="number" value="16"></label>
        <label>bet <input id="setup-bet" type="number" value="10"></label>
        <label>tosser bankroll <input id="setup-tosser" type="number" value="100"></label>
        <label>gambler bankroll <input id="setup-gambler" type="number" value="100"></label>
        <label>seed (optional) <input id="setup-seed" type="number" placeholder="entropy"></label>
        <button data-action="create" ${state.busy ? "disabled" : ""}>Start</button>
      </div>
    </section>`;
}

function chartSection(
  report: SweepReportView | null,
  selected: number | null,
  hint: string,
): string {
  if (!report) {
    return `<p>loading the probability chart…</p>`;
  }
  const bars = chartModel(report, selected);
  const highlight =
    state.hoverBar !== null && report.n % 2 === 0
      ? bars[state.hoverBar]?.dual ?? null
      : null;
  return `
    <div id="chart-area">
      ${chartLegend(report.fixed_k !== null)}
      ${renderChart(bars, highlight)}
      <div class="hint">${hint}</div>
    </div>`;
}

function tosserView(session: SessionView): string {
  const ready =
    state.selectedK !== null &&
    canSubmit("tosser", session.phase) &&
    !state.busy;
  const hover =
    state.hoverBar !== null && state.phase1Report
      ? chartModel(state.phase1Report, state.selectedK)[state.hoverBar]?.tooltip ?? ""
      : "click a bar to choose k";
  return `
    <section>
      <h2>Tosser: entangle the coins</h2>
      <p>Win odds if the coins were measured straight after your move.</p>
      ${chartSection(state.phase1Report, state.selectedK, hover)}
      <button data-action="submit-tosser" ${ready ? "" : "disabled"}>
        Play k=${state.selectedK ?? "?"}
      </button>
    </section>`;
}

function gamblerView(session: SessionView): string {
  const ready =
    state.selectedL !== null &&
    canSubmit("gambler", session.phase) &&
    !state.busy;
  let hover = "click a bar to choose l";
  if (state.hoverBar !== null && state.phase2Report) {
    const bar = chartModel(state.phase2Report, state.selectedL)[state.hoverBar];
    if (bar) {
      hover =
        bar.dual === null
          ? bar.tooltip
          : `${bar.tooltip} — dual basis l*=${bar.dual} swaps the players' odds`;
    }
  }
  return `
    <section>
      <h2>Gambler: rotate the measurement basis</h2>
      <p>The tosser played k=${session.pending_k}. Draws send the round back
         to the tosser.</p>
      ${chartSection(state.phase2Report, state.selectedL, hover)}
      <button data-action="submit-gambler" ${ready ? "" : "disabled"}>
        Measure in basis l=${state.selectedL ?? "?"}
      </button>
    </section>`;
}

function measureView(session: SessionView): string {
  const ready = canSubmit("measure", session.phase) && !state.busy;
  const profile = session.profile ? fmtProfile(session.profile) : "";
  return `
    <section>
      <h2>Measure the coins</h2>
      <p>Moves are in: k=${session.pending_k}, l=${session.pending_l}.</p>
      <p class="profile">Win odds — ${profile}</p>
      <button data-action="measure" ${ready ? "" : "disabled"}>Measure</button>
      ${historyView(session)}
    </section>`;
}

function resultView(session: SessionView): string {
  const outcome = state.lastOutcome;
  if (!outcome) {
    return measureView(session);
  }
  const last = session.history[session.history.length - 1];
  const delta = tosserDelta(outcome, last?.bet ?? session.bet);
  const ledger =
    delta === 0
      ? "bankrolls unchanged"
      : `tosser ${delta > 0 ? "+" : ""}${delta}, gambler ${-delta > 0 ? "+" : ""}${-delta}`;
  const controls = isDraw(outcome)
    ? `
      <div class="form">
        <label>bet for the next round
          <input id="next-bet" type="number" value="${session.bet}" min="${session.bet}">
        </label>
        <button data-action="new-round" ${state.busy ? "disabled" : ""}>New round</button>
      </div>`
    : `<button data-action="new-session" ${state.busy ? "disabled" : ""}>New session</button>`;
  return `
    <section>
      <h2>${outcomeLabel(outcome)}</h2>
      <p class="ledger">Ledger: ${ledger} — tosser ${session.tosser_bankroll},
         gambler ${session.gambler_bankroll}</p>
      ${controls}
      ${historyView(session)}
    </section>`;
}

function historyView(session: SessionView): string {
  if (session.history.length === 0) {
    return "";
  }
  const rows = session.history
    .map(
      (round, index) => `
        <tr>
          <td>${index + 1}</td><td>${round.k}</td><td>${round.l}</td>
          <td>${round.outcome}</td><td>${round.bet}</td>
          <td>${fmtProb(round.profile.p_tosser)} /
              ${fmtProb(round.profile.p_gambler)} /
              ${fmtProb(round.profile.p_draw)}</td>
        </tr>`,
    )
    .join("");
  return `
    <table class="history">
      <thead>
        <tr><th>#</th><th>k</th><th>l</th><th>outcome</th><th>bet</th>
            <th>tosser / gambler / draw</th></tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>`;
}

// --- actions ----------------------------------------------------------------

function intOrNull(id: string): number | null {
  const raw = (document.getElementById(id) as HTMLInputElement | null)?.value ?? "";
  if (raw.trim() === "") {
    return null;
  }
  const value = Number(raw);
  return Number.isFinite(value) ? value : NaN;
}

async function createSession(): Promise<void> {
  const form = {
    n: intOrNull("setup-n") ?? NaN,
    bet: intOrNull("setup-bet") ?? NaN,
    tosserBankroll: intOrNull("setup-tosser") ?? NaN,
    gamblerBankroll: intOrNull("setup-gambler") ?? NaN,
    seed: intOrNull("setup-seed"),
  };
  const problem = validateSetup(form);
  if (problem !== null) {
    state.error = problem; // invalid form: no request leaves the client
    render();
    return;
  }
  await mutate(async () => {
    const body = {
      n: form.n,
      bet: form.bet,
      tosser_bankroll: form.tosserBankroll,
      gambler_bankroll: form.gamblerBankroll,
      ...(form.seed !== null ? { seed: form.seed } : {}),
    };
    state.session = await api.createSession(body);
    state.phase1Report = await api.phase1(form.n);
    state.selectedK = null;
    state.selectedL = null;
    state.showResult = false;
    state.lastOutcome = null;
  });
}

async function submitTosser(): Promise<void> {
  const session = state.session;
  if (!session || state.selectedK === null) {
    return;
  }
  const k = state.selectedK;
  await mutate(async () => {
    state.session = await api.tosserMove(session.id, k);
    state.phase2Report = await api.phase2(session.n, k);
    state.selectedL = null;
    state.hoverBar = null;
  });
}

async function submitGambler(): Promise<void> {
  const session = state.session;
  if (!session || state.selectedL === null) {
    return;
  }
  const l = state.selectedL;
  await mutate(async () => {
    state.session = await api.gamblerMove(session.id, l);
    state.hoverBar = null;
  });
}

async function measure(): Promise<void> {
  const session = state.session;
  if (!session) {
    return;
  }
  await mutate(async () => {
    const response = await api.measure(session.id);
    state.session = response;
    state.lastOutcome = response.outcome;
    state.showResult = true;
  });
}

async function newRound(): Promise<void> {
  const session = state.session;
  if (!session) {
    return;
  }
  const amount = intOrNull("next-bet") ?? session.bet;
  await mutate(async () => {
    if (amount !== session.bet) {
      state.session = await api.setBet(session.id, amount);
    }
    state.showResult = false;
    state.lastOutcome = null;
    state.selectedK = null;
    state.selectedL = null;
  });
}

function newSession(): void {
  state.session = null;
  state.phase1Report = null;
  state.phase2Report = null;
  state.selectedK = null;
  state.selectedL = null;
  state.showResult = false;
  state.lastOutcome = null;
  state.error = null;
  render();
}

// --- event wiring -------------------------------------------------------------

root.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const bar = target.closest<HTMLElement>(".bar");
  if (bar && state.session && !state.busy) {
    const index = Number(bar.dataset.index);
    if (state.session.phase === "awaiting_tosser") {
      state.selectedK = index;
    } else if (state.session.phase === "awaiting_gambler") {
      state.selectedL = index;
    }
    render();
    return;
  }
  const button = target.closest<HTMLElement>("[data-action]");
  if (!button || button.hasAttribute("disabled")) {
    return;
  }
  switch (button.dataset.action) {
    case "create":
      void createSession();
      break;
    case "submit-tosser":
      void submitTosser();
      break;
    case "submit-gambler":
      void submitGambler();
      break;
    case "measure":
      void measure();
      break;
    case "new-round":
      void newRound();
      break;
    case "new-session":
      newSession();
      break;
  }
});

root.addEventListener("mouseover", (event) => {
  const bar = (event.target as HTMLElement).closest<HTMLElement>(".bar");
  if (!bar) {
    return;
  }
  const index = Number(bar.dataset.index);
  if (index !== state.hoverBar) {
    state.hoverBar = index;
    render();
  }
});

render();
