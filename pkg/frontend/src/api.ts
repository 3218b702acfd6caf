// Thin typed wrappers over the service REST API. Every non-2xx response
// carries {code, message}; it surfaces as ApiError so screens can render
// the message inline and react to stale-phase conflicts.

import type {
  ApiErrorBody,
  DualityReportView,
  MeasureResponse,
  SessionView,
  SweepReportView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const error = (body ?? {}) as Partial<ApiErrorBody>;
    throw new ApiError(
      response.status,
      error.code ?? "unknown",
      error.message ?? `request failed with status ${response.status}`,
    );
  }
  return body as T;
}

export interface CreateSessionBody {
  n: number;
  bet: number;
  tosser_bankroll: number;
  gambler_bankroll: number;
  seed?: number;
}

export const api = {
  createSession(body: CreateSessionBody): Promise<SessionView> {
    return request("/api/sessions", {
      method: "POST",
      body: JSON.stringify(body),
    });
  },

  getSession(id: string): Promise<SessionView> {
    return request(`/api/sessions/${id}`);
  },

  tosserMove(id: string, k: number): Promise<SessionView> {
    return request(`/api/sessions/${id}/tosser-move`, {
      method: "POST",
      body: JSON.stringify({ k }),
    });
  },

  gamblerMove(id: string, l: number): Promise<SessionView> {
    return request(`/api/sessions/${id}/gambler-move`, {
      method: "POST",
      body: JSON.stringify({ l }),
    });
  },

  measure(id: string): Promise<MeasureResponse> {
    return request(`/api/sessions/${id}/measure`, { method: "POST" });
  },

  setBet(id: string, amount: number): Promise<SessionView> {
    return request(`/api/sessions/${id}/bet`, {
      method: "POST",
      body: JSON.stringify({ amount }),
    });
  },

  phase1(n: number): Promise<SweepReportView> {
    return request(`/api/analysis/phase1?n=${n}`);
  },

  phase2(n: number, k: number): Promise<SweepReportView> {
    return request(`/api/analysis/phase2?n=${n}&k=${k}`);
  },

  duality(n: number): Promise<DualityReportView> {
    return request(`/api/verify/duality?n=${n}`);
  },
};
