// ViewState is a pure projection of the server session plus panel data.
// Reducers copy server responses into the view; nothing is computed here
// beyond bookkeeping of which panels hold which server payloads.

import type { DilogReport, PeriodCheckResponse, SessionState } from "./api.js";

export interface ViewState {
  sessionId: string;
  catalog: string | null;
  labels: string[];
  layout: [number, number][];
  arrows: [number, number, number][];
  signs: number[];
  gColumns: number[][];
  history: number[];
  periodBanner: boolean;
  candidateNus: number[][] | null;
  verdict: PeriodCheckResponse | null;
  dilog: { raw: string; report: DilogReport } | null;
  dilogEnabled: boolean;
  note: string | null;
}

export function fromSession(resp: SessionState): ViewState {
  return {
    sessionId: resp.id,
    catalog: resp.catalog,
    labels: resp.labels,
    layout: resp.layout,
    arrows: resp.arrows,
    signs: resp.tropical_signs,
    gColumns: resp.seed.G,
    history: resp.seed.history,
    periodBanner: resp.period_detected,
    candidateNus: null,
    verdict: null,
    dilog: null,
    dilogEnabled: resp.period_detected,
    note: null,
  };
}

/** Any session update invalidates stale panels but keeps identity fields. */
export function applySession(state: ViewState, resp: SessionState): ViewState {
  return {
    ...fromSession(resp),
    sessionId: state.sessionId,
    catalog: state.catalog,
  };
}

export function seedPeriodic(resp: PeriodCheckResponse): boolean {
  const verdict = resp.symbolic ?? resp.tropical;
  return verdict?.seed_periodic === true;
}

export function withVerdict(state: ViewState, verdict: PeriodCheckResponse): ViewState {
  const periodic = seedPeriodic(verdict);
  return {
    ...state,
    verdict,
    dilogEnabled: periodic,
    note: periodic ? null : "history is not a seed period; dilogarithm panel disabled",
  };
}

export function withNuCandidates(state: ViewState, nus: number[][]): ViewState {
  return { ...state, candidateNus: nus };
}

export function withDilog(
  state: ViewState,
  payload: { raw: string; report: DilogReport },
): ViewState {
  return { ...state, dilog: payload };
}

export function withNote(state: ViewState, note: string): ViewState {
  return { ...state, note };
}
