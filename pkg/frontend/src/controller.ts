// The click surface. DOM handlers and the headless replay tests both go
// through these functions, so a test drives exactly what a click does.

import { ApiClient } from "./api.js";
import {
  applySession,
  fromSession,
  withDilog,
  withNote,
  withNuCandidates,
  withVerdict,
  type ViewState,
} from "./state.js";

export class Controller {
  state: ViewState | null = null;

  constructor(
    readonly api: ApiClient,
    readonly onChange: (s: ViewState) => void = () => {},
  ) {}

  private set(state: ViewState): ViewState {
    this.state = state;
    this.onChange(state);
    return state;
  }

  async openCatalogSession(name: string): Promise<ViewState> {
    return this.set(fromSession(await this.api.createSession({ catalog: name })));
  }

  async openMatrixSession(matrix: number[][]): Promise<ViewState> {
    return this.set(fromSession(await this.api.createSession({ matrix })));
  }

  /** Vertex click: 1-based index, everything recomputed server-side. */
  async clickVertex(k: number): Promise<ViewState> {
    if (!this.state) throw new Error("no session");
    try {
      const resp = await this.api.mutate(this.state.sessionId, k);
      return this.set(applySession(this.state, resp));
    } catch (err) {
      // service unreachable or rejected: keep the rendered state
      return this.set(withNote(this.state, `mutation failed: ${String(err)}`));
    }
  }

  async clickUndo(): Promise<ViewState> {
    if (!this.state) throw new Error("no session");
    const resp = await this.api.undo(this.state.sessionId);
    return this.set(applySession(this.state, resp));
  }

  async runPeriodCheck(nu?: number[]): Promise<ViewState> {
    if (!this.state) throw new Error("no session");
    const verdict = await this.api.checkPeriod(this.state.sessionId, nu);
    return this.set(withVerdict(this.state, verdict));
  }

  async loadNuCandidates(): Promise<ViewState> {
    if (!this.state) throw new Error("no session");
    const nus = await this.api.nuCandidates(this.state.sessionId);
    return this.set(withNuCandidates(this.state, nus));
  }

  async runDilogPanel(opts: { trials?: number; rng_seed?: number } = {}): Promise<ViewState> {
    if (!this.state) throw new Error("no session");
    if (!this.state.dilogEnabled) {
      return this.set(
        withNote(this.state, "dilogarithm panel needs a verified seed period"),
      );
    }
    const payload = await this.api.dilog(this.state.sessionId, opts);
    return this.set(withDilog(this.state, payload));
  }
}
