// Typed client for the periodica HTTP service. All mathematics lives on
// the server; this file only moves JSON around.

export interface SeedJson {
  n: number;
  B: number[][];
  C: number[][];
  G: number[][];
  F: unknown[];
  history: number[];
}

export interface SessionState {
  id: string;
  catalog: string | null;
  labels: string[];
  layout: [number, number][];
  seed: SeedJson;
  arrows: [number, number, number][];
  tropical_signs: number[];
  c_is_identity: boolean;
  period_detected: boolean;
  delta?: {
    k: number;
    c_column: number[];
    g_column: number[];
    tropical_sign: number;
  };
}

export interface PeriodVerdict {
  matrix_periodic: boolean;
  seed_periodic: boolean | null;
  method: string;
  conjectural: boolean;
  witness: unknown;
}

export interface PeriodCheckResponse {
  sequence: number[];
  nu: number[];
  tropical?: PeriodVerdict;
  symbolic?: PeriodVerdict;
  methods_agree?: boolean;
}

export interface DilogReport {
  sum_minus: number;
  sum_plus: number;
  n_plus: number;
  n_minus: number;
  weighted_sites: number;
  residual_minus: number;
  residual_plus: number;
  trial_spread: number;
  trials: number;
  ok: boolean;
  conditional: boolean;
}

export interface CatalogRow {
  name: string;
  n: number;
  description: string;
  has_seed_period: boolean;
}

async function expectOk(resp: Response): Promise<Response> {
  if (!resp.ok) {
    let detail = `${resp.status}`;
    try {
      const body = await resp.json();
      if (body && body.error) detail = body.error;
    } catch {
      /* keep the status code */
    }
    throw new Error(detail);
  }
  return resp;
}

export class ApiClient {
  constructor(readonly base: string) {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await expectOk(await fetch(this.base + path));
    return (await resp.json()) as T;
  }

  private async postRaw(path: string, body: unknown): Promise<Response> {
    return expectOk(
      await fetch(this.base + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body ?? {}),
      }),
    );
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    return (await (await this.postRaw(path, body)).json()) as T;
  }

  catalog(): Promise<CatalogRow[]> {
    return this.getJson("/catalog");
  }

  createSession(payload: { catalog?: string; matrix?: number[][] }): Promise<SessionState> {
    return this.postJson("/sessions", payload);
  }

  getSession(id: string): Promise<SessionState> {
    return this.getJson(`/sessions/${id}`);
  }

  mutate(id: string, k: number): Promise<SessionState> {
    return this.postJson(`/sessions/${id}/mutate`, { k });
  }

  undo(id: string): Promise<SessionState> {
    return this.postJson(`/sessions/${id}/undo`, {});
  }

  checkPeriod(id: string, nu?: number[]): Promise<PeriodCheckResponse> {
    return this.postJson(`/sessions/${id}/check-period`, nu ? { nu } : {});
  }

  nuCandidates(id: string): Promise<number[][]> {
    return this.getJson(`/sessions/${id}/nu-candidates`);
  }

  /** Raw response text is kept so panels can show exactly the server bytes. */
  async dilog(
    id: string,
    opts: { trials?: number; rng_seed?: number; tolerance?: number } = {},
  ): Promise<{ raw: string; report: DilogReport }> {
    const resp = await this.postRaw(`/sessions/${id}/dilog`, opts);
    const raw = await resp.text();
    return { raw, report: JSON.parse(raw) as DilogReport };
  }
}
