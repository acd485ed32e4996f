// Headless click-replay against the real Python service: the test drives
// the same controller functions the DOM handlers call, then diffs panel
// bytes against the CLI.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Controller } from "../src/controller.js";

const PORT = 8899 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;
let dataDir: string;

async function waitForService(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/catalog`);
      if (resp.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "periodica-ui-test-"));
  server = spawn(
    "python3",
    ["-m", "periodica.cli", "serve", "--port", String(PORT), "--data-dir", dataDir],
    { stdio: "ignore" },
  );
  await waitForService();
}, 30000);

afterAll(() => {
  server?.kill();
  rmSync(dataDir, { recursive: true, force: true });
});

describe("A2 demo replay", () => {
  it("lights the period banner at step 10 and byte-matches the CLI dilog report", async () => {
    const ctl = new Controller(new ApiClient(BASE));
    let state = await ctl.openCatalogSession("A2");
    expect(state.labels).toEqual(["1", "2"]);
    expect(state.periodBanner).toBe(false);

    for (let step = 0; step < 10; step++) {
      state = await ctl.clickVertex((step % 2) + 1);
      expect(state.periodBanner).toBe(step === 9);
    }
    expect(state.history).toEqual([1, 2, 1, 2, 1, 2, 1, 2, 1, 2]);
    expect(state.signs).toEqual([1, 1]);
    expect(state.dilogEnabled).toBe(true);

    state = await ctl.runDilogPanel({ trials: 5, rng_seed: 123 });
    expect(state.dilog).not.toBeNull();
    expect(state.dilog!.report.ok).toBe(true);
    expect(state.dilog!.report.n_plus + state.dilog!.report.n_minus).toBe(10);

    const cliOut = execFileSync(
      "python3",
      [
        "-m",
        "periodica.cli",
        "verify-dilog",
        "--catalog",
        "A2",
        "--sequence",
        "(1,2)^5",
        "--trials",
        "5",
        "--rng-seed",
        "123",
      ],
      { encoding: "utf8" },
    ).trim();
    expect(state.dilog!.raw).toBe(cliOut);
  }, 30000);

  it("disables the dilog panel when the history is not a seed period", async () => {
    const ctl = new Controller(new ApiClient(BASE));
    let state = await ctl.openCatalogSession("A2");
    state = await ctl.clickVertex(1);
    state = await ctl.runPeriodCheck();
    expect(state.verdict!.tropical!.seed_periodic).toBe(false);
    expect(state.dilogEnabled).toBe(false);
    state = await ctl.runDilogPanel();
    expect(state.dilog).toBeNull();
    expect(state.note).toContain("seed period");
  }, 20000);
});

describe("undo", () => {
  it("restores the exact prior rendered state after any click", async () => {
    const ctl = new Controller(new ApiClient(BASE));
    let state = await ctl.openCatalogSession("A3");
    for (const k of [2, 1, 3]) {
      const before = state;
      state = await ctl.clickVertex(k);
      expect(state.history.length).toBe(before.history.length + 1);
      state = await ctl.clickUndo();
      expect(state).toEqual(before);
    }
  }, 20000);

  it("double click at the same vertex restores the previous quiver rendering", async () => {
    const ctl = new Controller(new ApiClient(BASE));
    const initial = await ctl.openCatalogSession("A4-level4");
    let state = await ctl.clickVertex(5);
    state = await ctl.clickVertex(5);
    expect(state.arrows).toEqual(initial.arrows);
    expect(state.signs).toEqual(initial.signs);
    expect(state.history).toEqual([5, 5]);
  }, 20000);
});

describe("relabeling candidates", () => {
  it("exposes the server-enumerated permutations for the candidate builder", async () => {
    const ctl = new Controller(new ApiClient(BASE));
    await ctl.openCatalogSession("A2");
    await ctl.clickVertex(1);
    let state = await ctl.loadNuCandidates();
    expect(state.candidateNus).toEqual([[2, 1]]);

    // checking against the chosen relabeling: matrix period, not a seed period
    state = await ctl.runPeriodCheck([2, 1]);
    expect(state.verdict!.tropical!.matrix_periodic).toBe(true);
    expect(state.verdict!.tropical!.seed_periodic).toBe(false);
  }, 20000);
});
