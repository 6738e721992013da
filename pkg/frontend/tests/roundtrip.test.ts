// Live round-trip against the Python backend: a scripted review session
// judges every case of a 20-case sample over HTTP, then the report the API
// returns must equal `verify report` run on the session file.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ReviewApi, type Report } from "../src/api.js";
import { ReviewApp, type ReviewView } from "../src/state.js";

const REPO_ROOT = resolve(__dirname, "..", "..");
const PYTHON = process.env.PYTHON ?? "python3";
const PORT = 18_000 + Math.floor(Math.random() * 10_000);
const BASE = `http://127.0.0.1:${PORT}`;

let workDir: string;
let sessionFile: string;
let server: ChildProcess | null = null;

function cli(...args: string[]): string {
  return execFileSync(PYTHON, ["-m", "courtseg.cli", ...args], {
    cwd: REPO_ROOT,
    encoding: "utf-8",
  });
}

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/api/session`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error(`backend did not come up on ${BASE}`);
}

/** View stub: the scripted session only needs the calls, not a DOM. */
class NullView implements ReviewView {
  renderQueue(): void {}
  renderProgress(): void {}
  renderCase(): void {}
  renderReport(): void {}
  showError(message: string): void {
    throw new Error(`unexpected UI error: ${message}`);
  }
  clearError(): void {}
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "review-roundtrip-"));
  const segmented = join(workDir, "segmented.jsonl");
  cli(
    "segment",
    "--input", join(REPO_ROOT, "tests", "data", "mini_corpus_raw.jsonl"),
    "--output", segmented,
    "--states", join(REPO_ROOT, "tests", "data", "states.json"),
    "--cities", join(REPO_ROOT, "tests", "data", "cities.json"),
    "--jobs", "1",
  );
  // a 20-record corpus makes the finite-population plan a census of 20 cases
  const corpus20 = join(workDir, "corpus20.jsonl");
  const lines = readFileSync(segmented, "utf-8").split("\n").filter(Boolean);
  writeFileSync(corpus20, lines.slice(0, 20).join("\n") + "\n", "utf-8");
  sessionFile = join(workDir, "session.json");
  cli("verify", "sample", "--corpus", corpus20, "--session", sessionFile, "--seed", "7");

  server = spawn(
    PYTHON,
    ["-m", "courtseg.cli", "verify", "serve",
     "--session", sessionFile, "--corpus", corpus20, "--port", String(PORT)],
    { cwd: REPO_ROOT, stdio: "ignore" },
  );
  await waitForServer();
}, 60_000);

afterAll(() => {
  server?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

describe("scripted review session", () => {
  it("judges all 20 cases and matches the CLI report field for field", async () => {
    const api = new ReviewApi(BASE);
    const app = new ReviewApp(api, new NullView());
    await app.start();
    expect(app.progress).toEqual({ judged: 0, total: 20, correct: 0 });
    expect(app.estimate().kind).toBe("none");

    let judged = 0;
    while (!app.complete) {
      expect(app.current).not.toBeNull();
      // two deliberate "incorrect" verdicts, the rest correct
      const verdict = judged < 2 ? "incorrect" : "correct";
      const accepted = await app.judge(verdict, `scripted #${judged}`);
      expect(accepted).toBe(true);
      judged++;
      if (!app.complete) {
        // the whole session stays below 30 judgments: interval withheld,
        // with an explicit interim label
        const display = app.estimate();
        expect(display.kind).toBe("withheld");
        if (display.kind === "withheld") {
          expect(display.label).toContain("interim");
        }
      }
    }
    expect(judged).toBe(20);
    expect(app.estimate().kind).toBe("final");
    expect(app.report).not.toBeNull();

    const uiReport = app.report as Report;
    const cliReport = JSON.parse(
      cli("verify", "report", "--session", sessionFile, "--json"),
    ) as Report;
    expect(uiReport).toEqual(cliReport);
    expect(cliReport.n).toBe(20);
    expect(cliReport.k_correct).toBe(18);
  }, 60_000);

  it("serves the built UI shell at / when assets exist", async () => {
    const response = await fetch(`${BASE}/api/session`);
    expect(response.ok).toBe(true);
    const payload = await response.json();
    expect(payload.progress.total).toBe(20);
  });
});
