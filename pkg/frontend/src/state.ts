// Session controller: queue, case loading, optimistic judgments with
// rollback, and report retrieval. Framework-free so tests can drive a
// scripted review session against a fake or a live backend.

import type {
  CaseDetail,
  CaseSummary,
  Interim,
  Progress,
  Report,
  ReviewBackend,
  SamplingPlan,
  Verdict,
} from "./api.js";
import { estimateDisplay, type EstimateDisplay } from "./format.js";

/** Rendering callbacks; the DOM layer implements these, tests stub them. */
export interface ReviewView {
  renderQueue(cases: CaseSummary[], activeId: number | null): void;
  renderProgress(progress: Progress, estimate: EstimateDisplay): void;
  renderCase(detail: CaseDetail): void;
  renderReport(report: Report): void;
  showError(message: string, retry: (() => void) | null): void;
  clearError(): void;
}

export type Command = "correct" | "incorrect" | "next" | "previous";

/** Keyboard shortcuts for the review loop. */
export function keyToCommand(key: string): Command | null {
  switch (key) {
    case "c":
    case "1":
      return "correct";
    case "i":
    case "x":
    case "2":
      return "incorrect";
    case "n":
    case "ArrowRight":
      return "next";
    case "p":
    case "ArrowLeft":
      return "previous";
    default:
      return null;
  }
}

export class ReviewApp {
  plan: SamplingPlan | null = null;
  cases: CaseSummary[] = [];
  progress: Progress = { judged: 0, total: 0, correct: 0 };
  interim: Interim | null = null;
  current: CaseDetail | null = null;
  report: Report | null = null;
  private submitting = false;

  constructor(
    private readonly api: ReviewBackend,
    private readonly view: ReviewView,
  ) {}

  get complete(): boolean {
    return this.progress.total > 0 && this.progress.judged >= this.progress.total;
  }

  estimate(): EstimateDisplay {
    return estimateDisplay(this.progress, this.interim);
  }

  /** Load the session; on failure surface a blocking error with retry. */
  async start(): Promise<void> {
    let info;
    try {
      info = await this.api.session();
    } catch (err) {
      this.view.showError(String(err), () => void this.start());
      return;
    }
    this.view.clearError();
    this.plan = info.plan;
    this.cases = info.cases;
    this.progress = info.progress;
    this.interim = info.interim;
    this.view.renderQueue(this.cases, null);
    this.view.renderProgress(this.progress, this.estimate());
    if (this.complete) {
      await this.openReport();
      return;
    }
    const next = this.nextUnjudged();
    if (next !== null) {
      await this.open(next);
    }
  }

  /** First unjudged case after `afterId` (queue order, wrapping). */
  nextUnjudged(afterId: number | null = null): number | null {
    if (this.cases.length === 0) {
      return null;
    }
    const start =
      afterId === null ? 0 : this.cases.findIndex((c) => c.id === afterId) + 1;
    for (let offset = 0; offset < this.cases.length; offset++) {
      const entry = this.cases[(start + offset) % this.cases.length];
      if (entry && entry.verdict === null) {
        return entry.id;
      }
    }
    return null;
  }

  async open(id: number): Promise<void> {
    try {
      this.current = await this.api.caseDetail(id);
    } catch (err) {
      this.view.showError(String(err), () => void this.open(id));
      return;
    }
    this.view.clearError();
    this.view.renderQueue(this.cases, id);
    this.view.renderCase(this.current);
  }

  /** Step to the neighbouring case in queue order (judged or not). */
  async move(direction: 1 | -1): Promise<void> {
    if (this.cases.length === 0) {
      return;
    }
    const currentIndex = this.current
      ? this.cases.findIndex((c) => c.id === this.current!.id)
      : -1;
    const nextIndex =
      (currentIndex + direction + this.cases.length) % this.cases.length;
    await this.open(this.cases[nextIndex]!.id);
  }

  /**
   * Judge the open case. The queue and progress update optimistically and
   * are reconciled with the server response; a rejected submission rolls
   * everything back and surfaces the server message with a retry.
   * At most one submission is in flight at a time.
   */
  async judge(verdict: Verdict, note = ""): Promise<boolean> {
    if (this.current === null || this.submitting) {
      return false;
    }
    const target = this.current;
    const entry = this.cases.find((c) => c.id === target.id);
    if (!entry) {
      return false;
    }
    const snapshot = {
      verdict: entry.verdict,
      progress: this.progress,
      interim: this.interim,
      detailVerdict: target.verdict,
      detailNote: target.note,
    };
    // optimistic: mark the case and bump the counters, stats stay server-side
    entry.verdict = verdict;
    this.progress = {
      judged: this.progress.judged + (snapshot.verdict === null ? 1 : 0),
      total: this.progress.total,
      correct:
        this.progress.correct +
        (verdict === "correct" ? 1 : 0) -
        (snapshot.verdict === "correct" ? 1 : 0),
    };
    target.verdict = verdict;
    target.note = note;
    this.view.renderQueue(this.cases, target.id);
    this.view.renderProgress(this.progress, this.estimate());

    this.submitting = true;
    try {
      const result = await this.api.submitJudgment(target.id, verdict, note);
      this.progress = result.progress;
      this.interim = result.interim;
    } catch (err) {
      entry.verdict = snapshot.verdict;
      this.progress = snapshot.progress;
      this.interim = snapshot.interim;
      target.verdict = snapshot.detailVerdict;
      target.note = snapshot.detailNote;
      this.view.renderQueue(this.cases, target.id);
      this.view.renderProgress(this.progress, this.estimate());
      this.view.showError(String(err), () => void this.judge(verdict, note));
      return false;
    } finally {
      this.submitting = false;
    }
    this.view.clearError();
    this.view.renderProgress(this.progress, this.estimate());
    if (this.complete) {
      await this.openReport();
      return true;
    }
    const next = this.nextUnjudged(target.id);
    if (next !== null) {
      await this.open(next);
    }
    return true;
  }

  /** Fetch the final report (the backend rejects incomplete sessions). */
  async openReport(): Promise<void> {
    try {
      this.report = await this.api.report();
    } catch (err) {
      this.view.showError(String(err), () => void this.openReport());
      return;
    }
    this.view.clearError();
    this.view.renderReport(this.report);
  }

  async handleCommand(command: Command): Promise<void> {
    switch (command) {
      case "correct":
      case "incorrect":
        await this.judge(command);
        break;
      case "next":
        await this.move(1);
        break;
      case "previous":
        await this.move(-1);
        break;
    }
  }
}
