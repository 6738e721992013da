// Typed client for the review backend. All statistics shown in the UI come
// from these responses; the client never computes estimates itself.

export type Verdict = "correct" | "incorrect";

export type SectionName =
  | "tenor"
  | "tatbestand"
  | "entscheidungsgruende"
  | "rechtsmittelbelehrung";

export interface SamplingPlan {
  population_n: number;
  confidence: number;
  margin_e: number;
  assumed_p: number;
  z: number;
  n0: number;
  n_real: number;
  n: number;
}

export interface CaseSummary {
  id: number;
  verdict: Verdict | null;
}

export interface Progress {
  judged: number;
  total: number;
  correct: number;
}

export interface Interim {
  n_judged: number;
  p_hat: number;
  ci_low: number;
  ci_high: number;
  confidence: number;
}

export interface SessionInfo {
  plan: SamplingPlan;
  seed: number;
  progress: Progress;
  cases: CaseSummary[];
  interim: Interim | null;
}

export interface Reference {
  ref_type: "law" | "case";
  raw_text: string;
  parsed: { code: string | null; section: string | null; docket: string | null };
}

export interface CaseDetail {
  id: number;
  file_number: string;
  date: string | null;
  type: string | null;
  ecli: string | null;
  court: { name: string; state: string; city: string };
  sections: Record<SectionName, string>;
  references: Reference[];
  verdict: Verdict | null;
  note: string;
}

export interface JudgmentResult {
  id: number;
  verdict: Verdict;
  note: string;
  progress: Progress;
  interim: Interim | null;
}

export interface Report {
  n: number;
  k_correct: number;
  p_hat: number;
  ci_low: number;
  ci_high: number;
  confidence: number;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

/** Minimal surface the app needs; tests substitute fakes. */
export interface ReviewBackend {
  session(): Promise<SessionInfo>;
  caseDetail(id: number): Promise<CaseDetail>;
  submitJudgment(id: number, verdict: Verdict, note: string): Promise<JudgmentResult>;
  report(): Promise<Report>;
}

export class ReviewApi implements ReviewBackend {
  constructor(private readonly baseUrl: string = "") {}

  session(): Promise<SessionInfo> {
    return this.request("GET", "/api/session");
  }

  caseDetail(id: number): Promise<CaseDetail> {
    return this.request("GET", `/api/cases/${id}`);
  }

  submitJudgment(id: number, verdict: Verdict, note: string): Promise<JudgmentResult> {
    return this.request("POST", `/api/cases/${id}/judgment`, { verdict, note });
  }

  report(): Promise<Report> {
    return this.request("GET", "/api/report");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(`backend unreachable: ${String(err)}`, 0);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const payload = await response.json();
        detail = typeof payload.detail === "string" ? payload.detail : JSON.stringify(payload.detail);
      } catch {
        // keep the status text
      }
      throw new ApiError(`${method} ${path}: ${detail}`, response.status);
    }
    return (await response.json()) as T;
  }
}
