// DOM layer: renders the queue, the four section panels, progress and the
// running estimate; wires buttons and keyboard shortcuts to the controller.

import { ReviewApi, type CaseDetail, type CaseSummary, type Progress, type Report } from "./api.js";
import type { EstimateDisplay } from "./format.js";
import { formatPercent } from "./format.js";
import { keyToCommand, ReviewApp, type ReviewView } from "./state.js";

const SECTION_LABELS: [keyof CaseDetail["sections"], string][] = [
  ["tenor", "Tenor"],
  ["tatbestand", "Tatbestand"],
  ["entscheidungsgruende", "Entscheidungsgründe"],
  ["rechtsmittelbelehrung", "Rechtsmittelbelehrung"],
];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setText(id: string, text: string): void {
  el(id).textContent = text;
}

class DomView implements ReviewView {
  constructor(private readonly app: () => ReviewApp) {}

  renderQueue(cases: CaseSummary[], activeId: number | null): void {
    const list = el<HTMLUListElement>("queue");
    list.innerHTML = "";
    for (const entry of cases) {
      const item = document.createElement("li");
      item.className = "queue-item";
      if (entry.verdict) {
        item.classList.add(entry.verdict);
      }
      if (entry.id === activeId) {
        item.classList.add("active");
      }
      const dot = document.createElement("span");
      dot.className = "dot";
      item.appendChild(dot);
      item.appendChild(document.createTextNode(String(entry.id)));
      item.addEventListener("click", () => void this.app().open(entry.id));
      list.appendChild(item);
    }
  }

  renderProgress(progress: Progress, estimate: EstimateDisplay): void {
    setText("progress-label", `${progress.judged} / ${progress.total} judged`);
    const bar = el<HTMLDivElement>("progress-fill");
    const share = progress.total ? (100 * progress.judged) / progress.total : 0;
    bar.style.width = `${share}%`;
    const estimateNode = el<HTMLDivElement>("estimate");
    estimateNode.className = `estimate ${estimate.kind}`;
    switch (estimate.kind) {
      case "none":
        estimateNode.textContent = "no judgments yet";
        break;
      case "withheld":
        estimateNode.textContent = estimate.label;
        break;
      case "interim":
        estimateNode.textContent = `${estimate.text} — ${estimate.label}`;
        break;
      case "final":
        estimateNode.textContent = estimate.text;
        break;
    }
  }

  renderCase(detail: CaseDetail): void {
    el("report-view").hidden = true;
    el("case-view").hidden = false;
    setText("case-title", `#${detail.id} · ${detail.file_number || "no file number"}`);
    setText(
      "case-meta",
      [detail.court.name, detail.court.city, detail.court.state, detail.date ?? "no date", detail.type ?? "no type"]
        .join(" · "),
    );
    const panels = el<HTMLDivElement>("sections");
    panels.innerHTML = "";
    for (const [name, label] of SECTION_LABELS) {
      const panel = document.createElement("section");
      panel.className = `panel panel-${name}`;
      const heading = document.createElement("h2");
      heading.textContent = label;
      panel.appendChild(heading);
      const body = document.createElement("pre");
      const text = detail.sections[name];
      if (text === "") {
        body.className = "absent";
        body.textContent = "— absent —";
      } else {
        body.textContent = text; // verbatim, no client-side re-segmentation
      }
      panel.appendChild(body);
      panels.appendChild(panel);
    }
    const refs = el<HTMLUListElement>("references");
    refs.innerHTML = "";
    for (const ref of detail.references) {
      const item = document.createElement("li");
      item.textContent = `[${ref.ref_type}] ${ref.raw_text}`;
      refs.appendChild(item);
    }
    el("no-references").hidden = detail.references.length > 0;
    setText("verdict-state", detail.verdict ? `current verdict: ${detail.verdict}` : "not judged yet");
    el<HTMLTextAreaElement>("note").value = detail.note;
  }

  renderReport(report: Report): void {
    el("case-view").hidden = true;
    el("report-view").hidden = false;
    const level = Math.round(report.confidence * 100);
    setText("report-summary",
      `${report.k_correct} of ${report.n} sampled decisions segmented correctly: ` +
      `${formatPercent(report.p_hat, 2)} (${level}% CI ${formatPercent(report.ci_low, 2)} – ${formatPercent(report.ci_high, 2)})`);
  }

  showError(message: string, retry: (() => void) | null): void {
    const banner = el<HTMLDivElement>("error-banner");
    banner.hidden = false;
    setText("error-message", message);
    const button = el<HTMLButtonElement>("error-retry");
    button.hidden = retry === null;
    button.onclick = retry;
  }

  clearError(): void {
    el("error-banner").hidden = true;
  }
}

function wire(): void {
  const api = new ReviewApi("");
  let app: ReviewApp;
  const view = new DomView(() => app);
  app = new ReviewApp(api, view);

  el<HTMLButtonElement>("btn-correct").addEventListener("click", () => {
    void app.judge("correct", el<HTMLTextAreaElement>("note").value);
  });
  el<HTMLButtonElement>("btn-incorrect").addEventListener("click", () => {
    void app.judge("incorrect", el<HTMLTextAreaElement>("note").value);
  });
  el<HTMLButtonElement>("btn-next").addEventListener("click", () => void app.move(1));
  el<HTMLButtonElement>("btn-prev").addEventListener("click", () => void app.move(-1));

  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLTextAreaElement || event.target instanceof HTMLInputElement) {
      return; // don't steal keys from the note field
    }
    const command = keyToCommand(event.key);
    if (command) {
      event.preventDefault();
      void app.handleCommand(command);
    }
  });

  void app.start();
}

document.addEventListener("DOMContentLoaded", wire);
