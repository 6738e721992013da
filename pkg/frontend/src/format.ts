// Display policy for the running estimate and shared number formatting.

import type { Interim, Progress } from "./api.js";

/** Below this many judgments the numeric interval is withheld. */
export const INTERIM_MIN_JUDGMENTS = 30;

export type EstimateDisplay =
  | { kind: "none" }
  | { kind: "withheld"; label: string }
  | { kind: "interim"; label: string; text: string }
  | { kind: "final"; text: string };

export function formatPercent(fraction: number, digits = 1): string {
  return `${(100 * fraction).toFixed(digits)}%`;
}

export function formatInterval(interim: Interim): string {
  const level = Math.round(interim.confidence * 100);
  const low = formatPercent(interim.ci_low);
  const high = formatPercent(interim.ci_high);
  return `${formatPercent(interim.p_hat)} correct (${level}% CI ${low} – ${high})`;
}

/**
 * What the estimate area should show for the current progress.
 *
 * The normal approximation is unreliable at tiny n, so below
 * INTERIM_MIN_JUDGMENTS the interval stays hidden behind an "interim"
 * notice; until the session completes, shown intervals carry the interim
 * label too.
 */
export function estimateDisplay(progress: Progress, interim: Interim | null): EstimateDisplay {
  if (progress.judged === 0 || interim === null) {
    return { kind: "none" };
  }
  if (progress.judged < INTERIM_MIN_JUDGMENTS && progress.judged < progress.total) {
    return {
      kind: "withheld",
      label: `interim — interval withheld below ${INTERIM_MIN_JUDGMENTS} judgments (${progress.judged} so far)`,
    };
  }
  if (progress.judged < progress.total) {
    return { kind: "interim", label: "interim", text: formatInterval(interim) };
  }
  return { kind: "final", text: formatInterval(interim) };
}
