import { gradientTornado, sobolBars, sobolHeatmap } from "../charts.js";
import { percent, ratio } from "../format.js";
import { esc } from "../html.js";
import type { JobRecord, LocalSensitivityResponse } from "../types.js";

export function renderLocalSensitivity(report: LocalSensitivityResponse): string {
  return (
    '<section class="local-sens">' +
    `<h3>local gradient (${esc(report.model)}, ${esc(report.target)})</h3>` +
    `<div class="chart">${gradientTornado(report)}</div>` +
    "</section>"
  );
}

/**
 * A variance decomposition run is a job: render whichever stage the record
 * is in. Failed jobs surface the engine's message with a retry control.
 */
export function renderSobolJob(record: JobRecord): string {
  if (record.state === "failed") {
    return (
      '<div class="job-failed" data-state="failed">' +
      "<p>The decomposition run failed.</p>" +
      `<p class="engine-message">${esc(record.error ?? "no error detail")}</p>` +
      '<button type="button" data-action="retry-sobol">retry</button></div>'
    );
  }
  if (record.state !== "done" || !record.result) {
    const stage = record.state === "queued" ? "queued" : "running";
    const pct = percent(record.progress);
    return (
      `<div class="job-progress" data-state="${stage}">` +
      `<p>Decomposition ${stage}: <span data-field="progress">${pct}</span></p>` +
      '<div class="progress-track">' +
      `<div class="progress-fill" style="width: ${pct}"></div></div></div>`
    );
  }
  const result = record.result;
  return (
    '<div class="sobol-result" data-state="done">' +
    "<h3>variance decomposition</h3>" +
    `<div class="chart">${sobolBars(result)}</div>` +
    (result.second_order
      ? `<h3>pairwise interactions</h3><div class="chart">${sobolHeatmap(result)}</div>`
      : "") +
    `<p class="footnote">${result.evaluations_used.toLocaleString("en-US")} model ` +
    `evaluations; estimator noise bound ${ratio(result.noise_bound)}.</p>` +
    "</div>"
  );
}
