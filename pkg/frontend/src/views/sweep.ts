import { sweepChart } from "../charts.js";
import { money, ratio } from "../format.js";
import { esc } from "../html.js";
import type { SweepResponse } from "../types.js";

export function renderSweep(response: SweepResponse): string {
  const parts: string[] = ['<div class="sweep-view">'];
  parts.push(`<div class="chart">${sweepChart(response)}</div>`);
  if (response.crossings.length > 0) {
    parts.push('<section class="crossings"><h3>crossings</h3><ul>');
    for (const c of response.crossings) {
      parts.push(
        `<li data-pair="${esc(c.scenario_a)}/${esc(c.scenario_b)}">` +
        `${esc(c.scenario_a)} and ${esc(c.scenario_b)} break even at ` +
        `${esc(response.variable)} = <span data-field="value">${ratio(c.value)}</span> ` +
        `(earnings <span data-field="earnings">${money(c.earnings)}</span>)</li>`,
      );
    }
    parts.push("</ul></section>");
  } else {
    parts.push('<p class="footnote" data-state="no-crossings">' +
      "No crossings inside the swept range: one scenario dominates throughout.</p>");
  }
  parts.push("</div>");
  return parts.join("");
}
