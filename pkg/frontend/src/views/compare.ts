import { money, ratio, signedMoney, signedRatio } from "../format.js";
import { esc } from "../html.js";
import type { CompareResponse } from "../types.js";

// Earnings and RoI can disagree about which scenario wins, so each gets its
// own badge; the renderer only orders numbers the service already computed.

function badgeWinners(response: CompareResponse): { earnings: string | null; roi: string | null } {
  let earningsName: string | null = null;
  let roiName: string | null = null;
  let bestEarnings = -Infinity;
  let bestRoi = -Infinity;
  let roiTie = false;
  let earningsTie = false;
  for (const [name, result] of Object.entries(response.results)) {
    if (result.earnings > bestEarnings) {
      bestEarnings = result.earnings;
      earningsName = name;
      earningsTie = false;
    } else if (result.earnings === bestEarnings) {
      earningsTie = true;
    }
    if (result.roi !== null) {
      if (result.roi > bestRoi) {
        bestRoi = result.roi;
        roiName = name;
        roiTie = false;
      } else if (result.roi === bestRoi) {
        roiTie = true;
      }
    }
  }
  return {
    earnings: earningsTie ? null : earningsName,
    roi: roiTie ? null : roiName,
  };
}

export function renderCompare(response: CompareResponse): string {
  const winners = badgeWinners(response);
  const parts: string[] = ['<div class="compare-view">'];
  parts.push('<div class="card-row">');
  for (const [name, result] of Object.entries(response.results)) {
    const badges: string[] = [];
    if (winners.earnings === name) {
      badges.push('<span class="badge badge-earnings" data-badge="higher-earnings">higher earnings</span>');
    }
    if (winners.roi === name) {
      badges.push('<span class="badge badge-roi" data-badge="higher-roi">higher RoI</span>');
    }
    parts.push(`<section class="scenario-card" data-scenario="${esc(name)}">`);
    parts.push(`<h3>${esc(name)}${badges.join("")}</h3>`);
    parts.push('<dl class="figures">');
    parts.push(`<dt>expected earnings</dt><dd data-field="earnings">${money(result.earnings)}</dd>`);
    parts.push(`<dt>RoI</dt><dd data-field="roi">${ratio(result.roi)}</dd>`);
    parts.push(`<dt>transaction cost</dt><dd data-field="cost">${money(result.transaction_cost)}</dd>`);
    parts.push("</dl>");
    if (result.contributions.length > 0) {
      parts.push('<table class="contributions"><thead><tr>' +
        "<th>outcome</th><th>probability</th><th>contribution</th></tr></thead><tbody>");
      for (const entry of result.contributions) {
        parts.push(
          `<tr><td>${esc(entry.outcome)}</td>` +
          `<td>${ratio(entry.probability)}</td>` +
          `<td>${money(entry.contribution)}</td></tr>`,
        );
      }
      parts.push("</tbody></table>");
    }
    parts.push("</section>");
  }
  parts.push("</div>");
  if (response.deltas.length > 0) {
    parts.push('<section class="deltas"><h3>pairwise differences</h3><ul>');
    for (const d of response.deltas) {
      parts.push(
        `<li data-pair="${esc(d.scenario_a)}/${esc(d.scenario_b)}">` +
        `${esc(d.scenario_a)} vs ${esc(d.scenario_b)}: ` +
        `earnings <span data-field="earnings-delta">${signedMoney(d.earnings_delta)}</span>, ` +
        `RoI <span data-field="roi-delta">${signedRatio(d.roi_delta)}</span></li>`,
      );
    }
    parts.push("</ul></section>");
  }
  parts.push("</div>");
  return parts.join("");
}
