import { ratio } from "../format.js";
import { esc } from "../html.js";
import type { BreakevenResponse } from "../types.js";

const SOLVE_FOR_LABELS: Record<string, string> = {
  probability: "candidate success probability",
  tokens: "tokens per transaction",
  unit_price: "candidate input price per million tokens",
};

/** The frontier needs two scenarios to compare; fewer gets a disabled hint. */
export function renderBreakevenUnavailable(scenarioCount: number): string {
  return (
    '<div class="empty-state" data-state="unavailable">' +
    "<p>Break-even analysis needs a reference and a candidate scenario; " +
    `the workspace holds ${scenarioCount}.</p>` +
    "<p>Add a second scenario to enable this view.</p></div>"
  );
}

/** Engine reported there is no crossing; explain rather than show a blank. */
export function renderBreakevenNoSolution(message: string): string {
  return (
    '<div class="empty-state" data-state="no-solution">' +
    "<p>No break-even point exists for these scenarios.</p>" +
    `<p class="engine-message">${esc(message)}</p>` +
    "<p>The curves never meet inside the searchable range; change pricing, " +
    "probabilities, or the variable being solved for.</p></div>"
  );
}

export function renderBreakeven(response: BreakevenResponse): string {
  const label = SOLVE_FOR_LABELS[response.solve_for] ?? response.solve_for;
  return (
    '<div class="breakeven-view">' +
    `<p class="headline">Holding everything else fixed, ` +
    `<strong>${esc(response.candidate)}</strong> matches ` +
    `<strong>${esc(response.reference)}</strong> when the ` +
    `${esc(label)} reaches</p>` +
    `<p class="breakeven-value" data-field="value">${ratio(response.value)}</p>` +
    `<p class="footnote">Values past this point favor ${esc(response.candidate)}.</p>` +
    "</div>"
  );
}
