import type {
  BreakevenRequest,
  ScenarioBody,
  SliderBinding,
  SobolRequest,
  SweepRequest,
} from "./types.js";

// Two single-outcome defaults: a high-accuracy expensive model against a
// cheaper, less reliable one. Their earnings curves cross inside the default
// sweep window, so every view has something to show before any editing.

export function defaultScenarios(): ScenarioBody[] {
  return [
    {
      name: "llm-1",
      type: "single",
      gain: 10,
      loss: 1,
      p_success: 0.95,
      pricing: { input: 10 },
      transaction: { input_tokens: 1000 },
    },
    {
      name: "llm-2",
      type: "single",
      gain: 10,
      loss: 1,
      p_success: 0.8,
      pricing: { input: 0.5 },
      transaction: { input_tokens: 1000 },
    },
  ];
}

/**
 * Slider bounds seeded from a scenario's current field values, so the
 * control starts centered on whatever the default boxes hold.
 */
export function prefillSlider(field: SliderBinding["field"], current: number): SliderBinding {
  if (field === "p_success") {
    return { field, min: 0, max: 1, step: 0.01, value: current };
  }
  if (field === "input_tokens") {
    const max = Math.max(2 * current, 1000);
    return { field, min: 1, max, step: Math.max(1, Math.round(max / 200)), value: current };
  }
  const max = current === 0 ? 1 : current * 2;
  return { field, min: 0, max, step: max / 200, value: current };
}

export function sliderFieldValue(scenario: ScenarioBody, field: SliderBinding["field"]): number {
  switch (field) {
    case "gain": return scenario.gain ?? 0;
    case "loss": return scenario.loss ?? 0;
    case "p_success": return scenario.p_success ?? 0;
    case "unit_price": return scenario.pricing.input;
    case "input_tokens": return scenario.transaction.input_tokens;
  }
}

/** Write a slider value through to a copy of the scenario. */
export function applySlider(
  scenario: ScenarioBody,
  field: SliderBinding["field"],
  value: number,
): ScenarioBody {
  const next: ScenarioBody = {
    ...scenario,
    pricing: { ...scenario.pricing },
    transaction: { ...scenario.transaction },
  };
  switch (field) {
    case "gain": next.gain = value; break;
    case "loss": next.loss = value; break;
    case "p_success": next.p_success = value; break;
    case "unit_price": next.pricing.input = value; break;
    case "input_tokens": next.transaction.input_tokens = Math.round(value); break;
  }
  return next;
}

export function compareBody(scenarios: ScenarioBody[]): { scenarios: ScenarioBody[] } {
  return { scenarios };
}

export function breakevenBody(
  solveFor: BreakevenRequest["solve_for"],
  reference: ScenarioBody,
  candidate: ScenarioBody,
): BreakevenRequest {
  return { solve_for: solveFor, reference, candidate };
}

export function sweepBody(
  scenarios: ScenarioBody[],
  variable = "T",
  from = 50,
  to = 200000,
  steps = 60,
): SweepRequest {
  return { scenarios, variable, from, to, steps };
}

export function sobolBody(overrides: Partial<SobolRequest> = {}): SobolRequest {
  return {
    model: "single-earnings",
    ranges: {
      G: { min: 1, max: 1000 },
      L: { min: 0, max: 1000 },
      C: { min: 0.01, max: 100 },
      P: { min: 0.1, max: 1 },
      T: { min: 50, max: 128000 },
    },
    samples_exponent: 14,
    seed: 1,
    second_order: true,
    bootstrap: 0,
    variant: "paper-compat",
    cost_units: "per-million",
    ...overrides,
  };
}

export function localSensitivityBody(scenario: ScenarioBody): Record<string, unknown> {
  if (scenario.type === "binary") {
    return {
      model: "binary",
      variant: "paper-compat",
      point: {
        G: scenario.gain ?? 0,
        L_FP: scenario.loss_fp ?? 0,
        L_FN: scenario.loss_fn ?? 0,
        C: scenario.pricing.input,
        P_FP: scenario.p_fp ?? 0,
        P_FN: scenario.p_fn ?? 0,
        P_TP: scenario.p_tp ?? 0,
        T: scenario.transaction.input_tokens,
      },
    };
  }
  return {
    model: "single",
    point: {
      G: scenario.gain ?? 0,
      L: scenario.loss ?? 0,
      C: scenario.pricing.input,
      P: scenario.p_success ?? 0,
      T: scenario.transaction.input_tokens,
    },
  };
}
