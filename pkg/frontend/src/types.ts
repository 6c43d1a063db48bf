// Wire shapes of the service API. The UI never derives economics of its
// own, so every numeric field below is display-ready as delivered.

export interface PricingBody {
  name?: string;
  unit?: "per_million_tokens" | "per_token";
  input: number;
  output?: number;
}

export interface TransactionBody {
  input_tokens: number;
  output_tokens?: number;
}

export interface ScenarioBody {
  name: string;
  type: "single" | "binary";
  pricing: PricingBody;
  transaction: TransactionBody;
  // single fields
  gain?: number;
  loss?: number;
  p_success?: number;
  extra_cost_per_transaction?: number;
  // binary fields
  loss_fp?: number;
  loss_fn?: number;
  p_tp?: number;
  p_fp?: number;
  p_fn?: number;
}

export interface ContributionEntry {
  outcome: string;
  probability: number;
  contribution: number;
}

export interface EvaluationResult {
  earnings: number;
  roi: number | null;
  roi_undefined: boolean;
  transaction_cost: number;
  contributions: ContributionEntry[];
}

export interface CompareDelta {
  scenario_a: string;
  scenario_b: string;
  earnings_delta: number;
  roi_delta: number | null;
}

export interface CompareResponse {
  results: Record<string, EvaluationResult>;
  deltas: CompareDelta[];
}

export interface BreakevenRequest {
  solve_for: "probability" | "tokens" | "unit-price";
  reference: ScenarioBody;
  candidate: ScenarioBody;
}

export interface BreakevenResponse {
  solve_for: string;
  value: number;
  reference: string;
  candidate: string;
}

export interface SweepRequest {
  scenarios: ScenarioBody[];
  variable: string;
  from: number;
  to: number;
  steps: number;
}

export interface SweepPoint {
  value: number;
  earnings: number;
  roi: number | null;
}

export interface SweepSeries {
  name: string;
  points: SweepPoint[];
}

export interface SweepCrossing {
  scenario_a: string;
  scenario_b: string;
  value: number;
  earnings: number;
}

export interface SweepResponse {
  variable: string;
  series: SweepSeries[];
  crossings: SweepCrossing[];
}

export interface LocalSensitivityRequest {
  model: "single" | "binary";
  variant?: "canonical" | "paper-compat";
  point: Record<string, number> | number[];
  target?: "earnings" | "roi";
  cost_units?: "per-million" | "per-token";
}

export interface LocalSensitivityResponse {
  model: string;
  target: string;
  variables: string[];
  point: number[];
  gradient: number[];
  hessian: number[][];
  fd_max_relative_deviation: number;
}

export interface SobolRequest {
  model: string;
  ranges: Record<string, { min: number; max: number }>;
  samples_exponent: number;
  seed: number;
  second_order?: boolean;
  bootstrap?: number;
  variant?: string;
  cost_units?: string;
}

export interface SobolResult {
  variables: string[];
  first_order: number[];
  total_order: number[];
  /** symmetric matrix parallel to variables; absent unless requested */
  second_order?: number[][] | null;
  output_variance: number;
  evaluations_used: number;
  noise_bound: number;
  confidence_intervals?: unknown;
}

export type JobState = "queued" | "running" | "done" | "failed";

export interface JobRecord {
  id: string;
  state: JobState;
  progress: number;
  submitted_at: number | null;
  finished_at: number | null;
  spec: Record<string, unknown>;
  result: SobolResult | null;
  error: string | null;
}

export interface ErrorEnvelope {
  error: {
    code: string;
    message: string;
    field?: string | null;
  };
}

export type ViewName = "compare" | "breakeven" | "sweep" | "sensitivity";

export interface SliderBinding {
  /** scenario field the slider writes through to */
  field: "gain" | "loss" | "p_success" | "unit_price" | "input_tokens";
  min: number;
  max: number;
  step: number;
  value: number;
}
