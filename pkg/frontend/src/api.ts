import type {
  BreakevenResponse,
  CompareResponse,
  ErrorEnvelope,
  EvaluationResult,
  JobRecord,
  LocalSensitivityResponse,
  SweepResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Service rejected the input; the field path says which part. */
export class ApiValidationError extends Error {
  constructor(message: string, readonly field: string | null) {
    super(message);
    this.name = "ApiValidationError";
  }
}

/** Input was well-formed but the engine could not produce an answer. */
export class ApiEngineError extends Error {
  constructor(message: string, readonly code: string) {
    super(message);
    this.name = "ApiEngineError";
  }
}

export class ApiNotFoundError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ApiNotFoundError";
  }
}

/** Transport failure: the service never answered. */
export class ApiUnreachableError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ApiUnreachableError";
  }
}

async function request<T>(fetchImpl: FetchLike, base: string, path: string, body?: unknown): Promise<T> {
  let response: Response;
  try {
    response = await fetchImpl(base + path, body === undefined ? undefined : {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  } catch (err) {
    throw new ApiUnreachableError(err instanceof Error ? err.message : String(err));
  }
  let payload: unknown;
  try {
    payload = await response.json();
  } catch {
    throw new ApiUnreachableError(`non-JSON response (status ${response.status})`);
  }
  if (response.ok) return payload as T;
  const envelope = payload as ErrorEnvelope;
  const detail = envelope?.error ?? { code: "unknown", message: `status ${response.status}` };
  if (response.status === 404) throw new ApiNotFoundError(detail.message);
  if (response.status === 422) throw new ApiEngineError(detail.message, detail.code);
  throw new ApiValidationError(detail.message, detail.field ?? null);
}

/**
 * Thin typed client over the service endpoints. All economics happen on the
 * server; this class only moves JSON.
 */
export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  health(): Promise<Record<string, unknown>> {
    return request(this.fetchImpl, this.base, "/health");
  }

  evaluate(body: unknown): Promise<EvaluationResult> {
    return request(this.fetchImpl, this.base, "/v1/evaluate", body);
  }

  compare(body: unknown): Promise<CompareResponse> {
    return request(this.fetchImpl, this.base, "/v1/compare", body);
  }

  breakeven(body: unknown): Promise<BreakevenResponse> {
    return request(this.fetchImpl, this.base, "/v1/breakeven", body);
  }

  sweep(body: unknown): Promise<SweepResponse> {
    return request(this.fetchImpl, this.base, "/v1/sweep", body);
  }

  localSensitivity(body: unknown): Promise<LocalSensitivityResponse> {
    return request(this.fetchImpl, this.base, "/v1/sensitivity/local", body);
  }

  /** Returns a job record either already done (200) or queued (202). */
  sobol(body: unknown): Promise<JobRecord> {
    return request(this.fetchImpl, this.base, "/v1/sensitivity/sobol", body);
  }

  job(id: string): Promise<JobRecord> {
    return request(this.fetchImpl, this.base, `/v1/jobs/${encodeURIComponent(id)}`);
  }
}
