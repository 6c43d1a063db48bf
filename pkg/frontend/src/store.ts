import { requestHash } from "./hash.js";
import type { ScenarioBody, SliderBinding, ViewName } from "./types.js";

export interface WorkspaceState {
  scenarios: ScenarioBody[];
  activeView: ViewName;
  sliders: Record<string, SliderBinding>;
  /** ids of sobol jobs still queued or running on the server */
  pendingJobs: string[];
  /** true when the last refresh failed and shown numbers predate it */
  stale: boolean;
  connected: boolean;
}

type Listener = (state: WorkspaceState) => void;

export class Workspace {
  private state: WorkspaceState;
  private listeners = new Set<Listener>();

  constructor(initial: WorkspaceState) {
    this.state = initial;
  }

  get(): WorkspaceState {
    return this.state;
  }

  update(patch: Partial<WorkspaceState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  /** Serializable snapshot for localStorage export. */
  exportState(): string {
    const { scenarios, activeView, sliders } = this.state;
    return JSON.stringify({ version: 1, scenarios, activeView, sliders });
  }

  importState(text: string): void {
    const parsed = JSON.parse(text) as {
      version?: number;
      scenarios?: ScenarioBody[];
      activeView?: ViewName;
      sliders?: Record<string, SliderBinding>;
    };
    if (parsed.version !== 1 || !Array.isArray(parsed.scenarios)) {
      throw new Error("unrecognized workspace export");
    }
    this.update({
      scenarios: parsed.scenarios,
      activeView: parsed.activeView ?? this.state.activeView,
      sliders: parsed.sliders ?? this.state.sliders,
    });
  }
}

interface CacheEntry<T> {
  value: T;
  stale: boolean;
}

/**
 * Result cache keyed by request hash. A lookup in flight for a given key is
 * shared, so rapid slider motion producing the same input state costs one
 * request, not one per event.
 */
export class ResultCache {
  private settled = new Map<string, CacheEntry<unknown>>();
  private inFlight = new Map<string, Promise<unknown>>();

  fetch<T>(endpoint: string, body: unknown, loader: () => Promise<T>): Promise<T> {
    const key = requestHash(endpoint, body);
    const hit = this.settled.get(key);
    if (hit && !hit.stale) return Promise.resolve(hit.value as T);
    const pending = this.inFlight.get(key);
    if (pending) return pending as Promise<T>;
    const job = loader().then(
      (value) => {
        this.settled.set(key, { value, stale: false });
        this.inFlight.delete(key);
        return value;
      },
      (err) => {
        this.inFlight.delete(key);
        throw err;
      },
    );
    this.inFlight.set(key, job);
    return job;
  }

  /** Peek at the last settled value without triggering a request. */
  last<T>(endpoint: string, body: unknown): T | undefined {
    return this.settled.get(requestHash(endpoint, body))?.value as T | undefined;
  }

  /** Keep the numbers but mark them as predating a failed refresh. */
  markAllStale(): void {
    for (const entry of this.settled.values()) entry.stale = true;
  }

  inFlightCount(): number {
    return this.inFlight.size;
  }

  clear(): void {
    this.settled.clear();
    this.inFlight.clear();
  }
}

/**
 * Trailing-edge debounce; slider drags collapse into one call once input has
 * been quiet for `delayMs`.
 */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs = 150,
): ((...args: A) => void) & { cancel: () => void } {
  let timer: ReturnType<typeof setTimeout> | undefined;
  const wrapped = (...args: A): void => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, delayMs);
  };
  wrapped.cancel = () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = undefined;
  };
  return wrapped;
}
