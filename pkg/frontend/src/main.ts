import {
  ApiClient,
  ApiEngineError,
  ApiUnreachableError,
  ApiValidationError,
} from "./api.js";
import { pollJob, type PollHandle } from "./poll.js";
import {
  applySlider,
  breakevenBody,
  compareBody,
  defaultScenarios,
  localSensitivityBody,
  prefillSlider,
  sliderFieldValue,
  sobolBody,
  sweepBody,
} from "./scenarios.js";
import { debounce, ResultCache, Workspace } from "./store.js";
import type {
  BreakevenRequest,
  CompareResponse,
  JobRecord,
  LocalSensitivityResponse,
  ScenarioBody,
  SliderBinding,
  SweepResponse,
  ViewName,
} from "./types.js";
import { renderStatusBanner } from "./views/banner.js";
import {
  renderBreakeven,
  renderBreakevenNoSolution,
  renderBreakevenUnavailable,
} from "./views/breakeven.js";
import { renderCompare } from "./views/compare.js";
import { renderLocalSensitivity, renderSobolJob } from "./views/sensitivity.js";
import { renderSweep } from "./views/sweep.js";

const STORAGE_KEY = "llmroi-workspace";
const SLIDER_FIELDS: SliderBinding["field"][] = [
  "gain", "loss", "p_success", "unit_price", "input_tokens",
];
const FIELD_LABELS: Record<SliderBinding["field"], string> = {
  gain: "gain per success",
  loss: "loss per failure",
  p_success: "success probability",
  unit_price: "input price / 1M",
  input_tokens: "input tokens",
};

const client = new ApiClient("");
const cache = new ResultCache();
const workspace = new Workspace({
  scenarios: defaultScenarios(),
  activeView: "compare",
  sliders: {},
  pendingJobs: [],
  stale: false,
  connected: true,
});

let activePoll: PollHandle | null = null;
let lastSobolRecord: JobRecord | null = null;
let retryTimer: ReturnType<typeof setTimeout> | null = null;

const $ = (id: string): HTMLElement => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
};

function sliderKey(index: number, field: SliderBinding["field"]): string {
  return `${index}:${field}`;
}

function seedSliders(): void {
  const sliders: Record<string, SliderBinding> = {};
  workspace.get().scenarios.forEach((scenario, index) => {
    if (scenario.type !== "single") return;
    for (const field of SLIDER_FIELDS) {
      sliders[sliderKey(index, field)] =
        prefillSlider(field, sliderFieldValue(scenario, field));
    }
  });
  workspace.update({ sliders });
}

function onServiceLost(): void {
  cache.markAllStale();
  workspace.update({ connected: false, stale: true });
  if (retryTimer) clearTimeout(retryTimer);
  const probe = async (): Promise<void> => {
    try {
      await client.health();
      workspace.update({ connected: true });
      refresh();
    } catch {
      retryTimer = setTimeout(probe, 2000);
    }
  };
  retryTimer = setTimeout(probe, 2000);
}

function renderError(err: unknown): string {
  if (err instanceof ApiValidationError) {
    const where = err.field ? ` (${err.field})` : "";
    return `<div class="banner banner-error">invalid input${where}: ${err.message}</div>`;
  }
  if (err instanceof ApiEngineError) {
    return `<div class="banner banner-error">engine: ${err.message}</div>`;
  }
  return `<div class="banner banner-error">request failed: ${String(err)}</div>`;
}

async function showCompare(target: HTMLElement, scenarios: ScenarioBody[]): Promise<void> {
  const body = compareBody(scenarios);
  const response = await cache.fetch<CompareResponse>(
    "/v1/compare", body, () => client.compare(body));
  target.innerHTML = renderCompare(response);
}

async function showBreakeven(target: HTMLElement, scenarios: ScenarioBody[]): Promise<void> {
  if (scenarios.length < 2) {
    target.innerHTML = renderBreakevenUnavailable(scenarios.length);
    return;
  }
  const solveFor = ($("breakeven-solve-for") as HTMLSelectElement)
    .value as BreakevenRequest["solve_for"];
  const body = breakevenBody(solveFor, scenarios[0]!, scenarios[1]!);
  try {
    const response = await cache.fetch(
      "/v1/breakeven", body, () => client.breakeven(body));
    target.innerHTML = renderBreakeven(response);
  } catch (err) {
    if (err instanceof ApiEngineError && err.code === "no_solution") {
      target.innerHTML = renderBreakevenNoSolution(err.message);
      return;
    }
    throw err;
  }
}

async function showSweep(target: HTMLElement, scenarios: ScenarioBody[]): Promise<void> {
  const singles = scenarios.filter((s) => s.type === "single");
  const from = Number(($("sweep-from") as HTMLInputElement).value);
  const to = Number(($("sweep-to") as HTMLInputElement).value);
  const body = sweepBody(singles, "T", from, to, 60);
  const response = await cache.fetch<SweepResponse>(
    "/v1/sweep", body, () => client.sweep(body));
  target.innerHTML = renderSweep(response);
}

async function showSensitivity(target: HTMLElement, scenarios: ScenarioBody[]): Promise<void> {
  const scenario = scenarios[0];
  const localHtml = scenario
    ? renderLocalSensitivity(await cache.fetch<LocalSensitivityResponse>(
        "/v1/sensitivity/local", localSensitivityBody(scenario),
        () => client.localSensitivity(localSensitivityBody(scenario))))
    : "";
  const sobolHtml = lastSobolRecord
    ? renderSobolJob(lastSobolRecord)
    : '<button type="button" data-action="run-sobol">run variance decomposition</button>';
  target.innerHTML =
    localHtml + `<section class="sobol-section">${sobolHtml}</section>`;
}

async function runSobol(): Promise<void> {
  activePoll?.stop();
  const body = sobolBody();
  let record: JobRecord;
  try {
    record = await client.sobol(body);
  } catch (err) {
    if (err instanceof ApiUnreachableError) onServiceLost();
    $("view-sensitivity").insertAdjacentHTML("beforeend", renderError(err));
    return;
  }
  lastSobolRecord = record;
  refresh();
  if (record.state === "done" || record.state === "failed") return;
  workspace.update({ pendingJobs: [...workspace.get().pendingJobs, record.id] });
  activePoll = pollJob(client, record.id, (update) => {
    lastSobolRecord = update;
    refresh();
  });
  try {
    await activePoll.done;
  } finally {
    workspace.update({
      pendingJobs: workspace.get().pendingJobs.filter((id) => id !== record.id),
    });
  }
}

async function refresh(): Promise<void> {
  const state = workspace.get();
  const target = $(`view-${state.activeView}`);
  try {
    if (state.activeView === "compare") await showCompare(target, state.scenarios);
    else if (state.activeView === "breakeven") await showBreakeven(target, state.scenarios);
    else if (state.activeView === "sweep") await showSweep(target, state.scenarios);
    else await showSensitivity(target, state.scenarios);
    if (!workspace.get().connected || workspace.get().stale) {
      workspace.update({ connected: true, stale: false });
    }
  } catch (err) {
    if (err instanceof ApiUnreachableError) {
      onServiceLost();
      return;
    }
    target.innerHTML = renderError(err) + target.innerHTML;
  }
}

const refreshSoon = debounce(() => void refresh(), 150);

function renderScenarioControls(): void {
  const host = $("scenario-controls");
  const state = workspace.get();
  const parts: string[] = [];
  state.scenarios.forEach((scenario, index) => {
    if (scenario.type !== "single") return;
    parts.push(`<fieldset class="scenario-editor" data-index="${index}">`);
    parts.push(`<legend>${scenario.name}</legend>`);
    for (const field of SLIDER_FIELDS) {
      const binding = state.sliders[sliderKey(index, field)];
      if (!binding) continue;
      const id = `ctl-${index}-${field}`;
      parts.push('<label class="control-row">');
      parts.push(`<span>${FIELD_LABELS[field]}</span>`);
      parts.push(
        `<input type="range" id="${id}" data-index="${index}" data-field="${field}" ` +
        `min="${binding.min}" max="${binding.max}" step="${binding.step}" ` +
        `value="${binding.value}">`,
      );
      parts.push(
        `<input type="number" id="${id}-box" data-index="${index}" data-field="${field}" ` +
        `step="${binding.step}" value="${binding.value}">`,
      );
      parts.push("</label>");
    }
    parts.push("</fieldset>");
  });
  host.innerHTML = parts.join("");
}

function onControlInput(event: Event): void {
  const input = event.target as HTMLInputElement;
  const index = Number(input.dataset.index);
  const field = input.dataset.field as SliderBinding["field"] | undefined;
  if (!field || Number.isNaN(index)) return;
  const value = Number(input.value);
  if (!Number.isFinite(value)) return;
  const state = workspace.get();
  const scenarios = state.scenarios.map((s, i) =>
    i === index ? applySlider(s, field, value) : s);
  const key = sliderKey(index, field);
  const binding = state.sliders[key];
  const sliders = binding
    ? { ...state.sliders, [key]: { ...binding, value } }
    : state.sliders;
  workspace.update({ scenarios, sliders });
  const twinId = input.type === "range"
    ? `ctl-${index}-${field}-box`
    : `ctl-${index}-${field}`;
  const twin = document.getElementById(twinId) as HTMLInputElement | null;
  if (twin) twin.value = input.value;
  refreshSoon();
}

function selectView(view: ViewName): void {
  workspace.update({ activeView: view });
  document.querySelectorAll<HTMLElement>(".view-panel").forEach((panel) => {
    panel.hidden = panel.id !== `view-${view}`;
  });
  document.querySelectorAll<HTMLButtonElement>("[data-view]").forEach((button) => {
    button.classList.toggle("active", button.dataset.view === view);
  });
  void refresh();
}

function persist(): void {
  localStorage.setItem(STORAGE_KEY, workspace.exportState());
}

function restore(): void {
  const saved = localStorage.getItem(STORAGE_KEY);
  if (!saved) return;
  try {
    workspace.importState(saved);
  } catch {
    localStorage.removeItem(STORAGE_KEY);
  }
}

function wire(): void {
  restore();
  if (Object.keys(workspace.get().sliders).length === 0) seedSliders();

  document.querySelectorAll<HTMLButtonElement>("[data-view]").forEach((button) => {
    button.addEventListener("click", () =>
      selectView(button.dataset.view as ViewName));
  });
  $("scenario-controls").addEventListener("input", onControlInput);
  $("breakeven-solve-for").addEventListener("change", () => void refresh());
  $("sweep-from").addEventListener("change", refreshSoon);
  $("sweep-to").addEventListener("change", refreshSoon);

  document.body.addEventListener("click", (event) => {
    const el = event.target as HTMLElement;
    const action = el.dataset.action;
    if (action === "run-sobol" || action === "retry-sobol") void runSobol();
  });

  $("export-button").addEventListener("click", () => {
    persist();
    const blob = workspace.exportState();
    void navigator.clipboard?.writeText(blob);
    $("io-feedback").textContent = "workspace saved locally and copied to clipboard";
  });
  $("import-button").addEventListener("click", () => {
    const text = ($("import-text") as HTMLTextAreaElement).value.trim();
    if (!text) return;
    try {
      workspace.importState(text);
      cache.clear();
      seedSliders();
      renderScenarioControls();
      persist();
      $("io-feedback").textContent = "workspace imported";
      void refresh();
    } catch (err) {
      $("io-feedback").textContent = `import failed: ${String(err)}`;
    }
  });

  workspace.subscribe((state) => {
    $("status-banner").innerHTML = renderStatusBanner(state.connected, state.stale);
    persist();
  });

  renderScenarioControls();
  selectView(workspace.get().activeView);
}

wire();
