"""Local HTTP service over the engine.

Every endpoint parses a raw JSON body, calls the corresponding library
operation, and serializes the result through the same canonical encoder the
command-line tool uses, so service responses and direct library output are
bit-identical.

State is limited to the in-memory job table for long Sobol runs; restarting
the process loses jobs. Validation failures answer 400, domain errors 422,
both with the envelope ``{"error": {"code", "message", "field"}}``.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from starlette.concurrency import run_in_threadpool

from . import econ, io
from ._version import __version__
from .errors import (
    DegenerateModelError,
    EngineError,
    NonFiniteOutputError,
    NoSolutionError,
    OutOfDomainError,
    SingularModelError,
    ValidationError,
    ZeroCostError,
)
from .sensitivity import models as sens_models
from .sensitivity.local import (
    MODEL_BINARY_CANONICAL,
    MODEL_BINARY_COMPAT,
    MODEL_SINGLE,
    MODELS,
    ParameterVector,
    local_report,
)
from .sensitivity.sobol import SobolSpec, sobol_analyze

SYNC_EVALUATION_THRESHOLD = 1_000_000
JOB_RETENTION_SECONDS = 3600.0

_ERROR_CODES = {
    ValidationError: "validation_error",
    ZeroCostError: "zero_cost",
    NoSolutionError: "no_solution",
    OutOfDomainError: "out_of_domain",
    SingularModelError: "singular_model",
    DegenerateModelError: "degenerate_model",
    NonFiniteOutputError: "non_finite_output",
    EngineError: "domain_error",
}


def _json_response(body: Any, status_code: int = 200) -> Response:
    return Response(content=io.canonical_json(body) + "\n",
                    media_type="application/json", status_code=status_code)


def _error_response(status: int, code: str, message: str,
                    field: str | None = None) -> Response:
    envelope: dict[str, Any] = {"error": {"code": code, "message": message}}
    if field:
        envelope["error"]["field"] = field
    return _json_response(envelope, status)


def _error_code(exc: Exception) -> str:
    return _ERROR_CODES.get(type(exc), "domain_error")


async def _body(request: Request) -> Mapping:
    try:
        data = json.loads(await request.body() or b"null")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"request body is not valid JSON: {exc.msg}") from exc
    if not isinstance(data, Mapping):
        raise ValidationError("request body must be a JSON object")
    return data


class JobManager:
    """Synchronized in-memory job table for background Sobol runs.

    At most ``max_concurrent`` background jobs compute at once; further
    submissions queue on the slot semaphore. Synchronous sub-threshold runs
    execute in the request path and only borrow the table for bookkeeping,
    since the threshold already bounds their cost. Finished records are
    purged lazily once older than ``retention_seconds``.
    """

    def __init__(self, retention_seconds: float = JOB_RETENTION_SECONDS,
                 max_concurrent: int = 1):
        self._lock = threading.Lock()
        self._slots = threading.Semaphore(max_concurrent)
        self._jobs: dict[str, dict] = {}
        self._retention = retention_seconds

    def _new_record(self, spec: SobolSpec) -> str:
        job_id = uuid.uuid4().hex
        record = {
            "id": job_id,
            "state": "queued",
            "progress": 0.0,
            "submitted_at": time.time(),
            "finished_at": None,
            "spec": io.sobol_spec_to_dict(spec),
            "result": None,
            "error": None,
        }
        with self._lock:
            self._purge_locked()
            self._jobs[job_id] = record
        return job_id

    def _purge_locked(self) -> None:
        cutoff = time.time() - self._retention
        stale = [job_id for job_id, r in self._jobs.items()
                 if r["finished_at"] is not None and r["finished_at"] < cutoff]
        for job_id in stale:
            del self._jobs[job_id]

    def _update(self, job_id: str, **changes) -> None:
        with self._lock:
            self._jobs[job_id].update(changes)

    def _advance_progress(self, job_id: str, fraction: float) -> None:
        with self._lock:
            record = self._jobs[job_id]
            record["progress"] = max(record["progress"], min(1.0, fraction))

    def get(self, job_id: str) -> dict | None:
        with self._lock:
            self._purge_locked()
            record = self._jobs.get(job_id)
            return dict(record) if record is not None else None

    def _snapshot(self, job_id: str) -> dict:
        # unlike get(), never purges: the response to a submit/run request
        # must carry the record even at zero retention
        with self._lock:
            return dict(self._jobs[job_id])

    def _compute(self, job_id: str, spec: SobolSpec) -> None:
        self._update(job_id, state="running")
        try:
            indices = sobol_analyze(
                spec, on_progress=lambda f: self._advance_progress(job_id, f))
        except Exception as exc:
            self._update(job_id, state="failed", error=str(exc),
                         finished_at=time.time())
        else:
            self._advance_progress(job_id, 1.0)
            self._update(job_id, state="done", result=io.sobol_to_dict(indices),
                         finished_at=time.time())

    def _run_in_slot(self, job_id: str, spec: SobolSpec) -> None:
        with self._slots:
            self._compute(job_id, spec)

    def submit(self, spec: SobolSpec) -> dict:
        """Queue a background run; returns the queued record snapshot."""
        job_id = self._new_record(spec)
        worker = threading.Thread(target=self._run_in_slot,
                                  args=(job_id, spec), daemon=True)
        worker.start()
        return self._snapshot(job_id)

    def run_sync(self, spec: SobolSpec) -> dict:
        """Run in the calling thread; returns the finished record snapshot."""
        job_id = self._new_record(spec)
        self._compute(job_id, spec)
        return self._snapshot(job_id)


def _require_single(scenario, path: str) -> econ.SingleOutcomeScenario:
    if not isinstance(scenario, econ.SingleOutcomeScenario):
        raise ValidationError(f"{path} must be a single-outcome scenario",
                              field=f"{path}.type")
    return scenario


def _named_scenarios(body: Mapping, minimum: int = 1):
    raw = body.get("scenarios")
    if not isinstance(raw, list) or len(raw) < minimum:
        raise ValidationError(
            f"scenarios must be a list of at least {minimum} scenario objects",
            field="scenarios", value=raw)
    named = []
    seen = set()
    for i, entry in enumerate(raw):
        name, scenario = io.scenario_from_dict(entry, f"scenarios[{i}]")
        if name in seen:
            raise ValidationError(f"duplicate scenario name {name!r}",
                                  field=f"scenarios[{i}].name", value=name)
        seen.add(name)
        named.append((name, scenario))
    return named


def _evaluate_body(body: Mapping) -> dict:
    kind = body.get("type")
    if kind == "anecdotal":
        scenario = econ.AnecdotalScenario(
            total_transactions=body.get("total_transactions"),
            gain_transactions=body.get("gain_transactions"),
            loss_transactions=body.get("loss_transactions"),
            gain_per_success=body.get("gain_per_success"),
            loss_per_failure=body.get("loss_per_failure"),
            transaction_cost=body.get("transaction_cost"),
        )
        earnings, roi = econ.anecdotal_earnings_roi(scenario)
        return {"earnings": earnings, "roi": roi, "roi_undefined": False}
    if kind == "lottery":
        raw = body.get("outcomes")
        if not isinstance(raw, list):
            raise ValidationError("outcomes must be a list", field="outcomes",
                                  value=raw)
        outcomes = []
        for i, entry in enumerate(raw):
            if not isinstance(entry, Mapping) or "probability" not in entry \
                    or "utility" not in entry:
                raise ValidationError(
                    f"outcomes[{i}] must carry probability and utility",
                    field=f"outcomes[{i}]", value=entry)
            outcomes.append((entry["probability"], entry["utility"]))
        lottery = econ.OutcomeLottery(tuple(outcomes))
        return {"expected_utility": econ.expected_utility(lottery)}
    _name, scenario = io.scenario_from_dict(body, "scenario")
    if isinstance(scenario, econ.BinaryOutcomeScenario):
        variant = body.get("variant", econ.VARIANT_CANONICAL)
        return io.evaluation_to_dict(econ.evaluate_binary(scenario, variant))
    return io.evaluation_to_dict(econ.evaluate_single(scenario))


def _compare_body(body: Mapping) -> dict:
    named = _named_scenarios(body, minimum=2)
    variant = body.get("variant", econ.VARIANT_CANONICAL)
    results = {}
    for name, scenario in named:
        if isinstance(scenario, econ.BinaryOutcomeScenario):
            results[name] = econ.evaluate_binary(scenario, variant)
        else:
            results[name] = econ.evaluate_single(scenario)
    deltas = []
    for i in range(len(named)):
        for j in range(i + 1, len(named)):
            name_a, name_b = named[i][0], named[j][0]
            a, b = results[name_a], results[name_b]
            roi_delta = (a.expected_roi - b.expected_roi
                         if a.expected_roi is not None
                         and b.expected_roi is not None else None)
            deltas.append({
                "scenario_a": name_a,
                "scenario_b": name_b,
                "earnings_delta": a.expected_earnings - b.expected_earnings,
                "roi_delta": roi_delta,
            })
    return {
        "results": {name: io.evaluation_to_dict(r) for name, r in results.items()},
        "deltas": deltas,
    }


def _breakeven_body(body: Mapping) -> dict:
    solve_for = body.get("solve_for")
    if not isinstance(solve_for, str):
        raise ValidationError("solve_for must be a string", field="solve_for",
                              value=solve_for)
    if "reference" not in body or "candidate" not in body:
        raise ValidationError("body must carry reference and candidate scenarios",
                              field="reference")
    ref_name, reference = io.scenario_from_dict(body["reference"], "reference")
    cand_name, candidate = io.scenario_from_dict(body["candidate"], "candidate")
    value = econ.breakeven(solve_for,
                           _require_single(reference, "reference"),
                           _require_single(candidate, "candidate"))
    return {
        "solve_for": solve_for.replace("-", "_"),
        "value": value,
        "reference": ref_name,
        "candidate": cand_name,
    }


def _sweep_body(body: Mapping) -> dict:
    named = _named_scenarios(body)
    singles = [(name, _require_single(s, f"scenarios[{i}]"))
               for i, (name, s) in enumerate(named)]
    for key in ("variable", "from", "to", "steps"):
        if key not in body:
            raise ValidationError(f"missing required field {key}", field=key)
    result = econ.sweep(singles, body["variable"], body["from"], body["to"],
                        body["steps"])
    return io.sweep_to_dict(result)


def _local_sensitivity_body(body: Mapping) -> dict:
    model = body.get("model")
    variant = body.get("variant", "canonical")
    if model == "binary":
        model = (MODEL_BINARY_CANONICAL if variant == "canonical"
                 else MODEL_BINARY_COMPAT)
    if model not in MODELS:
        raise ValidationError(f"model must be one of {MODELS} or 'binary', "
                              f"got {model!r}", field="model", value=model)
    variables = (("G", "L", "C", "P", "T") if model == MODEL_SINGLE
                 else ("G", "L_FP", "L_FN", "C", "P_FP", "P_FN", "P_TP", "T"))
    raw_point = body.get("point")
    if isinstance(raw_point, Mapping):
        missing = [v for v in variables if v not in raw_point]
        if missing:
            raise ValidationError(f"point is missing coordinates {missing}",
                                  field="point", value=raw_point)
        values = tuple(float(raw_point[v]) for v in variables)
    elif isinstance(raw_point, list) and len(raw_point) == len(variables):
        values = tuple(float(v) for v in raw_point)
    else:
        raise ValidationError(
            f"point must map the variables {variables} to numbers or list "
            f"{len(variables)} values in that order", field="point",
            value=raw_point)
    point = ParameterVector(variables, values)
    report = local_report(
        point, model,
        target=body.get("target", "earnings"),
        variant=variant,
        cost_scale=sens_models.cost_scale(
            body.get("cost_units", sens_models.COST_UNITS_PER_MILLION)),
    )
    return io.local_sensitivity_to_dict(report)


def create_app(*, sync_threshold: int = SYNC_EVALUATION_THRESHOLD,
               retention_seconds: float = JOB_RETENTION_SECONDS,
               max_concurrent_jobs: int = 1) -> FastAPI:
    """Build the service; ``sync_threshold`` is the evaluation budget below
    which Sobol requests run synchronously."""
    app = FastAPI(title="llmroi", version=__version__, docs_url=None,
                  redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"^https?://(localhost|127\.0\.0\.1)(:\d+)?$",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    jobs = JobManager(retention_seconds=retention_seconds,
                      max_concurrent=max_concurrent_jobs)
    app.state.jobs = jobs

    @app.exception_handler(ValidationError)
    async def _on_validation_error(request: Request, exc: ValidationError):
        return _error_response(400, _error_code(exc), str(exc),
                               getattr(exc, "field", None))

    @app.exception_handler(EngineError)
    async def _on_engine_error(request: Request, exc: EngineError):
        return _error_response(422, _error_code(exc), str(exc))

    @app.get("/health")
    async def health():
        return _json_response({"status": "ok", "version": __version__})

    @app.post("/v1/evaluate")
    async def evaluate(request: Request):
        return _json_response(_evaluate_body(await _body(request)))

    @app.post("/v1/compare")
    async def compare(request: Request):
        return _json_response(_compare_body(await _body(request)))

    @app.post("/v1/breakeven")
    async def breakeven(request: Request):
        return _json_response(_breakeven_body(await _body(request)))

    @app.post("/v1/sweep")
    async def sweep(request: Request):
        return _json_response(_sweep_body(await _body(request)))

    @app.post("/v1/sensitivity/local")
    async def local_sensitivity(request: Request):
        return _json_response(_local_sensitivity_body(await _body(request)))

    @app.post("/v1/sensitivity/sobol")
    async def sobol(request: Request):
        spec = io.sobol_spec_from_dict(await _body(request))
        if spec.evaluation_budget <= sync_threshold:
            record = await run_in_threadpool(jobs.run_sync, spec)
            return _json_response(record, 200)
        return _json_response(jobs.submit(spec), 202)

    @app.get("/v1/jobs/{job_id}")
    async def poll_job(job_id: str):
        record = jobs.get(job_id)
        if record is None:
            return _error_response(404, "not_found",
                                   f"no job with id {job_id!r}")
        return _json_response(record)

    return app
