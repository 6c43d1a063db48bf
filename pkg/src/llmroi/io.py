"""Scenario files, result documents, and their serializations.

The scenario schema is a small JSON document:

    {
      "schema_version": "1",
      "defaults": {"pricing": {...}, "transaction": {...}},      # optional
      "scenarios": [
        {"name": "llm-1", "type": "single",
         "pricing": {"unit": "per_million_tokens", "input": 10.0, "output": 30.0},
         "transaction": {"input_tokens": 1000, "output_tokens": 0},
         "gain": 10.0, "loss": 1.0, "p_success": 0.95}
      ]
    }

Binary scenarios use ``"type": "binary"`` and add ``loss_fp``, ``loss_fn``,
``p_tp``, ``p_fp``, ``p_fn``. Prices may be given ``per_token``; they are
normalized to per-million on parse.

All JSON output goes through :func:`canonical_json`: sorted keys, no
locale-dependent formatting, floats at 12 significant digits. The encoding
is idempotent (serialize, parse, serialize is byte-identical), which is what
makes byte-level determinism contracts testable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping

from ._version import __version__
from .econ import (
    BinaryOutcomeScenario,
    EvaluationResult,
    LlmPricing,
    SingleOutcomeScenario,
    SweepResult,
    TransactionProfile,
)
from .errors import ValidationError
from .sensitivity.local import LocalSensitivity
from .sensitivity.models import COST_UNITS_PER_MILLION, MODEL_NAMES
from .sensitivity.sobol import SobolIndices, SobolSpec

SCHEMA_VERSION = "1"

UNIT_PER_MILLION = "per_million_tokens"
UNIT_PER_TOKEN = "per_token"


# ---------------------------------------------------------------- canonical

def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValidationError(f"non-finite number {value!r} is not serializable")
    return format(value, ".12g")


def canonical_json(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 12-significant-digit floats."""
    parts: list[str] = []
    _encode(obj, parts)
    return "".join(parts)


def _encode(obj: Any, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(_format_float(obj))
    elif isinstance(obj, Mapping):
        parts.append("{")
        for k, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise ValidationError(f"JSON object keys must be strings, got {key!r}")
            if k:
                parts.append(",")
            parts.append(json.dumps(key, ensure_ascii=False))
            parts.append(":")
            _encode(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for k, item in enumerate(obj):
            if k:
                parts.append(",")
            _encode(item, parts)
        parts.append("]")
    else:
        raise ValidationError(f"value {obj!r} is not JSON-serializable")


# ------------------------------------------------------------------ parsing

def _get(data: Mapping, key: str, path: str, required: bool = True, default=None):
    if key not in data:
        if required:
            raise ValidationError(f"missing required field {path}.{key}",
                                  field=f"{path}.{key}")
        return default
    return data[key]


def _reraise_at(exc: ValidationError, path: str):
    field = f"{path}.{exc.field}" if exc.field else path
    raise ValidationError(str(exc), field=field, value=exc.value) from exc


def _parse_pricing(data, path: str, fallback_name: str) -> LlmPricing:
    if not isinstance(data, Mapping):
        raise ValidationError(f"{path} must be an object", field=path, value=data)
    unit = _get(data, "unit", path, required=False, default=UNIT_PER_MILLION)
    if unit not in (UNIT_PER_MILLION, UNIT_PER_TOKEN):
        raise ValidationError(
            f"{path}.unit must be {UNIT_PER_MILLION!r} or {UNIT_PER_TOKEN!r}, "
            f"got {unit!r}", field=f"{path}.unit", value=unit)
    scale = 1e6 if unit == UNIT_PER_TOKEN else 1.0
    name = _get(data, "name", path, required=False, default=fallback_name)
    raw_input = _get(data, "input", path)
    raw_output = _get(data, "output", path, required=False, default=0.0)
    try:
        return LlmPricing(
            name=name,
            input_price_per_million=float(raw_input) * scale,
            output_price_per_million=float(raw_output) * scale,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            _reraise_at(exc, path)
        raise ValidationError(f"{path} has non-numeric prices", field=path) from exc


def _parse_transaction(data, path: str) -> TransactionProfile:
    if not isinstance(data, Mapping):
        raise ValidationError(f"{path} must be an object", field=path, value=data)
    try:
        return TransactionProfile(
            input_tokens=_get(data, "input_tokens", path),
            output_tokens=_get(data, "output_tokens", path, required=False, default=0),
        )
    except ValidationError as exc:
        _reraise_at(exc, path)


def scenario_from_dict(data: Mapping, path: str = "scenario",
                       defaults: Mapping | None = None
                       ) -> tuple[str, SingleOutcomeScenario | BinaryOutcomeScenario]:
    """Build one named scenario from its JSON object form."""
    if not isinstance(data, Mapping):
        raise ValidationError(f"{path} must be an object", field=path, value=data)
    defaults = defaults or {}
    name = _get(data, "name", path, required=False, default="scenario")
    if not isinstance(name, str) or not name:
        raise ValidationError(f"{path}.name must be a nonempty string",
                              field=f"{path}.name", value=name)
    kind = _get(data, "type", path)
    pricing_data = data.get("pricing", defaults.get("pricing"))
    if pricing_data is None:
        raise ValidationError(f"missing required field {path}.pricing",
                              field=f"{path}.pricing")
    transaction_data = data.get("transaction", defaults.get("transaction"))
    if transaction_data is None:
        raise ValidationError(f"missing required field {path}.transaction",
                              field=f"{path}.transaction")
    pricing = _parse_pricing(pricing_data, f"{path}.pricing", name)
    transaction = _parse_transaction(transaction_data, f"{path}.transaction")
    try:
        if kind == "single":
            scenario = SingleOutcomeScenario(
                gain=_get(data, "gain", path),
                loss=_get(data, "loss", path),
                p_success=_get(data, "p_success", path),
                pricing=pricing,
                transaction=transaction,
                extra_cost_per_transaction=_get(
                    data, "extra_cost_per_transaction", path,
                    required=False, default=0.0),
            )
        elif kind == "binary":
            scenario = BinaryOutcomeScenario(
                gain=_get(data, "gain", path),
                loss_fp=_get(data, "loss_fp", path),
                loss_fn=_get(data, "loss_fn", path),
                p_tp=_get(data, "p_tp", path),
                p_fp=_get(data, "p_fp", path),
                p_fn=_get(data, "p_fn", path),
                pricing=pricing,
                transaction=transaction,
            )
        else:
            raise ValidationError(
                f"{path}.type must be 'single' or 'binary', got {kind!r}",
                field=f"{path}.type", value=kind)
    except ValidationError as exc:
        if exc.field and exc.field.startswith(path):
            raise
        _reraise_at(exc, path)
    return name, scenario


@dataclass(frozen=True)
class ScenarioDocument:
    schema_version: str
    scenarios: tuple[tuple[str, SingleOutcomeScenario | BinaryOutcomeScenario], ...]


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{what} is not valid JSON: {exc.msg} at line {exc.lineno} "
            f"column {exc.colno}") from exc


def parse_scenario(text: str) -> ScenarioDocument:
    """Parse and fully validate a scenario document."""
    data = _loads(text, "scenario document")
    if not isinstance(data, Mapping):
        raise ValidationError("scenario document must be a JSON object")
    version = _get(data, "schema_version", "$")
    if version != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION!r}",
            field="schema_version", value=version)
    defaults = _get(data, "defaults", "$", required=False, default={})
    raw = _get(data, "scenarios", "$")
    if not isinstance(raw, list) or not raw:
        raise ValidationError("scenarios must be a nonempty list",
                              field="scenarios", value=raw)
    scenarios = []
    seen = set()
    for i, entry in enumerate(raw):
        name, scenario = scenario_from_dict(entry, f"scenarios[{i}]", defaults)
        if name in seen:
            raise ValidationError(f"duplicate scenario name {name!r}",
                                  field=f"scenarios[{i}].name", value=name)
        seen.add(name)
        scenarios.append((name, scenario))
    return ScenarioDocument(schema_version=version, scenarios=tuple(scenarios))


def scenario_to_dict(name: str,
                     s: SingleOutcomeScenario | BinaryOutcomeScenario) -> dict:
    base = {
        "name": name,
        "pricing": {
            "unit": UNIT_PER_MILLION,
            "name": s.pricing.name,
            "input": s.pricing.input_price_per_million,
            "output": s.pricing.output_price_per_million,
        },
        "transaction": {
            "input_tokens": s.transaction.input_tokens,
            "output_tokens": s.transaction.output_tokens,
        },
        "gain": s.gain,
    }
    if isinstance(s, SingleOutcomeScenario):
        base["type"] = "single"
        base["loss"] = s.loss
        base["p_success"] = s.p_success
        base["extra_cost_per_transaction"] = s.extra_cost_per_transaction
    else:
        base["type"] = "binary"
        base["loss_fp"] = s.loss_fp
        base["loss_fn"] = s.loss_fn
        base["p_tp"] = s.p_tp
        base["p_fp"] = s.p_fp
        base["p_fn"] = s.p_fn
    return base


def write_scenario(doc: ScenarioDocument) -> str:
    return canonical_json({
        "schema_version": doc.schema_version,
        "scenarios": [scenario_to_dict(n, s) for n, s in doc.scenarios],
    }) + "\n"


# --------------------------------------------------------------- sobol spec

def parse_sobol_spec(text: str) -> SobolSpec:
    """Parse an analysis spec file into a :class:`SobolSpec`."""
    data = _loads(text, "analysis spec")
    if not isinstance(data, Mapping):
        raise ValidationError("analysis spec must be a JSON object")
    return sobol_spec_from_dict(data)


def sobol_spec_from_dict(data: Mapping, path: str = "$") -> SobolSpec:
    model = _get(data, "model", path)
    if model not in MODEL_NAMES:
        raise ValidationError(
            f"{path}.model must be one of {MODEL_NAMES}, got {model!r}",
            field=f"{path}.model", value=model)
    ranges = None
    if data.get("ranges") is not None:
        raw_ranges = data["ranges"]
        if not isinstance(raw_ranges, Mapping):
            raise ValidationError(f"{path}.ranges must be an object",
                                  field=f"{path}.ranges")
        ranges = {}
        for key, bounds in raw_ranges.items():
            if not isinstance(bounds, Mapping) or "min" not in bounds \
                    or "max" not in bounds:
                raise ValidationError(
                    f"{path}.ranges.{key} must be an object with min and max",
                    field=f"{path}.ranges.{key}", value=bounds)
            ranges[key] = (bounds["min"], bounds["max"])
    exponent = _get(data, "samples_exponent", path, required=False)
    if exponent is not None:
        if not isinstance(exponent, int) or not 3 <= exponent <= 30:
            raise ValidationError(
                f"{path}.samples_exponent must be an integer in [3, 30], "
                f"got {exponent!r}",
                field=f"{path}.samples_exponent", value=exponent)
        base_samples = 2 ** exponent
    else:
        base_samples = _get(data, "base_samples", path, required=False,
                            default=2 ** 16)
    try:
        return SobolSpec(
            model=model,
            ranges=ranges,
            base_samples=base_samples,
            second_order=bool(_get(data, "second_order", path, required=False,
                                   default=False)),
            seed=_get(data, "seed", path, required=False, default=1),
            bootstrap_resamples=_get(data, "bootstrap", path, required=False,
                                     default=0),
            variant=_get(data, "variant", path, required=False,
                         default="paper-compat"),
            cost_units=_get(data, "cost_units", path, required=False,
                            default=COST_UNITS_PER_MILLION),
        )
    except ValidationError as exc:
        _reraise_at(exc, path)


def sobol_spec_to_dict(spec: SobolSpec) -> dict:
    exponent = spec.base_samples.bit_length() - 1
    out: dict[str, Any] = {"model": spec.model if isinstance(spec.model, str)
                           else "<callable>"}
    out["ranges"] = {name: {"min": lo, "max": hi}
                     for name, (lo, hi) in spec.resolved_ranges().items()}
    if 2 ** exponent == spec.base_samples:
        out["samples_exponent"] = exponent
    else:
        out["base_samples"] = spec.base_samples
    out["second_order"] = spec.second_order
    out["seed"] = spec.seed
    out["bootstrap"] = spec.bootstrap_resamples
    out["variant"] = spec.variant
    out["cost_units"] = spec.cost_units
    return out


# ------------------------------------------------------------------ results

def evaluation_to_dict(result: EvaluationResult) -> dict:
    return {
        "earnings": result.expected_earnings,
        "roi": result.expected_roi,
        "roi_undefined": result.roi_undefined,
        "transaction_cost": result.transaction_cost,
        "contributions": [
            {"outcome": c.outcome, "probability": c.probability,
             "contribution": c.contribution}
            for c in result.outcome_contributions
        ],
    }


def sweep_to_dict(sweep: SweepResult) -> dict:
    return {
        "variable": sweep.variable,
        "series": [
            {"name": name,
             "points": [{"value": p.value, "earnings": p.earnings, "roi": p.roi}
                        for p in points]}
            for name, points in sweep.series
        ],
        "crossings": [
            {"scenario_a": c.scenario_a, "scenario_b": c.scenario_b,
             "value": c.value, "earnings": c.earnings}
            for c in sweep.crossings
        ],
    }


def sobol_to_dict(indices: SobolIndices) -> dict:
    out: dict[str, Any] = {
        "variables": list(indices.variables),
        "first_order": list(indices.first_order),
        "total_order": list(indices.total_order),
        "second_order": [list(row) for row in indices.second_order]
        if indices.second_order is not None else None,
        "output_variance": indices.output_variance,
        "evaluations_used": indices.evaluations_used,
        "noise_bound": indices.noise_bound,
    }
    if indices.confidence_intervals is not None:
        out["confidence_intervals"] = indices.confidence_intervals
    return out


def local_sensitivity_to_dict(report: LocalSensitivity) -> dict:
    return {
        "model": report.model,
        "target": report.target,
        "variables": list(report.evaluated_at.names),
        "point": list(report.evaluated_at.values),
        "gradient": list(report.gradient),
        "hessian": [list(row) for row in report.hessian],
        "fd_max_relative_deviation": report.fd_max_relative_deviation,
    }


def build_result_document(*, inputs: Any = None, results=None, series=None,
                          sobol=None, extras: Mapping | None = None,
                          seeds=None) -> dict:
    """Assemble the standard result envelope; None sections are omitted."""
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
    }
    if inputs is not None:
        doc["inputs"] = inputs
    if results is not None:
        doc["results"] = {name: evaluation_to_dict(result)
                          for name, result in results}
    if series is not None:
        doc["series"] = sweep_to_dict(series) if isinstance(series, SweepResult) \
            else series
    if sobol is not None:
        doc["sobol"] = sobol_to_dict(sobol) if isinstance(sobol, SobolIndices) \
            else sobol
    if extras:
        doc.update(extras)
    if seeds is not None:
        doc["seeds"] = list(seeds)
    return doc


def parse_results(text: str) -> dict:
    """Parse a result document back into its plain-dict form."""
    data = _loads(text, "result document")
    if not isinstance(data, Mapping):
        raise ValidationError("result document must be a JSON object")
    return dict(data)


# -------------------------------------------------------------- csv / table

def _fmt_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def _csv_section(header: list[str], rows: list[list[Any]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(_fmt_cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _money(value: float | None) -> str:
    return "" if value is None else f"{value:.5f}"


def _ratio(value: float | None) -> str:
    if value is None:
        return "undefined"
    text = f"{value:,.5f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def _table_section(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows
              else len(header[i]) for i in range(len(header))]
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(header), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out) + "\n"


def write_results(doc: Mapping, format: str = "json") -> str:
    """Serialize a result document as canonical JSON, CSV, or aligned text."""
    if format == "json":
        return canonical_json(doc) + "\n"
    if format == "csv":
        return _write_csv(doc)
    if format == "table":
        return _write_table(doc)
    raise ValidationError(f"format must be json, csv, or table; got {format!r}",
                          field="format", value=format)


def _write_csv(doc: Mapping) -> str:
    sections = []
    if "results" in doc:
        rows = [[name, r["earnings"], r["roi"], r["transaction_cost"]]
                for name, r in doc["results"].items()]
        sections.append(_csv_section(
            ["scenario", "earnings", "roi", "transaction_cost"], rows))
    if "series" in doc:
        rows = [[s["name"], doc["series"]["variable"], p["value"],
                 p["earnings"], p["roi"]]
                for s in doc["series"]["series"] for p in s["points"]]
        sections.append(_csv_section(
            ["scenario", "variable", "value", "earnings", "roi"], rows))
        crossings = doc["series"].get("crossings", [])
        if crossings:
            sections.append(_csv_section(
                ["scenario_a", "scenario_b", "value", "earnings"],
                [[c["scenario_a"], c["scenario_b"], c["value"], c["earnings"]]
                 for c in crossings]))
    if "sobol" in doc:
        ind = doc["sobol"]
        rows = [[v, ind["first_order"][i], ind["total_order"][i]]
                for i, v in enumerate(ind["variables"])]
        sections.append(_csv_section(["variable", "first_order", "total_order"],
                                     rows))
        if ind.get("second_order") is not None:
            names = ind["variables"]
            rows = [[names[i], names[j], ind["second_order"][i][j]]
                    for i in range(len(names)) for j in range(i + 1, len(names))]
            sections.append(_csv_section(
                ["variable_i", "variable_j", "second_order"], rows))
    if "local" in doc:
        local = doc["local"]
        rows = [[v, local["point"][i], local["gradient"][i]]
                for i, v in enumerate(local["variables"])]
        sections.append(_csv_section(["variable", "point", "gradient"], rows))
    for key in ("breakeven", "compare"):
        if key in doc and isinstance(doc[key], Mapping):
            sections.append(_csv_section(
                ["key", "value"],
                [[k, v] for k, v in doc[key].items()
                 if not isinstance(v, (Mapping, list))]))
    if not sections:
        sections.append(_csv_section(["key", "value"], []))
    return "\n".join(sections)


def _write_table(doc: Mapping) -> str:
    sections = []
    if "results" in doc:
        rows = [[name, _money(r["earnings"]), _ratio(r["roi"]),
                 _money(r["transaction_cost"])]
                for name, r in doc["results"].items()]
        sections.append(_table_section(
            ["scenario", "earnings", "roi", "transaction_cost"], rows))
    if "breakeven" in doc:
        b = doc["breakeven"]
        rows = [[str(k), _fmt_cell(v)] for k, v in b.items()]
        sections.append(_table_section(["breakeven", "value"], rows))
    if "series" in doc:
        for s in doc["series"]["series"]:
            rows = [[_fmt_cell(p["value"]), _money(p["earnings"]), _ratio(p["roi"])]
                    for p in s["points"]]
            sections.append(f"scenario: {s['name']}\n" + _table_section(
                [doc["series"]["variable"], "earnings", "roi"], rows))
        crossings = doc["series"].get("crossings", [])
        if crossings:
            rows = [[c["scenario_a"], c["scenario_b"], _fmt_cell(c["value"]),
                     _money(c["earnings"])] for c in crossings]
            sections.append(_table_section(
                ["scenario_a", "scenario_b", "value", "earnings"], rows))
    if "sobol" in doc:
        ind = doc["sobol"]
        rows = [[v, _fmt_cell(ind["first_order"][i]), _fmt_cell(ind["total_order"][i])]
                for i, v in enumerate(ind["variables"])]
        sections.append(_table_section(["variable", "first_order", "total_order"],
                                       rows))
        if ind.get("second_order") is not None:
            names = ind["variables"]
            rows = [[names[i], names[j], _fmt_cell(ind["second_order"][i][j])]
                    for i in range(len(names)) for j in range(i + 1, len(names))]
            sections.append(_table_section(
                ["variable_i", "variable_j", "second_order"], rows))
    if "local" in doc:
        local = doc["local"]
        rows = [[v, _fmt_cell(local["point"][i]), _fmt_cell(local["gradient"][i])]
                for i, v in enumerate(local["variables"])]
        sections.append(_table_section(["variable", "point", "gradient"], rows))
    if "compare" in doc:
        rows = [[d["scenario_a"], d["scenario_b"], _money(d["earnings_delta"]),
                 _fmt_cell(d.get("roi_delta"))]
                for d in doc["compare"].get("deltas", [])]
        if rows:
            sections.append(_table_section(
                ["scenario_a", "scenario_b", "earnings_delta", "roi_delta"], rows))
    if not sections:
        sections.append(canonical_json(doc) + "\n")
    return "\n".join(sections)
