"""Command-line entry point.

Commands: evaluate, compare, breakeven, sweep, sobol, local-sens, serve,
repro. Exit codes: 0 success, 1 validation or file error, 2 engine/domain
error. All commands are deterministic given their inputs and seeds, so
rerunning one with the same flags reproduces its output byte for byte.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import charts, econ, io
from ._version import __version__
from .errors import EngineError, ValidationError
from .sensitivity import local as sens_local
from .sensitivity import models as sens_models
from .sensitivity.sobol import SobolSpec, sobol_analyze

# worked-example scenario pair used by repro; kept inline so the command
# works from any directory
_REPRO_SCENARIOS = {
    "schema_version": "1",
    "scenarios": [
        {"name": "llm-1", "type": "single",
         "pricing": {"unit": "per_million_tokens", "name": "llm-1",
                     "input": 10.0, "output": 30.0},
         "transaction": {"input_tokens": 1000, "output_tokens": 0},
         "gain": 10.0, "loss": 1.0, "p_success": 0.95},
        {"name": "llm-2", "type": "single",
         "pricing": {"unit": "per_million_tokens", "name": "llm-2",
                     "input": 0.5, "output": 1.5},
         "transaction": {"input_tokens": 1000, "output_tokens": 0},
         "gain": 10.0, "loss": 1.0, "p_success": 0.80},
    ],
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; 2 is reserved for engine errors
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_overrides(pairs) -> list[tuple[str, float]]:
    overrides = []
    for pair in pairs or []:
        var, sep, raw = pair.partition("=")
        if not sep or not var:
            raise ValidationError(f"--at expects VAR=VALUE, got {pair!r}",
                                  field="at", value=pair)
        try:
            value = float(raw)
        except ValueError:
            raise ValidationError(f"--at value for {var} is not a number: {raw!r}",
                                  field="at", value=raw) from None
        overrides.append((var, value))
    return overrides


def _override_single(s: econ.SingleOutcomeScenario,
                     overrides) -> econ.SingleOutcomeScenario:
    changes: dict = {}
    for var, value in overrides:
        if var == "G":
            changes["gain"] = value
        elif var == "L":
            changes["loss"] = value
        elif var == "P":
            changes["p_success"] = value
        elif var == "T":
            if value != int(value) or value < 0:
                raise ValidationError(
                    f"T override must be a nonnegative integer, got {value}",
                    field="at", value=value)
            changes["transaction"] = dataclasses.replace(
                s.transaction, input_tokens=int(value))
        elif var == "C":
            changes["pricing"] = dataclasses.replace(
                s.pricing, input_price_per_million=value)
        else:
            raise ValidationError(
                f"--at variable must be one of G, L, C, P, T; got {var!r}",
                field="at", value=var)
        s = dataclasses.replace(s, **changes)
        changes.clear()
    return s


def _load_scenarios(args) -> io.ScenarioDocument:
    if not getattr(args, "scenario", None):
        raise ValidationError("--scenario PATH is required", field="scenario")
    return io.parse_scenario(_read_text(args.scenario))


def _evaluate_one(scenario, variant: str) -> econ.EvaluationResult:
    if isinstance(scenario, econ.BinaryOutcomeScenario):
        return econ.evaluate_binary(scenario, variant)
    return econ.evaluate_single(scenario)


# ---------------------------------------------------------------- commands

def _cmd_evaluate(args) -> int:
    doc = _load_scenarios(args)
    results = [(name, _evaluate_one(s, args.variant)) for name, s in doc.scenarios]
    _emit(args, io.write_results(io.build_result_document(
        inputs={"scenarios": [io.scenario_to_dict(n, s) for n, s in doc.scenarios]},
        results=results), args.format))
    return 0


def _cmd_compare(args) -> int:
    doc = _load_scenarios(args)
    if len(doc.scenarios) < 2:
        raise ValidationError("compare needs at least 2 scenarios",
                              field="scenarios")
    results = [(name, _evaluate_one(s, args.variant)) for name, s in doc.scenarios]
    deltas = []
    for i in range(len(results)):
        for j in range(i + 1, len(results)):
            (name_a, a), (name_b, b) = results[i], results[j]
            roi_delta = (a.expected_roi - b.expected_roi
                         if a.expected_roi is not None
                         and b.expected_roi is not None else None)
            deltas.append({"scenario_a": name_a, "scenario_b": name_b,
                           "earnings_delta":
                               a.expected_earnings - b.expected_earnings,
                           "roi_delta": roi_delta})
    _emit(args, io.write_results(io.build_result_document(
        inputs={"scenarios": [io.scenario_to_dict(n, s) for n, s in doc.scenarios]},
        results=results, extras={"compare": {"deltas": deltas}}), args.format))
    return 0


def _pick(doc: io.ScenarioDocument, name: str | None, position: int,
          role: str):
    if name is None:
        if len(doc.scenarios) <= position:
            raise ValidationError(
                f"scenario file needs at least {position + 1} scenarios "
                f"to supply the {role}", field="scenarios")
        return doc.scenarios[position]
    for entry in doc.scenarios:
        if entry[0] == name:
            return entry
    raise ValidationError(f"no scenario named {name!r} in the file",
                          field=role, value=name)


def _cmd_breakeven(args) -> int:
    doc = _load_scenarios(args)
    overrides = _parse_overrides(args.at)
    ref_name, reference = _pick(doc, args.reference, 0, "reference")
    cand_name, candidate = _pick(doc, args.candidate, 1, "candidate")
    for scenario, role in ((reference, "reference"), (candidate, "candidate")):
        if not isinstance(scenario, econ.SingleOutcomeScenario):
            raise ValidationError(
                f"break-even requires single-outcome scenarios; "
                f"{role} is not one", field=role)
    reference = _override_single(reference, overrides)
    candidate = _override_single(candidate, overrides)
    value = econ.breakeven(args.solve_for, reference, candidate)
    _emit(args, io.write_results(io.build_result_document(
        inputs={"scenarios": [io.scenario_to_dict(ref_name, reference),
                              io.scenario_to_dict(cand_name, candidate)]},
        extras={"breakeven": {
            "solve_for": args.solve_for.replace("-", "_"),
            "value": value,
            "reference": ref_name,
            "candidate": cand_name,
        }}), args.format))
    return 0


def _cmd_sweep(args) -> int:
    doc = _load_scenarios(args)
    for name, scenario in doc.scenarios:
        if not isinstance(scenario, econ.SingleOutcomeScenario):
            raise ValidationError(
                f"sweep requires single-outcome scenarios; {name!r} is not one",
                field="scenarios")
    result = econ.sweep(list(doc.scenarios), args.var, getattr(args, "from"),
                        args.to, args.steps)
    _emit(args, io.write_results(io.build_result_document(
        inputs={"scenarios": [io.scenario_to_dict(n, s) for n, s in doc.scenarios]},
        series=result), args.format))
    if args.chart:
        Path(args.chart).write_text(charts.sweep_chart(result))
    return 0


def _spec_with_flags(args) -> SobolSpec:
    if not args.spec:
        raise ValidationError("--spec PATH is required", field="spec")
    spec = io.parse_sobol_spec(_read_text(args.spec))
    changes: dict = {}
    if args.samples_exponent is not None:
        changes["base_samples"] = 2 ** args.samples_exponent
    if args.second_order:
        changes["second_order"] = True
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.bootstrap is not None:
        changes["bootstrap_resamples"] = args.bootstrap
    if args.variant is not None:
        changes["variant"] = args.variant
    if args.cost_units is not None:
        changes["cost_units"] = args.cost_units
    return dataclasses.replace(spec, **changes) if changes else spec


def _cmd_sobol(args) -> int:
    spec = _spec_with_flags(args)
    indices = sobol_analyze(spec)
    _emit(args, io.write_results(io.build_result_document(
        inputs={"spec": io.sobol_spec_to_dict(spec)},
        sobol=indices, seeds=[spec.seed]), args.format))
    if args.chart:
        Path(args.chart).write_text(charts.indices_bar_chart(indices))
    return 0


_BINARY_MODELS = {"canonical": sens_local.MODEL_BINARY_CANONICAL,
                  "paper-compat": sens_local.MODEL_BINARY_COMPAT}


def _cmd_local_sens(args) -> int:
    doc = _load_scenarios(args)
    name, scenario = _pick(doc, None, 0, "scenario")
    overrides = _parse_overrides(args.at)
    per_token = args.cost_units == sens_models.COST_UNITS_PER_TOKEN
    scale = sens_models.cost_scale(args.cost_units)
    if isinstance(scenario, econ.SingleOutcomeScenario):
        scenario = _override_single(scenario, overrides)
        price = scenario.pricing.input_price_per_million
        point = sens_local.ParameterVector.single(
            G=scenario.gain, L=scenario.loss,
            C=price / 1e6 if per_token else price,
            P=scenario.p_success, T=scenario.transaction.input_tokens)
        model = sens_local.MODEL_SINGLE
    else:
        if overrides:
            raise ValidationError(
                "--at overrides apply to single-outcome scenarios only",
                field="at")
        price = scenario.pricing.input_price_per_million
        point = sens_local.ParameterVector.binary(
            G=scenario.gain, L_FP=scenario.loss_fp, L_FN=scenario.loss_fn,
            C=price / 1e6 if per_token else price,
            P_FP=scenario.p_fp, P_FN=scenario.p_fn, P_TP=scenario.p_tp,
            T=scenario.transaction.input_tokens)
        model = _BINARY_MODELS[args.variant]
    report = sens_local.local_report(point, model, target=args.target,
                                     variant=args.variant, cost_scale=scale)
    _emit(args, io.write_results(io.build_result_document(
        inputs={"scenario": io.scenario_to_dict(name, scenario)},
        extras={"local": io.local_sensitivity_to_dict(report)}), args.format))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    if args.with_ui is not None:
        from fastapi.staticfiles import StaticFiles

        ui_dir = Path(args.with_ui)
        if not ui_dir.is_dir():
            raise ValidationError(f"UI directory {ui_dir} does not exist",
                                  field="with_ui", value=str(ui_dir))
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_repro(args) -> int:
    out_dir = Path(args.out or "repro")
    out_dir.mkdir(parents=True, exist_ok=True)
    exponent = 20 if args.full else args.samples_exponent
    seed = args.seed if args.seed is not None else 1

    doc = io.parse_scenario(io.canonical_json(_REPRO_SCENARIOS))
    named = list(doc.scenarios)
    results = [(name, econ.evaluate_single(s)) for name, s in named]
    at_tokens = [_override_single(s, [("T", 128000)]) for _, s in named]
    breakeven_value = econ.breakeven("probability", at_tokens[0], at_tokens[1])
    example_doc = io.build_result_document(
        inputs={"scenarios": [io.scenario_to_dict(n, s) for n, s in named]},
        results=results,
        extras={"breakeven": {"solve_for": "probability", "value": breakeven_value,
                              "reference": named[0][0], "candidate": named[1][0],
                              "at": "T=128000"}})
    (out_dir / "worked-example.json").write_text(io.write_results(example_doc))
    (out_dir / "worked-example.txt").write_text(
        io.write_results(example_doc, "table"))

    sweep_result = econ.sweep(named, "T", 50.0, 200000.0, 400)
    (out_dir / "sweep-tokens.json").write_text(io.write_results(
        io.build_result_document(series=sweep_result)))
    (out_dir / "sweep-tokens.svg").write_text(charts.sweep_chart(
        sweep_result, title="expected earnings vs input tokens"))

    for model in sens_models.MODEL_NAMES:
        spec = SobolSpec(model=model, base_samples=2 ** exponent,
                         second_order=True, seed=seed)
        indices = sobol_analyze(spec)
        stem = f"sobol-{model}"
        (out_dir / f"{stem}.json").write_text(io.write_results(
            io.build_result_document(inputs={"spec": io.sobol_spec_to_dict(spec)},
                                     sobol=indices, seeds=[seed])))
        (out_dir / f"{stem}-bars.svg").write_text(
            charts.indices_bar_chart(indices, title=model))
        (out_dir / f"{stem}-pairs.svg").write_text(
            charts.interaction_heatmap(indices, title=f"{model} interactions"))
    sys.stderr.write(f"wrote reproduction bundle to {out_dir}\n")
    return 0


# ------------------------------------------------------------------ parser

def _add_output_flags(sub, default_format="json"):
    sub.add_argument("--format", choices=("json", "csv", "table"),
                     default=default_format)
    sub.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="llmroi",
                     description="Deployment economics of LLM transactions: "
                                 "expected earnings, returns, break-even "
                                 "frontiers, and sensitivity analysis.")
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("evaluate",
                              help="expected earnings and return per scenario")
    sub.add_argument("--scenario", metavar="PATH", required=True)
    sub.add_argument("--variant", choices=econ.VARIANTS,
                     default=econ.VARIANT_CANONICAL)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_evaluate)

    sub = commands.add_parser("compare",
                              help="pairwise earnings and return deltas")
    sub.add_argument("--scenario", metavar="PATH", required=True)
    sub.add_argument("--variant", choices=econ.VARIANTS,
                     default=econ.VARIANT_CANONICAL)
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_compare)

    sub = commands.add_parser("breakeven",
                              help="solve one parameter for equal earnings")
    sub.add_argument("--scenario", metavar="PATH", required=True)
    sub.add_argument("--solve-for", required=True,
                     choices=("probability", "tokens", "unit-price",
                              "unit_price"))
    sub.add_argument("--at", action="append", metavar="VAR=VALUE",
                     help="override a parameter on both scenarios; repeatable")
    sub.add_argument("--reference", metavar="NAME",
                     help="scenario name (default: first in file)")
    sub.add_argument("--candidate", metavar="NAME",
                     help="scenario name (default: second in file)")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_breakeven)

    sub = commands.add_parser("sweep",
                              help="earnings over a grid of one variable")
    sub.add_argument("--scenario", metavar="PATH", required=True)
    sub.add_argument("--var", required=True, choices=econ.SWEEP_VARIABLES)
    sub.add_argument("--from", type=float, required=True, metavar="START")
    sub.add_argument("--to", type=float, required=True, metavar="STOP")
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--chart", metavar="PATH", help="also write an SVG chart")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_sweep)

    sub = commands.add_parser("sobol",
                              help="variance-based global sensitivity indices")
    sub.add_argument("--spec", metavar="PATH", required=True)
    sub.add_argument("--samples-exponent", type=int, metavar="E",
                     help="override base samples to 2^E")
    sub.add_argument("--second-order", action="store_true",
                     help="force pairwise interaction estimation on")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--bootstrap", type=int, metavar="N",
                     help="bootstrap resamples for confidence intervals")
    sub.add_argument("--variant", choices=econ.VARIANTS)
    sub.add_argument("--cost-units", choices=sens_models.COST_UNITS)
    sub.add_argument("--chart", metavar="PATH", help="also write an SVG chart")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_sobol)

    sub = commands.add_parser("local-sens",
                              help="analytic gradient and curvature at a point")
    sub.add_argument("--scenario", metavar="PATH", required=True)
    sub.add_argument("--target", choices=sens_local.TARGETS,
                     default=sens_local.TARGET_EARNINGS)
    sub.add_argument("--variant", choices=econ.VARIANTS,
                     default=econ.VARIANT_CANONICAL)
    sub.add_argument("--cost-units", choices=sens_models.COST_UNITS,
                     default=sens_models.COST_UNITS_PER_MILLION)
    sub.add_argument("--at", action="append", metavar="VAR=VALUE",
                     help="override a scenario parameter; repeatable")
    _add_output_flags(sub)
    sub.set_defaults(handler=_cmd_local_sens)

    sub = commands.add_parser("serve", help="run the local HTTP service")
    sub.add_argument("--port", type=int, default=8000)
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--with-ui", nargs="?", const="frontend/dist",
                     metavar="DIR", help="serve the what-if UI from DIR")
    sub.set_defaults(handler=_cmd_serve)

    sub = commands.add_parser("repro",
                              help="regenerate the full reproduction bundle")
    sub.add_argument("--out", metavar="DIR", default="repro")
    sub.add_argument("--samples-exponent", type=int, default=16, metavar="E")
    sub.add_argument("--full", action="store_true",
                     help="use the full 2^20 sample budget")
    sub.add_argument("--seed", type=int)
    sub.set_defaults(handler=_cmd_repro)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        sys.stderr.write(f"llmroi: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"llmroi: error: {exc}\n")
        return 1
    except EngineError as exc:
        sys.stderr.write(f"llmroi: engine error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
