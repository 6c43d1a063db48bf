import json
import time

import pytest
from fastapi.testclient import TestClient

import llmroi
from llmroi import SobolSpec, evaluate_binary, evaluate_single, sobol_analyze
from llmroi.io import canonical_json, evaluation_to_dict, sobol_to_dict
from llmroi.service import JobManager, create_app

from conftest import make_llm1, make_llm2


def scenario_body(name="llm-1", **overrides):
    body = {
        "name": name, "type": "single", "gain": 10.0, "loss": 1.0,
        "p_success": 0.95,
        "pricing": {"name": name, "input": 10.0, "output": 30.0},
        "transaction": {"input_tokens": 1000, "output_tokens": 0},
    }
    body.update(overrides)
    return body


def llm2_body():
    return scenario_body("llm-2", p_success=0.80,
                         pricing={"name": "llm-2", "input": 0.5, "output": 1.5})


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


class TestHealth:
    def test_fields(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok", "version": llmroi.__version__}

    def test_canonical_body(self, client):
        response = client.get("/health")
        assert response.text == canonical_json(response.json()) + "\n"
        assert response.headers["content-type"].startswith("application/json")


class TestEvaluate:
    def test_single_matches_library_bit_for_bit(self, client):
        response = client.post("/v1/evaluate", json=scenario_body())
        assert response.status_code == 200
        direct = evaluation_to_dict(evaluate_single(make_llm1()))
        assert response.text == canonical_json(direct) + "\n"
        assert response.json()["earnings"] == 9.44

    def test_binary_variant(self, client):
        body = {
            "name": "screening", "type": "binary", "gain": 10.0,
            "loss_fp": 1.0, "loss_fn": 2.0, "p_tp": 0.2, "p_fp": 0.05,
            "p_fn": 0.05,
            "pricing": {"name": "screening", "input": 5.0, "output": 0.0},
            "transaction": {"input_tokens": 1000, "output_tokens": 0},
            "variant": "paper-compat",
        }
        response = client.post("/v1/evaluate", json=body)
        assert response.status_code == 200
        from conftest import make_screening
        direct = evaluation_to_dict(
            evaluate_binary(make_screening(), "paper-compat"))
        assert response.text == canonical_json(direct) + "\n"

    def test_anecdotal(self, client):
        body = {"type": "anecdotal", "total_transactions": 1000,
                "gain_transactions": 700, "loss_transactions": 300,
                "gain_per_success": 1.0, "loss_per_failure": 0.5,
                "transaction_cost": 0.0005}
        response = client.post("/v1/evaluate", json=body)
        assert response.status_code == 200
        data = response.json()
        assert data["earnings"] == pytest.approx(700.0 - 150.0 - 0.5)
        assert data["roi"] == pytest.approx(549.5 / 0.5)

    def test_lottery(self, client):
        body = {"type": "lottery", "outcomes": [
            {"probability": 0.7, "utility": 2.0},
            {"probability": 0.3, "utility": -1.0}]}
        response = client.post("/v1/evaluate", json=body)
        assert response.status_code == 200
        assert response.json() == {"expected_utility": pytest.approx(1.1)}

    def test_zero_cost_roi_undefined(self, client):
        body = scenario_body(pricing={"name": "free", "input": 0.0,
                                      "output": 0.0})
        response = client.post("/v1/evaluate", json=body)
        assert response.status_code == 200
        data = response.json()
        assert data["roi"] is None
        assert data["roi_undefined"] is True

    def test_validation_envelope(self, client):
        response = client.post("/v1/evaluate",
                               json=scenario_body(p_success=1.5))
        assert response.status_code == 400
        error = response.json()["error"]
        assert error["code"] == "validation_error"
        assert error["field"] == "scenario.p_success"
        assert error["message"]

    def test_malformed_json(self, client):
        response = client.post("/v1/evaluate", content=b"{oops",
                               headers={"content-type": "application/json"})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "validation_error"

    def test_non_object_body(self, client):
        response = client.post("/v1/evaluate", json=[1, 2])
        assert response.status_code == 400

    def test_bad_lottery_entry(self, client):
        response = client.post("/v1/evaluate", json={
            "type": "lottery", "outcomes": [{"probability": 0.5}]})
        assert response.status_code == 400
        assert response.json()["error"]["field"] == "outcomes[0]"


class TestCompare:
    def test_pairwise_deltas(self, client):
        response = client.post("/v1/compare", json={
            "scenarios": [scenario_body(), llm2_body()]})
        assert response.status_code == 200
        data = response.json()
        assert set(data["results"]) == {"llm-1", "llm-2"}
        delta = data["deltas"][0]
        assert delta["scenario_a"] == "llm-1"
        assert delta["earnings_delta"] == pytest.approx(9.44 - 7.7995)
        assert delta["roi_delta"] == pytest.approx(944.0 - 15599.0)

    def test_requires_two(self, client):
        response = client.post("/v1/compare",
                               json={"scenarios": [scenario_body()]})
        assert response.status_code == 400
        assert response.json()["error"]["field"] == "scenarios"


class TestBreakeven:
    def test_probability(self, client):
        reference = scenario_body()
        candidate = llm2_body()
        for body in (reference, candidate):
            body["transaction"] = {"input_tokens": 128000, "output_tokens": 0}
        response = client.post("/v1/breakeven", json={
            "solve_for": "probability", "reference": reference,
            "candidate": candidate})
        assert response.status_code == 200
        data = response.json()
        assert data["value"] == pytest.approx(0.8395, abs=5e-4)
        assert data["reference"] == "llm-1"

    def test_hyphen_alias_normalized(self, client):
        response = client.post("/v1/breakeven", json={
            "solve_for": "unit-price", "reference": llm2_body(),
            "candidate": scenario_body()})
        assert response.status_code == 200
        data = response.json()
        assert data["solve_for"] == "unit_price"
        assert data["value"] == pytest.approx((9.45 - 7.7995) * 1e6 / 1000)

    def test_engine_error_envelope(self, client):
        same_price = scenario_body("other", p_success=0.5)
        response = client.post("/v1/breakeven", json={
            "solve_for": "tokens", "reference": scenario_body(),
            "candidate": same_price})
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "no_solution"

    def test_missing_scenarios(self, client):
        response = client.post("/v1/breakeven",
                               json={"solve_for": "probability"})
        assert response.status_code == 400


class TestSweep:
    def test_token_sweep_with_crossing(self, client):
        response = client.post("/v1/sweep", json={
            "scenarios": [scenario_body(), llm2_body()],
            "variable": "T", "from": 50, "to": 200000, "steps": 2})
        assert response.status_code == 200
        data = response.json()
        assert [len(s["points"]) for s in data["series"]] == [2, 2]
        assert data["crossings"][0]["value"] == pytest.approx(
            173684.210526, abs=1e-6)

    def test_steps_guard(self, client):
        response = client.post("/v1/sweep", json={
            "scenarios": [scenario_body()], "variable": "T",
            "from": 1, "to": 10, "steps": 1})
        assert response.status_code == 400

    def test_single_only(self, client):
        binary = {
            "name": "b", "type": "binary", "gain": 1.0, "loss_fp": 0.1,
            "loss_fn": 0.1, "p_tp": 0.2, "p_fp": 0.1, "p_fn": 0.1,
            "pricing": {"name": "b", "input": 1.0},
            "transaction": {"input_tokens": 10},
        }
        response = client.post("/v1/sweep", json={
            "scenarios": [binary], "variable": "T",
            "from": 1, "to": 10, "steps": 3})
        assert response.status_code == 400


class TestLocalSensitivity:
    def test_single_point_mapping(self, client):
        body = {"model": "single", "target": "earnings",
                "point": {"G": 10.0, "L": 1.0, "C": 10.0, "P": 0.95,
                          "T": 1000.0},
                "cost_units": "per-million"}
        response = client.post("/v1/sensitivity/local", json=body)
        assert response.status_code == 200
        data = response.json()
        assert data["gradient"][3] == pytest.approx(11.0)
        assert data["fd_max_relative_deviation"] <= 1e-6

    def test_binary_point_list(self, client):
        body = {"model": "binary", "variant": "paper-compat", "target": "roi",
                "point": [10.0, 1.0, 2.0, 5.0, 0.05, 0.05, 0.2, 1000.0],
                "cost_units": "per-million"}
        response = client.post("/v1/sensitivity/local", json=body)
        assert response.status_code == 200
        assert response.json()["model"] == "binary-paper-compat"

    def test_missing_coordinate(self, client):
        body = {"model": "single", "point": {"G": 1.0}}
        response = client.post("/v1/sensitivity/local", json=body)
        assert response.status_code == 400
        assert response.json()["error"]["field"] == "point"


class TestSobolJobs:
    SPEC_BODY = {"model": "single-earnings", "samples_exponent": 8,
                 "second_order": True, "seed": 3}

    def direct_result(self):
        spec = SobolSpec(model="single-earnings", base_samples=256,
                         second_order=True, seed=3)
        return sobol_to_dict(sobol_analyze(spec))

    def test_sync_run_below_threshold(self, client):
        response = client.post("/v1/sensitivity/sobol", json=self.SPEC_BODY)
        assert response.status_code == 200
        record = response.json()
        assert record["state"] == "done"
        assert record["progress"] == 1.0
        assert canonical_json(record["result"]) == \
            canonical_json(self.direct_result())
        assert record["spec"]["samples_exponent"] == 8

    def test_async_job_lifecycle(self):
        with TestClient(create_app(sync_threshold=0)) as client:
            response = client.post("/v1/sensitivity/sobol", json=self.SPEC_BODY)
            assert response.status_code == 202
            record = response.json()
            # a small job may already have finished by response time
            assert record["state"] in ("queued", "running", "done")
            job_id = record["id"]
            seen_progress = [record["progress"]]
            deadline = time.monotonic() + 30.0
            while time.monotonic() < deadline:
                record = client.get(f"/v1/jobs/{job_id}").json()
                seen_progress.append(record["progress"])
                if record["state"] in ("done", "failed"):
                    break
                time.sleep(0.02)
            assert record["state"] == "done"
            assert seen_progress == sorted(seen_progress)
            assert canonical_json(record["result"]) == \
                canonical_json(self.direct_result())

    def test_unknown_job(self, client):
        response = client.get("/v1/jobs/deadbeef")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "not_found"

    def test_finished_jobs_expire(self):
        app = create_app(retention_seconds=0.0)
        with TestClient(app) as client:
            record = client.post("/v1/sensitivity/sobol",
                                 json=self.SPEC_BODY).json()
            assert record["state"] == "done"
            time.sleep(0.01)
            assert client.get(f"/v1/jobs/{record['id']}").status_code == 404


class TestJobManager:
    def test_failure_is_recorded(self):
        manager = JobManager()

        def broken(x):
            raise ValueError("model blew up")

        spec = SobolSpec(model=broken,
                         ranges={"x1": (0.0, 1.0), "x2": (0.0, 1.0)},
                         base_samples=16)
        record = manager.run_sync(spec)
        assert record["state"] == "failed"
        assert "blew up" in record["error"]
        assert record["result"] is None

    def test_queued_jobs_all_finish(self):
        manager = JobManager(max_concurrent=1)
        spec = SobolSpec(model="single-roi", base_samples=256, seed=1)
        ids = [manager.submit(spec)["id"] for _ in range(3)]
        deadline = time.monotonic() + 30.0
        while time.monotonic() < deadline:
            records = [manager.get(i) for i in ids]
            if all(r["state"] == "done" for r in records):
                break
            time.sleep(0.02)
        results = [canonical_json(manager.get(i)["result"]) for i in ids]
        assert results[0] == results[1] == results[2]

    def test_snapshot_is_a_copy(self):
        manager = JobManager()
        spec = SobolSpec(model="single-roi", base_samples=64, seed=1)
        record = manager.run_sync(spec)
        record["state"] = "mutated"
        assert manager.get(record["id"])["state"] == "done"
