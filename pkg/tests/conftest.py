import pathlib

import pytest
from hypothesis import HealthCheck, settings

from llmroi import (
    BinaryOutcomeScenario,
    LlmPricing,
    SingleOutcomeScenario,
    TransactionProfile,
)

settings.register_profile(
    "suite", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
SCENARIO_DIR = REPO_ROOT / "scenarios"


def make_llm1() -> SingleOutcomeScenario:
    return SingleOutcomeScenario(
        gain=10.0, loss=1.0, p_success=0.95,
        pricing=LlmPricing("llm-1", 10.0, 30.0),
        transaction=TransactionProfile(1000, 0))


def make_llm2() -> SingleOutcomeScenario:
    return SingleOutcomeScenario(
        gain=10.0, loss=1.0, p_success=0.80,
        pricing=LlmPricing("llm-2", 0.5, 1.5),
        transaction=TransactionProfile(1000, 0))


def make_screening() -> BinaryOutcomeScenario:
    return BinaryOutcomeScenario(
        gain=10.0, loss_fp=1.0, loss_fn=2.0,
        p_tp=0.2, p_fp=0.05, p_fn=0.05,
        pricing=LlmPricing("screening-model", 5.0, 0.0),
        transaction=TransactionProfile(1000, 0))


@pytest.fixture
def llm1():
    return make_llm1()


@pytest.fixture
def llm2():
    return make_llm2()


@pytest.fixture
def screening():
    return make_screening()


@pytest.fixture
def scenario_dir():
    return SCENARIO_DIR
