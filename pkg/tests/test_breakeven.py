import dataclasses

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from llmroi import (
    LlmPricing,
    NoSolutionError,
    OutOfDomainError,
    SingleOutcomeScenario,
    TransactionProfile,
    ValidationError,
    breakeven,
    evaluate_single,
    sweep,
)

from conftest import make_llm1, make_llm2


def _at_tokens(s: SingleOutcomeScenario, t: int) -> SingleOutcomeScenario:
    return dataclasses.replace(
        s, transaction=dataclasses.replace(s.transaction, input_tokens=t))


def _earnings_at_tokens(s: SingleOutcomeScenario, t: float) -> float:
    # affine closed form; independent arithmetic from the solver's
    gross = s.gain * s.p_success - s.loss * (1.0 - s.p_success)
    ct = (t * s.pricing.input_price_per_million
          + s.transaction.output_tokens * s.pricing.output_price_per_million) \
        / 1e6 + s.extra_cost_per_transaction
    return gross - ct


class TestProbability:
    def test_worked_example(self):
        reference = _at_tokens(make_llm1(), 128000)
        candidate = _at_tokens(make_llm2(), 128000)
        p_star = breakeven("probability", reference, candidate)
        assert p_star == pytest.approx(0.8395, abs=0.0005)

    def test_resubstitution(self):
        reference = _at_tokens(make_llm1(), 128000)
        candidate = _at_tokens(make_llm2(), 128000)
        p_star = breakeven("probability", reference, candidate)
        solved = dataclasses.replace(candidate, p_success=p_star)
        assert evaluate_single(solved).expected_earnings == pytest.approx(
            evaluate_single(reference).expected_earnings, abs=1e-9)

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
           st.floats(min_value=0.1, max_value=100.0, allow_nan=False),
           st.floats(min_value=0.0, max_value=100.0, allow_nan=False))
    def test_resubstitution_property(self, p_ref, gain, loss):
        reference = dataclasses.replace(make_llm1(), p_success=p_ref)
        candidate = dataclasses.replace(make_llm2(), gain=gain, loss=loss)
        assume(gain + loss > 1e-9)
        try:
            p_star = breakeven("probability", reference, candidate)
        except OutOfDomainError as err:
            root = err.root
            assert root < 0.0 or root > 1.0
            return
        solved = dataclasses.replace(candidate, p_success=p_star)
        e_ref = evaluate_single(reference).expected_earnings
        assert evaluate_single(solved).expected_earnings == pytest.approx(
            e_ref, rel=1e-9, abs=1e-9)

    def test_degenerate_payoffs(self):
        reference = make_llm1()
        candidate = dataclasses.replace(make_llm2(), gain=0.0, loss=0.0)
        with pytest.raises(NoSolutionError):
            breakeven("probability", reference, candidate)

    def test_out_of_domain_carries_root(self):
        # reference earns far more than the candidate can at p = 1
        reference = dataclasses.replace(make_llm1(), gain=1000.0)
        candidate = make_llm2()
        with pytest.raises(OutOfDomainError) as err:
            breakeven("probability", reference, candidate)
        assert err.value.root > 1.0


class TestTokens:
    def test_worked_example(self):
        t_star = breakeven("tokens", make_llm1(), make_llm2())
        assert t_star == pytest.approx(1.65 / 9.5e-6, rel=1e-12)

    def test_equal_earnings_at_root(self):
        reference, candidate = make_llm1(), make_llm2()
        t_star = breakeven("tokens", reference, candidate)
        assert _earnings_at_tokens(reference, t_star) == pytest.approx(
            _earnings_at_tokens(candidate, t_star), rel=1e-9, abs=1e-9)

    def test_matches_sweep_crossing(self):
        # earnings are affine in T, so the sweep's linear interpolation
        # places the crossing exactly at the closed-form root
        named = [("a", make_llm1()), ("b", make_llm2())]
        result = sweep(named, "T", 50.0, 200000.0, 101)
        t_star = breakeven("tokens", make_llm1(), make_llm2())
        assert len(result.crossings) == 1
        assert result.crossings[0].value == pytest.approx(t_star, rel=1e-9)

    def test_parallel_curves(self):
        reference = make_llm1()
        candidate = dataclasses.replace(
            make_llm2(), pricing=dataclasses.replace(
                make_llm2().pricing,
                input_price_per_million=reference.pricing.input_price_per_million))
        with pytest.raises(NoSolutionError):
            breakeven("tokens", reference, candidate)

    def test_negative_root_rejected(self):
        # candidate wins at zero tokens and is also cheaper per token, so
        # the curves only cross at a negative count
        reference = dataclasses.replace(make_llm1(), p_success=0.5)
        candidate = make_llm2()
        with pytest.raises(OutOfDomainError) as err:
            breakeven("tokens", reference, candidate)
        assert err.value.root <= 0.0


class TestUnitPrice:
    # the premium model's gross result leaves room for a positive price that
    # matches the budget model's earnings, so it plays the candidate here

    def test_worked_value(self):
        e_ref = evaluate_single(make_llm2()).expected_earnings
        k_cand = 10.0 * 0.95 - 1.0 * 0.05
        expected = (k_cand - e_ref) * 1e6 / 1000.0
        assert breakeven("unit_price", make_llm2(), make_llm1()) == \
            pytest.approx(expected, rel=1e-12)
        assert expected > 0.0

    def test_resubstitution(self):
        reference, candidate = make_llm2(), make_llm1()
        p_star = breakeven("unit_price", reference, candidate)
        solved = dataclasses.replace(
            candidate, pricing=dataclasses.replace(
                candidate.pricing, input_price_per_million=p_star))
        assert evaluate_single(solved).expected_earnings == pytest.approx(
            evaluate_single(reference).expected_earnings, rel=1e-9, abs=1e-9)

    def test_hyphen_alias(self):
        assert breakeven("unit-price", make_llm2(), make_llm1()) == \
            breakeven("unit_price", make_llm2(), make_llm1())

    def test_unreachable_reference_rejected(self):
        # no nonnegative price lets the budget model match the premium one
        with pytest.raises(OutOfDomainError) as err:
            breakeven("unit_price", make_llm1(), make_llm2())
        assert err.value.root < 0.0

    def test_zero_tokens_degenerate(self):
        candidate = dataclasses.replace(
            make_llm2(), transaction=TransactionProfile(0, 10))
        with pytest.raises(NoSolutionError):
            breakeven("unit_price", make_llm1(), candidate)

    def test_unknown_solve_for(self):
        with pytest.raises(ValidationError) as err:
            breakeven("price", make_llm1(), make_llm2())
        assert err.value.field == "solve_for"


class TestSweep:
    def test_probability_range_guard(self):
        with pytest.raises(ValidationError):
            sweep([("a", make_llm1())], "P", 0.0, 1.5, 10)

    def test_step_minimum(self):
        with pytest.raises(ValidationError):
            sweep([("a", make_llm1())], "T", 0.0, 100.0, 1)

    def test_two_step_endpoints_match_direct_evaluation(self):
        s = make_llm1()
        result = sweep([("a", s)], "G", 5.0, 15.0, 2)
        (_, points), = result.series
        lo = dataclasses.replace(s, gain=5.0)
        hi = dataclasses.replace(s, gain=15.0)
        assert points[0].earnings == evaluate_single(lo).expected_earnings
        assert points[1].earnings == evaluate_single(hi).expected_earnings
        assert points[0].roi == evaluate_single(lo).expected_roi

    def test_unknown_variable(self):
        with pytest.raises(ValidationError):
            sweep([("a", make_llm1())], "Q", 0.0, 1.0, 5)

    def test_price_sweep_zero_cost_point(self):
        s = dataclasses.replace(make_llm1(), extra_cost_per_transaction=0.0)
        result = sweep([("a", s)], "C", 0.0, 10.0, 3)
        (_, points), = result.series
        assert points[0].roi is None
        assert points[1].roi is not None
