import dataclasses
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from llmroi import (
    AnecdotalScenario,
    AssumptionWarning,
    BinaryOutcomeScenario,
    IntervalPricing,
    LlmPricing,
    OutcomeLottery,
    ProjectLedger,
    SingleOutcomeScenario,
    SuccessDecomposition,
    TransactionProfile,
    ValidationError,
    ZeroCostError,
    anecdotal_earnings_roi,
    composite_success_probability,
    compression_tradeoff,
    cost_per_token,
    evaluate_binary,
    evaluate_single,
    expected_utility,
    project_earnings_roi,
    single_outcome_lottery,
    transaction_cost,
)

money = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)
prob = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
price = st.floats(min_value=0.0, max_value=1e4, allow_nan=False)
tokens = st.integers(min_value=0, max_value=10 ** 6)


@st.composite
def single_scenarios(draw, min_cost=False):
    input_tokens = draw(st.integers(min_value=1 if min_cost else 0,
                                    max_value=10 ** 6))
    output_tokens = draw(tokens)
    if input_tokens + output_tokens == 0:
        output_tokens = 1
    return SingleOutcomeScenario(
        gain=draw(money), loss=draw(money), p_success=draw(prob),
        pricing=LlmPricing(
            "m",
            draw(st.floats(min_value=0.01 if min_cost else 0.0,
                           max_value=1e4, allow_nan=False)),
            draw(price)),
        transaction=TransactionProfile(input_tokens, output_tokens),
        extra_cost_per_transaction=draw(st.floats(min_value=0.0, max_value=10.0,
                                                  allow_nan=False)))


@st.composite
def binary_scenarios(draw):
    p_tp = draw(st.floats(min_value=0.0, max_value=0.5, allow_nan=False))
    p_fp = draw(st.floats(min_value=0.0, max_value=0.25, allow_nan=False))
    p_fn = draw(st.floats(min_value=0.0, max_value=0.25, allow_nan=False))
    return BinaryOutcomeScenario(
        gain=draw(money), loss_fp=draw(money), loss_fn=draw(money),
        p_tp=p_tp, p_fp=p_fp, p_fn=p_fn,
        pricing=LlmPricing("m", draw(price), draw(price)),
        transaction=TransactionProfile(draw(st.integers(1, 10 ** 6)),
                                       draw(tokens)))


class TestWorkedExamples:
    def test_premium_model(self, llm1):
        result = evaluate_single(llm1)
        assert result.transaction_cost == pytest.approx(0.01, abs=1e-15)
        assert result.expected_earnings == pytest.approx(9.44, abs=1e-9)
        assert result.expected_roi == pytest.approx(944.0, abs=1e-9)

    def test_budget_model(self, llm2):
        result = evaluate_single(llm2)
        assert result.transaction_cost == pytest.approx(0.0005, abs=1e-15)
        assert result.expected_earnings == pytest.approx(7.7995, abs=1e-9)
        assert result.expected_roi == pytest.approx(15599.0, abs=1e-9)

    def test_higher_earnings_lower_roi(self, llm1, llm2):
        a, b = evaluate_single(llm1), evaluate_single(llm2)
        assert a.expected_earnings > b.expected_earnings
        assert a.expected_roi < b.expected_roi

    def test_binary_variants(self, screening):
        canonical = evaluate_binary(screening, "canonical")
        compat = evaluate_binary(screening, "paper-compat")
        assert canonical.expected_earnings == pytest.approx(1.845, abs=1e-12)
        assert canonical.expected_roi == pytest.approx(369.0, abs=1e-9)
        assert compat.expected_earnings == pytest.approx(1.842, abs=1e-12)
        gap = canonical.expected_earnings - compat.expected_earnings
        assert gap == pytest.approx(0.003, abs=1e-12)

    def test_compression_economics(self, llm1):
        # shrink the prompt from 1000 to 525 tokens' worth of cost
        k = 1000.0 / 525.0
        cost_saved, delta_free = compression_tradeoff(llm1, k)
        assert cost_saved == pytest.approx(0.00475, abs=1e-12)
        assert delta_free == pytest.approx(0.00475, abs=1e-12)
        _, delta_paid = compression_tradeoff(llm1, k, success_delta=0.01)
        assert delta_free - delta_paid == pytest.approx(0.11, abs=1e-12)
        assert delta_paid == pytest.approx(-0.10525, abs=1e-12)


class TestTransactionCost:
    def test_per_million_convention(self):
        pricing = LlmPricing("m", 10.0, 30.0)
        assert transaction_cost(pricing, TransactionProfile(1000, 0)) == \
            pytest.approx(0.01, abs=1e-15)
        assert transaction_cost(pricing, TransactionProfile(1000, 100)) == \
            pytest.approx(0.013, abs=1e-15)
        assert transaction_cost(pricing, TransactionProfile(1000, 0), 0.5) == \
            pytest.approx(0.51, abs=1e-15)

    def test_negative_extra_rejected(self):
        with pytest.raises(ValidationError):
            transaction_cost(LlmPricing("m", 1.0), TransactionProfile(1, 0), -0.1)

    def test_interval_pricing(self):
        interval = IntervalPricing(cost_per_interval=3600.0,
                                   transactions_per_interval=1000.0,
                                   mean_transaction_tokens=1200.0)
        assert cost_per_token(interval) == pytest.approx(0.003, rel=1e-12)

    @given(single_scenarios())
    def test_cost_formula(self, s):
        expected = (s.transaction.input_tokens * s.pricing.input_price_per_million
                    + s.transaction.output_tokens
                    * s.pricing.output_price_per_million) / 1e6 \
            + s.extra_cost_per_transaction
        assert transaction_cost(s.pricing, s.transaction,
                                s.extra_cost_per_transaction) == expected


class TestSingleModel:
    @given(single_scenarios())
    def test_roi_cost_identity(self, s):
        result = evaluate_single(s)
        if result.transaction_cost == 0.0:
            assert result.expected_roi is None
            assert result.roi_undefined
        else:
            product = result.expected_roi * result.transaction_cost
            assert product == pytest.approx(result.expected_earnings, rel=1e-12,
                                            abs=1e-12)

    @given(single_scenarios())
    def test_lottery_equivalence(self, s):
        lottery = single_outcome_lottery(s)
        assert expected_utility(lottery) == pytest.approx(
            evaluate_single(s).expected_earnings, rel=1e-9, abs=1e-9)

    @given(single_scenarios())
    def test_contributions_sum_to_earnings(self, s):
        result = evaluate_single(s)
        total = sum(c.contribution for c in result.outcome_contributions)
        assert total == pytest.approx(result.expected_earnings, rel=1e-9, abs=1e-9)
        assert sum(c.probability for c in result.outcome_contributions) == \
            pytest.approx(1.0, abs=1e-9)

    @given(single_scenarios(), st.floats(min_value=0.001, max_value=0.1,
                                         allow_nan=False))
    def test_monotone_in_probability(self, s, bump):
        if s.p_success + bump > 1.0 or s.gain + s.loss == 0.0:
            return
        better = dataclasses.replace(s, p_success=s.p_success + bump)
        assert evaluate_single(better).expected_earnings >= \
            evaluate_single(s).expected_earnings

    @given(single_scenarios(), st.floats(min_value=0.01, max_value=100.0,
                                         allow_nan=False))
    def test_monotone_in_gain_and_loss(self, s, bump):
        richer = dataclasses.replace(s, gain=s.gain + bump)
        assert evaluate_single(richer).expected_earnings >= \
            evaluate_single(s).expected_earnings
        lossier = dataclasses.replace(s, loss=s.loss + bump)
        assert evaluate_single(lossier).expected_earnings <= \
            evaluate_single(s).expected_earnings

    def test_earnings_affine_in_probability(self, llm1):
        # E(p) must be exactly affine: midpoint equals average of endpoints
        lo = dataclasses.replace(llm1, p_success=0.2)
        mid = dataclasses.replace(llm1, p_success=0.5)
        hi = dataclasses.replace(llm1, p_success=0.8)
        e = [evaluate_single(s).expected_earnings for s in (lo, mid, hi)]
        assert e[1] == pytest.approx((e[0] + e[2]) / 2, rel=1e-12)

    def test_validation_field_names(self):
        with pytest.raises(ValidationError) as err:
            SingleOutcomeScenario(gain=1.0, loss=1.0, p_success=1.5,
                                  pricing=LlmPricing("m", 1.0),
                                  transaction=TransactionProfile(1, 0))
        assert err.value.field == "p_success"
        with pytest.raises(ValidationError) as err:
            TransactionProfile(0, 0)
        assert err.value.field == "input_tokens"
        with pytest.raises(ValidationError):
            LlmPricing("m", -1.0)


class TestBinaryModel:
    @given(binary_scenarios())
    def test_variant_gap_identity(self, s):
        ct = transaction_cost(s.pricing, s.transaction)
        canonical = evaluate_binary(s, "canonical").expected_earnings
        compat = evaluate_binary(s, "paper-compat").expected_earnings
        gap = 2.0 * ct * (s.p_tp + s.p_fn + s.p_fp)
        scale = max(1.0, abs(canonical), abs(compat))
        assert abs(canonical - compat - gap) <= 1e-12 * scale

    @given(binary_scenarios())
    def test_derived_true_negative(self, s):
        assert s.p_tn == pytest.approx(1.0 - s.p_tp - s.p_fp - s.p_fn, abs=1e-12)
        assert -1e-12 <= s.p_tn <= 1.0

    @given(binary_scenarios())
    def test_contributions_canonical_for_both_variants(self, s):
        for variant in ("canonical", "paper-compat"):
            result = evaluate_binary(s, variant)
            assert sum(c.probability for c in result.outcome_contributions) == \
                pytest.approx(1.0, abs=1e-9)
            total = sum(c.contribution for c in result.outcome_contributions)
            canonical = evaluate_binary(s, "canonical").expected_earnings
            assert total == pytest.approx(canonical, rel=1e-9, abs=1e-9)

    def test_probability_sum_guard(self):
        with pytest.raises(ValidationError):
            BinaryOutcomeScenario(
                gain=1.0, loss_fp=1.0, loss_fn=1.0,
                p_tp=0.6, p_fp=0.3, p_fn=0.2,
                pricing=LlmPricing("m", 1.0),
                transaction=TransactionProfile(10, 0))

    def test_unknown_variant(self, screening):
        with pytest.raises(ValidationError) as err:
            evaluate_binary(screening, "other")
        assert err.value.field == "variant"


class TestProjectAndAnecdotal:
    def test_project_ledger(self):
        ledger = ProjectLedger(gains=1000.0, losses=100.0, fixed_cost=200.0,
                               llm_variable_cost=50.0, other_variable_cost=50.0)
        earnings, roi = project_earnings_roi(ledger)
        assert earnings == pytest.approx(600.0, abs=1e-12)
        assert roi == pytest.approx(2.0, abs=1e-12)

    def test_ledger_consistency_check(self):
        ProjectLedger(benefits=900.0, gains=1000.0, losses=100.0, fixed_cost=1.0)
        with pytest.raises(ValidationError):
            ProjectLedger(benefits=901.0, gains=1000.0, losses=100.0,
                          fixed_cost=1.0)

    def test_ledger_zero_cost(self):
        with pytest.raises(ZeroCostError):
            project_earnings_roi(ProjectLedger(benefits=10.0))

    def test_anecdotal_model(self):
        s = AnecdotalScenario(total_transactions=1000, gain_transactions=900,
                              loss_transactions=10, gain_per_success=10.0,
                              loss_per_failure=1.0, transaction_cost=0.01)
        earnings, roi = anecdotal_earnings_roi(s)
        assert earnings == pytest.approx(9000.0 - 10.0 - 10.0, abs=1e-9)
        assert roi == pytest.approx(earnings / 10.0, rel=1e-12)

    def test_anecdotal_rare_loss_assumption(self):
        with pytest.warns(AssumptionWarning):
            AnecdotalScenario(total_transactions=10, gain_transactions=2,
                              loss_transactions=5, gain_per_success=1.0,
                              loss_per_failure=1.0, transaction_cost=0.01)

    def test_anecdotal_zero_spend(self):
        s = AnecdotalScenario(total_transactions=10, gain_transactions=5,
                              loss_transactions=0, gain_per_success=1.0,
                              loss_per_failure=1.0, transaction_cost=0.0)
        with pytest.raises(ZeroCostError):
            anecdotal_earnings_roi(s)


class TestLotteryAndComposite:
    def test_lottery_probability_guard(self):
        with pytest.raises(ValidationError) as err:
            OutcomeLottery(((0.5, 1.0), (0.4, -1.0)))
        assert "0.9" in str(err.value)

    def test_expected_utility(self):
        lottery = OutcomeLottery(((0.25, 4.0), (0.75, -1.0)))
        assert expected_utility(lottery) == pytest.approx(0.25, abs=1e-12)

    @given(prob, prob, prob)
    def test_composite_probability_bounds(self, pt, pbt, pbf):
        d = SuccessDecomposition(p_task=pt, p_business_given_task=pbt,
                                 p_business_given_task_failure=pbf)
        p = composite_success_probability(d)
        assert 0.0 <= p <= 1.0
        expected = pbt * pt + pbf * (1.0 - pt)
        assert p == pytest.approx(min(1.0, max(0.0, expected)), abs=1e-12)

    def test_composite_example(self):
        d = SuccessDecomposition(p_task=0.9, p_business_given_task=0.8,
                                 p_business_given_task_failure=0.1)
        assert composite_success_probability(d) == pytest.approx(0.73, abs=1e-12)


class TestCompression:
    @given(single_scenarios(min_cost=True),
           st.floats(min_value=1.01, max_value=100.0, allow_nan=False))
    def test_cost_saved_formula(self, s, k):
        ct = transaction_cost(s.pricing, s.transaction,
                              s.extra_cost_per_transaction)
        cost_saved, delta = compression_tradeoff(s, k)
        assert cost_saved == pytest.approx(ct * (1.0 - 1.0 / k), rel=1e-12)
        # with no accuracy loss, the whole saving lands in earnings; the
        # delta is a difference of two totals, so cancellation scales with
        # the earnings magnitude
        scale = max(1.0, abs(evaluate_single(s).expected_earnings))
        assert delta == pytest.approx(cost_saved, abs=1e-12 * scale)

    def test_rejects_expansion(self, llm1):
        with pytest.raises(ValidationError):
            compression_tradeoff(llm1, 0.9)

    def test_rejects_excess_probability_loss(self, llm1):
        with pytest.raises(ValidationError):
            compression_tradeoff(llm1, 2.0, success_delta=0.96)


def test_fractional_probability_midpoint(llm1, llm2):
    # earnings difference between the two scenarios is affine in shared P
    deltas = []
    for p in (0.3, 0.5, 0.7):
        a = dataclasses.replace(llm1, p_success=p)
        b = dataclasses.replace(llm2, p_success=p)
        deltas.append(evaluate_single(a).expected_earnings
                      - evaluate_single(b).expected_earnings)
    assert deltas[1] == pytest.approx((deltas[0] + deltas[2]) / 2, rel=1e-12)
    assert math.isclose(deltas[0], deltas[2], rel_tol=1e-9)
