"""Closed-form economic models for LLM deployment decisions.

The central objects are two transaction-level scenario types and the
operations that evaluate them:

* :class:`SingleOutcomeScenario`: one transaction either succeeds (gain G)
  or fails (loss L) with probability P, at a token-priced transaction cost.
  Expected earnings are ``G*P - L*(1-P) - C_t``.
* :class:`BinaryOutcomeScenario`: a cost-sensitive classifier with the four
  confusion-matrix outcomes, distinct false-positive and false-negative
  losses, and the derived true-negative probability.

Everything in this module is a pure function over immutable values; results
carry enough structure (per-outcome contributions, transaction cost) for
callers to audit the arithmetic.

Prices are stored per million tokens; ``transaction_cost`` divides by 1e6.
Return on investment is always earnings divided by cost, so the identity
``roi * transaction_cost == expected_earnings`` holds by construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AssumptionWarning,
    NoSolutionError,
    OutOfDomainError,
    ValidationError,
    ZeroCostError,
)

VARIANT_CANONICAL = "canonical"
VARIANT_COMPAT = "paper-compat"
VARIANTS = (VARIANT_CANONICAL, VARIANT_COMPAT)

SOLVE_PROBABILITY = "probability"
SOLVE_TOKENS = "tokens"
SOLVE_UNIT_PRICE = "unit_price"

SWEEP_VARIABLES = ("T", "P", "C", "G", "L")


def _number(value, field_name: str, *, minimum: float | None = None,
            maximum: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{field_name} must be a number, got {value!r}",
                              field=field_name, value=value)
    v = float(value)
    if not math.isfinite(v):
        raise ValidationError(f"{field_name} must be finite, got {value!r}",
                              field=field_name, value=value)
    if minimum is not None and v < minimum:
        raise ValidationError(f"{field_name} must be >= {minimum}, got {value!r}",
                              field=field_name, value=value)
    if maximum is not None and v > maximum:
        raise ValidationError(f"{field_name} must be <= {maximum}, got {value!r}",
                              field=field_name, value=value)
    return v


def _integer(value, field_name: str, *, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{field_name} must be an integer, got {value!r}",
                              field=field_name, value=value)
    if minimum is not None and value < minimum:
        raise ValidationError(f"{field_name} must be >= {minimum}, got {value!r}",
                              field=field_name, value=value)
    return value


def _probability(value, field_name: str) -> float:
    return _number(value, field_name, minimum=0.0, maximum=1.0)


@dataclass(frozen=True)
class ProjectLedger:
    """Project-level money flows: benefits (or gains/losses) against costs.

    ``benefits`` may be given directly or derived as ``gains - losses``.
    Giving all three is allowed only when they are consistent.
    """

    benefits: float | None = None
    gains: float | None = None
    losses: float | None = None
    fixed_cost: float = 0.0
    llm_variable_cost: float = 0.0
    other_variable_cost: float = 0.0

    def __post_init__(self):
        for name in ("fixed_cost", "llm_variable_cost", "other_variable_cost"):
            _number(getattr(self, name), name, minimum=0.0)
        if self.gains is not None:
            _number(self.gains, "gains", minimum=0.0)
        if self.losses is not None:
            _number(self.losses, "losses", minimum=0.0)
        if self.losses is not None and self.gains is None:
            raise ValidationError("losses given without gains", field="gains")
        if self.benefits is None and self.gains is None:
            raise ValidationError("either benefits or gains must be provided",
                                  field="benefits")
        if self.benefits is not None:
            _number(self.benefits, "benefits")
            if self.gains is not None:
                derived = self.gains - (self.losses or 0.0)
                if not math.isclose(self.benefits, derived,
                                    rel_tol=1e-9, abs_tol=1e-9):
                    raise ValidationError(
                        f"benefits ({self.benefits}) != gains - losses ({derived})",
                        field="benefits", value=self.benefits)

    @property
    def net_benefits(self) -> float:
        if self.benefits is not None:
            return self.benefits
        return self.gains - (self.losses or 0.0)

    @property
    def total_cost(self) -> float:
        return self.fixed_cost + self.llm_variable_cost + self.other_variable_cost


@dataclass(frozen=True)
class LlmPricing:
    """Token prices for one model, in currency per million tokens."""

    name: str
    input_price_per_million: float
    output_price_per_million: float = 0.0

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValidationError("pricing name must be a nonempty string",
                                  field="name", value=self.name)
        _number(self.input_price_per_million, "input_price_per_million", minimum=0.0)
        _number(self.output_price_per_million, "output_price_per_million", minimum=0.0)


@dataclass(frozen=True)
class TransactionProfile:
    """Token counts of one transaction."""

    input_tokens: int
    output_tokens: int = 0

    def __post_init__(self):
        _integer(self.input_tokens, "input_tokens", minimum=0)
        _integer(self.output_tokens, "output_tokens", minimum=0)
        if self.input_tokens + self.output_tokens < 1:
            raise ValidationError("a transaction needs at least one token",
                                  field="input_tokens", value=self.input_tokens)

    @property
    def total_tokens(self) -> int:
        return self.input_tokens + self.output_tokens


@dataclass(frozen=True)
class IntervalPricing:
    """Time-interval billing from which a per-token cost is derived."""

    cost_per_interval: float
    transactions_per_interval: float
    mean_transaction_tokens: float

    def __post_init__(self):
        _number(self.cost_per_interval, "cost_per_interval", minimum=0.0)
        if _number(self.transactions_per_interval, "transactions_per_interval") <= 0:
            raise ValidationError("transactions_per_interval must be > 0",
                                  field="transactions_per_interval",
                                  value=self.transactions_per_interval)
        if _number(self.mean_transaction_tokens, "mean_transaction_tokens") <= 0:
            raise ValidationError("mean_transaction_tokens must be > 0",
                                  field="mean_transaction_tokens",
                                  value=self.mean_transaction_tokens)


@dataclass(frozen=True)
class AnecdotalScenario:
    """Aggregate counting model: N transactions, M gains, Q losses.

    The model presumes losses are rare (Q much smaller than M); breaking
    that presumption is legal but draws an :class:`AssumptionWarning`.
    """

    total_transactions: int
    gain_transactions: int
    loss_transactions: int
    gain_per_success: float
    loss_per_failure: float
    transaction_cost: float

    def __post_init__(self):
        n = _integer(self.total_transactions, "total_transactions", minimum=1)
        m = _integer(self.gain_transactions, "gain_transactions", minimum=0)
        q = _integer(self.loss_transactions, "loss_transactions", minimum=0)
        if m > n:
            raise ValidationError("gain_transactions cannot exceed total_transactions",
                                  field="gain_transactions", value=m)
        if q > n:
            raise ValidationError("loss_transactions cannot exceed total_transactions",
                                  field="loss_transactions", value=q)
        _number(self.gain_per_success, "gain_per_success", minimum=0.0)
        _number(self.loss_per_failure, "loss_per_failure", minimum=0.0)
        _number(self.transaction_cost, "transaction_cost", minimum=0.0)
        if q > m:
            warnings.warn(
                f"loss transactions ({q}) exceed gain transactions ({m}); "
                "this model assumes losses are rare",
                AssumptionWarning, stacklevel=3)


@dataclass(frozen=True)
class SuccessDecomposition:
    """Business success probability decomposed over LLM task success."""

    p_task: float
    p_business_given_task: float
    p_business_given_task_failure: float = 0.0

    def __post_init__(self):
        _probability(self.p_task, "p_task")
        _probability(self.p_business_given_task, "p_business_given_task")
        _probability(self.p_business_given_task_failure, "p_business_given_task_failure")


@dataclass(frozen=True)
class SingleOutcomeScenario:
    """One transaction with a binary succeed/fail outcome."""

    gain: float
    loss: float
    p_success: float
    pricing: LlmPricing
    transaction: TransactionProfile
    extra_cost_per_transaction: float = 0.0

    def __post_init__(self):
        _number(self.gain, "gain", minimum=0.0)
        _number(self.loss, "loss", minimum=0.0)
        _probability(self.p_success, "p_success")
        _number(self.extra_cost_per_transaction, "extra_cost_per_transaction", minimum=0.0)
        if not isinstance(self.pricing, LlmPricing):
            raise ValidationError("pricing must be an LlmPricing", field="pricing")
        if not isinstance(self.transaction, TransactionProfile):
            raise ValidationError("transaction must be a TransactionProfile",
                                  field="transaction")


@dataclass(frozen=True)
class BinaryOutcomeScenario:
    """A classification transaction with confusion-matrix outcomes.

    Only three probabilities are stored; ``p_tn`` is always derived from the
    sum constraint and is never an independent degree of freedom.
    """

    gain: float
    loss_fp: float
    loss_fn: float
    p_tp: float
    p_fp: float
    p_fn: float
    pricing: LlmPricing
    transaction: TransactionProfile

    def __post_init__(self):
        _number(self.gain, "gain", minimum=0.0)
        _number(self.loss_fp, "loss_fp", minimum=0.0)
        _number(self.loss_fn, "loss_fn", minimum=0.0)
        _probability(self.p_tp, "p_tp")
        _probability(self.p_fp, "p_fp")
        _probability(self.p_fn, "p_fn")
        total = self.p_tp + self.p_fp + self.p_fn
        if total > 1.0 + 1e-12:
            raise ValidationError(
                f"p_tp + p_fp + p_fn = {total} exceeds 1", field="p_tp", value=total)
        if not isinstance(self.pricing, LlmPricing):
            raise ValidationError("pricing must be an LlmPricing", field="pricing")
        if not isinstance(self.transaction, TransactionProfile):
            raise ValidationError("transaction must be a TransactionProfile",
                                  field="transaction")

    @property
    def p_tn(self) -> float:
        return 1.0 - (self.p_tp + self.p_fp + self.p_fn)


@dataclass(frozen=True)
class OutcomeContribution:
    outcome: str
    probability: float
    contribution: float


@dataclass(frozen=True)
class EvaluationResult:
    """Expected earnings and return on investment of one scenario.

    ``expected_roi`` is ``None`` when the transaction cost is zero (a ratio
    over zero cost is undefined, not infinite). ``outcome_contributions``
    lists each outcome's probability and its signed share of the earnings.
    """

    expected_earnings: float
    expected_roi: float | None
    transaction_cost: float
    outcome_contributions: tuple[OutcomeContribution, ...]

    @property
    def roi_undefined(self) -> bool:
        return self.expected_roi is None


@dataclass(frozen=True)
class OutcomeLottery:
    """A finite lottery of (probability, utility) outcomes."""

    outcomes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.outcomes:
            raise ValidationError("lottery needs at least one outcome", field="outcomes")
        for i, (p, _u) in enumerate(self.outcomes):
            _probability(p, f"outcomes[{i}].probability")
        total = sum(p for p, _ in self.outcomes)
        if not math.isclose(total, 1.0, rel_tol=0.0, abs_tol=1e-9):
            raise ValidationError(
                f"outcome probabilities sum to {total!r}, expected 1",
                field="outcomes", value=total)


def expected_utility(lottery: OutcomeLottery) -> float:
    """Probability-weighted utility sum of a lottery."""
    return sum(p * u for p, u in lottery.outcomes)


def project_earnings_roi(ledger: ProjectLedger) -> tuple[float, float]:
    """Earnings and return on investment at project granularity.

    Earnings are net benefits minus total cost; the return is their ratio.
    """
    cost = ledger.total_cost
    earnings = ledger.net_benefits - cost
    if cost <= 0.0:
        raise ZeroCostError("return on investment is undefined at zero total cost")
    return earnings, earnings / cost


def cost_per_token(interval: IntervalPricing) -> float:
    """Per-token cost implied by interval billing."""
    return interval.cost_per_interval / (
        interval.transactions_per_interval * interval.mean_transaction_tokens)


def transaction_cost(pricing: LlmPricing, profile: TransactionProfile,
                     extra: float = 0.0) -> float:
    """Cost of one transaction under per-million token pricing."""
    _number(extra, "extra", minimum=0.0)
    return _transaction_cost_real(pricing, profile.input_tokens,
                                  profile.output_tokens, extra)


def _transaction_cost_real(pricing: LlmPricing, input_tokens: float,
                           output_tokens: float, extra: float) -> float:
    # internal variant that permits fractional token counts (sweeps, compression)
    return (input_tokens * pricing.input_price_per_million
            + output_tokens * pricing.output_price_per_million) / 1e6 + extra


def anecdotal_earnings_roi(s: AnecdotalScenario) -> tuple[float, float]:
    """Earnings and return for the aggregate counting model."""
    spend = s.total_transactions * s.transaction_cost
    earnings = (s.gain_per_success * s.gain_transactions
                - spend
                - s.loss_per_failure * s.loss_transactions)
    if spend <= 0.0:
        raise ZeroCostError("return on investment is undefined at zero total cost")
    return earnings, earnings / spend


def composite_success_probability(d: SuccessDecomposition) -> float:
    """Total probability of business success over LLM task success/failure."""
    p = (d.p_business_given_task * d.p_task
         + d.p_business_given_task_failure * (1.0 - d.p_task))
    # guard rounding at the boundary; the exact value is always in [0, 1]
    return min(1.0, max(0.0, p))


def _single_result(gain: float, loss: float, p: float, ct: float) -> EvaluationResult:
    earnings = gain * p - loss * (1.0 - p) - ct
    contributions = (
        OutcomeContribution("success", p, (gain - ct) * p),
        OutcomeContribution("failure", 1.0 - p, -(loss + ct) * (1.0 - p)),
    )
    roi = earnings / ct if ct > 0.0 else None
    return EvaluationResult(earnings, roi, ct, contributions)


def evaluate_single(s: SingleOutcomeScenario) -> EvaluationResult:
    """Expected earnings and return of a single-outcome scenario.

    The return is the earnings over the transaction cost, equivalently the
    gross result over cost minus one. Zero cost leaves it undefined.
    """
    ct = transaction_cost(s.pricing, s.transaction, s.extra_cost_per_transaction)
    return _single_result(s.gain, s.loss, s.p_success, ct)


def evaluate_binary(s: BinaryOutcomeScenario,
                    variant: str = VARIANT_CANONICAL) -> EvaluationResult:
    """Expected earnings and return of a binary-classification scenario.

    Two expression variants are supported. ``canonical`` charges the
    transaction cost exactly once: ``G*p_tp - L_fn*p_fn - L_fp*p_fp - C_t``.
    ``paper-compat`` reproduces a published form that also folds twice the
    transaction cost into each non-true-negative outcome term; it differs
    from canonical by exactly ``2*C_t*(p_tp + p_fn + p_fp)``.

    ``outcome_contributions`` always describe the underlying outcome lottery
    (each outcome's probability times its canonical payoff); only the
    ``expected_earnings``/``expected_roi`` scalars follow the variant.
    """
    if variant not in VARIANTS:
        raise ValidationError(
            f"variant must be one of {VARIANTS}, got {variant!r}",
            field="variant", value=variant)
    ct = transaction_cost(s.pricing, s.transaction)
    p_tn = s.p_tn
    if variant == VARIANT_CANONICAL:
        earnings = s.gain * s.p_tp - s.loss_fn * s.p_fn - s.loss_fp * s.p_fp - ct
    else:
        ct2 = 2.0 * ct
        earnings = ((s.gain - ct2) * s.p_tp
                    - (s.loss_fn + ct2) * s.p_fn
                    - (s.loss_fp + ct2) * s.p_fp
                    - ct)
    contributions = (
        OutcomeContribution("true_positive", s.p_tp, (s.gain - ct) * s.p_tp),
        OutcomeContribution("true_negative", p_tn, -ct * p_tn),
        OutcomeContribution("false_negative", s.p_fn, -(s.loss_fn + ct) * s.p_fn),
        OutcomeContribution("false_positive", s.p_fp, -(s.loss_fp + ct) * s.p_fp),
    )
    roi = earnings / ct if ct > 0.0 else None
    return EvaluationResult(earnings, roi, ct, contributions)


def _gross_result(s: SingleOutcomeScenario) -> float:
    # expected gain/loss balance before any cost
    return s.gain * s.p_success - s.loss * (1.0 - s.p_success)


def breakeven(solve_for: str, reference: SingleOutcomeScenario,
              candidate: SingleOutcomeScenario) -> float:
    """Value of one candidate parameter at which both scenarios earn the same.

    ``solve_for`` picks the unknown; the candidate's stored value for that
    parameter is ignored:

    * ``probability``: candidate success probability equating its earnings
      with the reference earnings at the reference's own parameters.
    * ``tokens``: the shared input-token count at which the two earnings
      curves over T cross (both scenarios priced at the same unknown T,
      output tokens held fixed).
    * ``unit_price``: candidate input price (per million tokens) equating
      its earnings with the reference earnings.

    Roots outside the variable's domain raise :class:`OutOfDomainError`
    carrying the raw root; a degenerate coefficient on the unknown raises
    :class:`NoSolutionError`.
    """
    solve_for = solve_for.replace("-", "_")
    if solve_for == SOLVE_PROBABILITY:
        e_ref = evaluate_single(reference).expected_earnings
        ct = transaction_cost(candidate.pricing, candidate.transaction,
                              candidate.extra_cost_per_transaction)
        denom = candidate.gain + candidate.loss
        if denom == 0.0:
            raise NoSolutionError(
                "earnings do not depend on the probability when gain + loss = 0")
        root = (e_ref + candidate.loss + ct) / denom
        if not 0.0 <= root <= 1.0:
            raise OutOfDomainError(
                f"break-even probability {root} lies outside [0, 1]", root=root)
        return root

    if solve_for == SOLVE_TOKENS:
        # crossing of the two earnings curves as functions of a common
        # input-token count; fixed token-independent parts keep their values
        a_ref = reference.pricing.input_price_per_million / 1e6
        a_cand = candidate.pricing.input_price_per_million / 1e6
        k_ref = (_gross_result(reference)
                 - reference.transaction.output_tokens
                 * reference.pricing.output_price_per_million / 1e6
                 - reference.extra_cost_per_transaction)
        k_cand = (_gross_result(candidate)
                  - candidate.transaction.output_tokens
                  * candidate.pricing.output_price_per_million / 1e6
                  - candidate.extra_cost_per_transaction)
        if a_ref == a_cand:
            raise NoSolutionError(
                "earnings curves are parallel: equal per-token input prices")
        root = (k_ref - k_cand) / (a_ref - a_cand)
        if root <= 0.0:
            raise OutOfDomainError(
                f"break-even token count {root} is not positive", root=root)
        return root

    if solve_for == SOLVE_UNIT_PRICE:
        e_ref = evaluate_single(reference).expected_earnings
        tokens = candidate.transaction.input_tokens
        if tokens == 0:
            raise NoSolutionError(
                "earnings do not depend on the input price without input tokens")
        k_cand = (_gross_result(candidate)
                  - candidate.transaction.output_tokens
                  * candidate.pricing.output_price_per_million / 1e6
                  - candidate.extra_cost_per_transaction)
        root = (k_cand - e_ref) * 1e6 / tokens
        if root <= 0.0:
            raise OutOfDomainError(
                f"break-even unit price {root} is not positive", root=root)
        return root

    raise ValidationError(
        f"solve_for must be one of probability, tokens, unit_price; got {solve_for!r}",
        field="solve_for", value=solve_for)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    earnings: float
    roi: float | None


@dataclass(frozen=True)
class Crossing:
    scenario_a: str
    scenario_b: str
    value: float
    earnings: float


@dataclass(frozen=True)
class SweepResult:
    variable: str
    series: tuple[tuple[str, tuple[SweepPoint, ...]], ...]
    crossings: tuple[Crossing, ...]


def _evaluate_single_at(s: SingleOutcomeScenario, variable: str,
                        x: float) -> tuple[float, float | None]:
    gain, loss, p = s.gain, s.loss, s.p_success
    input_tokens = float(s.transaction.input_tokens)
    price_in = s.pricing.input_price_per_million
    if variable == "G":
        gain = x
    elif variable == "L":
        loss = x
    elif variable == "P":
        p = x
    elif variable == "T":
        input_tokens = x
    elif variable == "C":
        price_in = x
    ct = (input_tokens * price_in
          + s.transaction.output_tokens * s.pricing.output_price_per_million) / 1e6 \
        + s.extra_cost_per_transaction
    earnings = gain * p - loss * (1.0 - p) - ct
    return earnings, (earnings / ct if ct > 0.0 else None)


def sweep(named_scenarios: Sequence[tuple[str, SingleOutcomeScenario]],
          variable: str, start: float, stop: float, steps: int) -> SweepResult:
    """Evaluate every scenario on an evenly spaced grid of one variable.

    ``variable`` is one of T (input tokens), P, C (input price per million),
    G, L. Crossings between each scenario pair are located by sign change of
    the earnings difference and refined by linear interpolation.
    """
    if variable not in SWEEP_VARIABLES:
        raise ValidationError(
            f"variable must be one of {SWEEP_VARIABLES}, got {variable!r}",
            field="variable", value=variable)
    start = _number(start, "from")
    stop = _number(stop, "to")
    steps = _integer(steps, "steps", minimum=2)
    if not start < stop:
        raise ValidationError(f"from ({start}) must be < to ({stop})",
                              field="from", value=start)
    if variable == "P" and (start < 0.0 or stop > 1.0):
        raise ValidationError("probability sweep range must stay inside [0, 1]",
                              field="from", value=start)
    if variable != "P" and start < 0.0:
        raise ValidationError(f"{variable} sweep range must be nonnegative",
                              field="from", value=start)
    if not named_scenarios:
        raise ValidationError("sweep needs at least one scenario", field="scenarios")

    xs = [start + (stop - start) * i / (steps - 1) for i in range(steps)]
    series = []
    for name, scenario in named_scenarios:
        points = tuple(SweepPoint(x, *_evaluate_single_at(scenario, variable, x))
                       for x in xs)
        series.append((name, points))

    crossings = []
    for i in range(len(series)):
        for j in range(i + 1, len(series)):
            name_a, pts_a = series[i]
            name_b, pts_b = series[j]
            for k in range(steps - 1):
                d0 = pts_a[k].earnings - pts_b[k].earnings
                d1 = pts_a[k + 1].earnings - pts_b[k + 1].earnings
                if d0 == 0.0:
                    crossings.append(Crossing(name_a, name_b, xs[k], pts_a[k].earnings))
                elif d0 * d1 < 0.0:
                    frac = d0 / (d0 - d1)
                    x_star = xs[k] + frac * (xs[k + 1] - xs[k])
                    e_star = (pts_a[k].earnings
                              + frac * (pts_a[k + 1].earnings - pts_a[k].earnings))
                    crossings.append(Crossing(name_a, name_b, x_star, e_star))
            d_last = pts_a[-1].earnings - pts_b[-1].earnings
            if d_last == 0.0:
                crossings.append(Crossing(name_a, name_b, xs[-1], pts_a[-1].earnings))
    return SweepResult(variable, tuple(series), tuple(crossings))


def compression_tradeoff(s: SingleOutcomeScenario, compression_factor: float,
                         success_delta: float = 0.0) -> tuple[float, float]:
    """Cost saved and earnings change from compressing the transaction.

    Compressing by a factor k > 1 scales the whole per-transaction cost to
    C_t/k (token counts are treated as real-valued internally); it may also
    degrade the success probability by ``success_delta``. Returns
    ``(cost_saved, earnings_delta)`` where ``cost_saved = C_t*(1 - 1/k)``
    and ``earnings_delta`` is the compressed minus the original earnings.
    """
    k = _number(compression_factor, "compression_factor")
    if k <= 1.0:
        raise ValidationError(f"compression_factor must be > 1, got {k}",
                              field="compression_factor", value=k)
    delta = _number(success_delta, "success_delta", minimum=0.0)
    if s.p_success - delta < 0.0:
        raise ValidationError(
            f"success_delta ({delta}) exceeds the success probability ({s.p_success})",
            field="success_delta", value=delta)
    ct = transaction_cost(s.pricing, s.transaction, s.extra_cost_per_transaction)
    cost_saved = ct * (1.0 - 1.0 / k)
    p_new = s.p_success - delta
    e_original = evaluate_single(s).expected_earnings
    e_compressed = s.gain * p_new - s.loss * (1.0 - p_new) - ct / k
    return cost_saved, e_compressed - e_original


def single_outcome_lottery(s: SingleOutcomeScenario) -> OutcomeLottery:
    """The outcome lottery whose expected utility equals the scenario's earnings."""
    ct = transaction_cost(s.pricing, s.transaction, s.extra_cost_per_transaction)
    return OutcomeLottery((
        (s.p_success, s.gain - ct),
        (1.0 - s.p_success, -(s.loss + ct)),
    ))
