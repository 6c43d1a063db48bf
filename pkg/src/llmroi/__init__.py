"""Decision support for LLM deployment economics.

Core model: a transaction that costs ``C_t``, succeeds with probability
``P`` for a gain ``G`` and otherwise loses ``L``, has expected earnings
``G*P - L*(1-P) - C_t`` and return on investment ``earnings / C_t``. On
top of that sit break-even solvers, parameter sweeps, a binary-outcome
extension, analytic local sensitivities, and variance-based global
sensitivity analysis with a deterministic parallel evaluator.
"""

from ._version import __version__
from .econ import (
    SOLVE_PROBABILITY,
    SOLVE_TOKENS,
    SOLVE_UNIT_PRICE,
    SWEEP_VARIABLES,
    VARIANT_CANONICAL,
    VARIANT_COMPAT,
    VARIANTS,
    AnecdotalScenario,
    BinaryOutcomeScenario,
    Crossing,
    EvaluationResult,
    IntervalPricing,
    LlmPricing,
    OutcomeContribution,
    OutcomeLottery,
    ProjectLedger,
    SingleOutcomeScenario,
    SuccessDecomposition,
    SweepPoint,
    SweepResult,
    TransactionProfile,
    anecdotal_earnings_roi,
    breakeven,
    composite_success_probability,
    compression_tradeoff,
    cost_per_token,
    evaluate_binary,
    evaluate_single,
    expected_utility,
    project_earnings_roi,
    single_outcome_lottery,
    sweep,
    transaction_cost,
)
from .errors import (
    AssumptionWarning,
    DegenerateModelError,
    EngineError,
    NonFiniteOutputError,
    NoSolutionError,
    OutOfDomainError,
    SingularModelError,
    ValidationError,
    ZeroCostError,
)
from .kernels import active_backend, available_backends, get_kernels
from .sensitivity import (
    LocalSensitivity,
    ParameterVector,
    SaltelliDesign,
    SobolIndices,
    SobolSpec,
    default_ranges,
    finite_difference_gradient,
    finite_difference_hessian,
    gradient_binary,
    gradient_single,
    hessian_binary,
    hessian_single,
    local_report,
    model_variables,
    saltelli_sample,
    scalar_evaluator,
    sobol_analyze,
)

__all__ = [
    "__version__",
    "AnecdotalScenario",
    "AssumptionWarning",
    "BinaryOutcomeScenario",
    "Crossing",
    "DegenerateModelError",
    "EngineError",
    "EvaluationResult",
    "IntervalPricing",
    "LlmPricing",
    "LocalSensitivity",
    "NoSolutionError",
    "NonFiniteOutputError",
    "OutOfDomainError",
    "OutcomeContribution",
    "OutcomeLottery",
    "ParameterVector",
    "ProjectLedger",
    "SOLVE_PROBABILITY",
    "SOLVE_TOKENS",
    "SOLVE_UNIT_PRICE",
    "SWEEP_VARIABLES",
    "SaltelliDesign",
    "SingleOutcomeScenario",
    "SingularModelError",
    "SobolIndices",
    "SobolSpec",
    "SuccessDecomposition",
    "SweepPoint",
    "SweepResult",
    "TransactionProfile",
    "VARIANTS",
    "VARIANT_CANONICAL",
    "VARIANT_COMPAT",
    "ValidationError",
    "ZeroCostError",
    "active_backend",
    "anecdotal_earnings_roi",
    "available_backends",
    "breakeven",
    "composite_success_probability",
    "compression_tradeoff",
    "cost_per_token",
    "default_ranges",
    "evaluate_binary",
    "evaluate_single",
    "expected_utility",
    "finite_difference_gradient",
    "finite_difference_hessian",
    "get_kernels",
    "gradient_binary",
    "gradient_single",
    "hessian_binary",
    "hessian_single",
    "local_report",
    "model_variables",
    "project_earnings_roi",
    "saltelli_sample",
    "scalar_evaluator",
    "single_outcome_lottery",
    "sobol_analyze",
    "sweep",
    "transaction_cost",
]
