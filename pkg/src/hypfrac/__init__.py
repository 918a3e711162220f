"""hypfrac: fractional integral operators, hyperbolic p-convexity machinery,
and numerical verification of the hyperbolic Hermite-Hadamard / Fejer
inequality family."""

__version__ = "0.1.0"

from .expressions import (
    DomainError,
    FuncExpr,
    Interval,
    build_exp,
    build_hyperbolic,
    build_power,
    cosh_centered,
    deriv,
    deriv2,
    sinh_centered,
)
from .grammar import GrammarError, parse_function, to_grammar
from .quadrature import Endpoint, QuadConfig, QuadResult, integrate, integrate_singular
from .fractional import (
    FracParams,
    Family,
    Side,
    exp_left,
    exp_right,
    fractional_integral,
    rl_left,
    rl_right,
)
from .convexity import (
    ConvexityReport,
    Method,
    Verdict,
    check_all,
    check_chord,
    check_gradient,
    check_phi_monotone,
    check_second_order,
    chord_majorant,
    classify_exponential,
    classify_power,
    methods_agree,
)
from .inequalities import (
    InequalityVerdict,
    InvalidWeightError,
    TheoremEvaluator,
    TheoremId,
    WeightSpec,
    eval_theorem,
    kernel_cosh_moment,
    kernel_sinh_moment,
    limit_sweep,
    unit_weight,
)
from .generators import (
    GenConfig,
    SampledFunction,
    gen_p_convex,
    gen_p_convex_ode,
    gen_positive_weight,
    gen_symmetric_weight,
    rng_for,
)
from .campaign import CampaignConfig, CampaignReport, run_campaign

__all__ = [
    "__version__",
    "DomainError", "FuncExpr", "Interval",
    "build_exp", "build_hyperbolic", "build_power",
    "cosh_centered", "sinh_centered", "deriv", "deriv2",
    "GrammarError", "parse_function", "to_grammar",
    "Endpoint", "QuadConfig", "QuadResult", "integrate", "integrate_singular",
    "FracParams", "Family", "Side",
    "rl_left", "rl_right", "exp_left", "exp_right", "fractional_integral",
    "ConvexityReport", "Method", "Verdict",
    "check_all", "check_chord", "check_gradient", "check_phi_monotone",
    "check_second_order", "chord_majorant",
    "classify_exponential", "classify_power", "methods_agree",
    "InequalityVerdict", "InvalidWeightError", "TheoremEvaluator", "TheoremId",
    "WeightSpec", "eval_theorem", "kernel_cosh_moment", "kernel_sinh_moment",
    "limit_sweep", "unit_weight",
    "GenConfig", "SampledFunction", "gen_p_convex", "gen_p_convex_ode",
    "gen_positive_weight", "gen_symmetric_weight", "rng_for",
    "CampaignConfig", "CampaignReport", "run_campaign",
]
