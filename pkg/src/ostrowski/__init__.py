"""Numerically certified integral-remainder bounds for functions whose
higher derivatives have convex absolute value.

The package evaluates the exact kernel representation of the quadrature
remainder, computes several families of a-priori bounds on it, validates
every bound against an adaptive-quadrature oracle, and reports tightness
and stated-vs-derived formula discrepancies.
"""

from .analysis import (
    SweepRecord,
    SweepResult,
    SweepSpec,
    best_bound,
    default_specs,
    errata_report,
    sweep,
    sweep_many,
    write_csv,
    write_findings,
    write_json,
)
from .bounds import (
    BoundReport,
    BoundRequest,
    Family,
    Variant,
    bound_alt_holder,
    bound_classic,
    bound_convex_direct,
    bound_holder,
    bound_power_mean,
    corollary_closed_form,
    evaluate,
)
from .corpus import CorpusEntry, corpus, load_corpus_file, positive_entries
from .expr import ExprFunction, TaylorJet, deriv, parse, taylor
from .identity import (
    IdentityReport,
    RuleForm,
    kernel_K,
    kernel_T,
    taylor_sum,
    verify_identity,
)
from .means import (
    MeanPair,
    arithmetic_mean,
    generalized_log_mean_pow,
    logarithmic_mean,
    power_gap,
    proposition1_bound,
    proposition2_bound,
)
from .quadrature import (
    ConvexityVerdict,
    Interval,
    QuadResult,
    check_convexity,
    integrate,
)

__all__ = [
    "BoundReport",
    "BoundRequest",
    "ConvexityVerdict",
    "CorpusEntry",
    "ExprFunction",
    "Family",
    "IdentityReport",
    "Interval",
    "MeanPair",
    "QuadResult",
    "RuleForm",
    "SweepRecord",
    "SweepResult",
    "SweepSpec",
    "TaylorJet",
    "Variant",
    "arithmetic_mean",
    "best_bound",
    "bound_alt_holder",
    "bound_classic",
    "bound_convex_direct",
    "bound_holder",
    "bound_power_mean",
    "check_convexity",
    "corollary_closed_form",
    "corpus",
    "default_specs",
    "deriv",
    "errata_report",
    "evaluate",
    "generalized_log_mean_pow",
    "integrate",
    "kernel_K",
    "kernel_T",
    "load_corpus_file",
    "logarithmic_mean",
    "parse",
    "positive_entries",
    "power_gap",
    "proposition1_bound",
    "proposition2_bound",
    "sweep",
    "sweep_many",
    "taylor",
    "taylor_sum",
    "verify_identity",
    "write_csv",
    "write_findings",
    "write_json",
]

__version__ = "0.1.0"
