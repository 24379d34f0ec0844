"""Exact linear forms, certified hypergeometric evaluation and group tools for
rational approximations to Catalan's constant, log 2, pi^2 and zeta values."""

from .ball import BallReal, const_eval, evaluate_form
from .exact import PiMonomial, bernoulli, gamma_ratio, lcm_upto
from .hyper import PfqSpec, eval_pfq, sum_rational_series
from .linforms import ConstantLinearForm
from .ratfunc import FactoredRationalFunction, analyze_symmetry, partial_fractions, sum_linear_form

__version__ = "0.1.0"

__all__ = [
    "BallReal",
    "ConstantLinearForm",
    "FactoredRationalFunction",
    "PfqSpec",
    "PiMonomial",
    "analyze_symmetry",
    "bernoulli",
    "const_eval",
    "eval_pfq",
    "evaluate_form",
    "gamma_ratio",
    "lcm_upto",
    "partial_fractions",
    "sum_linear_form",
    "sum_rational_series",
]
