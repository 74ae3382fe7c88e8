"""Ternary linear codes from vectorial functions: Walsh spectra, weights, minimality."""

from .codes import WeightDistribution, ab_status, analyze_code, weight_distribution
from .functions import classify, compose, extend_with_dummy, make_field_mult_bent, make_indicator_quadratic
from .gf3 import EisensteinInt, SubspaceSpec, TernaryVector
from .minimality import (
    MinimalityVerdict,
    corollary1_bound,
    covering_oracle,
    theorem3_check,
    theorem5_check,
    theorem6_build_and_verify,
)
from .tables import FunctionTable, load_tft, save_tft
from .walsh import WalshSpectrum, walsh_fast, walsh_naive

__all__ = [
    "EisensteinInt",
    "FunctionTable",
    "MinimalityVerdict",
    "SubspaceSpec",
    "TernaryVector",
    "WalshSpectrum",
    "WeightDistribution",
    "ab_status",
    "analyze_code",
    "classify",
    "compose",
    "corollary1_bound",
    "covering_oracle",
    "extend_with_dummy",
    "load_tft",
    "make_field_mult_bent",
    "make_indicator_quadratic",
    "save_tft",
    "theorem3_check",
    "theorem5_check",
    "theorem6_build_and_verify",
    "walsh_fast",
    "walsh_naive",
    "weight_distribution",
]
