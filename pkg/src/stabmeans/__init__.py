"""Asymptotic expansions of stable, stabilizable and stabilized bivariate means.

A symmetric homogeneous mean is described by the coefficients of

    M(x - t, x + t) ~ sum_n a_n t^(2n) x^(-2n+1)

and everything in this package manipulates those coefficient lists
exactly, with rationals or rational polynomials as coefficients.
"""

from .catalog import (
    MeanSpec,
    exact_coeffs,
    exact_coeffs_symbolic,
    mean_eval,
    oracle_coeffs,
    parse_mean_spec,
)
from .exact import Poly, parse_poly, poly_exact_divide, symbols
from .expansion import (
    MeanCoeffs,
    d_s_seqs,
    expansion_eval,
    generic_coeffs,
    resultant_coeffs,
    shifted_coeffs,
    stabilizable_coeffs,
    stabilized_coeffs,
    stable_coeffs,
)
from .series import convolve, gould_power

__version__ = "0.1.0"

__all__ = [
    "MeanCoeffs",
    "MeanSpec",
    "Poly",
    "convolve",
    "d_s_seqs",
    "exact_coeffs",
    "exact_coeffs_symbolic",
    "expansion_eval",
    "generic_coeffs",
    "gould_power",
    "mean_eval",
    "oracle_coeffs",
    "parse_mean_spec",
    "parse_poly",
    "poly_exact_divide",
    "resultant_coeffs",
    "shifted_coeffs",
    "stabilizable_coeffs",
    "stabilized_coeffs",
    "stable_coeffs",
    "symbols",
]
