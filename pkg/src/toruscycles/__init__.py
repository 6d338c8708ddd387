"""Crossing limit cycles on the glued-square torus.

A library and CLI that, given a polynomial first integral on the unit square
with opposite edges identified, enumerates crossing limit cycles of the four
symbolic types (aa, bb, aba, bab) from their closing equations, applies the
quadratic existence criteria and general degree bounds, and certifies each
candidate numerically by tracing its level curve across the seams.
"""

from .polynomials import (
    BivariatePolynomial,
    IsolatedRoot,
    UnivariatePolynomial,
    real_roots_in_open_interval,
    resultant,
)
from .geometry import EdgePoint, FilippovClass, TorusPoint, classify_edge_point, transversality_check
from .enumeration import CycleCandidate, enumerate_aa, enumerate_aba, enumerate_bab, enumerate_bb
from .quadratic import QuadraticAbaAnalysis, quadratic_aba_analyze, quadratic_aba_region, quadratic_bb_conditions
from .verification import TracedCurve, brute_force_cycle_scan, trace_level_curve, verify_cycle

__version__ = "0.1.0"

__all__ = [
    "BivariatePolynomial",
    "UnivariatePolynomial",
    "IsolatedRoot",
    "real_roots_in_open_interval",
    "resultant",
    "TorusPoint",
    "EdgePoint",
    "FilippovClass",
    "classify_edge_point",
    "transversality_check",
    "CycleCandidate",
    "enumerate_aa",
    "enumerate_bb",
    "enumerate_aba",
    "enumerate_bab",
    "QuadraticAbaAnalysis",
    "quadratic_bb_conditions",
    "quadratic_aba_analyze",
    "quadratic_aba_region",
    "TracedCurve",
    "trace_level_curve",
    "verify_cycle",
    "brute_force_cycle_scan",
]
