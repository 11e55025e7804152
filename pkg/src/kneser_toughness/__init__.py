"""Exact toughness verification for Kneser graphs K(n,k)."""

from __future__ import annotations

__version__ = "0.1.0"

from .combinatorics import CascadeRep, binomial, cascade_decompose, kk_neighborhood_bound, shadow_lower_bound
from .graphs import KneserParams, SimpleGraph, brute_force_toughness, build_kneser
from .spectral import brouwer_gu_floor, hmp_coefficient, hoffman_bound, kneser_spectrum
from .verifier import ToughnessCertificate, recheck_certificate, tk_window, verify_toughness

__all__ = [
    "CascadeRep", "KneserParams", "SimpleGraph", "ToughnessCertificate", "__version__",
    "binomial", "brouwer_gu_floor", "brute_force_toughness", "build_kneser", "cascade_decompose",
    "hmp_coefficient", "hoffman_bound", "kk_neighborhood_bound", "kneser_spectrum",
    "recheck_certificate", "shadow_lower_bound", "tk_window", "verify_toughness",
]
