"""Closed-form Kneser spectra and the eigenvalue bounds built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import binomial
from .graphs import KneserParams, SimpleGraph

ANNIHILATION_VERTEX_CAP = 300


@dataclass(frozen=True)
class SpectrumSpec:
    """Distinct eigenvalues with multiplicities, largest eigenvalue first."""

    entries: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return self.entries[0][0]

    @property
    def order(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def second(self) -> int:
        return self.entries[1][0]

    @property
    def smallest(self) -> int:
        return self.entries[-1][0]

    @property
    def nontrivial_max_abs(self) -> int:
        return max(abs(self.second), abs(self.smallest))

    def trace_identities_hold(self) -> bool:
        n = self.order
        ell = self.degree
        return (
            sum(lam * m for lam, m in self.entries) == 0
            and sum(lam * lam * m for lam, m in self.entries) == n * ell
        )

    def laplacian(self) -> "LaplacianSpec":
        ell = self.degree
        return LaplacianSpec(tuple(sorted((ell - lam, m) for lam, m in self.entries)))


@dataclass(frozen=True)
class LaplacianSpec:
    entries: tuple[tuple[int, int], ...]  # ascending

    @property
    def algebraic_connectivity(self) -> int:
        return self.entries[1][0]

    @property
    def largest(self) -> int:
        return self.entries[-1][0]


def kneser_spectrum(params: KneserParams) -> SpectrumSpec:
    n, k = params.n, params.k
    entries = [
        ((-1) ** j * binomial(n - k - j, k - j), binomial(n, j) - binomial(n, j - 1))
        for j in range(k + 1)
    ]
    return SpectrumSpec(tuple(sorted(entries, reverse=True)))


def _adjacency_matrix(g: SimpleGraph, dtype) -> np.ndarray:
    a = np.zeros((g.vertex_count, g.vertex_count), dtype=dtype)
    for u, nb in enumerate(g.adjacency):
        for v in nb:
            a[u, v] = 1
    return a


def verify_spectrum_annihilation(g: SimpleGraph, spec: SpectrumSpec) -> bool:
    """Exact check that ``spec`` is the adjacency spectrum of ``g``.

    The product of ``A - lam I`` over the listed eigenvalues must vanish, which
    confines the spectrum to the listed values; the power traces
    ``tr A^p`` for ``p < #distinct`` then pin the multiplicities (Vandermonde).
    """
    n = g.vertex_count
    if n > ANNIHILATION_VERTEX_CAP:
        raise ValueError(f"annihilation check limited to {ANNIHILATION_VERTEX_CAP} vertices")
    if spec.order != n:
        return False
    maxdeg = max((len(nb) for nb in g.adjacency), default=0)
    growth = 1
    for lam, _ in spec.entries:
        growth *= maxdeg + abs(lam)
    dtype = np.int64 if growth * n < 2**62 and maxdeg ** len(spec.entries) * n < 2**62 else object
    a = _adjacency_matrix(g, dtype)
    eye = np.eye(n, dtype=dtype)
    prod = eye.copy()
    for lam, _ in spec.entries:
        prod = prod @ (a - lam * eye)
    if np.any(prod != 0):
        return False
    power = eye.copy()
    for p in range(len(spec.entries)):
        if int(np.trace(power)) != sum(m * lam**p for lam, m in spec.entries):
            return False
        power = power @ a
    return True


def mohar_edge_bounds(order: int, mu2: int, mu_max: int, t: int) -> tuple[Fraction, Fraction]:
    """Edge-boundary bounds ``mu2 t(N-t)/N <= e(T, V-T) <= mu_max t(N-t)/N``."""
    if t == 0 or t == order:
        return Fraction(0), Fraction(0)
    if not 0 < t < order:
        raise ValueError(f"set size {t} outside [0, {order}]")
    base = Fraction(t * (order - t), order)
    return mu2 * base, mu_max * base


def kneser_mohar_bounds(params: KneserParams, t: int) -> tuple[Fraction, Fraction]:
    lap = kneser_spectrum(params).laplacian()
    return mohar_edge_bounds(params.order, lap.algebraic_connectivity, lap.largest, t)


def hmp_coefficient(params: KneserParams) -> Fraction:
    spec = kneser_spectrum(params)
    ell, l2, ln = spec.degree, spec.second, spec.smallest
    return Fraction(4 * (ell - l2) * (ell - ln), params.order * (l2 - ln) ** 2)


def hmp_lower_bound(params: KneserParams, s1: int, s2: int) -> Fraction:
    """Lower bound on a separator between non-adjacent sets of sizes s1, s2."""
    if s1 < 1 or s2 < 1:
        raise ValueError("both sides of the separation must be nonempty")
    return hmp_coefficient(params) * s1 * s2


def hmp_closed_form(params: KneserParams) -> Fraction:
    """The k=3 and k=4 closed forms of the HMP coefficient."""
    n = params.n
    if params.k == 3:
        return Fraction(8 * (n - 4) * (n - 6), 3 * (n - 2) ** 3)
    if params.k == 4:
        return Fraction(6 * (n - 8) * (n - 5), (n - 3) * (n - 2) ** 3)
    raise ValueError("closed form only for k in {3, 4}")


def hoffman_bound(params: KneserParams) -> int:
    spec = kneser_spectrum(params)
    ln = abs(spec.smallest)
    value = Fraction(params.order * ln, spec.degree + ln)
    if value.denominator != 1:
        raise ArithmeticError(f"Hoffman ratio {value} is not an integer for {params}")
    return value.numerator


def brouwer_gu_floor(params: KneserParams) -> Fraction:
    """Brouwer's spectral toughness value ``l / lam``.

    For graphs meeting the Hoffman bound with equality this is an upper bound
    on toughness, and for K(n,k) it equals ``n/k - 1``. The proven lower
    bound sits one below it, see :func:`gu_lower_bound`.
    """
    spec = kneser_spectrum(params)
    return Fraction(spec.degree, spec.nontrivial_max_abs)


def gu_lower_bound(params: KneserParams) -> Fraction:
    return brouwer_gu_floor(params) - 1
