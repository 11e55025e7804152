"""Intersecting families: extremal thresholds, canonical families, diversity."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .combinatorics import binomial
from .graphs import KneserParams, ksubset_masks


class Threshold(str, Enum):
    EKR = "EKR"
    HM = "HM"
    HAN = "HAN"
    SWITCH2 = "SWITCH2"


def threshold(kind: Threshold | str, params: KneserParams) -> int:
    """Largest size an intersecting family of the given class can have.

    EKR: any intersecting family. HM: families with empty common
    intersection. HAN: families outside the star, Hilton-Milner and G(A)
    classes. SWITCH2: largest independent set that can sit next to an induced
    4-cycle or two induced edges (same numeric bound as HAN).
    """
    kind = Threshold(kind)
    n, k = params.n, params.k
    ekr = binomial(n - 1, k - 1)
    if kind is Threshold.EKR:
        return ekr
    hm = ekr - binomial(n - k - 1, k - 1) + 1
    if kind is Threshold.HM:
        return hm
    if kind is Threshold.HAN and 2 * k + 1 < 7:
        raise ValueError("Han-Kohayakawa bound needs 2k+1 >= 7")
    if kind is Threshold.SWITCH2 and 2 * k + 1 < 9:
        raise ValueError("4-cycle switching bound needs 2k+1 >= 9")
    return hm - binomial(n - k - 2, k - 2) + 1


@dataclass(frozen=True)
class Family:
    params: KneserParams
    members: frozenset[int]

    def __post_init__(self) -> None:
        full = (1 << self.params.n) - 1
        for m in self.members:
            if m & ~full or bin(m).count("1") != self.params.k:
                raise ValueError(f"member {bin(m)} is not a {self.params.k}-subset of [{self.params.n}]")

    @classmethod
    def from_sets(cls, params: KneserParams, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(params, frozenset(sum(1 << i for i in s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)


def _mask(elements: Iterable[int]) -> int:
    return sum(1 << i for i in set(elements))


def star_family(params: KneserParams, x: int) -> Family:
    if not 0 <= x < params.n:
        raise ValueError(f"element {x} outside ground set")
    bit = 1 << x
    return Family(params, frozenset(m for m in ksubset_masks(params.n, params.k) if m & bit))


def hilton_milner_family(params: KneserParams, a: Iterable[int], x: int) -> Family:
    amask = _mask(a)
    if bin(amask).count("1") != params.k or amask >> params.n:
        raise ValueError("A must be a k-subset of the ground set")
    if amask >> x & 1:
        raise ValueError("x must lie outside A")
    bit = 1 << x
    members = {amask}
    members.update(m for m in ksubset_masks(params.n, params.k) if m & bit and m & amask)
    return Family(params, frozenset(members))


def g2_family(params: KneserParams, a: Iterable[int]) -> Family:
    amask = _mask(a)
    if bin(amask).count("1") != params.k or amask >> params.n:
        raise ValueError("A must be a k-subset of the ground set")
    return Family(params, frozenset(m for m in ksubset_masks(params.n, params.k)
                                    if bin(m & amask).count("1") >= 2))


def build_family(kind: str, params: KneserParams, *, x: int | None = None,
                 a: Iterable[int] | None = None) -> Family:
    kind = kind.upper()
    if kind == "STAR":
        if x is None:
            raise ValueError("STAR needs x")
        return star_family(params, x)
    if kind == "HM":
        if x is None or a is None:
            raise ValueError("HM needs A and x")
        return hilton_milner_family(params, a, x)
    if kind == "G2":
        if a is None:
            raise ValueError("G2 needs A")
        return g2_family(params, a)
    raise ValueError(f"unknown family kind {kind!r}")


def diversity(f: Family) -> tuple[int, frozenset[int]]:
    """Members missing the most popular element, and every such element."""
    if not f.members:
        raise ValueError("diversity of an empty family is undefined")
    freq = [sum(1 for m in f.members if m >> i & 1) for i in range(f.params.n)]
    top = max(freq)
    return len(f.members) - top, frozenset(i for i, c in enumerate(freq) if c == top)


def is_intersecting(f: Family) -> bool:
    members = sorted(f.members)
    return all(a & b for i, a in enumerate(members) for b in members[i + 1:])
