"""Type A chamber filters on block degrees.

Each orbit term of a :class:`LeviPoly` over ``(n_1, ..., n_k)`` has a
block-degree vector ``(d_1, ..., d_k)``: the total X-exponent per block,
i.e. the valuation of ``det m_a``. The truncations used for compact traces
depend on ``m`` only through these numbers:

* ``acute``: ``d_1/n_1 > d_2/n_2 > ... > d_k/n_k``
* ``obtuse``: ``d_1 + ... + d_a > (D/n)(n_1 + ... + n_a)`` for ``a < k``,
  where ``D = d_1 + ... + d_k``
* ``equal_ratio``: all ``d_a/n_a`` equal

All inequalities are strict and evaluated in exact rationals.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import LeviPoly
from .composition import (
    Composition,
    ExtendedComposition,
    enumerate_compositions,
    enumerate_extended,
    eps_parabolic,
)

__all__ = [
    "ChamberKind",
    "Composition",
    "ExtendedComposition",
    "chamber_filter",
    "enumerate_compositions",
    "enumerate_extended",
    "eps_parabolic",
    "in_chamber",
]


class ChamberKind(str, Enum):
    ACUTE = "acute"
    OBTUSE = "obtuse"
    EQUAL_RATIO = "equal_ratio"


def in_chamber(degrees: Sequence[int], composition: Composition, kind: ChamberKind | str) -> bool:
    kind = ChamberKind(kind)
    parts = composition.parts
    if len(degrees) != len(parts):
        raise ValueError(f"{len(degrees)} block degrees for composition {composition}")
    if kind is ChamberKind.ACUTE:
        ratios = [Fraction(d, m) for d, m in zip(degrees, parts)]
        return all(a > b for a, b in zip(ratios, ratios[1:]))
    if kind is ChamberKind.EQUAL_RATIO:
        # d_a * n_b == d_b * n_a against the first block
        return all(d * parts[0] == degrees[0] * m for d, m in zip(degrees, parts))
    total, n = sum(degrees), composition.n
    run_d = run_n = 0
    for d, m in zip(degrees[:-1], parts[:-1]):
        run_d += d
        run_n += m
        # run_d > total * run_n / n, cleared of denominators
        if run_d * n <= total * run_n:
            return False
    return True


def chamber_filter(p: LeviPoly, kind: ChamberKind | str) -> LeviPoly:
    """Keep the orbit terms whose block degrees lie in the chosen open chamber."""
    kind = ChamberKind(kind)
    comp = p.composition
    return p.select(lambda degrees: in_chamber(degrees, comp, kind))
