"""Slow, definitional re-derivations used to check the production paths.

Nothing here calls into :mod:`compact_trace.chambers` or
:mod:`compact_trace.hecke`. Chamber membership is decided by pairing with
simple roots and fundamental weights computed by linear algebra (sympy),
and constant terms are rebuilt by enumerating subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

import sympy

from .algebra import LaurentScalar, LeviPoly
from .composition import Composition


@dataclass(frozen=True)
class PairingTable:
    """Roots, restricted coroots and fundamental weights for a standard parabolic.

    Vectors live on ``a_P`` in block-degree coordinates, where block ``a`` of
    ``H_M(m)`` is the valuation of ``det m_a``. Functionals are row vectors
    on the same coordinates.
    """

    composition: Composition
    roots: tuple[tuple[sympy.Rational, ...], ...]
    coroots: tuple[tuple[sympy.Rational, ...], ...]
    weights: tuple[tuple[sympy.Rational, ...], ...]

    @classmethod
    def build(cls, composition: Composition) -> PairingTable:
        parts = composition.parts
        n, k = composition.n, composition.k
        # a_P sits inside a_0 = R^n: block vector d spreads as d_a/n_a over block a
        spread = sympy.zeros(n, k)
        collapse = sympy.zeros(k, n)
        slot = 0
        for a, na in enumerate(parts):
            for _ in range(na):
                spread[slot, a] = sympy.Rational(1, na)
                collapse[a, slot] = 1
                slot += 1
        roots, coroots = [], []
        boundary = 0
        for a in range(k - 1):
            boundary += parts[a]
            i = boundary - 1  # simple root alpha_i = e_i - e_{i+1} at the block edge
            simple = sympy.zeros(1, n)
            simple[0, i], simple[0, i + 1] = 1, -1
            roots.append(tuple(simple * spread))
            coroot = sympy.zeros(n, 1)
            coroot[i, 0], coroot[i + 1, 0] = 1, -1
            coroots.append(tuple(collapse * coroot))
        # fundamental weights: kill a_G = span(n_1..n_k), dual to the restricted coroots
        weights = []
        if k > 1:
            system = sympy.Matrix([list(parts)] + [list(c) for c in coroots])
            for a in range(k - 1):
                rhs = sympy.Matrix([0] + [1 if b == a else 0 for b in range(k - 1)])
                weights.append(tuple(system.LUsolve(rhs)))
        return cls(composition, tuple(roots), tuple(coroots), tuple(weights))

    def check_duality(self) -> bool:
        for a, w in enumerate(self.weights):
            for b, c in enumerate(self.coroots):
                if sum(x * y for x, y in zip(w, c)) != (1 if a == b else 0):
                    return False
            if sum(x * y for x, y in zip(w, self.composition.parts)) != 0:
                return False
        return True


def _pair(functional: Sequence, vector: Sequence[int]):
    return sum(sympy.Rational(x) * y for x, y in zip(functional, vector))


_TABLES: dict[Composition, PairingTable] = {}


def pairing_table(composition: Composition) -> PairingTable:
    table = _TABLES.get(composition)
    if table is None:
        table = _TABLES[composition] = PairingTable.build(composition)
    return table


def oracle_chamber(vector: Sequence[int], composition: Composition, kind: str) -> bool:
    """Membership of a block-degree vector in the open acute/obtuse chamber, or on ``a_G``."""
    if len(vector) != composition.k:
        raise ValueError("vector length must equal the number of blocks")
    table = pairing_table(composition)
    if kind == "acute":
        return all(_pair(r, vector) > 0 for r in table.roots)
    if kind == "obtuse":
        return all(_pair(w, vector) > 0 for w in table.weights)
    if kind == "equal_ratio":
        return all(_pair(r, vector) == 0 for r in table.roots)
    raise ValueError(f"unknown chamber kind {kind!r}")


def oracle_constant_term(n: int, s: int, composition: Composition) -> LeviPoly:
    """Expand ``q^(alpha s(n-s)/2) sum_{|I|=s} X_I^alpha`` and regroup it by blocks."""
    if composition.n != n:
        raise ValueError("composition does not match n")
    bounds = []
    start = 0
    for na in composition.parts:
        bounds.append((start, start + na))
        start += na
    coeff = LaurentScalar.monomial(s * (n - s))
    orbits: dict[tuple, list[tuple[int, ...]]] = {}
    for subset in combinations(range(n), s):
        exps = [1 if i in subset else 0 for i in range(n)]
        key = tuple(tuple(sorted(exps[lo:hi], reverse=True)) for lo, hi in bounds)
        orbits.setdefault(key, []).append(tuple(exps))
    # sanity: each orbit must be complete, i.e. hold prod_a C(n_a, s_a) monomials
    for key, members in orbits.items():
        expected = 1
        for block in key:
            expected *= sympy.binomial(len(block), sum(block))
        if len(set(members)) != expected:
            raise AssertionError(f"orbit {key} incomplete")
    return LeviPoly(composition, {key: coeff for key in orbits})


def oracle_compact_survivors(n: int, s: int, composition: Composition) -> list[tuple[int, ...]]:
    """Extended compositions ``(s_a)``, ``s_a <= n_a``, whose blocks have equal ``s_a/n_a``."""
    out = []
    for sig in product(*(range(na + 1) for na in composition.parts)):
        if sum(sig) == s and oracle_chamber(sig, composition, "equal_ratio"):
            out.append(tuple(sig))
    return out


def oracle_obtuse_borel(n: int, s: int) -> LeviPoly:
    """Obtuse truncation of the Borel constant term, decided via fundamental weights."""
    borel = Composition.borel(n)
    coeff = LaurentScalar.monomial(s * (n - s))
    terms = {}
    for subset in combinations(range(n), s):
        exps = tuple(1 if i in subset else 0 for i in range(n))
        if oracle_chamber(exps, borel, "obtuse"):
            terms[tuple((e,) for e in exps)] = coeff
    return LeviPoly(borel, terms)
