"""Compact traces of spherical functions on the trivial and Steinberg representations.

Two evaluation points are used. The Steinberg point puts
``X_i = q**((2i - 1 - n)/2)``, the Hecke matrix of ``delta_{P_0}**(1/2)``
on the torus. For a composition ``(n_a)`` the trivial twist point puts
slot ``i`` of block ``a`` at ``q**((n_a + 1 - 2i)/2 + r_a/2)`` with
``r_a = sum_{b > a} n_b - sum_{b < a} n_b``: the trivial representation of
each block twisted by ``delta_P**(-1/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import LaurentScalar, LeviPoly, HeckePoint, QAlphaPoly, eval_point, homogeneous_degree
from .chambers import chamber_filter
from .composition import Composition, enumerate_compositions, eps_parabolic
from .hecke import SphericalFunction, constant_term


def steinberg_point(n: int) -> HeckePoint:
    return HeckePoint(Composition.borel(n), tuple(2 * i - 1 - n for i in range(1, n + 1)))


def trivial_twist_point(c: Composition) -> HeckePoint:
    twice = []
    parts = c.parts
    for a, na in enumerate(parts):
        r = sum(parts[a + 1:]) - sum(parts[:a])
        twice.extend(na + 1 - 2 * i + r for i in range(1, na + 1))
    return HeckePoint(c, tuple(twice))


def truncated_borel_term(f: SphericalFunction) -> LeviPoly:
    """Obtuse truncation of the Borel constant term of ``f``."""
    return chamber_filter(constant_term(f, Composition.borel(f.rank)), "obtuse")


def compact_trace_steinberg(f: SphericalFunction) -> QAlphaPoly:
    """``Tr(chi_c f, St)``: only the Borel survives, evaluated at the Steinberg point."""
    n = f.rank
    value = eval_point(truncated_borel_term(f), steinberg_point(n))
    return value * eps_parabolic(Composition.borel(n))


def parabolic_terms(f: SphericalFunction) -> list[tuple[Composition, QAlphaPoly]]:
    """Signed contribution of every standard parabolic to ``Tr(chi_c f, 1)``."""
    out = []
    for c in enumerate_compositions(f.rank):
        truncated = chamber_filter(constant_term(f, c), "obtuse")
        out.append((c, eval_point(truncated, trivial_twist_point(c)) * eps_parabolic(c)))
    return out


def compact_trace_trivial(f: SphericalFunction) -> QAlphaPoly:
    """``Tr(chi_c f, 1)`` as the signed sum over all standard parabolics."""
    total = QAlphaPoly.zero(f.alpha_scaled)
    for _, term in parabolic_terms(f):
        total = total + term
    return total


@dataclass(frozen=True)
class CtTrivialCheck:
    lhs: QAlphaPoly
    rhs: QAlphaPoly

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.equal))


def cttrivial_check(f: SphericalFunction) -> CtTrivialCheck:
    """Compare the parabolic-sum route with ``eps_{P_0} Tr(chi_c f, St)``.

    The degree of ``f`` must be coprime to its rank.
    """
    n = f.rank
    d = homogeneous_degree(f.satake)
    if gcd(d, n) != 1:
        raise ValueError(f"degree {d} is not coprime to n = {n}")
    lhs = compact_trace_trivial(f)
    rhs = compact_trace_steinberg(f) * eps_parabolic(Composition.borel(n))
    return CtTrivialCheck(lhs, rhs)


def intro_monomial_family(n: int, s: int) -> LeviPoly:
    """``q^(alpha s(n-s)/2) * sum X_{i_1}^alpha ... X_{i_s}^alpha`` over the Borel.

    Index tuples are strictly increasing with ``i_1 = 1`` and
    ``i_j < 1 + (n/s)(j - 1)`` for ``j >= 2``.
    """
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    coeff = LaurentScalar.monomial(s * (n - s))
    bound = Fraction(n, s)
    terms = {}

    def rec(j: int, prev: int, chosen: list[int]) -> None:
        if j > s:
            exps = [0] * n
            for i in chosen:
                exps[i - 1] = 1
            terms[tuple((e,) for e in exps)] = coeff
            return
        for i in range(prev + 1, n + 1):
            if i >= 1 + bound * (j - 1):
                break
            chosen.append(i)
            rec(j + 1, i, chosen)
            chosen.pop()

    rec(2, 1, [1])
    return LeviPoly(Composition.borel(n), terms)
