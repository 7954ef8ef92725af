"""Kottwitz functions and their (truncated) constant terms.

Spherical functions are represented through their Satake transforms, which
is faithful. Constant terms along a standard parabolic are regroupings of
the same polynomial over the Levi blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .algebra import LaurentScalar, LeviPoly, homogeneous_degree, poly_mul
from .composition import Composition, enumerate_extended


@dataclass(frozen=True)
class SphericalFunction:
    """A bi-K-invariant function on GL_n, stored as its Satake transform.

    ``residue_exp`` records the residue cardinality ``p**residue_exp`` of
    the local field; every exponent of ``q`` in ``satake`` refers to that
    cardinality.
    """

    rank: int
    satake: LeviPoly
    residue_exp: int = 1
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.satake.composition != Composition.trivial(self.rank):
            raise ValueError(f"Satake transform must live over ({self.rank})")

    @property
    def alpha_scaled(self) -> bool:
        return self.satake.alpha_scaled

    def degree(self) -> int:
        return homogeneous_degree(self.satake)

    def is_zero(self) -> bool:
        return self.satake.is_zero()

    def __mul__(self, other: SphericalFunction) -> SphericalFunction:
        """Convolution, i.e. the product of Satake transforms."""
        if other.rank != self.rank or other.residue_exp != self.residue_exp:
            raise ValueError("convolution needs equal rank and residue field")
        label = f"{self.label}*{other.label}" if self.label and other.label else ""
        return SphericalFunction(self.rank, poly_mul(self.satake, other.satake), self.residue_exp, label)

    @classmethod
    def unit(cls, n: int, alpha_scaled: bool = True) -> SphericalFunction:
        return cls(n, LeviPoly.unit(Composition.trivial(n), alpha_scaled), label="1")


def kottwitz_satake(n: int, s: int, degree: int | None = None) -> LeviPoly:
    """``q^(a s(n-s)/2) * e_s(X_1^a, ..., X_n^a)`` with ``a = alpha`` or ``a = degree``.

    Zero when ``s < 0`` or ``s > n``.
    """
    comp = Composition.trivial(n)
    symbolic = degree is None
    if s < 0 or s > n:
        return LeviPoly.zero(comp, symbolic)
    a = 1 if symbolic else degree
    if not symbolic and degree < 1:
        raise ValueError("degree must be a positive integer")
    key = ((a,) * s + (0,) * (n - s),)
    coeff = LaurentScalar.monomial(a * s * (n - s), 1, symbolic)
    return LeviPoly(comp, {key: coeff}, symbolic)


def kottwitz_function(n: int, s: int, degree: int | None = None) -> SphericalFunction:
    """The Kottwitz function ``f_{n, alpha, s}`` (symbolic) or ``f_{n, degree, s}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tag = "α" if degree is None else str(degree)
    return SphericalFunction(n, kottwitz_satake(n, s, degree), label=f"f[{n},{tag},{s}]")


def constant_term(f: SphericalFunction, c: Composition) -> LeviPoly:
    """Satake transform of ``f^(P)`` for the standard parabolic ``P = P(c)``."""
    if c.n != f.rank:
        raise ValueError(f"composition {c} is not a composition of {f.rank}")
    return f.satake.regroup(c)


def levi_coefficient(n: int, s: int, c: Composition, parts) -> int:
    """``2 * C(n_a, s_a)``: half-steps of ``q**alpha`` in front of the Levi tensor."""
    return s * (n - s) - sum(sa * (na - sa) for na, sa in zip(c.parts, parts))


def constant_term_closed_form(n: int, s: int, c: Composition) -> LeviPoly:
    """Constant term of ``f_{n alpha s}`` along ``c`` as a sum over extended compositions.

    Each ``(s_a)`` contributes ``q^(alpha C(n_a, s_a))`` times the tensor product
    of the block Kottwitz functions ``f_{n_a alpha s_a}``; terms with some
    ``s_a > n_a`` vanish and are skipped.
    """
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    if c.n != n:
        raise ValueError(f"composition {c} is not a composition of {n}")
    terms = {}
    for ext in enumerate_extended(s, c.k, caps=c.parts):
        key = tuple((1,) * sa + (0,) * (na - sa) for na, sa in zip(c.parts, ext))
        # coefficient of the tensor: q^(alpha C) * prod_a q^(alpha s_a (n_a - s_a)/2)
        half_steps = levi_coefficient(n, s, c, ext.parts) + sum(
            sa * (na - sa) for na, sa in zip(c.parts, ext)
        )
        terms[key] = LaurentScalar.monomial(half_steps)
    return LeviPoly(c, terms)


@dataclass(frozen=True)
class TruncatedConstantTerm:
    """``q^(alpha C) * (chi_c f_{n_1 alpha s_1} (x) ... (x) chi_c f_{n_k alpha s_k})``.

    The factors are descriptors only: truncated functions are not spherical
    and are never evaluated as polynomials.
    """

    composition: Composition
    coefficient: LaurentScalar
    factors: tuple[tuple[int, int], ...]

    @property
    def signatures(self) -> tuple[int, ...]:
        return tuple(sa for _, sa in self.factors)


def compact_constant_term(n: int, s: int, c: Composition) -> TruncatedConstantTerm | None:
    """The compact truncation of the constant term of ``f_{n alpha s}`` along ``c``.

    ``None`` when it vanishes, which happens unless ``c = (n/d) * (d_a)`` for a
    composition ``(d_a)`` of ``d = gcd(n, s)``.
    """
    if s == 0:
        raise ValueError("s = 0 is not supported (the truncation of the unit is degenerate)")
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    if c.n != n:
        raise ValueError(f"composition {c} is not a composition of {n}")
    d = gcd(n, s)
    step = n // d
    if any(na % step for na in c.parts):
        return None
    sig = tuple((s // d) * (na // step) for na in c.parts)
    coeff = LaurentScalar.monomial(levi_coefficient(n, s, c, sig))
    return TruncatedConstantTerm(c, coeff, tuple(zip(c.parts, sig)))

