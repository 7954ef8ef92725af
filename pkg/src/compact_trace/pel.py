"""Global invariants of the basic stratum from the local datum at p.

A :class:`PELDatumP` records, for every place of ``F^+`` above ``p``, the
residue degree ``f`` and the signatures ``s_v`` of its ``f`` embeddings.
From it we build the Kottwitz function at ``p``, its compact trace on the
trivial representation ``P(q^alpha)``, the dimension of the basic stratum,
and the point-count expression built on top of it.

Exponents: symbolic results are in ``q**(alpha/2)`` with ``q = p**e_E``;
numeric results (``alpha`` fixed) are in ``p**(1/2)``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import ceil, gcd, lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import sympy

from .algebra import QAlphaPoly
from .hecke import SphericalFunction, kottwitz_function
from .traces import compact_trace_trivial


class HypothesisWarning(UserWarning):
    """The datum leaves the coprime (simple isocrystal) regime."""


class InterpolationError(ValueError):
    def __init__(self, message: str, residuals: Mapping[int, Fraction] | None = None):
        self.residuals = dict(residuals or {})
        detail = f"; residuals {self.residuals}" if self.residuals else ""
        super().__init__(message + detail)


class DimensionError(ValueError):
    pass


class Convention(str, Enum):
    """How ``f_{n alpha_v s_v}`` is read at a place with residue degree ``f``.

    ``normalized``: base change of degree ``alpha_v/f`` over ``F^+_wp`` whose
    residue field has ``p**f`` elements; in powers of ``p`` this is the
    Kottwitz function of degree ``alpha_v`` with ``q = p``.
    ``literal``: degree ``alpha_v`` with ``q = p**f``.
    The two agree when ``f = 1``.
    """

    NORMALIZED = "normalized"
    LITERAL = "literal"


@dataclass(frozen=True)
class Place:
    name: str
    f: int
    signatures: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signatures", tuple(int(s) for s in self.signatures))
        if self.f < 1:
            raise ValueError(f"place {self.name}: residue degree must be >= 1")
        if len(self.signatures) != self.f:
            raise ValueError(
                f"place {self.name}: {len(self.signatures)} signatures for f = {self.f}"
            )

    @property
    def s_total(self) -> int:
        return sum(self.signatures)


@dataclass(frozen=True)
class PELDatumP:
    n: int
    e_E: int
    places: tuple[Place, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "places", tuple(self.places))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.e_E < 1:
            raise ValueError("e_E must be >= 1")
        names = [pl.name for pl in self.places]
        if len(set(names)) != len(names):
            raise ValueError("place names must be distinct")
        for pl in self.places:
            if any(not 0 <= s <= self.n for s in pl.signatures):
                raise ValueError(f"place {pl.name}: signatures must lie in [0, {self.n}]")
            # Frobenius^e_E moves embedding j to j + e_E (mod f); s_v is constant on its orbits
            for j, s in enumerate(pl.signatures):
                if pl.signatures[(j + self.e_E) % pl.f] != s:
                    raise ValueError(
                        f"place {pl.name}: signatures not constant on Frobenius^{self.e_E} orbits"
                    )
        for pl in self.ramified():
            if gcd(pl.s_total, self.n) != 1:
                warnings.warn(
                    f"place {pl.name}: s = {pl.s_total} is not coprime to n = {self.n}",
                    HypothesisWarning,
                    stacklevel=3,
                )

    def ramified(self) -> list[Place]:
        return [pl for pl in self.places if pl.s_total > 0]

    def unramified(self) -> list[Place]:
        return [pl for pl in self.places if pl.s_total == 0]

    def sign(self) -> int:
        """``(-1)**((n - 1) * #Ram)``."""
        return -1 if (self.n - 1) * len(self.ramified()) % 2 else 1

    # json ---------------------------------------------------------------

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> PELDatumP:
        try:
            places = tuple(
                Place(str(p["name"]), int(p["f"]), tuple(int(s) for s in p["signatures"]))
                for p in obj["places"]
            )
            return cls(int(obj["n"]), int(obj["e_E"]), places)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed datum: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> PELDatumP:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_obj(json.load(fh))

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "e_E": self.e_E,
            "places": [
                {"name": pl.name, "f": pl.f, "signatures": list(pl.signatures)}
                for pl in self.places
            ],
        }


def single_place(n: int, signatures: Sequence[int], e_E: int = 1, name: str = "p1") -> PELDatumP:
    return PELDatumP(n, e_E, (Place(name, len(signatures), tuple(signatures)),))


# ---------------------------------------------------------------------------
# slopes and orbits


@dataclass(frozen=True)
class BasicSlope:
    place: str
    slope: Fraction
    simple: bool
    etale: bool


def basic_slopes(d: PELDatumP) -> list[BasicSlope]:
    out = []
    for pl in d.places:
        s = pl.s_total
        out.append(BasicSlope(pl.name, Fraction(s, d.n), gcd(d.n, s) == 1, s == 0))
    return out


@dataclass(frozen=True)
class PlaceOrbits:
    place: str
    count: int
    degree: int  # alpha_v, degree over Q_p of the field cut out by each orbit
    orbits: tuple[tuple[tuple[int, ...], int], ...]  # (embedding indices, s_v)


@dataclass(frozen=True)
class OrbitData:
    alpha: int
    e_E: int
    places: tuple[PlaceOrbits, ...]

    def bookkeeping(self) -> dict[str, Fraction]:
        """``sum_v alpha_v / (e_E alpha)`` per place; equals ``f``."""
        return {
            po.place: Fraction(po.count * po.degree, self.e_E * self.alpha) for po in self.places
        }


def orbit_data(d: PELDatumP, alpha: int) -> OrbitData:
    """Orbits of ``Frobenius**(e_E alpha)`` on the embeddings of each place."""
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    step = d.e_E * alpha
    out = []
    for pl in d.places:
        g = gcd(pl.f, step)
        orbits = tuple(
            (tuple(range(r, pl.f, g)), pl.signatures[r]) for r in range(g)
        )
        out.append(PlaceOrbits(pl.name, g, lcm(step, pl.f), orbits))
    return OrbitData(alpha, d.e_E, tuple(out))


def interpolation_modulus(d: PELDatumP) -> int:
    """Least ``M`` such that every residue degree divides ``e_E * M``."""
    return reduce(lcm, (pl.f // gcd(pl.f, d.e_E) for pl in d.places), 1)


def is_split(d: PELDatumP, alpha: int | None = None) -> bool:
    """Whether ``F^+ (x) E_{p, alpha}`` splits at every ramified place (for all alpha if None)."""
    base = d.e_E if alpha is None else d.e_E * alpha
    return all(base % pl.f == 0 for pl in d.ramified())


# ---------------------------------------------------------------------------
# P(q^alpha)


def local_function(
    d: PELDatumP,
    place: Place,
    alpha: int | None = None,
    convention: Convention | str = Convention.NORMALIZED,
) -> SphericalFunction:
    """Convolution of the Kottwitz functions of the orbits at ``place``.

    Symbolic (``alpha=None``) requires the split regime at this place, in
    which case every orbit is a single embedding with ``alpha_v = e_E alpha``.
    """
    convention = Convention(convention)
    if alpha is None:
        factors = [kottwitz_function(d.n, s) for s in place.signatures]
    else:
        po = next(p for p in orbit_data(d, alpha).places if p.place == place.name)
        scale = place.f if convention is Convention.LITERAL else 1
        factors = [kottwitz_function(d.n, s, po.degree * scale) for _, s in po.orbits]
    out = factors[0]
    for g in factors[1:]:
        out = out * g
    return out


def polynomial_P(
    d: PELDatumP,
    alpha: int | None = None,
    *,
    assume_split: bool = False,
    convention: Convention | str = Convention.NORMALIZED,
) -> QAlphaPoly:
    """``P(q^alpha)``: product over ramified places of the compact trace on the trivial rep.

    With ``alpha=None`` the result is symbolic in ``q**alpha`` and needs the
    split regime: every ramified ``f`` divides ``e_E``, or ``assume_split``
    asserting that only ``alpha`` divisible by :func:`interpolation_modulus`
    are of interest. Étale places and the similitude factor contribute 1.
    """
    symbolic = alpha is None
    if symbolic and not assume_split and not is_split(d):
        raise ValueError(
            "symbolic P needs the split regime; pass alpha, or assume_split=True "
            f"for alpha divisible by {interpolation_modulus(d)}"
        )
    result = QAlphaPoly.constant(1, symbolic)
    for pl in d.ramified():
        if symbolic:
            f = reduce(lambda x, y: x * y, (kottwitz_function(d.n, s) for s in pl.signatures))
        else:
            f = local_function(d, pl, alpha, convention)
        result = result * compact_trace_trivial(f)
    return result


@dataclass(frozen=True)
class Interpolation:
    modulus: int
    residue: int
    coefficients: tuple[Fraction, ...]  # of 1, q^alpha, q^(2 alpha), ...
    fit_alphas: tuple[int, ...]
    check_alphas: tuple[int, ...]
    residuals: dict[int, Fraction] = field(default_factory=dict)
    exact: bool = False  # every sample also matches as a Laurent polynomial in p

    def polynomial(self) -> QAlphaPoly:
        if any(c.denominator != 1 for c in self.coefficients):
            raise ValueError("fitted coefficients are not integral")
        return QAlphaPoly.from_coefficients([int(c) for c in self.coefficients])

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if c]
        return max(nz) if nz else -1


def _lagrange_coefficients(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(m):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def interpolate_P(
    d: PELDatumP,
    residue: int,
    samples: Iterable[int],
    *,
    degree: int | None = None,
    p: int = 2,
    convention: Convention | str = Convention.NORMALIZED,
) -> Interpolation:
    """Fit one polynomial in ``X = q^alpha`` through ``P`` at ``alpha`` in a residue class.

    The first ``degree + 1`` samples fix the fit (at the concrete prime ``p``);
    the rest are held out as checksums. Every sample is then re-checked
    as an identity of Laurent polynomials in ``p``.
    """
    M = interpolation_modulus(d)
    alphas = tuple(int(a) for a in samples)
    if len(set(alphas)) != len(alphas):
        raise ValueError("sample alphas must be distinct")
    for a in alphas:
        if a < 1 or (a - residue) % M:
            raise ValueError(f"alpha = {a} is not a positive member of {residue} mod {M}")
    if degree is None:
        degree = len(alphas) - 2
    if degree < 0 or len(alphas) < degree + 2:
        raise InterpolationError(
            f"need at least degree + 2 = {max(degree, 0) + 2} samples, got {len(alphas)}"
        )

    values = {}
    for a in alphas:
        val = polynomial_P(d, a, convention=convention)
        if any(k % 2 for k in val.terms):
            raise InterpolationError(f"P at alpha = {a} has half-integral powers of p: {val}")
        values[a] = val
    xs = {a: Fraction(p) ** (d.e_E * a) for a in alphas}
    fit, check = alphas[: degree + 1], alphas[degree + 1:]
    coeffs = _lagrange_coefficients([xs[a] for a in fit], [values[a].evaluate(p) for a in fit])

    def pol(x: Fraction) -> Fraction:
        return sum(c * x**j for j, c in enumerate(coeffs))

    residuals = {a: values[a].evaluate(p) - pol(xs[a]) for a in check}
    if any(residuals.values()):
        raise InterpolationError(
            f"no polynomial of degree <= {degree} in q^alpha fits class {residue} mod {M}",
            residuals,
        )
    exact = all(c.denominator == 1 for c in coeffs) and all(
        values[a]
        == QAlphaPoly(
            {2 * d.e_E * a * j: int(c) for j, c in enumerate(coeffs)}, alpha_scaled=False
        )
        for a in alphas
    )
    if not exact:
        raise InterpolationError("fit agrees at p but not as a polynomial identity in p", residuals)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return Interpolation(M, residue % M, tuple(coeffs), fit, check, residuals, exact)


# ---------------------------------------------------------------------------
# dimension


def dimension_closed_form(d: PELDatumP) -> int:
    """The closed dimension formula, evaluated term by term."""
    total = Fraction(0)
    for pl in d.ramified():
        s = pl.s_total
        total += sum(Fraction(sv * (1 - sv), 2) for sv in pl.signatures)
        total += sum(ceil(Fraction(j * d.n, s)) for j in range(s))
    if total.denominator != 1:
        raise DimensionError(f"closed formula is not integral: {total}")
    return int(total)


def dimension_degree(d: PELDatumP) -> int:
    """Degree in ``q^alpha`` of ``P`` for ``alpha`` divisible by the splitting modulus."""
    P = polynomial_P(d, assume_split=True)
    if P.is_zero():
        raise DimensionError("P vanishes identically")
    top = P.max_exponent()
    if top % 2:
        raise DimensionError(f"top exponent of P is q^({top}α/2), not an integer power")
    if top < 0:
        warnings.warn(f"P has negative top degree {top // 2}", HypothesisWarning, stacklevel=2)
    return top // 2


def top_monomial_degree(n: int, s: int) -> Fraction:
    """Exponent of ``q^alpha`` in ``q^(alpha s(n-s)/2) X_1 X_{ceil(n/s)} ... X_{ceil((s-1)n/s)}``
    evaluated at ``X_i = q^((2i - 1 - n)/2)``; single-embedding case."""
    indices = [1] + [ceil(Fraction(j * n, s)) for j in range(1, s)]
    return Fraction(s * (n - s), 2) + sum(Fraction(2 * i - 1 - n, 2) for i in indices)


@dataclass(frozen=True)
class AuditRow:
    n: int
    s: int
    closed_form: int
    degree: int
    top_monomial: Fraction

    @property
    def difference(self) -> int:
        return self.closed_form - self.degree


def dimension_audit(cases: Iterable[tuple[int, int]] = ((3, 2), (5, 2), (5, 3), (7, 2))) -> list[AuditRow]:
    rows = []
    for n, s in cases:
        d = single_place(n, [s])
        rows.append(AuditRow(n, s, dimension_closed_form(d), dimension_degree(d), top_monomial_degree(n, s)))
    return rows


# ---------------------------------------------------------------------------
# assembly


class TermKind(str, Enum):
    ONE_DIM_UNRAMIFIED = "one_dim_unramified"
    STEINBERG_TYPE = "steinberg_type"


def _exact(value) -> sympy.Expr:
    if isinstance(value, float):
        raise TypeError("inexact (float) spectral data")
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value, rational=True)


@dataclass(frozen=True)
class AutomorphicTermInput:
    """Trace-level data of one automorphic representation.

    ``zeta`` is the Weil number itself (raised to ``alpha`` on assembly);
    ``weight`` is the integer ``w`` with ``|zeta| = q**(w / (2n))``.
    """

    kind: TermKind
    zeta: object
    hecke_trace: object
    weight: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TermKind(self.kind))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> AutomorphicTermInput:
        try:
            return cls(
                TermKind(obj["kind"]),
                _exact(obj.get("zeta", 1)),
                _exact(obj.get("hecke_trace", 1)),
                obj.get("weight"),
            )
        except (KeyError, ValueError, sympy.SympifyError) as exc:
            raise ValueError(f"malformed automorphic term: {exc}") from exc


ALPHA = sympy.Symbol("alpha", positive=True, integer=True)
Q = sympy.Symbol("q", positive=True)
P_SYM = sympy.Symbol("p", positive=True)


def p_as_sympy(P: QAlphaPoly, alpha: int | None = None) -> sympy.Expr:
    if P.alpha_scaled:
        a = ALPHA if alpha is None else alpha
        return sum((c * Q ** (sympy.Rational(k, 2) * a) for k, c in P.items()), sympy.Integer(0))
    return sum((c * P_SYM ** sympy.Rational(k, 2) for k, c in P.items()), sympy.Integer(0))


def weight_consistent(term: AutomorphicTermInput, n: int, q: int) -> bool:
    """``|zeta| == q**(w/(2n))`` for a concrete ``q``."""
    if term.weight is None:
        raise ValueError("term carries no weight")
    lhs = sympy.Abs(_exact(term.zeta)) ** (2 * n)
    return sympy.simplify(lhs - sympy.Integer(q) ** term.weight) == 0


def assemble_point_count(
    P: QAlphaPoly,
    d: PELDatumP,
    terms: Sequence[AutomorphicTermInput],
    alpha: int | None = None,
) -> sympy.Expr:
    """``P * (sum_1dim zeta^alpha Tr + eps * sum_St zeta^alpha Tr)``."""
    if not P.alpha_scaled and alpha is None:
        raise ValueError("numeric P needs the alpha it was computed at")
    a = ALPHA if alpha is None else sympy.Integer(alpha)
    one_dim, steinberg = sympy.Integer(0), sympy.Integer(0)
    for t in terms:
        if not isinstance(t.kind, TermKind):
            raise ValueError(f"unknown term kind {t.kind!r}")
        contrib = _exact(t.zeta) ** a * _exact(t.hecke_trace)
        if t.kind is TermKind.ONE_DIM_UNRAMIFIED:
            one_dim += contrib
        else:
            steinberg += contrib
    bracket = one_dim + d.sign() * steinberg
    return sympy.expand(p_as_sympy(P, alpha) * bracket)
