"""Exact arithmetic on the Satake side.

Scalars are finite Laurent sums in ``q**(1/2)``. An exponent is stored as the
integer ``k`` counting half-steps, so a term ``(k, c)`` means ``c * q**(k/2)``
in numeric mode and ``c * q**(k*alpha/2)`` in symbolic mode, where ``alpha``
is the (unspecified) degree. The two modes never mix.

Polynomials in ``X_1, ..., X_n`` are stored per Levi block: a key holds one
weakly decreasing exponent tuple per block and stands for the whole orbit of
monomials under the product of the per-block symmetric groups. In symbolic
mode an X-exponent ``e`` means ``X**(e*alpha)``.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .composition import Composition

Key = tuple[tuple[int, ...], ...]


class ModeError(ValueError):
    """Symbolic-in-alpha and numeric values met in one expression."""


class InhomogeneousError(ValueError):
    def __init__(self, witnesses: tuple[tuple[int, ...], tuple[int, ...]]):
        self.witnesses = witnesses
        a, b = witnesses
        super().__init__(
            f"not homogeneous: monomial {a} has degree {sum(a)}, "
            f"monomial {b} has degree {sum(b)}"
        )


def _mode_name(alpha_scaled: bool) -> str:
    return "symbolic" if alpha_scaled else "numeric"


class LaurentScalar:
    """Element of ``Z[q^(1/2), q^(-1/2)]`` (numeric) or ``Z[q^(alpha/2), q^(-alpha/2)]``."""

    __slots__ = ("_terms", "alpha_scaled", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, alpha_scaled: bool = True):
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[int(k)] = int(c)
        self._terms = clean
        self.alpha_scaled = bool(alpha_scaled)
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: int, alpha_scaled: bool = True):
        return cls({0: c}, alpha_scaled)

    @classmethod
    def monomial(cls, k: int, c: int = 1, alpha_scaled: bool = True):
        """``c * q**(k/2)`` (times ``alpha`` in the exponent when symbolic)."""
        return cls({k: c}, alpha_scaled)

    @classmethod
    def zero(cls, alpha_scaled: bool = True):
        return cls({}, alpha_scaled)

    # access -------------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return max(self._terms)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return min(self._terms)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.alpha_scaled != self.alpha_scaled:
                raise ModeError(
                    f"cannot combine {_mode_name(self.alpha_scaled)} and "
                    f"{_mode_name(other.alpha_scaled)} scalars"
                )
            return other
        if isinstance(other, int):
            return type(self).constant(other, self.alpha_scaled)
        return NotImplemented

    def _new(self, terms: Mapping[int, int]):
        return type(self)(terms, self.alpha_scaled)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = defaultdict(int)
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] += c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = self._new({0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int):
        """Multiply by ``q**(k/2)``."""
        return self._new({e + k: c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.alpha_scaled == other.alpha_scaled and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alpha_scaled, frozenset(self._terms.items())))
        return self._hash

    # evaluation ---------------------------------------------------------

    def evaluate(self, q: int | Fraction, alpha: int | None = None) -> Fraction:
        """Value at a concrete ``q`` (must be a perfect square if odd half-steps occur)."""
        if self.alpha_scaled and alpha is None:
            raise ModeError("symbolic scalar needs a value for alpha")
        scale = alpha if self.alpha_scaled else 1
        q = Fraction(q)
        total = Fraction(0)
        for k, c in self._terms.items():
            e = k * scale
            if e % 2:
                root = _exact_sqrt(q)
                total += c * root ** e
            else:
                total += c * q ** (e // 2)
        return total

    def specialize(self, alpha: int):
        """Symbolic -> numeric by fixing ``alpha``."""
        if not self.alpha_scaled:
            raise ModeError("already numeric")
        return type(self)({k * alpha: c for k, c in self._terms.items()}, alpha_scaled=False)

    # presentation -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "mode": _mode_name(self.alpha_scaled),
            "terms": [[k, str(c)] for k, c in self.items()],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping):
        mode = obj["mode"]
        if mode not in ("symbolic", "numeric"):
            raise ValueError(f"unknown mode {mode!r}")
        return cls({int(k): int(c) for k, c in obj["terms"]}, mode == "symbolic")

    def to_latex(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, c in self.items():
            power = _latex_power(var, k, self.alpha_scaled)
            pieces.append(_join_coeff(c, power, latex=True))
        return _join_signed(pieces)

    def to_plain(self, var: str = "q") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, c in self.items():
            power = _plain_power(var, k, self.alpha_scaled)
            pieces.append(_join_coeff(c, power, latex=False))
        return _join_signed(pieces)

    def __str__(self) -> str:
        return self.to_plain()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._terms!r}, alpha_scaled={self.alpha_scaled})"


class QAlphaPoly(LaurentScalar):
    """A trace value, i.e. a scalar read as a (Laurent) polynomial in ``q**alpha``."""

    __slots__ = ()

    def is_polynomial_in_q_alpha(self) -> bool:
        return all(k >= 0 and k % 2 == 0 for k in self._terms)

    def degree_in_q_alpha(self) -> Fraction:
        """Top exponent of ``q**alpha`` (of ``q`` in numeric mode); may be half-integral."""
        return Fraction(self.max_exponent(), 2)

    def coefficients(self) -> list[int]:
        """Coefficients of ``1, q^alpha, q^(2 alpha), ...`` for a genuine polynomial."""
        if not self.is_polynomial_in_q_alpha():
            raise ValueError(f"{self} is not a polynomial in q^alpha")
        if not self._terms:
            return []
        top = self.max_exponent() // 2
        return [self._terms.get(2 * j, 0) for j in range(top + 1)]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int], alpha_scaled: bool = True):
        return cls({2 * j: c for j, c in enumerate(coeffs)}, alpha_scaled)


def _exact_sqrt(q: Fraction) -> Fraction:
    from math import isqrt

    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise ValueError(f"q = {q} has no rational square root; half-integral powers occur")
    return Fraction(num, den)


def _exponent_fraction(k: int) -> Fraction:
    return Fraction(k, 2)


def _plain_power(var: str, k: int, alpha_scaled: bool) -> str:
    if k == 0:
        return ""
    e = _exponent_fraction(k)
    if alpha_scaled:
        if e == 1:
            return f"{var}^α"
        if e.denominator == 1:
            return f"{var}^({e.numerator}α)"
        num = "" if e.numerator == 1 else "-" if e.numerator == -1 else str(e.numerator)
        return f"{var}^({num}α/{e.denominator})"
    if e == 1:
        return var
    return f"{var}^{e}" if e.denominator == 1 and e > 0 else f"{var}^({e})"


def _latex_power(var: str, k: int, alpha_scaled: bool) -> str:
    if k == 0:
        return ""
    e = _exponent_fraction(k)
    sign = "-" if e < 0 else ""
    a = abs(e)
    if alpha_scaled:
        if a.denominator == 1:
            body = r"\alpha" if a == 1 else rf"{a.numerator}\alpha"
        else:
            lead = "" if a.numerator == 1 else str(a.numerator)
            body = rf"\frac{{{lead}\alpha}}{{{a.denominator}}}"
    else:
        if e == 1:
            return var
        body = str(a.numerator) if a.denominator == 1 else rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
    return f"{var}^{{{sign}{body}}}"


def _join_coeff(c: int, power: str, latex: bool) -> str:
    if not power:
        return str(c)
    if c == 1:
        return power
    if c == -1:
        return "-" + power
    sep = " " if latex else ""
    return f"{c}{sep}{power}"


def _join_signed(pieces: list[str]) -> str:
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# Levi-symmetric polynomials


def distinct_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Each distinct rearrangement of ``values`` once."""
    counts = Counter(values)
    keys = sorted(counts, reverse=True)
    n = len(values)
    buf: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(buf) == n:
            yield tuple(buf)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                buf.append(v)
                yield from rec()
                buf.pop()
                counts[v] += 1

    yield from rec()


def _orbit(key: Key) -> Iterator[tuple[int, ...]]:
    """Expand a per-block key to every full exponent vector in its orbit."""

    def rec(i: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == len(key):
            yield acc
            return
        for perm in distinct_permutations(key[i]):
            yield from rec(i + 1, acc + perm)

    return rec(0, ())


def normal_key(composition: Composition, exponents: Sequence[int]) -> Key:
    return tuple(tuple(sorted(block, reverse=True)) for block in composition.split(exponents))


class LeviPoly:
    """A Laurent polynomial in ``X_1..X_n`` symmetric under each block's symmetric group."""

    __slots__ = ("composition", "_terms", "alpha_scaled")

    def __init__(
        self,
        composition: Composition,
        terms: Mapping[Key, LaurentScalar] | None = None,
        alpha_scaled: bool = True,
    ):
        self.composition = composition
        self.alpha_scaled = bool(alpha_scaled)
        clean: dict[Key, LaurentScalar] = {}
        for key, coeff in (terms or {}).items():
            key = tuple(tuple(int(e) for e in block) for block in key)
            self._check_key(key)
            if isinstance(coeff, int):
                coeff = LaurentScalar.constant(coeff, self.alpha_scaled)
            if coeff.alpha_scaled != self.alpha_scaled:
                raise ModeError("coefficient mode differs from polynomial mode")
            if coeff:
                clean[key] = LaurentScalar(coeff.terms, self.alpha_scaled)
        self._terms = clean

    def _check_key(self, key: Key) -> None:
        parts = self.composition.parts
        if len(key) != len(parts):
            raise ValueError(f"key {key} has {len(key)} blocks, composition {self.composition}")
        for block, size in zip(key, parts):
            if len(block) != size:
                raise ValueError(f"block {block} should have length {size}")
            if any(block[i] < block[i + 1] for i in range(size - 1)):
                raise ValueError(f"block {block} is not weakly decreasing")

    # constructors -------------------------------------------------------

    @classmethod
    def unit(cls, composition: Composition, alpha_scaled: bool = True) -> LeviPoly:
        zero_key = tuple((0,) * p for p in composition.parts)
        return cls(composition, {zero_key: LaurentScalar.constant(1, alpha_scaled)}, alpha_scaled)

    @classmethod
    def zero(cls, composition: Composition, alpha_scaled: bool = True) -> LeviPoly:
        return cls(composition, {}, alpha_scaled)

    @classmethod
    def from_expanded(
        cls,
        composition: Composition,
        monomials: Mapping[tuple[int, ...], LaurentScalar],
        alpha_scaled: bool = True,
    ) -> LeviPoly:
        """Group a monomial dictionary into orbit representatives.

        Raises ``ValueError`` if the input is not symmetric within each block.
        """
        grouped: dict[Key, LaurentScalar] = {}
        members: Counter = Counter()
        for exps, coeff in monomials.items():
            if not coeff:
                continue
            if coeff.alpha_scaled != alpha_scaled:
                raise ModeError("coefficient mode differs from polynomial mode")
            key = normal_key(composition, exps)
            seen = grouped.get(key)
            if seen is None:
                grouped[key] = coeff
            elif seen != coeff:
                raise ValueError(f"not block-symmetric: orbit {key} has unequal coefficients")
            members[key] += 1
        for key, count in members.items():
            if count != _orbit_size(key):
                raise ValueError(f"not block-symmetric: orbit {key} is incomplete")
        return cls(composition, grouped, alpha_scaled)

    # access -------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.composition.n

    @property
    def terms(self) -> dict[Key, LaurentScalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[Key, LaurentScalar]]:
        return sorted(self._terms.items(), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def expanded(self) -> dict[tuple[int, ...], LaurentScalar]:
        out = {}
        for key, coeff in self._terms.items():
            for exps in _orbit(key):
                out[exps] = coeff
        return out

    def monomial_count(self) -> int:
        return sum(_orbit_size(key) for key in self._terms)

    def regroup(self, composition: Composition) -> LeviPoly:
        """Re-normalize the same expanded polynomial over another composition."""
        if composition.n != self.n:
            raise ValueError(f"rank mismatch: {composition} vs {self.composition}")
        if composition == self.composition:
            return self
        if composition.refines(self.composition):
            # cheap path: splitting blocks of a key gives keys of the finer grouping
            out: dict[Key, LaurentScalar] = {}
            for key, coeff in self._terms.items():
                for sub in _split_orbit(key, self.composition, composition):
                    out[sub] = coeff
            return LeviPoly(composition, out, self.alpha_scaled)
        return LeviPoly.from_expanded(composition, self.expanded(), self.alpha_scaled)

    def block_degrees(self, key: Key) -> tuple[int, ...]:
        return tuple(sum(block) for block in key)

    def select(self, keep: Callable[[tuple[int, ...]], bool]) -> LeviPoly:
        """Keep the orbit terms whose block-degree vector passes ``keep``."""
        kept = {k: c for k, c in self._terms.items() if keep(self.block_degrees(k))}
        return LeviPoly(self.composition, kept, self.alpha_scaled)

    # arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: LeviPoly) -> None:
        if not isinstance(other, LeviPoly):
            raise TypeError(f"expected LeviPoly, got {type(other).__name__}")
        if other.composition != self.composition:
            raise ValueError(f"composition mismatch: {self.composition} vs {other.composition}")
        if other.alpha_scaled != self.alpha_scaled:
            raise ModeError("cannot combine symbolic and numeric polynomials")

    def __add__(self, other: LeviPoly) -> LeviPoly:
        self._check_compatible(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out[key] + c if key in out else c
        return LeviPoly(self.composition, out, self.alpha_scaled)

    def __neg__(self) -> LeviPoly:
        return LeviPoly(self.composition, {k: -c for k, c in self._terms.items()}, self.alpha_scaled)

    def __sub__(self, other: LeviPoly) -> LeviPoly:
        return self + (-other)

    def scale(self, c: LaurentScalar | int) -> LeviPoly:
        if isinstance(c, int):
            c = LaurentScalar.constant(c, self.alpha_scaled)
        return LeviPoly(self.composition, {k: v * c for k, v in self._terms.items()}, self.alpha_scaled)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> LeviPoly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = LeviPoly.unit(self.composition, self.alpha_scaled)
        for _ in range(e):
            result = poly_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeviPoly):
            return NotImplemented
        return (
            self.composition == other.composition
            and self.alpha_scaled == other.alpha_scaled
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.composition, self.alpha_scaled, frozenset(self._terms.items())))

    # presentation -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "composition": list(self.composition.parts),
            "mode": _mode_name(self.alpha_scaled),
            "terms": [
                {"exponents": [list(b) for b in key], "coefficient": coeff.to_json_obj()["terms"]}
                for key, coeff in self.items()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> LeviPoly:
        alpha_scaled = obj["mode"] == "symbolic"
        comp = Composition(tuple(obj["composition"]))
        terms = {}
        for t in obj["terms"]:
            key = tuple(tuple(b) for b in t["exponents"])
            terms[key] = LaurentScalar({int(k): int(c) for k, c in t["coefficient"]}, alpha_scaled)
        return cls(comp, terms, alpha_scaled)

    def _orbit_text(self, key: Key, latex: bool) -> str:
        blocks = []
        start = 0
        for block in key:
            factors = []
            for off, e in enumerate(block):
                if e == 0:
                    continue
                idx = start + off + 1
                factors.append(_x_power(idx, e, self.alpha_scaled, latex))
            start += len(block)
            blocks.append(("" if latex else "·").join(factors) or "1")
        if len(key) == 1:
            body = blocks[0]
        else:
            body = (r" \otimes " if latex else " ⊗ ").join(blocks)
        if _orbit_size(key) > 1:
            body = (r"\mathrm{Sym}[" if latex else "Sym[") + body + "]"
        return body

    def to_plain(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for key, coeff in self.items():
            c = coeff.to_plain()
            c = "" if c == "1" else f"({c})·"
            pieces.append(c + self._orbit_text(key, latex=False))
        return " + ".join(pieces)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for key, coeff in self.items():
            c = coeff.to_latex()
            c = "" if c == "1" else rf"\left({c}\right)"
            pieces.append(c + self._orbit_text(key, latex=True))
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_plain()

    def __repr__(self) -> str:
        return f"LeviPoly({self.composition}, {len(self._terms)} orbits, {_mode_name(self.alpha_scaled)})"


def _x_power(idx: int, e: int, alpha_scaled: bool, latex: bool) -> str:
    if latex:
        if alpha_scaled:
            exp = r"\alpha" if e == 1 else rf"{e}\alpha"
        else:
            exp = str(e)
        return f"X_{{{idx}}}" if exp == "1" else f"X_{{{idx}}}^{{{exp}}}"
    if alpha_scaled:
        exp = "α" if e == 1 else f"({e}α)"
    else:
        exp = "" if e == 1 else f"({e})" if e < 0 else str(e)
    return f"X{idx}^{exp}" if exp else f"X{idx}"


def _orbit_size(key: Key) -> int:
    from math import factorial

    size = 1
    for block in key:
        size *= factorial(len(block))
        for mult in Counter(block).values():
            size //= factorial(mult)
    return size


def _split_orbit(key: Key, coarse: Composition, fine: Composition) -> Iterator[Key]:
    """Orbit keys over ``fine`` making up one orbit key over ``coarse``."""
    # number of fine blocks inside each coarse block
    groups: list[int] = []
    fine_parts = list(fine.parts)
    pos = 0
    for size in coarse.parts:
        acc, count = 0, 0
        while acc < size:
            acc += fine_parts[pos]
            pos += 1
            count += 1
        groups.append(count)

    pieces_per_block: list[list[Key]] = []
    pos = 0
    for block, count in zip(key, groups):
        sizes = fine_parts[pos:pos + count]
        pos += count
        seen = set()
        for perm in distinct_permutations(block):
            sub = []
            start = 0
            for sz in sizes:
                sub.append(tuple(sorted(perm[start:start + sz], reverse=True)))
                start += sz
            seen.add(tuple(sub))
        pieces_per_block.append(sorted(seen))

    def rec(i: int, acc: Key) -> Iterator[Key]:
        if i == len(pieces_per_block):
            yield acc
            return
        for piece in pieces_per_block[i]:
            yield from rec(i + 1, acc + piece)

    return rec(0, ())


def poly_mul(a: LeviPoly, b: LeviPoly) -> LeviPoly:
    """Product of two Levi-symmetric polynomials over the same composition."""
    a._check_compatible(b)
    ea = a.expanded()
    out: dict[tuple[int, ...], LaurentScalar] = {}
    zero = LaurentScalar.zero(a.alpha_scaled)
    # multiply the full expansion of ``a`` against orbit representatives of ``b``
    # and expand only at the end; the result is symmetric so grouping is exact
    for eb, cb in b.expanded().items():
        for ex, cx in ea.items():
            m = tuple(x + y for x, y in zip(ex, eb))
            out[m] = out.get(m, zero) + cx * cb
    return LeviPoly.from_expanded(a.composition, out, a.alpha_scaled)


# ---------------------------------------------------------------------------
# evaluation points


@dataclass(frozen=True)
class HeckePoint:
    """Slot ``i`` carries the value ``q**(twice[i]/2)``."""

    composition: Composition
    twice: tuple[int, ...]

    def __post_init__(self) -> None:
        twice = tuple(int(t) for t in self.twice)
        if len(twice) != self.composition.n:
            raise ValueError(f"{len(twice)} exponents for a rank-{self.composition.n} point")
        object.__setattr__(self, "twice", twice)

    @classmethod
    def from_exponents(cls, composition: Composition, exponents: Iterable) -> HeckePoint:
        twice = []
        for e in exponents:
            f = Fraction(e) * 2
            if f.denominator != 1:
                raise ValueError(f"exponent {e} is not a half-integer")
            twice.append(int(f))
        return cls(composition, tuple(twice))

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self.twice)

    def __neg__(self) -> HeckePoint:
        return HeckePoint(self.composition, tuple(-t for t in self.twice))


def eval_point(p: LeviPoly, pt: HeckePoint) -> QAlphaPoly:
    """Substitute ``X_i -> q**(pt.exponents[i])``; exact and linear in ``p``."""
    if pt.composition.n != p.n:
        raise ValueError(f"point has {pt.composition.n} slots, polynomial has rank {p.n}")
    if not pt.composition.refines(p.composition):
        raise ValueError(
            f"point composition {pt.composition} does not refine {p.composition}"
        )
    out: dict[int, int] = defaultdict(int)
    for key, coeff in p._terms.items():
        for exps in _orbit(key):
            shift = sum(e * t for e, t in zip(exps, pt.twice))
            for k, c in coeff._terms.items():
                out[k + shift] += c
    return QAlphaPoly(out, p.alpha_scaled)


def homogeneous_degree(p: LeviPoly) -> int:
    """Common total X-degree of every monomial (in units of alpha when symbolic)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no degree")
    first = None
    for key in p._terms:
        flat = tuple(e for block in key for e in block)
        if first is None:
            first = flat
        elif sum(flat) != sum(first):
            raise InhomogeneousError((first, flat))
    return sum(first)


def to_json(obj) -> str:
    """Canonical JSON text: sorted keys, decimal-string coefficients."""
    if hasattr(obj, "to_json_obj"):
        obj = obj.to_json_obj()
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
