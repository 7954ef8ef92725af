"""Compositions and extended compositions of integers.

A composition ``(n_1, ..., n_k)`` of ``n`` indexes the standard (block upper
triangular) parabolic subgroup of GL_n whose Levi factor is
``GL_{n_1} x ... x GL_{n_k}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Composition:
    """Ordered block sizes, all positive."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Composition:
        return cls(tuple(parts))

    @classmethod
    def trivial(cls, n: int) -> Composition:
        """The one-block composition ``(n)``, i.e. ``P = G``."""
        return cls((n,))

    @classmethod
    def borel(cls, n: int) -> Composition:
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def boundaries(self) -> tuple[int, ...]:
        """Partial sums ``n_1, n_1 + n_2, ...`` excluding the total."""
        return tuple(accumulate(self.parts))[:-1]

    def blocks(self) -> list[range]:
        """Zero-based slot ranges of the blocks."""
        out = []
        start = 0
        for p in self.parts:
            out.append(range(start, start + p))
            start += p
        return out

    def split(self, seq: Sequence) -> tuple[tuple, ...]:
        """Cut a length-``n`` sequence into per-block tuples."""
        if len(seq) != self.n:
            raise ValueError(f"expected {self.n} entries, got {len(seq)}")
        return tuple(tuple(seq[b.start:b.stop]) for b in self.blocks())

    def refines(self, other: Composition) -> bool:
        """True if every block of ``other`` is a union of blocks of ``self``."""
        return self.n == other.n and set(other.boundaries()) <= set(self.boundaries())

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class ExtendedComposition:
    """Ordered nonnegative parts (zeros allowed)."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"extended composition parts must be >= 0: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def enumerate_compositions(n: int) -> list[Composition]:
    """All ``2**(n-1)`` compositions of ``n``, coarsest first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    # a composition is a choice of cut points among the n - 1 gaps
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for gap in range(n - 1):
            if mask >> gap & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(Composition(tuple(parts)))
    out.sort(key=lambda c: (c.k, c.parts))
    return out


def enumerate_extended(
    s: int, k: int, caps: Sequence[int] | None = None
) -> list[ExtendedComposition]:
    """Extended compositions of ``s`` with ``k`` slots, optionally capped per slot.

    Uncapped, there are ``C(s + k - 1, k - 1)`` of them. Output is in
    lexicographically decreasing order.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if s < 0:
        return []
    if caps is not None and len(caps) != k:
        raise ValueError(f"caps has length {len(caps)}, expected {k}")
    limits = [s] * k if caps is None else [min(s, max(c, -1)) for c in caps]
    # suffix capacity lets us prune infeasible prefixes early
    room = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        room[i] = room[i + 1] + max(limits[i], 0)

    out: list[ExtendedComposition] = []
    prefix: list[int] = []

    def rec(i: int, left: int) -> None:
        if i == k - 1:
            if 0 <= left <= limits[i]:
                out.append(ExtendedComposition(tuple(prefix) + (left,)))
            return
        for v in range(min(left, limits[i]), -1, -1):
            if left - v > room[i + 1]:
                break
            prefix.append(v)
            rec(i + 1, left - v)
            prefix.pop()

    rec(0, s)
    return out


def eps_parabolic(c: Composition) -> int:
    """``(-1)**dim(A_P/A_G) = (-1)**(k-1)``."""
    return -1 if (c.k - 1) % 2 else 1
