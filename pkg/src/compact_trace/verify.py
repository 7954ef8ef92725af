"""Cross-route verification suites, one task per rank ``n``.

Each suite maps a rank to a list of failure descriptions; an empty list
means every check at that rank passed. Tasks share no state, so sweeps can
fan out over processes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Callable

from .algebra import QAlphaPoly, eval_point
from .chambers import chamber_filter, in_chamber
from .composition import Composition, enumerate_compositions, eps_parabolic
from .hecke import (
    compact_constant_term,
    constant_term,
    constant_term_closed_form,
    kottwitz_function,
)
from .oracle import (
    oracle_chamber,
    oracle_compact_survivors,
    oracle_constant_term,
    oracle_obtuse_borel,
    pairing_table,
)
from .traces import (
    compact_trace_steinberg,
    compact_trace_trivial,
    cttrivial_check,
    intro_monomial_family,
    steinberg_point,
    truncated_borel_term,
)


def check_constant_terms(n: int) -> list[str]:
    bad = []
    for c in enumerate_compositions(n):
        for s in range(n + 1):
            f = kottwitz_function(n, s)
            routes = constant_term(f, c), constant_term_closed_form(n, s, c), oracle_constant_term(n, s, c)
            if not routes[0] == routes[1] == routes[2]:
                bad.append(f"constant term n={n} s={s} c={c}")
    return bad


def check_chambers(n: int, bound: int = 3) -> list[str]:
    bad = []
    for c in enumerate_compositions(n):
        if not pairing_table(c).check_duality():
            bad.append(f"pairing duality c={c}")
        for v in product(range(-bound, bound + 1), repeat=c.k):
            for kind in ("acute", "obtuse", "equal_ratio"):
                if in_chamber(v, c, kind) != oracle_chamber(v, c, kind):
                    bad.append(f"chamber {kind} c={c} v={v}")
    return bad


def check_chicfp(n: int) -> list[str]:
    bad = []
    for c in enumerate_compositions(n):
        for s in range(1, n + 1):
            got = compact_constant_term(n, s, c)
            survivors = oracle_compact_survivors(n, s, c)
            filtered = chamber_filter(constant_term_closed_form(n, s, c), "equal_ratio")
            filtered_sigs = sorted(tuple(filtered.block_degrees(k)) for k in filtered.terms)
            if got is None:
                if survivors or filtered_sigs:
                    bad.append(f"chicfp n={n} s={s} c={c}: expected vanishing")
            elif [got.signatures] != survivors or filtered_sigs != survivors:
                bad.append(f"chicfp n={n} s={s} c={c}: survivor mismatch")
            elif got.coefficient.max_exponent() + sum(
                sa * (na - sa) for na, sa in got.factors
            ) != s * (n - s):
                bad.append(f"chicfp n={n} s={s} c={c}: coefficient")
    return bad


def check_constantvanish(n: int) -> list[str]:
    bad = []
    for s in range(1, n + 1):
        if gcd(n, s) != 1:
            continue
        f = kottwitz_function(n, s)
        for c in enumerate_compositions(n):
            if c.k > 1 and not chamber_filter(constant_term(f, c), "equal_ratio").is_zero():
                bad.append(f"constantvanish n={n} s={s} c={c}")
    return bad


def check_cttrivial(n: int) -> list[str]:
    bad = []
    for s in range(1, n + 1):
        if gcd(n, s) == 1 and not cttrivial_check(kottwitz_function(n, s)).equal:
            bad.append(f"cttrivial n={n} s={s}")
    return bad


def check_intro_family(n: int) -> list[str]:
    bad = []
    for s in range(1, n + 1):
        f = kottwitz_function(n, s)
        fam = intro_monomial_family(n, s)
        if fam != truncated_borel_term(f) or fam != oracle_obtuse_borel(n, s):
            bad.append(f"intro family n={n} s={s}")
        elif eval_point(fam, steinberg_point(n)) != compact_trace_steinberg(f) * eps_parabolic(
            Composition.borel(n)
        ):
            bad.append(f"intro family evaluation n={n} s={s}")
    return bad


def check_examples(n: int) -> list[str]:
    bad = []
    if compact_trace_trivial(kottwitz_function(n, 1)) != 1:
        bad.append(f"Tr(f[{n},α,1], 1) != 1")
    if n >= 2:
        expected = QAlphaPoly.from_coefficients([1] * (n // 2))
        if compact_trace_trivial(kottwitz_function(n, 2)) != expected:
            bad.append(f"Tr(f[{n},α,2], 1) != {expected}")
    return bad


SUITES: dict[str, Callable[[int], list[str]]] = {
    "constant-terms": check_constant_terms,
    "chambers": check_chambers,
    "chicfp": check_chicfp,
    "constantvanish": check_constantvanish,
    "cttrivial": check_cttrivial,
    "intro-family": check_intro_family,
    "examples": check_examples,
}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    max_n: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _run_one(task: tuple[str, int]) -> list[str]:
    name, n = task
    return SUITES[name](n)


def run_suites(names: list[str], max_n: int, jobs: int = 1) -> list[SuiteReport]:
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    if max_n < 1:
        raise ValueError("max-n must be >= 1")
    tasks = [(name, n) for name in names for n in range(1, max_n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    by_suite: dict[str, list[str]] = {name: [] for name in names}
    for (name, _), failures in zip(tasks, results):
        by_suite[name].extend(failures)
    return [SuiteReport(name, max_n, tuple(by_suite[name])) for name in names]
