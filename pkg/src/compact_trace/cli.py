"""Command-line front end: ``compact-trace <subcommand> [flags]``.

Exit status is 0 on success, 1 on malformed input or a domain error and
2 when a verification suite finds a failure. Plain output wraps at
``COMPACT_TRACE_WIDTH`` columns (default 80, 0 disables wrapping).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
import textwrap
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import sympy

from .algebra import LaurentScalar, LeviPoly, to_json
from .composition import Composition
from .hecke import compact_constant_term, constant_term, kottwitz_function
from .pel import (
    AutomorphicTermInput,
    Convention,
    PELDatumP,
    assemble_point_count,
    basic_slopes,
    dimension_degree,
    dimension_closed_form,
    interpolate_P,
    orbit_data,
    polynomial_P,
)
from .traces import compact_trace_steinberg, compact_trace_trivial, intro_monomial_family
from .verify import SUITES, run_suites

WIDTH_ENV = "COMPACT_TRACE_WIDTH"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class Output:
    """One result in the three output formats."""

    data: object
    plain: str
    latex: str
    status: int = 0


@dataclass
class RunResult:
    status: int
    stdout: str
    stderr: str


# ---------------------------------------------------------------------------
# argument helpers


def _composition(text: str) -> Composition:
    try:
        return Composition(tuple(int(x) for x in text.replace(" ", "").strip("()").split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad composition {text!r}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _scalar_output(value: LaurentScalar, var: str = "q") -> Output:
    return Output(value.to_json_obj(), value.to_plain(var), value.to_latex(var))


def _levi_output(value: LeviPoly) -> Output:
    return Output(value.to_json_obj(), value.to_plain(), value.to_latex())


def _function(args) -> object:
    return kottwitz_function(args.n, args.s, args.alpha)


# ---------------------------------------------------------------------------
# subcommands


def cmd_satake(args) -> Output:
    return _levi_output(_function(args).satake)


def cmd_constant_term(args) -> Output:
    return _levi_output(constant_term(_function(args), args.composition))


def cmd_truncate(args) -> Output:
    t = compact_constant_term(args.n, args.s, args.composition)
    if t is None:
        return Output({"vanishes": True}, "0", "0")
    if args.alpha is not None:
        coeff = t.coefficient.specialize(args.alpha)
        tag = str(args.alpha)
    else:
        coeff, tag = t.coefficient, "α"
    factors = [f"χ_c f[{na},{tag},{sa}]" for na, sa in t.factors]
    ltag = r"\alpha" if args.alpha is None else tag
    lfactors = [rf"\chi_c f_{{{na},{ltag},{sa}}}" for na, sa in t.factors]
    data = {
        "vanishes": False,
        "composition": list(t.composition.parts),
        "coefficient": coeff.to_json_obj(),
        "factors": [list(f) for f in t.factors],
    }
    c_plain, c_latex = coeff.to_plain(), coeff.to_latex()
    plain = ("" if c_plain == "1" else f"({c_plain})·") + " ⊗ ".join(factors)
    latex = ("" if c_latex == "1" else rf"\left({c_latex}\right)") + r" \otimes ".join(lfactors)
    return Output(data, plain, latex)


def _specialized(value, alpha):
    return value if alpha is None else value.specialize(alpha)


def cmd_trace_steinberg(args) -> Output:
    return _scalar_output(_specialized(compact_trace_steinberg(kottwitz_function(args.n, args.s)), args.alpha))


def cmd_trace_trivial(args) -> Output:
    return _scalar_output(_specialized(compact_trace_trivial(kottwitz_function(args.n, args.s)), args.alpha))


def cmd_intro_family(args) -> Output:
    return _levi_output(intro_monomial_family(args.n, args.s))


def _datum(path: str) -> PELDatumP:
    return PELDatumP.load(path)


def cmd_orbits(args) -> Output:
    d = _datum(args.datum)
    od = orbit_data(d, args.alpha)
    slopes = {b.place: b for b in basic_slopes(d)}
    rows, plain = [], []
    for po in od.places:
        b = slopes[po.place]
        rows.append(
            {
                "place": po.place,
                "slope": str(b.slope),
                "simple": b.simple,
                "etale": b.etale,
                "orbit_count": po.count,
                "alpha_v": po.degree,
                "orbits": [{"embeddings": list(m), "s_v": s} for m, s in po.orbits],
            }
        )
        orbits = ", ".join("{" + ",".join(map(str, m)) + f"}}:s={s}" for m, s in po.orbits)
        plain.append(
            f"{po.place}: slope {b.slope}{' simple' if b.simple else ''}{' etale' if b.etale else ''}; "
            f"{po.count} orbit(s) of degree {po.degree}: {orbits}"
        )
    latex = r" \\ ".join(
        rf"\text{{{r['place']}}}: \alpha_v = {r['alpha_v']},\ \#V_\alpha = {r['orbit_count']}" for r in rows
    )
    return Output({"alpha": args.alpha, "places": rows}, "\n".join(plain), latex)


def cmd_poly_p(args) -> Output:
    d = _datum(args.datum)
    P = polynomial_P(d, args.alpha, assume_split=args.assume_split, convention=args.convention)
    return _scalar_output(P, "q" if args.alpha is None else "p")


def cmd_interpolate(args) -> Output:
    d = _datum(args.datum)
    fit = interpolate_P(
        d, args.residue, args.samples, degree=args.degree, p=args.p, convention=args.convention
    )
    coeffs = [str(c) for c in fit.coefficients]
    data = {
        "modulus": fit.modulus,
        "residue": fit.residue,
        "coefficients": coeffs,
        "fit_alphas": list(fit.fit_alphas),
        "check_alphas": list(fit.check_alphas),
        "exact": fit.exact,
    }
    try:
        poly = fit.polynomial()
        plain, latex = poly.to_plain(), poly.to_latex()
    except ValueError:
        plain = " + ".join(f"({c})·X^{j}" for j, c in enumerate(coeffs))
        latex = plain
    header = f"alpha ≡ {fit.residue} mod {fit.modulus}: "
    return Output(data, header + plain, latex)


def cmd_dimension(args) -> Output:
    d = _datum(args.datum)
    closed, degree = dimension_closed_form(d), dimension_degree(d)
    data = {"closed_formula": closed, "degree_of_P": degree, "difference": closed - degree}
    plain = f"closed formula: {closed}\ndegree of P: {degree}"
    latex = rf"\dim_{{\mathrm{{formula}}}} = {closed},\quad \deg_{{q^\alpha}} P = {degree}"
    return Output(data, plain, latex)


def cmd_assemble(args) -> Output:
    d = _datum(args.datum)
    with open(args.terms, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ValueError("terms file must hold a JSON list")
    terms = [AutomorphicTermInput.from_json_obj(t) for t in raw]
    P = polynomial_P(d, args.alpha, assume_split=args.assume_split)
    expr = assemble_point_count(P, d, terms, args.alpha)
    return Output({"expression": sympy.srepr(expr), "text": str(expr)}, sympy.sstr(expr), sympy.latex(expr))


def cmd_verify(args) -> Output:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, args.max_n, args.jobs)
    data = {r.suite: {"ok": r.ok, "failures": list(r.failures)} for r in reports}
    lines = []
    for r in reports:
        lines.append(f"{r.suite} (n <= {r.max_n}): {'ok' if r.ok else 'FAILED'}")
        lines.extend(f"  {f}" for f in r.failures)
    status = 0 if all(r.ok for r in reports) else 2
    text = "\n".join(lines)
    return Output(data, text, text, status)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compact-trace", description="Compact traces of Kottwitz functions.")
    parser.add_argument("--format", choices=("plain", "json", "latex"), default="plain")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "latex"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add_parser = sub.add_parser
    sub.add_parser = lambda *a, **k: add_parser(*a, parents=[common], **k)

    def local(name: str, handler: Callable, help: str, composition: bool = False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--s", type=int, required=True)
        if composition:
            p.add_argument("--composition", type=_composition, required=True)
        p.add_argument("--alpha", type=_positive, default=None)
        p.set_defaults(handler=handler)
        return p

    local("satake", cmd_satake, "Satake transform of f[n,α,s]")
    local("constant-term", cmd_constant_term, "constant term along a composition", composition=True)
    local("truncate", cmd_truncate, "compact truncation of the constant term", composition=True)
    local("trace-steinberg", cmd_trace_steinberg, "compact trace on the Steinberg representation")
    local("trace-trivial", cmd_trace_trivial, "compact trace on the trivial representation")
    p = sub.add_parser("intro-family", help="explicit monomial family over the Borel")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(handler=cmd_intro_family)

    def datum(name: str, handler: Callable, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("--datum", required=True, help="PEL datum JSON file")
        p.set_defaults(handler=handler)
        return p

    p = datum("orbits", cmd_orbits, "slopes and Frobenius orbits")
    p.add_argument("--alpha", type=_positive, required=True)
    p = datum("poly-p", cmd_poly_p, "the polynomial P(q^α)")
    p.add_argument("--alpha", type=_positive, default=None)
    p.add_argument("--assume-split", action="store_true")
    p.add_argument("--convention", choices=[c.value for c in Convention], default="normalized")
    p = datum("interpolate", cmd_interpolate, "fit P on a residue class of α")
    p.add_argument("--residue", type=int, required=True)
    p.add_argument("--samples", type=_int_list, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--p", type=_positive, default=2)
    p.add_argument("--convention", choices=[c.value for c in Convention], default="normalized")
    datum("dimension", cmd_dimension, "dimension of the basic stratum, two routes")
    p = datum("assemble", cmd_assemble, "point-count expression from spectral terms")
    p.add_argument("--terms", required=True, help="JSON list of automorphic terms")
    p.add_argument("--alpha", type=_positive, default=None)
    p.add_argument("--assume-split", action="store_true")

    p = sub.add_parser("verify", help="cross-route verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=_positive, default=6)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(handler=cmd_verify)
    return parser


def _width() -> int:
    raw = os.environ.get(WIDTH_ENV, "80")
    try:
        return max(int(raw), 0)
    except ValueError:
        return 80


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return to_json(out.data) + "\n"
    if fmt == "latex":
        return out.latex + "\n"
    width = _width()
    if not width:
        return out.plain + "\n"
    lines = []
    for line in out.plain.split("\n"):
        lines.extend(
            textwrap.wrap(line, width, subsequent_indent="    ", break_long_words=False, break_on_hyphens=False)
            or [""]
        )
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None) -> RunResult:
    """Parse ``argv`` and execute; never raises, never exits."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        try:
            args = build_parser().parse_args(argv)
        except UsageError as exc:
            print(exc, file=sys.stderr)
            return RunResult(1, stdout.getvalue(), stderr.getvalue())
        except SystemExit as exc:  # --help
            return RunResult(int(exc.code or 0), stdout.getvalue(), stderr.getvalue())
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("always")
                warnings.showwarning = lambda m, c, *a, **k: print(f"warning: {m}", file=sys.stderr)
                out = args.handler(args)
        except (ValueError, TypeError, OSError, sympy.SympifyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return RunResult(1, stdout.getvalue(), stderr.getvalue())
        sys.stdout.write(render(out, args.format))
    return RunResult(out.status, stdout.getvalue(), stderr.getvalue())


def main(argv: Sequence[str] | None = None) -> int:
    result = run(argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.status


if __name__ == "__main__":
    raise SystemExit(main())
