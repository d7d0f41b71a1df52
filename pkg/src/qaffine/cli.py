"""Command-line front end: ``qaffine resolve | hilbert | build-identity | verify | examples``.

Exit codes: 0 success (or verification pass), 1 verification failure,
2 usage, parse or unsupported-input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .affine import (
    OracleCapacityError,
    closed_form_partial_series,
    full_hilbert_series,
    homogeneous_grading,
    oracle_quotient_dim,
)
from .engine.build import EngineError, build_identity, reduce_identity
from .engine.identity import render
from .ideals import (
    admissible_subsets,
    check_complex,
    format_monomial,
    format_polynomial,
    hilbert_series_truncated,
    koszul_pairs,
    taylor_resolution,
)
from .parsing import IdealParseError, IdealSpec, parse_ideal
from .qseries import format_qseries
from .verify.checks import verify_against_closed_form, verify_against_oracle
from .verify.fixtures import UnknownFixtureError, list_fixtures, load_fixture, verify_fixture

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad flags or unsupported input; reported on stderr with exit code 2."""


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise UsageError(f"negative entry in {text!r}")
    return values


def _bound(text: str, n: int) -> tuple[int, ...]:
    values = _int_list(text)
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise UsageError(f"bound {text!r} needs 1 or {n} entries")
    return values


def _spec(args) -> IdealSpec:
    return parse_ideal(args.ideal, n=args.n)


def _fmt_set(I) -> str:
    return "{" + ",".join(map(str, I)) + "}"


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- resolve -----------------------------------------------------------------

def cmd_resolve(args) -> int:
    spec = _spec(args)
    if not spec.is_monomial():
        raise UsageError("resolve needs a monomial ideal")
    ideal = spec.monomial_ideal()
    res = taylor_resolution(ideal)
    lines = [f"ideal {ideal}  (n={ideal.n}, t={ideal.t})"]
    lines.append(f"degree 0: S  shift {tuple(0 for _ in range(ideal.n))}")
    for s in sorted(res.modules):
        for I, shift in res.modules[s]:
            neg = tuple(-e for e in shift)
            lines.append(f"degree {s}: e{_fmt_set(I)}  lcm {format_monomial(ideal.lcm(I))}  shift {neg}")
    if args.check:
        lines.append(f"d∘d = 0: {'yes' if check_complex(res) else 'NO'}")
    if args.koszul:
        lines.append("admissible subsets: " + " ".join(_fmt_set(I) for I in admissible_subsets(ideal)))
        lines.append("koszul pairs:")
        kp = koszul_pairs(ideal)
        for I, J, J2 in kp:
            lines.append(f"  {_fmt_set(I)} <- {_fmt_set(J)} x {_fmt_set(J2)}")
        if not kp:
            lines.append("  none")
    _write(args, "\n".join(lines) + "\n")
    if args.check and not check_complex(res):
        return EXIT_FAIL
    return EXIT_OK


# -- hilbert -----------------------------------------------------------------

def cmd_hilbert(args) -> int:
    spec = _spec(args)
    n = spec.n
    if args.oracle:
        if args.M is None or args.N is None:
            raise UsageError("--oracle needs --M and --N")
        gens = spec.poly_generators()
        grading = homogeneous_grading(gens)
        if grading == tuple(range(1, n + 1)):
            grading = None
        M = _int_list(args.M)
        if grading is not None and len(M) == n and len(M) != max(grading):
            # generators are not multihomogeneous: only class degrees are defined
            M = tuple(sum(M[i] for i in range(n) if grading[i] == c)
                      for c in range(1, max(grading) + 1))
            print(f"note: ideal is graded by variable classes {grading}; using class degree {M}",
                  file=sys.stderr)
        dim = oracle_quotient_dim(gens, M, args.N, grading=grading)
        _write(args, f"{dim}\n")
        return EXIT_OK
    if not spec.is_monomial():
        raise UsageError("only the oracle path (--oracle --M --N) supports polynomial generators")
    ideal = spec.monomial_ideal()
    if args.affine:
        pairs = spec.pairs()
        if pairs is None:
            raise UsageError("--affine needs squarefree quadratic generators")
        if args.M is not None:
            M = _int_list(args.M)
            if len(M) != n:
                raise UsageError(f"--M needs {n} entries")
            series = closed_form_partial_series(pairs, M, args.q_order)
            _write(args, format_qseries(series) + "\n")
            return EXIT_OK
        full = full_hilbert_series(pairs, n, _bound(str(args.y_bound), n), args.q_order)
        lines = []
        for M in full.y_box():
            s = full.partial(M)
            if not s.is_zero():
                lines.append(f"M={M}: {format_qseries(s)}")
        _write(args, "\n".join(lines) + "\n")
        return EXIT_OK
    series = hilbert_series_truncated(ideal, _bound(str(args.y_bound), n), method=args.method)
    poly = {ye: c for (ye, _), c in series.coeffs.items()}
    _write(args, format_polynomial(poly) + "\n")
    return EXIT_OK


# -- build-identity ----------------------------------------------------------

def _quadratic_pairs(spec: IdealSpec) -> list[tuple[int, int]]:
    pairs = spec.pairs()
    if pairs is None:
        raise UsageError(
            "unsupported input: the identity construction handles ideals generated "
            "by squarefree quadratic monomials x_i*x_j only"
        )
    return pairs


def cmd_build_identity(args) -> int:
    spec = _spec(args)
    pairs = _quadratic_pairs(spec)
    identity = build_identity(pairs, spec.n)
    eliminated: list[str] = []
    if args.reduce:
        identity, eliminated = reduce_identity(identity)
    _write(args, render(identity, args.format))
    if args.reduce:
        names = ", ".join(eliminated) if eliminated else "none"
        print(f"eliminated: {names}", file=sys.stderr)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.fixture:
        fx = load_fixture(args.fixture)
        box = None
        if args.M_max is not None:
            box = (args.M_max,) * len(fx.check["box"])
        report = verify_fixture(args.fixture, box=box, order=args.order)
    else:
        if not args.ideal:
            raise UsageError("verify needs an ideal or --fixture NAME")
        spec = _spec(args)
        pairs = _quadratic_pairs(spec)
        identity = build_identity(pairs, spec.n)
        M_max = 3 if args.M_max is None else args.M_max
        order = 20 if args.order is None else args.order
        report = verify_against_closed_form(identity, pairs, M_max, order, subject=spec.source)
        if args.oracle:
            N = args.N if args.N is not None else min(order, 5)
            report.merge(verify_against_oracle(identity, spec.poly_generators(), M_max, N,
                                               subject=spec.source))
    _write(args, report.render(args.report))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- examples ----------------------------------------------------------------

def cmd_examples(args) -> int:
    lines = []
    for fx in list_fixtures():
        chk = fx.check
        box = "x".join(str(b) for b in chk.get("box", []))
        params = f"{chk['kind']}, box {box}, order {chk['order']}"
        lines.append(f"{fx.title}  [{fx.provenance}]  {params}")
        if fx.source:
            lines.append(f"    {fx.source}")
    _write(args, "".join(line + "\n" for line in lines))
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qaffine", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def ideal_args(sp, optional=False):
        sp.add_argument("ideal", nargs="?" if optional else None,
                        help='generators, e.g. "x1*x2, x2*x3"')
        sp.add_argument("--n", type=int, default=None, help="number of variables (default: max index)")
        sp.add_argument("--out", default=None, help="write output to this file")

    sp = sub.add_parser("resolve", help="Taylor resolution of a monomial ideal")
    ideal_args(sp)
    sp.add_argument("--check", action="store_true", help="check d∘d = 0")
    sp.add_argument("--koszul", action="store_true", help="list Koszul pairs and admissible subsets")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("hilbert", help="finite or affinized Hilbert series")
    ideal_args(sp)
    sp.add_argument("--method", choices=("basis", "resolution"), default="basis")
    sp.add_argument("--y-bound", default="4", help="y-exponent bound, one value or one per variable")
    sp.add_argument("--q-order", type=int, default=20)
    sp.add_argument("--affine", action="store_true", help="affinized series")
    sp.add_argument("--M", default=None, help="multidegree, e.g. 1,1")
    sp.add_argument("--oracle", action="store_true", help="quotient dimension by linear algebra")
    sp.add_argument("--N", type=int, default=None, help="energy for --oracle")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("build-identity", help="construct the alternating-sum identity")
    ideal_args(sp)
    sp.add_argument("--format", choices=("json", "text", "latex"), default="json")
    sp.add_argument("--reduce", action="store_true", help="sum out reducible variables")
    sp.set_defaults(func=cmd_build_identity)

    sp = sub.add_parser("verify", help="verify an identity by series expansion")
    ideal_args(sp, optional=True)
    sp.add_argument("--fixture", default=None, help="shipped fixture name")
    sp.add_argument("--M-max", type=int, default=None, dest="M_max")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--report", choices=("table", "json"), default="table")
    sp.add_argument("--oracle", action="store_true", help="also compare with the linear-algebra oracle")
    sp.add_argument("--N", type=int, default=None, help="energy bound for --oracle")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("examples", help="list shipped fixtures")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except IdealParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except UnknownFixtureError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
    except OracleCapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
    except (UsageError, ValueError, EngineError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
