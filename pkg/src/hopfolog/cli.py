"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .exactfield import FieldError, InconsistentSystem, set_self_check
from .family import FamilyError, taft, truncated
from .fileio import ParseError, dumps_module, load_map, load_module
from .grmod import ModuleError, decompose, shift, slash_homology, tensor, validate
from .groth import GrothError

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


class Output:
    """Collects report lines; --golden drops the timing footer."""

    def __init__(self, args):
        self.golden = args.golden
        self.tsv = args.tsv
        self.lines: list[str] = []

    def emit(self, line: str = ""):
        self.lines.append(line)

    def table(self, header, rows):
        if self.tsv:
            self.emit("\t".join(header))
            for r in rows:
                self.emit("\t".join(r))
            return
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        fmt = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
        self.emit(fmt(header))
        for r in rows:
            self.emit(fmt(r))


def _yn(b: bool) -> str:
    return "yes" if b else "no"


# ---------------------------------------------------------------------------
# verbs


def cmd_validate(args, out):
    M = load_module(args.file, check=False)
    problems = validate(M)
    if getattr(M, "algebra", None) is not None:
        from .comod import validate_derivation_algebra, validate_smash_module

        problems = validate_derivation_algebra(M.algebra) + validate_smash_module(M)
    if problems:
        for p in problems:
            out.emit(f"violation: {p}")
        return EXIT_INPUT
    out.emit("ok")
    return EXIT_OK


def cmd_decompose(args, out):
    M = load_module(args.file)
    dec = decompose(M)
    out.emit("stable part:")
    for line in dec.stable().lines() or ["(none)"]:
        out.emit(f"  {line}")
    out.emit("projective part:")
    for line in dec.projective().lines() or ["(none)"]:
        out.emit(f"  {line}")
    return EXIT_OK


def cmd_tensor(args, out):
    M, N = load_module(args.left), load_module(args.right)
    _emit_module(out, tensor(M, N), args.output)
    return EXIT_OK


def _emit_module(out, M, path):
    text = dumps_module(M)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
        out.emit(f"wrote {path} (dim {M.dim})")
    else:
        for line in text.splitlines():
            out.emit(line)


def _family_from_flags(args):
    if args.taft_n is not None:
        if args.p is not None:
            raise UsageError("give either --p or --taft-n, not both")
        return taft(args.taft_n, cyclic=args.cyclic)
    if args.p is None:
        raise UsageError("one of --p or --taft-n is required")
    return truncated(args.p, args.m, cyclic=args.cyclic)


def cmd_fusion_table(args, out):
    from .groth import fusion_table

    fam = _family_from_flags(args)
    table = fusion_table(fam)
    n = table.n
    header = ["i\\j"] + [str(j) for j in range(n - 1)]
    rows = []
    for i in range(n - 1):
        row = [str(i)]
        for j in range(n - 1):
            row.append(",".join(table.support(i, j)) or "0")
        rows.append(row)
    out.table(header, rows)
    if args.check:
        if table.ok:
            out.emit("OK")
        else:
            from .groth import balanced_str

            for i, j in table.mismatches:
                out.emit(
                    f"mismatch ({i},{j}): got {balanced_str(table.actual[(i, j)])}, "
                    f"predicted {balanced_str(table.predicted[(i, j)])}"
                )
    return EXIT_OK


def cmd_groth(args, out):
    from .groth import class_of

    out.emit(str(class_of(load_module(args.file))))
    return EXIT_OK


def cmd_split_class(args, out):
    from .groth import split_class

    out.emit(str(split_class(load_module(args.file))))
    return EXIT_OK


def cmd_stable_hom(args, out):
    from .stable import stable_hom_dims

    M, N = load_module(args.left), load_module(args.right)
    if M.family != N.family:
        raise ModuleError("family mismatch")
    out.emit(str(stable_hom_dims(M, N)))
    return EXIT_OK


def cmd_cone(args, out):
    from .stable import cone, is_stably_trivial

    u = load_map(args.map)
    C, _ = cone(u)
    if not args.quiet:
        _emit_module(out, C, args.output)
    out.emit(f"cone dim: {C.dim}")
    out.emit(f"stably trivial: {_yn(is_stably_trivial(C))}")
    return EXIT_OK


def cmd_triangle_complete(args, out):
    from .stable import check_triangle_morphism, cone

    u1, u2, f, g = (load_map(p) for p in (args.u, args.u2, args.f, args.g))
    _, t1 = cone(u1)
    _, t2 = cone(u2)
    rep = check_triangle_morphism(t1, t2, f, g)
    from .fileio import format_triples

    out.emit(f"h: {json.dumps(format_triples(rep.h.mat))}")
    out.emit(f"h v = v' g: {_yn(rep.commutes_with_v)}")
    out.emit(f"w' h - T(f) w null-homotopic: {_yn(rep.w_square_null_homotopic)}")
    out.emit(f"w' h = T(f) w exactly: {_yn(rep.w_square_exact)}")
    return EXIT_OK


def cmd_shift(args, out):
    from .stable import shift_T, shift_Tprime

    M = load_module(args.file)
    if args.functor == "T":
        M = shift_T(M)
    elif args.functor == "Tprime":
        M = shift_Tprime(M)
    if args.by is not None:
        try:
            j = Fraction(args.by)
        except ValueError:
            raise UsageError(f"bad shift {args.by!r}") from None
        M = shift(M, j)
    _emit_module(out, M, args.output)
    return EXIT_OK


def cmd_slash(args, out):
    M = load_module(args.file)
    n = M.family.n
    values = [args.a] if args.a is not None else list(range(1, n))
    for a in values:
        dims = slash_homology(M, a)
        body = ", ".join(f"{_deg(d)}: {m}" for d, m in dims.items()) if dims else "0"
        out.emit(f"a={a}: {body}")
    return EXIT_OK


def _deg(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cmd_quasi_iso(args, out):
    from .comod import is_quasi_iso

    rep = is_quasi_iso(load_map(args.map))
    out.emit(str(rep))
    for a, dims in rep.slash.items():
        body = ", ".join(f"{_deg(d)}: {m}" for d, m in dims.items()) if dims else "0"
        out.emit(f"cone slash a={a}: {body}")
    return EXIT_OK


def cmd_ore_pullback(args, out):
    from .comod import ore_pullback

    rep = ore_pullback(load_map(args.s), load_map(args.f))
    out.emit(f"C dim: {rep.C.dim}")
    out.emit(f"h_Z quasi-iso: {_yn(rep.h_Z_quasi_iso)}")
    out.emit(f"s h_X - f h_Z null-homotopic: {_yn(rep.square_witness is not None)}")
    return EXIT_OK


def cmd_ore_kill(args, out):
    from .comod import ore_kill

    rep = ore_kill(load_map(args.f), load_map(args.s))
    out.emit(f"W dim: {rep.W.dim}")
    out.emit(f"repaired by a free summand: {_yn(rep.repaired)}")
    out.emit(f"t quasi-iso: {_yn(rep.t_quasi_iso)}")
    out.emit(f"f t null-homotopic: {_yn(rep.ft_witness is not None)}")
    return EXIT_OK


def cmd_dg2_check(args, out):
    from .comod import dg_p2_checks

    for line in dg_p2_checks(load_module(args.file)).lines():
        out.emit(line)
    return EXIT_OK


def field_check(rng=None) -> list[str]:
    """Quick randomized field-axiom and solver checks; returns failures."""
    from .exactfield import Matrix, cyclotomic_field, prime_field, solve_linear_system

    rng = rng or random.Random(0)
    failures = []
    fields = [prime_field(p) for p in (2, 3, 5, 7, 11, 13)] + [cyclotomic_field(n) for n in range(2, 13)]
    for F in fields:
        for _ in range(20):
            a, b, c = (F.random(rng) for _ in range(3))
            if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
                failures.append(f"{F!r}: distributivity")
            if not F.is_zero(a) and F.mul(a, F.inv(a)) != F.one:
                failures.append(f"{F!r}: inverse")
        A = Matrix(F, 3, 3, [[F.random(rng) for _ in range(3)] for _ in range(3)])
        x = Matrix(F, 3, 1, [[F.random(rng)] for _ in range(3)])
        sol = solve_linear_system(A, A @ x)
        if sol.particular is None or A @ sol.particular != A @ x:
            failures.append(f"{F!r}: solver")
    return failures


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        # subcommands must not reset flags given before the verb
        p = _Parser(add_help=False)
        p.add_argument("--golden", action="store_true", default=default, help="deterministic output (no timing)")
        p.add_argument("--tsv", action="store_true", default=default, help="tab-separated tables")
        p.add_argument("--field-check", action="store_true", default=default, help="run scalar self-tests first")
        return p

    common = flags(argparse.SUPPRESS)
    parser = _Parser(prog="hopfolog", description="Exact graded-module and stable-category computations.",
                     parents=[flags(False)])
    parser.add_argument("--version", action="version", version=f"hopfolog {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def verb(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=fn)
        return p

    p = verb("validate", cmd_validate, "check module invariants")
    p.add_argument("file")
    p = verb("decompose", cmd_decompose, "decompose into V_i{j}")
    p.add_argument("file")
    p = verb("tensor", cmd_tensor, "tensor two modules")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output")
    p = verb("fusion-table", cmd_fusion_table, "balanced fusion table")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--taft-n", type=int)
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--check", action="store_true")
    p = verb("groth", cmd_groth, "class in R_n")
    p.add_argument("file")
    p = verb("split-class", cmd_split_class, "class in the split Grothendieck ring")
    p.add_argument("file")
    p = verb("stable-hom", cmd_stable_hom, "Hom and stable Hom dimensions")
    p.add_argument("left")
    p.add_argument("right")
    p = verb("cone", cmd_cone, "cone of a map file")
    p.add_argument("map")
    p.add_argument("-o", "--output")
    p.add_argument("-q", "--quiet", action="store_true", help="verdict lines only")
    p = verb("triangle-complete", cmd_triangle_complete, "complete a morphism of standard triangles")
    for name in ("u", "u2", "f", "g"):
        p.add_argument(name)
    p = verb("shift", cmd_shift, "grading shift and the functors T, T'")
    p.add_argument("file")
    p.add_argument("--by")
    p.add_argument("--functor", choices=["T", "Tprime"])
    p.add_argument("-o", "--output")
    p = verb("slash", cmd_slash, "slash homology dimensions")
    p.add_argument("file")
    p.add_argument("--a", type=int)
    p = verb("quasi-iso", cmd_quasi_iso, "quasi-isomorphism test")
    p.add_argument("map")
    p = verb("ore-pullback", cmd_ore_pullback, "pullback square for a quasi-iso s and a map f")
    p.add_argument("s")
    p.add_argument("f")
    p = verb("ore-kill", cmd_ore_kill, "quasi-iso t with f t null-homotopic")
    p.add_argument("f")
    p.add_argument("s")
    p = verb("dg2-check", cmd_dg2_check, "characteristic-2 homotopy and derived triviality")
    p.add_argument("file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    start = time.perf_counter()
    if args.field_check:
        set_self_check(True)
        failures = field_check()
        for f in failures:
            out.emit(f"field check failed: {f}")
        out.emit("field check: ok" if not failures else "field check: FAILED")
        if failures:
            _flush(out)
            return EXIT_INTERNAL
    if args.command is None:
        if args.field_check:
            _flush(out)
            return EXIT_OK
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        code = args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"hopfolog: usage error: {exc}\n")
        return EXIT_USAGE
    except (ParseError, ModuleError, FamilyError, FieldError, GrothError) as exc:
        _flush(out)
        sys.stderr.write(f"hopfolog: {exc}\n")
        return EXIT_INPUT
    except (AssertionError, InconsistentSystem) as exc:
        _flush(out)
        sys.stderr.write(f"hopfolog: internal invariant violated: {exc}\n")
        return EXIT_INTERNAL
    if not args.golden:
        out.emit(f"# hopfolog {__version__} {args.command}: {time.perf_counter() - start:.3f}s")
    _flush(out)
    return code


def _flush(out: Output):
    if out.lines:
        sys.stdout.write("\n".join(out.lines) + "\n")


if __name__ == "__main__":
    sys.exit(main())
