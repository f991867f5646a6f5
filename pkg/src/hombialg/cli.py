"""Command-line interface.  Exit codes: 0 pass, 1 mathematical failure, 2 input error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .cohomology import cohomology, cohomology_dims
from .convolution import antipode_properties, antipode_solutions
from .deformations import (DeformationError, apply_gauge, check_unit_counit, normalize_unit,
                           obstruction, residuals, twist_deformation)
from .linalg import ContainmentError, DimensionError, scalar_str
from .structures import (MorphismError, build_group_algebra, build_taft, dual, tensor_product,
                         validate, yau_twist)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    def __init__(self, as_json=False, quiet=False, stream=None):
        self.as_json = as_json
        self.quiet = quiet
        self.stream = stream or sys.stdout

    def line(self, text=""):
        if not self.quiet and not self.as_json:
            print(text, file=self.stream)

    def doc(self, obj):
        if self.as_json and not self.quiet:
            print(json.dumps(obj, indent=2), file=self.stream)

    def data(self, obj):
        """Documents that are the command's product (always printed unless quiet)."""
        if not self.quiet:
            print(io.dumps(obj), file=self.stream)


def _source(args) -> "io.HomBialgebra":
    if getattr(args, "builder", None):
        if args.builder == "taft":
            if args.lam is None:
                raise io.InputError("--builder taft needs --lambda")
            return build_taft(io.parse_scalar(args.lam, "--lambda"))
        if args.n is None or args.k is None:
            raise io.InputError("--builder group needs --n and --k")
        try:
            return build_group_algebra(args.n, args.k)
        except ValueError as e:
            raise io.InputError(str(e)) from None
    if not args.path:
        raise io.InputError("give a structure file or --builder")
    return io.parse_source(args.path)


def _write_or_print(out: Output, doc, path):
    if path:
        Path(path).write_text(io.dumps(doc) + "\n")
        out.line(f"wrote {path}")
    else:
        out.data(doc)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, out: Output) -> int:
    B = _source(args)
    rep = validate(B)
    for c in rep.checks:
        out.line(c.describe(B.basis))
    out.line("all axioms hold" if rep.all_pass else f"{len(rep.failures())} axiom(s) fail")
    out.doc({"all_pass": rep.all_pass, "checks": [
        {"name": c.name, "pass": c.passed,
         **({} if c.passed else {"witness": list(c.witness),
                                 "lhs": _sparse_json(c.lhs), "rhs": _sparse_json(c.rhs)})}
        for c in rep.checks]})
    return EXIT_OK if rep.all_pass else EXIT_FAIL


def _sparse_json(vals):
    return [[list(k), scalar_str(v)] for k, v in sorted((vals or {}).items())]


def cmd_cohomology(args, out: Output) -> int:
    B = _source(args)
    n = args.n_degree
    if n < 1:
        raise io.InputError("degree must be >= 1")
    if args.representatives:
        rep = cohomology(B, n)
        dims = {"n": n, "dim_C": rep.dim_ambient, "dim_Z": rep.dim_Z,
                "dim_B": rep.dim_B, "dim_H": rep.dim_H}
    else:
        rep = None
        dims = cohomology_dims(B, n)
    out.line(f"dim C^{n} = {dims['dim_C']}")
    out.line(f"dim Z^{n} = {dims['dim_Z']}, dim B^{n} = {dims['dim_B']}, dim H^{n} = {dims['dim_H']}")
    out.line(f"dim H^{n} = {dims['dim_H']}")
    doc = dict(dims)
    if rep is not None:
        doc["representatives"] = []
        for k, v in enumerate(rep.representatives):
            out.line(f"representative {k + 1}:")
            comps = {}
            for c in v.components:
                if c.map.is_zero():
                    continue
                name = f"f{c.p}{c.q}"
                for line in io.format_map(c.map, B.basis, name):
                    out.line("  " + line)
                comps[f"{c.p},{c.q}"] = [[r, col, scalar_str(x)]
                                         for (r, col), x in sorted(c.map.items())]
            doc["representatives"].append(comps)
    out.doc(doc)
    return EXIT_OK


def cmd_deform(args, out: Output) -> int:
    D = io.deformation_from_json(io.load_json(args.path), args.path)
    sub = args.subcommand
    if sub == "residuals":
        rep = residuals(D)
        rows = []
        for o in rep.orders:
            status = "pass" if o.ok else "FAIL"
            out.line(f"order {o.order}: {status} (assoc {'ok' if o.assoc_ok else 'nonzero'}, "
                     f"coassoc {'ok' if o.coassoc_ok else 'nonzero'}, "
                     f"compat {'ok' if o.compat_ok else 'nonzero'})")
            if not o.ok and not out.quiet:
                for name, m in (("assoc", o.assoc), ("coassoc", o.coassoc), ("compat", o.compat)):
                    if not m.is_zero():
                        out.line(f"  {name} residual: {m.nnz} nonzero entries, e.g. "
                                 + ", ".join(f"[{r},{c}]={scalar_str(v)}"
                                             for (r, c), v in sorted(m.items())[:4]))
            rows.append({"order": o.order, "pass": o.ok, "assoc": o.assoc_ok,
                         "coassoc": o.coassoc_ok, "compat": o.compat_ok})
        out.doc({"orders": rows, "valid_to": rep.valid_to})
        return EXIT_OK if rep.all_ok else EXIT_FAIL
    if sub == "obstruction":
        s = args.order if args.order is not None else D.order + 1
        try:
            obs = obstruction(D, s)
        except DeformationError as e:
            out.line(str(e))
            out.doc({"error": str(e)})
            return EXIT_FAIL
        zero = obs.cochain.is_zero()
        out.line(f"order {s} obstruction: {'zero' if zero else 'nonzero'}; "
                 f"{'extendable' if obs.extendable else 'NOT a coboundary, cannot extend'}")
        doc = {"order": s, "zero": zero, "extendable": obs.extendable}
        if obs.extendable:
            w = obs.witness
            doc["mu"] = io.mu_table(w.component(1, 2))
            doc["delta"] = io.delta_table(w.component(2, 1))
            for line in io.format_map(w.component(1, 2), D.base.basis, f"mu{s}"):
                out.line("  " + line)
            for line in io.format_map(w.component(2, 1), D.base.basis, f"Delta{s}"):
                out.line("  " + line)
        out.doc(doc)
        return EXIT_OK if obs.extendable else EXIT_FAIL
    if sub == "gauge":
        if not args.phi:
            raise io.InputError("gauge needs --phi FILE")
        G = io.gauge_from_json(io.load_json(args.phi), D.base.dim, args.phi)
        try:
            D2 = apply_gauge(D, G)
        except (DeformationError, ValueError) as e:
            raise io.InputError(str(e)) from None
        _write_or_print(out, io.deformation_to_json(D2), args.output)
        return EXIT_OK
    if sub == "normalize-unit":
        try:
            D2, G = normalize_unit(D)
        except DeformationError as e:
            out.line(str(e))
            return EXIT_FAIL
        ok = all(check_unit_counit(D2))
        if args.output or args.gauge_output:
            _write_or_print(out, io.deformation_to_json(D2), args.output)
            _write_or_print(out, io.gauge_to_json(G), args.gauge_output)
        else:
            out.data({"deformation": io.deformation_to_json(D2), "gauge": io.gauge_to_json(G)})
        return EXIT_OK if ok else EXIT_FAIL
    if sub == "twist":
        if not args.beta:
            raise io.InputError("twist needs --beta FILE")
        beta = io.endo_from_json(io.load_json(args.beta), D.base.dim, args.beta)
        try:
            D2 = twist_deformation(D, beta)
        except MorphismError as e:
            out.line(f"not a morphism: {e}")
            return EXIT_FAIL
        _write_or_print(out, io.deformation_to_json(D2), args.output)
        return EXIT_OK
    raise io.InputError(f"unknown deform subcommand {sub!r}")


def cmd_antipode(args, out: Output) -> int:
    B = _source(args)
    S, free = antipode_solutions(B)
    if S is None:
        out.line("no antipode")
        out.doc({"exists": False})
        return EXIT_OK
    for line in io.format_map(S, B.basis, "S"):
        out.line(line)
    if free:
        out.line(f"warning: not unique, {free}-dimensional family of solutions")
    rep = antipode_properties(B, S)
    for c in rep.checks:
        out.line(c.describe(B.basis))
    out.doc({"exists": True, "unique": not free, "S": io.endo_table(S),
             "properties": {c.name: c.passed for c in rep.checks}})
    return EXIT_OK


def cmd_twist(args, out: Output) -> int:
    B = _source(args)
    beta = io.endo_from_json(io.load_json(args.beta), B.dim, args.beta)
    try:
        Bb = yau_twist(B, beta)
    except MorphismError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    _write_or_print(out, io.bialgebra_to_json(Bb), args.output)
    return EXIT_OK


def cmd_dual(args, out: Output) -> int:
    _write_or_print(out, io.bialgebra_to_json(dual(_source(args))), args.output)
    return EXIT_OK


def cmd_tensor(args, out: Output) -> int:
    B = tensor_product(io.parse_source(args.first), io.parse_source(args.second))
    _write_or_print(out, io.bialgebra_to_json(B), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _add_source(p, positional=True):
    if positional:
        p.add_argument("path", nargs="?", help="structure file, or taft:LAMBDA / group:N:K")
    p.add_argument("--builder", choices=["taft", "group"])
    p.add_argument("--lambda", dest="lam", metavar="L")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="exit code only")

    ap = argparse.ArgumentParser(prog="hombialg", parents=[common],
                                 description="Exact computations with finite-dimensional Hom-bialgebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check all axioms")
    _add_source(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", parents=[common], help="dimensions of Z^n, B^n, H^n")
    p.add_argument("path", nargs="?")
    p.add_argument("n_degree", type=int, metavar="n")
    _add_source(p, positional=False)
    p.add_argument("--representatives", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("deform", parents=[common], help="truncated deformations")
    p.add_argument("path")
    p.add_argument("subcommand", choices=["residuals", "obstruction", "gauge", "normalize-unit", "twist"])
    p.add_argument("--order", type=int)
    p.add_argument("--phi")
    p.add_argument("--beta")
    p.add_argument("--output", "-o")
    p.add_argument("--gauge-output")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("antipode", parents=[common], help="solve for an antipode")
    _add_source(p)
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("twist", parents=[common], help="Yau twist by a morphism")
    _add_source(p)
    p.add_argument("--beta", required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("dual", parents=[common], help="dual Hom-bialgebra")
    _add_source(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("tensor", parents=[common], help="tensor product of two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_tensor)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    out = Output(as_json=getattr(args, "json", False), quiet=getattr(args, "quiet", False))
    try:
        return args.func(args, out)
    except (io.InputError, DimensionError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ContainmentError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
