"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 bad input,
3 refused because the instance exceeds a size guard.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile

from . import bounds as bd
from .errors import InfeasibleError
from .extremal import build_extremal, extremal_minimality_predicate, verify_extremal_maximality
from .linalg import Field
from .monomial import MonomialIdeal, load_ideal, power_product
from .power_complex import build_lri, build_lrq, equivalence_classes, label_lrq, taylor_complex
from .resolution import (
    homogenize,
    is_minimal_support,
    lcm_lattice,
    minimize_resolution,
    multigraded_betti,
    supports_resolution_bps,
    supports_resolution_quasitree,
)
from .simplicial import collapse_sequence, is_quasi_tree, leaf_order, replay_collapses

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3
CHECKS = ("bps", "quasitree", "minimal", "leaf", "collapse")


class Output:
    def __init__(self, args):
        self.path = args.out
        self.format = args.format

    def emit(self, text: str):
        if not text.endswith("\n"):
            text += "\n"
        if self.path is None:
            sys.stdout.write(text)
            return
        d = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".powres-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def json(self, payload: dict):
        self.emit(json.dumps({"schema": SCHEMA, **payload}, indent=2))


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ideal(args) -> MonomialIdeal:
    if getattr(args, "extremal", None):
        return build_extremal(args.extremal)
    if not getattr(args, "ideal", None):
        raise ValueError("give --ideal FILE or --extremal Q")
    return load_ideal(args.ideal)


def _complex_summary(cx) -> dict:
    out = {"f_vector": list(cx.f_vector()), "dim": cx.dim}
    if len(cx.facets) <= 64:
        out["quasi_tree"] = is_quasi_tree(cx)
    return out


def cmd_build_lrq(args, out: Output) -> int:
    lrq = build_lrq(args.r, args.q)
    payload = {"command": "build-lrq", **lrq.to_json(), "summary": _complex_summary(lrq.complex)}
    out.json(payload)
    return EXIT_OK


def cmd_build_lri(args, out: Output) -> int:
    ideal = _ideal(args)
    r = args.r[0]
    classes = equivalence_classes(ideal, r, args.policy)
    L = build_lri(ideal, r, args.policy)
    out.json({
        "command": "build-lri",
        "ideal": ideal.to_json(),
        "r": r,
        "policy": classes.policy,
        "classes": classes.to_json()["classes"],
        "complex": L.to_json(),
        "summary": _complex_summary(L.complex),
    })
    return EXIT_OK


def cmd_taylor(args, out: Output) -> int:
    ideal = _ideal(args)
    r = args.r[0]
    if args.all_products:
        from .power_complex import enumerate_points

        gens = [power_product(ideal, a) for a in enumerate_points(r, ideal.q)]
    else:
        gens = ideal.power_generators(r)
    L = taylor_complex(gens)
    out.json({"command": "taylor", "r": r, "complex": L.to_json(), "summary": {"f_vector": list(L.f_vector())}})
    return EXIT_OK


def _labeled_for(args, ideal, r):
    if args.complex == "lrq" or (args.complex == "auto" and args.extremal):
        return label_lrq(ideal, r)
    return build_lri(ideal, r, args.policy)


def cmd_verify(args, out: Output) -> int:
    ideal = _ideal(args)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise ValueError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    field = Field.parse(args.field)
    results = []
    all_ok = True
    for r in args.r:
        L = _labeled_for(args, ideal, r)
        lattice = None
        for c in checks:
            if c in ("bps", "quasitree") and lattice is None:
                lattice = lcm_lattice(L.generators())
            if c == "bps":
                rep = supports_resolution_bps(L, field, lattice, max_faces=args.max_faces).to_json()
            elif c == "quasitree":
                if is_quasi_tree(L.complex):
                    rep = supports_resolution_quasitree(L, lattice).to_json()
                else:
                    rep = {"check": c, "ok": False, "detail": "complex is not a quasi-tree"}
            elif c == "minimal":
                rep = is_minimal_support(L, max_faces=args.max_faces).to_json()
            elif c == "leaf":
                order = leaf_order(L.complex)
                rep = {"check": c, "ok": order is not None}
                if order is not None:
                    rep["order"] = [[_js(v) for v in F] for F in order.facets]
            else:
                steps = collapse_sequence(L.complex)
                ok = steps is not None and len(replay_collapses(L.complex, steps).vertices) == 1
                rep = {"check": c, "ok": ok}
                if steps is not None:
                    rep["steps"] = [[[_js(v) for v in s], [_js(v) for v in F]] for s, F in steps]
            rep["r"] = r
            all_ok &= bool(rep["ok"])
            results.append(rep)
    out.json({"command": "verify", "ideal": ideal.to_json(), "field": str(field), "results": results, "ok": all_ok})
    return EXIT_OK if all_ok else EXIT_FAIL


def _js(v):
    return list(v) if isinstance(v, tuple) else v


def _render_tables(args, out: Output, tables, title):
    if args.format == "markdown":
        out.emit(bd.render_markdown(tables, title))
    elif args.format == "csv":
        out.emit(bd.render_csv(tables))
    else:
        out.json({"command": args.command, "tables": [t.to_json() for t in tables]})


def cmd_bounds(args, out: Output) -> int:
    tables = []
    for q in args.q:
        for r in args.r:
            tables.append(bd.generic_table(q, r, args.t_max))
    if args.format == "json":
        params = [vars(bd.BoundParameters.of(r, q)) for q in args.q for r in args.r]
        out.json({"command": "bounds", "parameters": params, "tables": [t.to_json() for t in tables]})
    else:
        _render_tables(args, out, tables, "Bound comparisons")
    return EXIT_OK


def cmd_table(args, out: Output) -> int:
    if args.ideal or args.extremal:
        ideal = _ideal(args)
        tables = [bd.comparison_table(ideal, r, args.field, args.t_max, args.with_betti, args.policy) for r in args.r]
    else:
        if not args.q:
            raise ValueError("give --q/--r pairs or --ideal")
        if len(args.q) != len(args.r):
            if len(args.q) == 1:
                args.q = args.q * len(args.r)
            elif len(args.r) == 1:
                args.r = args.r * len(args.q)
            else:
                raise ValueError("--q and --r lists must have equal length")
        tables = [bd.generic_table(q, r, args.t_max) for q, r in zip(args.q, args.r)]
    _render_tables(args, out, tables, "Bound comparisons")
    return EXIT_OK


def cmd_betti(args, out: Output) -> int:
    ideal = _ideal(args)
    field = Field.parse(args.field)
    r = args.r[0]
    payload = {"command": "betti", "ideal": ideal.to_json(), "r": r}
    strand = minimized = None
    if args.method in ("strand", "both"):
        strand = multigraded_betti(ideal, r, field, max_faces=args.max_faces)
        payload["strand"] = strand.to_json()
    if args.method in ("minimize", "both"):
        L = taylor_complex(ideal.power_generators(r)) if args.complex == "taylor" else _labeled_for(args, ideal, r)
        R = homogenize(L, field, max_faces=args.max_faces)
        minimized = minimize_resolution(R, rng=random.Random(args.seed))
        payload["minimized"] = minimized.to_json()
    agree = None
    if strand is not None and minimized is not None:
        agree = strand.totals == minimized.totals
        payload["agree"] = agree
    if args.format == "text":
        table = strand or minimized
        out.emit(table.to_text() + ("" if agree is None else f"\nmethods agree: {agree}"))
    else:
        out.json(payload)
    return EXIT_FAIL if agree is False else EXIT_OK


def cmd_extremal(args, out: Output) -> int:
    E = build_extremal(args.q)
    payload = {"command": "extremal", "q": args.q, "ideal": E.to_json(),
               "generators": [str(g) for g in E.generators]}
    if args.r:
        payload["r"] = args.r[0]
        payload["power_generators"] = [str(g) for g in E.power_generators(args.r[0])]
        payload["minimal_support_predicate"] = extremal_minimality_predicate(args.r[0], args.q)
    out.json(payload)
    return EXIT_OK


def cmd_verify_maximality(args, out: Output) -> int:
    ideal = _ideal(args)
    reports = [verify_extremal_maximality(ideal, r, args.field, allow_large=args.allow_large) for r in args.r]
    ok = all(rep.holds for rep in reports)
    out.json({"command": "verify-maximality", "reports": [rep.to_json() for rep in reports], "ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args, out: Output) -> int:
    from .selftest import run

    lines, ok = run()
    out.emit("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "build-lrq": cmd_build_lrq,
    "build-lri": cmd_build_lri,
    "taylor": cmd_taylor,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "table": cmd_table,
    "betti": cmd_betti,
    "extremal": cmd_extremal,
    "verify-maximality": cmd_verify_maximality,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="QQ (default) or GF(p); env POWRES_FIELD also works")
    common.add_argument("--max-faces", type=int, default=2**16, help="abort homology/homogenization beyond this many faces")
    common.add_argument("--format", choices=("json", "markdown", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write output here (atomically) instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--policy", choices=("balanced", "lex"), default="balanced",
                        help="representative choice for equal power products")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--ideal", help="ideal JSON file")
    src.add_argument("--extremal", type=int, metavar="Q", help="use the extremal ideal on Q generators")

    p = argparse.ArgumentParser(prog="powres", description="Simplicial resolutions of powers of square-free monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-lrq", parents=[common], help="build L^r_q")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)

    s = sub.add_parser("build-lri", parents=[common, src], help="build L^r(I)")
    s.add_argument("--r", type=_ints, default=[1])

    s = sub.add_parser("taylor", parents=[common, src], help="Taylor complex of I^r")
    s.add_argument("--r", type=_ints, default=[1])
    s.add_argument("--all-products", action="store_true", help="use every power product, not just minimal ones")

    s = sub.add_parser("verify", parents=[common, src], help="check support criteria")
    s.add_argument("--r", type=_ints, default=[1])
    s.add_argument("--check", default="bps,quasitree", help=f"comma list from {','.join(CHECKS)}")
    s.add_argument("--complex", choices=("auto", "lri", "lrq"), default="auto",
                   help="auto: L^r_q for extremal ideals, L^r(I) otherwise")

    s = sub.add_parser("bounds", parents=[common], help="closed-form bounds for (q, r)")
    s.add_argument("--q", type=_ints, required=True)
    s.add_argument("--r", type=_ints, required=True)
    s.add_argument("--t-max", type=int, default=2)

    s = sub.add_parser("table", parents=[common, src], help="bound comparison table")
    s.add_argument("--q", type=_ints, default=[])
    s.add_argument("--r", type=_ints, required=True)
    s.add_argument("--t-max", type=int, default=2)
    s.add_argument("--with-betti", action="store_true")

    s = sub.add_parser("betti", parents=[common, src], help="multigraded Betti numbers of I^r")
    s.add_argument("--r", type=_ints, default=[1])
    s.add_argument("--method", choices=("strand", "minimize", "both"), default="strand")
    s.add_argument("--complex", choices=("auto", "lri", "lrq", "taylor"), default="auto")

    s = sub.add_parser("extremal", parents=[common], help="print the extremal ideal")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--r", type=_ints, default=[])

    s = sub.add_parser("verify-maximality", parents=[common, src], help="compare Betti numbers with the extremal ideal")
    s.add_argument("--r", type=_ints, default=[2])
    s.add_argument("--allow-large", action="store_true")

    sub.add_parser("selftest", parents=[common], help="run quick built-in checks")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        if args.field is not None:
            Field.parse(args.field)
        return COMMANDS[args.command](args, out)
    except InfeasibleError as e:
        print(f"powres: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"powres: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
