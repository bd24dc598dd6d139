"""Command-line front end.

Machine-readable results go to stdout (or --out), a one-line summary to
stderr. Exit status: 0 success, 1 domain or input error, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import classpoly, formats
from .calculus import DerivativeRequest, gateaux_exact, gateaux_fd
from .errors import GraphonError
from .harness import l1_density_demo, target_from_name, verify_if, verify_only_if
from .homdensity import T, T_INJ, density
from .multigraph import enumerate_classes
from .norms import cut_distance_perm, cut_norm_exact, l1_distance
from .rational import fmt
from .weighted_graph import DirectionMatrix, random_direction


def _read_graph(path):
    return formats.multigraph_from_text(formats.read_text(path), str(path))


def _read_matrix(path):
    return formats.matrix_from_text(formats.read_text(path), str(path))


def _read_poly(path):
    return formats.poly_from_text(formats.read_text(path), str(path))


def cmd_enumerate(args):
    hs = enumerate_classes(args.edges, args.max_vertices)
    out = {"edges": args.edges, "max_vertices": args.max_vertices, "count": len(hs),
           "multigraphs": [formats.multigraph_record(h) for h in hs]}
    return formats.dumps(out), f"{len(hs)} multigraphs with {args.edges} edges"


def cmd_density(args):
    h = _read_graph(args.graph)
    a = _read_matrix(args.matrix)
    val = density(h, a, args.kind)
    return fmt(val) + "\n", f"{args.kind}(H, a) on n={a.size}"


def cmd_decompose(args):
    f = _read_poly(args.poly)
    if args.kind == T:
        c = classpoly.decompose_t(f, args.N)
    else:
        c = classpoly.decompose_tinj(f, args.N)
    return formats.dumps(formats.coeffs_to_obj(c)), f"{len(c.coeffs)} nonzero coefficients"


def cmd_derive(args):
    f = _read_poly(args.poly)
    a = _read_matrix(args.matrix)
    if args.direction:
        gs = []
        for p in args.direction:
            g = _read_matrix(p)
            gs.append(DirectionMatrix(g.entries))
    else:
        if args.order is None or args.seed is None:
            raise GraphonError("derive needs --direction files, or --order with --seed")
        gs = [random_direction(a.size, (args.seed, i), base=a) for i in range(args.order)]
    req = DerivativeRequest(a, tuple(gs))
    out = {"order": req.order, "admissible": req.admissible,
           "directions": [formats.matrix_to_obj(g) for g in gs],
           "exact": fmt(gateaux_exact(f, req))}
    if args.step is not None:
        est = gateaux_fd(lambda x: classpoly.evaluate(f, x), req, args.step)
        out["finite_difference"] = {"value": repr(est.value), "step": repr(est.step),
                                    "scheme": est.scheme}
    return formats.dumps(out), f"order-{req.order} derivative = {out['exact']}"


def cmd_cutnorm(args):
    mats = [_read_matrix(p) for p in args.matrix]
    if len(mats) == 1:
        r = cut_norm_exact(mats[0])
        return formats.dumps(formats.cutnorm_to_obj(r)), f"cut norm {fmt(r.value)}"
    if len(mats) == 2:
        d = cut_distance_perm(*mats)
        out = {"cut_distance_perm": fmt(d), "upper_bound": True}
        return formats.dumps(out), f"permutation cut distance {fmt(d)} (upper bound)"
    raise GraphonError("cutnorm takes one matrix (norm) or two (permutation distance)")


def cmd_l1(args):
    if len(args.matrix) != 2:
        raise GraphonError("l1 needs exactly two --matrix files")
    d = l1_distance(*(_read_matrix(p) for p in args.matrix))
    return formats.dumps({"l1": fmt(d)}), f"L1 distance {fmt(d)}"


def cmd_verify_if(args):
    c = formats.coeffs_from_text(formats.read_text(args.coeffs), str(args.coeffs))
    rep = verify_if(c, args.N, args.n, trials=args.trials, seed=args.seed)
    return rep.to_json(), f"verify-if: {rep.verdict}"


def cmd_verify_only_if(args):
    f = _read_poly(args.poly)
    blown = _read_poly(args.poly_blown) if args.poly_blown else None
    rep = verify_only_if(f, args.N, args.blowup, f_blown=blown, seed=args.seed)
    return rep.to_json(), f"verify-only-if: {rep.verdict}"


def cmd_demo_l1(args):
    h = _read_graph(args.graph)
    rows = l1_density_demo(target_from_name(args.target), h, args.sizes)
    out = {"target": args.target, "rows": [
        {"n": r.n, "density": fmt(r.density),
         "analytic": None if r.analytic is None else fmt(r.analytic),
         "gap": None if r.gap is None else fmt(r.gap)} for r in rows]}
    return formats.dumps(out), f"{len(rows)} discretizations of {args.target}"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphon-calc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", type=Path, help="write the result here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("enumerate", cmd_enumerate, "list multigraph classes with a given edge count")
    sp.add_argument("--edges", type=int, required=True)
    sp.add_argument("--max-vertices", type=int)

    sp = add("density", cmd_density, "t(H, a) or t_inj(H, a)")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--kind", choices=[T, T_INJ], default=T)

    sp = add("decompose", cmd_decompose, "decompose a class-function polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--N", type=int, required=True,
                    help="max edge count (t basis) or homogeneous degree (tinj basis)")
    sp.add_argument("--kind", choices=[T, T_INJ], default=T)

    sp = add("derive", cmd_derive, "mixed Gateaux derivative of a polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--matrix", required=True, help="base point")
    sp.add_argument("--direction", action="append", help="direction matrix file (repeatable)")
    sp.add_argument("--order", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--step", type=float, help="also report a finite-difference estimate")

    sp = add("cutnorm", cmd_cutnorm, "cut norm, or permutation cut distance of two matrices")
    sp.add_argument("--matrix", action="append", required=True)

    sp = add("l1", cmd_l1, "L1 distance of two step graphons")
    sp.add_argument("--matrix", action="append", required=True)

    sp = add("verify-if", cmd_verify_if, "coefficients -> vanishing derivatives")
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, required=True)

    sp = add("verify-only-if", cmd_verify_only_if, "polynomial -> unique density coefficients")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--poly-blown", help="the same functional on the blown-up size")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--blowup", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("demo-l1", cmd_demo_l1, "densities of step approximations of analytic graphons")
    sp.add_argument("--target", required=True, help="xy, min or const:p")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--sizes", type=int, nargs="+", required=True)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text, summary = args.func(args)
    except GraphonError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.out is not None:
        try:
            args.out.write_text(text)
        except OSError as e:
            print(f"error: {args.out}: {e.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
