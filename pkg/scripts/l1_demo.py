"""Densities of step approximations of analytic graphons against their closed forms."""
from __future__ import annotations

import argparse

from graphon_calculus.harness import l1_density_demo, target_from_name
from graphon_calculus.multigraph import enumerate_up_to
from graphon_calculus.rational import fmt


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--targets", nargs="+", default=["xy", "min", "const:1/2"])
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    p.add_argument("--max-edges", type=int, default=2)
    args = p.parse_args()

    for name in args.targets:
        target = target_from_name(name)
        print(f"== {target.name}")
        for h in enumerate_up_to(args.max_edges):
            rows = l1_density_demo(target, h, args.sizes)
            exact = rows[0].analytic
            gaps = "  ".join(f"n={r.n}: {float(r.gap):.3e}" if r.gap is not None else f"n={r.n}: -"
                             for r in rows)
            print(f"  {h!r:<32} exact={fmt(exact) if exact is not None else '?':<6} {gaps}")


if __name__ == "__main__":
    main()
