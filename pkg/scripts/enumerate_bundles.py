#!/usr/bin/env python3
"""Enumerate small holomorphic bundle data on the worked-example torus and
print their ranks and canonical Lagrangian keys."""

import argparse

from mirrortori.fukaya import canonical_form, mirror_object
from mirrortori.verify import enumerate_specs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=1,
                    help="max absolute entry of the slope matrix (<= 2)")
    ap.add_argument("--rmax", type=int, default=2,
                    help="largest denominator r")
    args = ap.parse_args()
    if args.bound > 2:
        ap.error("bound must be at most 2")
    specs = enumerate_specs(bound=args.bound, rmax=args.rmax)
    print(f"{len(specs)} holomorphic bundle data "
          f"(bound {args.bound}, r <= {args.rmax})")
    for spec in specs:
        obj = mirror_object(spec, "check-T")
        key = canonical_form(obj)
        print(f"  r={spec.r} A={spec.A} rank={spec.rank.rprime} "
              f"key={key}")


if __name__ == "__main__":
    main()
