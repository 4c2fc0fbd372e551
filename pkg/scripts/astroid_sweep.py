#!/usr/bin/env python3
"""Sweep the z-discriminant of the point-to-ellipse distance polynomial.

Writes a CSV grid of sign data whose zero set consists of the coordinate
axes and the astroid-shaped curve separating the four-real-zero region from
the two-real-zero region.
"""

import argparse

from qdist.cli import cmd_sweep, ProblemFile


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="astroid.csv")
    parser.add_argument("--grid", default="-3,3,-3,3,61")
    parser.add_argument("--a2", default="4", help="squared semi-axis along x")
    parser.add_argument("--b2", default="1", help="squared semi-axis along y")
    args = parser.parse_args()

    problem = ProblemFile(
        {
            "kind": "point-quadric",
            "quadric": {
                "a": [[f"1/{args.a2}", 0], [0, f"1/{args.b2}"]],
                "b": [0, 0],
                "c": -1,
            },
            "point": [0, 0],
        }
    )
    with open(args.out, "w") as fh:
        cmd_sweep(problem, args.grid, fh)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
