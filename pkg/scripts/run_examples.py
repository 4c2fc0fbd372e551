#!/usr/bin/env python3
"""Run the bundled worked examples end to end and print a summary."""

import time

from qdist.linalg import MatrixQ, VectorQ
from qdist.metrics import (
    LinearVariety,
    Quadric,
    normalize,
    solve_centered,
    solve_general,
    solve_point,
    solve_variety,
)
from qdist.parametric import QuadricFamily, family_solve
from qdist.poly import UniPoly
from qdist.scalar import QQ, decimal_str


def show(title, rep, extra=""):
    d = decimal_str(rep.d, 12) if rep.d is not None else "-"
    print(f"{title:44s} d = {d:>16s} {extra}")
    for pair in rep.nearest_pairs[:1]:
        print(f"{'':44s} X = ({', '.join(decimal_str(c, 10) for c in pair.x)})")
        print(f"{'':44s} Y = ({', '.join(decimal_str(c, 10) for c in pair.y)})")
    for w in rep.warnings:
        print(f"{'':44s} note: {w}")


def main():
    t0 = time.perf_counter()

    ellipsoid = normalize(
        MatrixQ([[7, -2, 0], [-2, 6, -2], [0, -2, 5]]),
        VectorQ([QQ(-37, 2), -6, QQ(3, 2)]),
        54,
    )
    axis = LinearVariety(MatrixQ.from_columns([[0, 1, 0], [0, 0, 1]]))
    show("ellipsoid vs first coordinate axis", solve_variety(ellipsoid, axis))

    ellipse = Quadric(MatrixQ.diag([QQ(1, 4), QQ(1)]), VectorQ.zero(2))
    show("point (3, 0) vs ellipse x^2/4 + y^2 = 1", solve_point(ellipse, VectorQ([3, 0])))
    show("point (1, 0), inside the astroid", solve_point(ellipse, VectorQ([1, 0])))

    e1 = Quadric(MatrixQ([[10, -6], [-6, 8]]), VectorQ.zero(2))
    e2 = Quadric(MatrixQ([[1, QQ(1, 2)], [QQ(1, 2), 1]]), VectorQ.zero(2))
    show("two centered ellipses", solve_centered(e1, e2))

    other = normalize(
        MatrixQ([[189, 0, 1], [0, 1, QQ(-1, 2)], [1, QQ(-1, 2), 189]]),
        VectorQ.zero(3),
        -27,
    )
    show("two ellipsoids in R^3", solve_general(ellipsoid, other))

    t = UniPoly.x("t")
    s = t**2 - 4 * t
    family = QuadricFamily(
        a=[[4, 0], [0, 1]],
        b=[-4 * t, -s],
        c=4 * t**2 + s * s - 16,
        interval=None,
    )
    rep = family_solve(family, VectorQ([-10, 10]))
    show(
        "moving ellipse family vs point (-10, 10)",
        rep,
        extra=f"t* = {decimal_str(rep.t_star, 12)}",
    )

    print(f"\ntotal: {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
