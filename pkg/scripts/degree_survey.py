#!/usr/bin/env python3
"""Empirical survey of distance-polynomial degrees on random instances.

Conjectured: n(n+1) for centered pairs after removing the z^(n(n-1)) factor,
and 2n(n+1) for general pairs after removing the extraneous square factor.
"""

import argparse
import random

from qdist.errors import DegeneracyError
from qdist.linalg import MatrixQ, VectorQ
from qdist.metrics import (
    Quadric,
    centered_distance_poly,
    centered_intersects,
    general_distance_poly,
    normalize,
    trailing_z_power,
)
from qdist.scalar import QQ


def rand_rat(rng, lo=-3, hi=3, den=2):
    return QQ(rng.randint(lo, hi), rng.randint(1, den))


def rand_pd(rng, n):
    from qdist.linalg import definiteness

    while True:
        r = MatrixQ([[rand_rat(rng) for _ in range(n)] for _ in range(n)])
        a = r.transpose() * r + MatrixQ.identity(n).scale(QQ(1, rng.randint(1, 3)))
        if definiteness(a) == "positive-definite":
            return a


def rand_ellipsoid(rng, n, spread):
    while True:
        m = rand_pd(rng, n)
        c = VectorQ([QQ(rng.randint(-spread, spread), rng.randint(1, 2))
                     for _ in range(n)])
        const = c.dot(m * c) - 1
        if const:
            return normalize(m, (m * c).scale(QQ(-1)), const)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--centered", type=int, default=4)
    parser.add_argument("--general", type=int, default=3)
    parser.add_argument("--max-dim", type=int, default=3)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    for n in range(2, args.max_dim + 1):
        done = 0
        while done < args.centered:
            q1 = Quadric(rand_pd(rng, n).scale(QQ(rng.randint(2, 5))), VectorQ.zero(n))
            q2 = Quadric(rand_pd(rng, n).scale(QQ(1, rng.randint(5, 9))), VectorQ.zero(n))
            if centered_intersects(q1, q2)[0]:
                continue
            f = centered_distance_poly(q1, q2)
            m = trailing_z_power(f)
            print(f"centered n={n}: degree {f.degree - m} (+ z^{m}), "
                  f"conjectured {n * (n + 1)} (+ z^{n * (n - 1)})")
            done += 1

    for n in range(2, args.max_dim + 1):
        done = 0
        while done < args.general:
            q1 = rand_ellipsoid(rng, n, 2)
            q2 = rand_ellipsoid(rng, n, 7)
            try:
                f = general_distance_poly(q1, q2)
            except DegeneracyError as exc:
                print(f"general n={n}: degenerate instance skipped ({exc.code})")
                continue
            m = trailing_z_power(f)
            print(f"general n={n}: degree {f.degree - m} (+ z^{m}), "
                  f"conjectured {2 * n * (n + 1)}")
            done += 1


if __name__ == "__main__":
    main()
