"""Explicit automorphism words between points in one orbit stratum.

The transporter composes a neutral-torus step (built through the lattice
parametrization, so component labels survive) with one-parameter flows of
the catalog derivations, and the word is verified by applying it.  Run:

    python demos/03_transporter.py
"""

import random
from fractions import Fraction as F

from trinomial_orbits import (
    PrimeField,
    QQ,
    classify_point,
    descriptor_to_json,
    enumerate_points,
    transport,
    validate_shape,
)
from trinomial_orbits.orbits import BigO, OMeps


def show(shape, fld, src, dst):
    word = transport(shape, fld, src, dst)
    desc = descriptor_to_json(classify_point(shape, fld, src), shape, fld)
    print(f"   {src} -> {dst}   stratum {desc}")
    for step in word.to_json(fld)["steps"]:
        print(f"     {step}")
    assert word.apply(shape, fld, src) == tuple(dst)
    print("     verified: word maps source to target exactly")


def main():
    shape = validate_shape([[1, 2], [3], [3]])
    print("== x*y^2 + z^3 + s^3 over Q")
    show(shape, QQ, (F(-2), F(1), F(1), F(1)), (F(-9), F(1), F(2), F(1)))
    show(shape, QQ, (F(-2), F(1), F(1), F(1)), (F(-1, 2), F(2), F(1), F(1)))

    f7 = PrimeField(7)
    print("== the same shape over F_7")
    show(shape, f7, (5, 0, 6, 1), (0, 0, 6, 1))

    rng = random.Random(0)
    pts = enumerate_points(shape, f7)
    buckets = {}
    for pt in pts:
        desc = classify_point(shape, f7, pt)
        if isinstance(desc, (BigO, OMeps)):
            buckets.setdefault(desc, []).append(pt)
    print("== five random same-stratum pairs over F_7")
    for _ in range(5):
        bucket = rng.choice(list(buckets.values()))
        show(shape, f7, rng.choice(bucket), rng.choice(bucket))


if __name__ == "__main__":
    main()
