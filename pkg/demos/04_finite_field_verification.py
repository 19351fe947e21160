"""End-to-end finite-field verification runs.

Each run enumerates X(F_p), checks the stratum partition and census,
flow/torus invariance of descriptors, singular-component membership,
transport roundtrips, and the planted-misclassifier self-test.  Run:

    python demos/04_finite_field_verification.py
"""

import json

from trinomial_orbits import PrimeField, validate_shape, verify_all

RUNS = [
    ([[1, 2], [3], [3]], 7, 500),
    ([[1, 2, 2], [3], [3]], 13, 200),
    ([[2], [3], [3]], 5, 200),         # rigid: torus strata only
    ([[2, 2], [2, 2], [5]], 3, 200),   # flexible, all exponents >= 2
]


def main():
    for raw, p, trials in RUNS:
        shape = validate_shape(raw)
        report = verify_all(shape, PrimeField(p), trials=trials, seed=42)
        print(f"== {shape} over F_{p} (trials={trials}, seed=42)")
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"   {mark} {c.name}: {json.dumps(c.details, sort_keys=True)}")
        print(f"   failures: {report.failures}")
        assert report.failures == 0
        print()


if __name__ == "__main__":
    main()
