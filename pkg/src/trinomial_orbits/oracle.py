"""Brute-force finite-field oracles.

Everything variety-level claimed elsewhere is checked here by exhaustive
enumeration over F_p: the strata partition the rational points, generator
flows and neutral-torus steps preserve descriptors and singular-component
membership, transport words land exactly, and the number of realized
descriptors matches the counting formula when p = 1 (mod 2d).

Finite-field orbits are not claimed to equal geometric orbits; the checks
are containment/invariance statements and exact descriptor censuses, which
are field-agnostic consequences of the classification.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product

from . import orbits, strata
from .derivations import lnd_catalog
from .errors import DifferentOrbits, MathDomainError, TooLarge
from .families import family_of
from .fields import field_designator
from .shapes import TrinomialShape, torus_lattice, torus_scaling

ENUMERATION_CAP = 10**8
SOLVED_SCAN_CAP = 10**7


def enumerate_points(shape: TrinomialShape, fld):
    """All F_p-points of the hypersurface, lexicographically ordered.

    When some variable appears with exponent 1 the equation is linear in
    it, so the scan runs over the remaining coordinates and solves: cost
    p^(n-1) instead of p^n.
    """
    p = fld.modulus
    if p is None:
        raise TooLarge("point enumeration needs a prime field")
    n = shape.n
    if p**n > ENUMERATION_CAP:
        raise TooLarge(f"{p}^{n} exceeds the enumeration cap {ENUMERATION_CAP}")
    exps = shape.exponents
    max_exp = max(exps)
    pw = [[pow(x, e, p) for e in range(max_exp + 1)] for x in range(p)]
    groups = [shape.group_indices(g) for g in range(3)]

    ones = [i for i, l in enumerate(exps) if l == 1]
    pts = []
    if ones and p ** (n - 1) <= SOLVED_SCAN_CAP:
        v = ones[0]
        gv = shape.group_of(v)
        others = [i for i in range(n) if i != v]
        inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]
        vec = [0] * n
        for combo in product(range(p), repeat=n - 1):
            for i, val in zip(others, combo):
                vec[i] = val
            cof = 1
            for i in groups[gv]:
                if i != v:
                    cof = cof * pw[vec[i]][exps[i]] % p
            rest = 1 if shape.is_free_term and gv != 0 else 0
            for g in range(3):
                if g == gv or not groups[g]:
                    continue
                m = 1
                for i in groups[g]:
                    m = m * pw[vec[i]][exps[i]] % p
                rest = (rest + m) % p
            if cof:
                vec[v] = (-rest) * inv[cof] % p
                pts.append(tuple(vec))
            elif rest == 0:
                for x in range(p):
                    vec[v] = x
                    pts.append(tuple(vec))
        pts.sort()
        return pts

    for vec in product(range(p), repeat=n):
        total = 1 if shape.is_free_term else 0
        for g in range(3):
            if not groups[g]:
                continue
            m = 1
            for i in groups[g]:
                m = m * pw[vec[i]][exps[i]] % p
            total = (total + m) % p
        if total == 0:
            pts.append(vec)
    return pts


def random_points(shape: TrinomialShape, fld, count: int, rng) -> list:
    """Random F_p-points by rejection: draw all coordinates but one and
    solve the last power by root extraction (always solvable through an
    exponent-1 variable when the shape has one)."""
    p = fld.modulus
    if p is None:
        raise TooLarge("random sampling needs a prime field")
    exps = shape.exponents
    ones = [i for i, l in enumerate(exps) if l == 1]
    v = ones[0] if ones else 0
    gv = shape.group_of(v)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10000 * count:
            raise MathDomainError("rejection sampling failed to find points")
        vec = [rng.randrange(p) for _ in range(shape.n)]
        cof = 1
        for i in shape.group_indices(gv):
            if i != v:
                cof = cof * pow(vec[i], exps[i], p) % p
        rest = 1 if shape.is_free_term else 0
        for g in range(3):
            if g != gv:
                m = 1
                for i in shape.group_indices(g):
                    m = m * pow(vec[i], exps[i], p) % p
                if shape.groups[g]:
                    rest = (rest + m) % p
        if cof == 0:
            if rest == 0:
                out.append(tuple(vec))
            continue
        target = fld.div(fld.neg(rest), cof)
        roots = sorted(fld.kth_roots(target, exps[v]))
        if not roots:
            continue
        vec[v] = rng.choice(roots)
        out.append(tuple(vec))
    return out


def singular_set(shape: TrinomialShape, fld, pts) -> set:
    """The singular points among pts, by vanishing of all partials."""
    g = shape.equation(fld)
    partials = [g.partial(v) for v in range(shape.n)]
    out = set()
    for pt in pts:
        if all(fld.is_zero(pp.eval(pt)) for pp in partials):
            out.add(pt)
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class VerifyReport:
    shape: dict
    field: str
    seed: object
    checks: list

    @property
    def failures(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def totals(self) -> dict:
        out = {"failures": self.failures}
        for c in self.checks:
            if c.name == "partition":
                out["points"] = c.details.get("points")
                out["strata"] = c.details.get("strata")
        return out

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "field": self.field,
            "seed": self.seed,
            "failures": self.failures,
            "totals": self.totals,
            "checks": [
                {"name": c.name, "passed": c.passed, "details": c.details}
                for c in self.checks
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _report(shape, fld, seed, checks) -> VerifyReport:
    return VerifyReport(shape.to_json(), field_designator(fld), seed, checks)


def _desc_key(shape, fld, desc) -> str:
    return json.dumps(orbits.descriptor_to_json(desc, shape, fld), sort_keys=True)


# ---------------------------------------------------------------------------
# partition / census
# ---------------------------------------------------------------------------


def verify_partition(
    shape: TrinomialShape,
    fld,
    assume_conjecture: bool = False,
    classifier=None,
) -> VerifyReport:
    """Classify every rational point exactly once and report the census.

    For the power-one family with p = 1 (mod 2d) the number of realized
    descriptors must equal the orbit-count formula; a planted misclassifier
    that merges strata fails exactly this check.
    """
    classify = classifier or (
        lambda pt: orbits.classify_point(shape, fld, pt, assume_conjecture)
    )
    pts = enumerate_points(shape, fld)
    counts = {}
    errors = 0
    for pt in pts:
        try:
            desc = classify(pt)
        except MathDomainError:
            errors += 1
            continue
        key = _desc_key(shape, fld, desc)
        counts[key] = counts.get(key, 0) + 1
    checks = [
        CheckResult(
            "partition",
            errors == 0 and sum(counts.values()) == len(pts),
            {
                "points": len(pts),
                "classified": sum(counts.values()),
                "errors": errors,
                "strata": len(counts),
                "counts": dict(sorted(counts.items())),
            },
        )
    ]
    tag = family_of(shape)
    if tag.kind == "F1" and (fld.modulus - 1) % (2 * tag.f1.d) == 0:
        expected = orbits.orbit_count(shape).aut_alg
        checks.append(
            CheckResult(
                "descriptor_census",
                len(counts) == expected,
                {"realized": len(counts), "expected": expected},
            )
        )
    return _report(shape, fld, None, checks)


def selftest_applicable(shape: TrinomialShape) -> bool:
    """A detectable merge exists: singular strata to conflate, or several
    root-ratio components per vanishing set."""
    tag = family_of(shape)
    return tag.kind == "F1" and (tag.f1.q >= 1 or tag.f1.d > 1)


def partition_selftest(shape: TrinomialShape, fld) -> VerifyReport:
    """Plant a misclassifier and demand that the census check catches it.

    The plant ignores x != 0 (merging the two singular strata); free-term
    shapes have no singular strata, so there the plant conflates the
    root-ratio components instead."""
    view = family_of(shape).f1

    def planted(pt):
        desc = orbits.classify_point(shape, fld, pt)
        if isinstance(desc, orbits.O2):
            return orbits.O1(desc.M, desc.P, desc.Q)
        if view.q == 0 and isinstance(desc, orbits.OMeps):
            return orbits.OMeps(desc.M, fld.one)  # never a genuine label
        return desc

    report = verify_partition(shape, fld, classifier=planted)
    caught = any(c.name == "descriptor_census" and not c.passed for c in report.checks)
    report.checks.append(
        CheckResult("selftest_planted_merge_caught", caught, {})
    )
    return report


# ---------------------------------------------------------------------------
# invariance
# ---------------------------------------------------------------------------


def verify_invariance(
    shape: TrinomialShape,
    fld,
    trials: int = 200,
    seed: int = 0,
    assume_conjecture: bool = False,
    exhaustive: bool = False,
) -> VerifyReport:
    """Descriptors and singular-component membership survive the generators.

    Samples (point, catalog derivation, parameter) flows and neutral-torus
    steps; exhaustive=True runs every combination instead.
    """
    p = fld.modulus
    rng = random.Random(seed)
    pts = enumerate_points(shape, fld)
    catalog = lnd_catalog(shape, fld)
    basis = torus_lattice(shape).vectors

    def classify(pt):
        return orbits.classify_point(shape, fld, pt, assume_conjecture)

    flow_fail = flow_runs = 0
    nset_fail = nset_runs = 0
    if catalog and pts:
        if exhaustive:
            cases = ((pt, d, u) for d in catalog for pt in pts for u in range(p))
        else:
            cases = (
                (rng.choice(pts), rng.choice(catalog), rng.randrange(p))
                for _ in range(trials)
            )
        for pt, delta, u in cases:
            img = delta.exp_flow(u, pt)
            flow_runs += 1
            if classify(img) != classify(pt):
                flow_fail += 1
            support = strata.support_zero_set(shape, fld, pt)
            if strata.n_set(shape, support):
                nset_runs += 1
                img_support = strata.support_zero_set(shape, fld, img)
                before = {c.generators for c in strata.n_set(shape, support)}
                after = {c.generators for c in strata.n_set(shape, img_support)}
                if before != after:
                    nset_fail += 1

    torus_fail = torus_runs = 0
    if basis and pts:
        torus_trials = trials if not exhaustive else min(trials * 5, 1000)
        for _ in range(torus_trials):
            pt = rng.choice(pts)
            mus = [rng.randrange(1, p) for _ in basis]
            coords = torus_scaling(shape, fld, mus)
            img = tuple(fld.mul(c, v) for c, v in zip(coords, pt))
            torus_runs += 1
            if classify(img) != classify(pt):
                torus_fail += 1

    checks = [
        CheckResult(
            "flow_invariance",
            flow_fail == 0,
            {"runs": flow_runs, "failures": flow_fail, "exhaustive": exhaustive},
        ),
        CheckResult(
            "component_membership",
            nset_fail == 0,
            {"runs": nset_runs, "failures": nset_fail},
        ),
        CheckResult(
            "torus_invariance",
            torus_fail == 0,
            {"runs": torus_runs, "failures": torus_fail},
        ),
    ]
    return _report(shape, fld, seed, checks)


def verify_flow_regularity(
    shape: TrinomialShape, fld, derivations, points=None
) -> VerifyReport:
    """Flows preserve the regular locus, pointwise over all parameters.

    Every (derivation, u, point) combination is checked: the image must sit
    on the same side of the singular locus as the source.  The inner loop is
    specialized to residue arithmetic (combined flow polynomials and a
    global power table), since this is the one exhaustive check whose size
    is p^n * p per derivation.
    """
    p = fld.modulus
    pts = points if points is not None else enumerate_points(shape, fld)
    sing = singular_set(shape, fld, pts)
    point_set = set(pts)
    max_exp = 0
    failures = runs = 0
    off_variety = 0
    for delta in derivations:
        moving = sorted(
            set(delta.images) | (set(delta.qlift.images) if delta.qlift else set())
        )
        for u in range(p):
            compiled = []
            for v in moving:
                poly = delta.flow_polynomial(v, u)
                terms = [
                    (c, [(i, e) for i, e in enumerate(exps) if e])
                    for exps, c in poly.terms.items()
                ]
                compiled.append((v, terms))
                max_exp = max(
                    [max_exp] + [e for _, fac in terms for _, e in fac]
                )
            pw = [[pow(x, e, p) for e in range(max_exp + 1)] for x in range(p)]
            for pt in pts:
                img = list(pt)
                for v, terms in compiled:
                    acc = 0
                    for c, fac in terms:
                        t = c
                        for i, e in fac:
                            t = t * pw[pt[i]][e] % p
                        acc = (acc + t) % p
                    img[v] = acc
                img = tuple(img)
                runs += 1
                if img not in point_set:
                    off_variety += 1
                elif (img in sing) != (pt in sing):
                    failures += 1
    checks = [
        CheckResult(
            "flow_regularity",
            failures == 0 and off_variety == 0,
            {
                "runs": runs,
                "failures": failures,
                "off_variety": off_variety,
                "points": len(pts),
                "singular": len(sing),
            },
        )
    ]
    return _report(shape, fld, None, checks)


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------


def verify_transport(
    shape: TrinomialShape, fld, pairs: int = 50, seed: int = 0
) -> VerifyReport:
    """Transport words map sampled same-descriptor pairs exactly; pairs in
    different component strata surface DifferentOrbits (expected negative)."""
    rng = random.Random(seed)
    pts = enumerate_points(shape, fld)
    buckets = {}
    for pt in pts:
        desc = orbits.classify_point(shape, fld, pt)
        if isinstance(desc, (orbits.BigO, orbits.OMeps)):
            buckets.setdefault(desc, []).append(pt)
    usable = [b for b in buckets.values() if len(b) >= 2]
    ok = runs = 0
    word_lengths = []
    for _ in range(pairs):
        bucket = rng.choice(usable)
        src, dst = rng.choice(bucket), rng.choice(bucket)
        word = orbits.transport(shape, fld, src, dst)
        runs += 1
        if word.apply(shape, fld, src) == tuple(dst):
            ok += 1
        word_lengths.append(len(word.steps))
    negatives = expected_neg = 0
    omeps = sorted(
        (d for d in buckets if isinstance(d, orbits.OMeps)),
        key=lambda d: (sorted(d.M), fld.fmt(d.r)),
    )
    for a in omeps:
        for b in omeps:
            if a.M == b.M and a.r != b.r:
                expected_neg += 1
                try:
                    orbits.transport(shape, fld, buckets[a][0], buckets[b][0])
                except DifferentOrbits:
                    negatives += 1
    checks = [
        CheckResult(
            "transport_roundtrip",
            ok == runs,
            {"pairs": runs, "exact": ok, "max_word": max(word_lengths, default=0)},
        ),
        CheckResult(
            "transport_negative",
            negatives == expected_neg,
            {"expected": expected_neg, "surfaced": negatives},
        ),
    ]
    return _report(shape, fld, seed, checks)


def verify_all(
    shape: TrinomialShape,
    fld,
    trials: int = 200,
    seed: int = 0,
    assume_conjecture: bool = False,
) -> VerifyReport:
    """Partition + census + invariance + transport + harness self-test."""
    checks = []
    part = verify_partition(shape, fld, assume_conjecture)
    checks.extend(part.checks)
    inv = verify_invariance(shape, fld, trials, seed, assume_conjecture)
    checks.extend(inv.checks)
    tag = family_of(shape)
    if tag.kind == "F1":
        tr = verify_transport(shape, fld, max(10, trials // 10), seed)
        checks.extend(tr.checks)
        if (fld.modulus - 1) % (2 * tag.f1.d) == 0 and selftest_applicable(shape):
            st = partition_selftest(shape, fld)
            checks.extend(
                c for c in st.checks if c.name == "selftest_planted_merge_caught"
            )
    return _report(shape, fld, seed, checks)
