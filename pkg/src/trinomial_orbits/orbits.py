"""Automorphism-orbit stratification.

For the unique-power-one family F1 the connected-group orbits are fully
described: the open stratum (all y nonzero), the component strata O(M,r)
(y vanishing exactly on M, both remaining monomials nonzero, labeled by the
exact root ratio r with r^d = -1), and the singular torus strata
O1/O2(M,P,Q) split by x != 0.  Full-group orbits are obtained by gluing
under the finite part (cyclic of order d, merging the r-labels) and the
equation symmetries.

The several-power-one family F2 gets the analogous strata conditionally on
the Makar-Limanov conjecture for the family (assume_conjecture).  Rigid
shapes get torus strata; flexible all-exponents>=2 shapes get the regular
stratum plus singular torus strata.

The transporter emits an explicit automorphism word (a neutral-torus step
through the lattice parametrization plus one-parameter flows) mapping one
point to another inside the open or component strata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg, strata
from .derivations import catalog_derivation
from .errors import (
    CharacteristicTooSmall,
    ConjectureNotAssumed,
    DifferentOrbits,
    DlogUnsolvable,
    PointNotOnVariety,
    RootUnavailable,
    UnsupportedFamily,
)
from .families import family_of
from .fields import factor
from .shapes import (
    TrinomialShape,
    apply_permutation_to_point,
    symmetry_group,
    torus_lattice,
)

# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BigO:
    pass


@dataclass(frozen=True)
class OMeps:
    M: frozenset
    r: object


@dataclass(frozen=True)
class O1:
    M: frozenset
    P: frozenset
    Q: frozenset


@dataclass(frozen=True)
class O2:
    M: frozenset
    P: frozenset
    Q: frozenset


@dataclass(frozen=True)
class DDBigO:
    pass


@dataclass(frozen=True)
class DDOMeps:
    M: frozenset
    r: object


@dataclass(frozen=True)
class DD:
    K: frozenset
    M: frozenset
    P: frozenset
    Q: frozenset


@dataclass(frozen=True)
class TorusStratum:
    S: frozenset


@dataclass(frozen=True)
class RegularFlex:
    pass


@dataclass(frozen=True)
class SingTorus:
    S: frozenset


def descriptor_to_json(desc, shape: TrinomialShape = None, fld=None) -> dict:
    def ints(s):
        return sorted(s)

    def names(s):
        return sorted(shape.var_names[i] for i in s)

    if isinstance(desc, BigO):
        return {"type": "O"}
    if isinstance(desc, OMeps):
        return {"type": "OMeps", "M": ints(desc.M), "r": fld.fmt(desc.r)}
    if isinstance(desc, O1):
        return {"type": "O1", "M": ints(desc.M), "P": ints(desc.P), "Q": ints(desc.Q)}
    if isinstance(desc, O2):
        return {"type": "O2", "M": ints(desc.M), "P": ints(desc.P), "Q": ints(desc.Q)}
    if isinstance(desc, DDBigO):
        return {"type": "DDO"}
    if isinstance(desc, DDOMeps):
        return {"type": "DDOMeps", "M": ints(desc.M), "r": fld.fmt(desc.r)}
    if isinstance(desc, DD):
        return {
            "type": "DD",
            "K": ints(desc.K),
            "M": ints(desc.M),
            "P": ints(desc.P),
            "Q": ints(desc.Q),
        }
    if isinstance(desc, TorusStratum):
        return {"type": "TorusStratum", "vars": names(desc.S)}
    if isinstance(desc, RegularFlex):
        return {"type": "RegularFlex"}
    if isinstance(desc, SingTorus):
        return {"type": "SingTorus", "vars": names(desc.S)}
    raise TypeError(f"not a descriptor: {desc!r}")


def descriptor_from_json(data: dict, shape: TrinomialShape = None, fld=None):
    """Inverse of descriptor_to_json."""
    kind = data["type"]
    fs = lambda key: frozenset(data[key])
    if kind == "O":
        return BigO()
    if kind == "OMeps":
        return OMeps(fs("M"), fld.parse(data["r"]))
    if kind == "O1":
        return O1(fs("M"), fs("P"), fs("Q"))
    if kind == "O2":
        return O2(fs("M"), fs("P"), fs("Q"))
    if kind == "DDO":
        return DDBigO()
    if kind == "DDOMeps":
        return DDOMeps(fs("M"), fld.parse(data["r"]))
    if kind == "DD":
        return DD(fs("K"), fs("M"), fs("P"), fs("Q"))
    if kind == "RegularFlex":
        return RegularFlex()
    index = {nm: i for i, nm in enumerate(shape.var_names)}
    if kind == "TorusStratum":
        return TorusStratum(frozenset(index[nm] for nm in data["vars"]))
    if kind == "SingTorus":
        return SingTorus(frozenset(index[nm] for nm in data["vars"]))
    raise ValueError(f"unknown descriptor type {kind!r}")


# ---------------------------------------------------------------------------
# Makar-Limanov generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MLVerdict:
    status: str  # proven | conjectural | whole_ring | constants | unknown
    generators: tuple  # variable indices

    def to_json(self, shape):
        return {
            "status": self.status,
            "generators": [shape.var_names[i] for i in self.generators],
        }


def ml_generators(shape: TrinomialShape) -> MLVerdict:
    """Generators of the ring of flow-invariant functions.

    F1: the y-variables (a theorem).  F2: the same, conjecturally.  Rigid:
    every variable (no flows at all).  Flexible: constants only.
    """
    tag = family_of(shape)
    if tag.kind == "F1":
        return MLVerdict("proven", tag.f1.ys)
    if tag.kind == "F2":
        return MLVerdict("conjectural", tag.f2.ys)
    if tag.kind == "rigid":
        return MLVerdict("whole_ring", tuple(range(shape.n)))
    if tag.kind == "flexible_h":
        return MLVerdict("constants", ())
    return MLVerdict("unknown", ())


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _vanishing(fld, pt, idxs):
    """1-based positions whose coordinate vanishes."""
    return frozenset(k for k, i in enumerate(idxs, start=1) if fld.is_zero(pt[i]))


def _root_ratio(fld, pt, view):
    """r = prod z^(b/d) / prod s^(c/d); satisfies r^d = -1 on the stratum."""
    d = view.d
    num = fld.one
    for i, b in zip(view.zs, view.b):
        num = fld.mul(num, fld.pow(pt[i], b // d))
    den = fld.one
    for i, c in zip(view.ss, view.c):
        den = fld.mul(den, fld.pow(pt[i], c // d))
    return fld.div(num, den)


def classify_point(shape: TrinomialShape, fld, pt, assume_conjecture: bool = False):
    """The orbit descriptor of a variety point."""
    if not shape.on_variety(fld, pt):
        raise PointNotOnVariety("point does not satisfy the equation")
    tag = family_of(shape)
    if tag.kind == "F1":
        view = tag.f1
        M = _vanishing(fld, pt, view.ys)
        if not M:
            return BigO()
        P = _vanishing(fld, pt, view.zs)
        Q = _vanishing(fld, pt, view.ss)
        if not P and not Q:
            return OMeps(M, _root_ratio(fld, pt, view))
        # on the variety the two live monomials vanish together
        assert bool(P) == bool(Q) if view.q else not P
        if fld.is_zero(pt[view.x]):
            return O2(M, P, Q)
        return O1(M, P, Q)
    if tag.kind == "F2":
        if not assume_conjecture:
            raise ConjectureNotAssumed(
                "orbit classification for the several-power-one family is "
                "conditional; pass assume_conjecture"
            )
        view = tag.f2
        K = _vanishing(fld, pt, view.xs)
        M = _vanishing(fld, pt, view.ys)
        P = _vanishing(fld, pt, view.zs)
        Q = _vanishing(fld, pt, view.ss)
        if not P and not Q:
            if not M and len(K) < 2:
                return DDBigO()
            if M:
                return DDOMeps(M, _root_ratio(fld, pt, view))
            return DDBigO()  # >=2 x's vanish but z,s alive: still regular
        if not M and len(K) < 2:
            return DDBigO()
        assert 2 * len(M) + len(K) >= 2
        return DD(K, M, P, Q)
    if tag.kind == "rigid":
        return TorusStratum(strata.support_zero_set(shape, fld, pt))
    if tag.kind == "flexible_h":
        if strata.is_singular(shape, fld, pt):
            if all(l >= 2 for l in shape.exponents):
                return SingTorus(strata.support_zero_set(shape, fld, pt))
            raise UnsupportedFamily(
                f"no singular-orbit statement for flexible type {tag.h_type} "
                "with exponent-1 variables"
            )
        return RegularFlex()
    raise UnsupportedFamily("no orbit statement for this family")


def descriptor_dim(shape: TrinomialShape, desc) -> int:
    """Orbit dimension for the unique-power-one family."""
    tag = family_of(shape)
    if tag.kind != "F1":
        raise UnsupportedFamily("dimensions are stated for the power-one family")
    v = tag.f1
    full = v.m + v.p + v.q
    if isinstance(desc, BigO):
        return full
    if isinstance(desc, OMeps):
        return full - len(desc.M)
    if isinstance(desc, O1):
        return full + 1 - len(desc.M) - len(desc.P) - len(desc.Q)
    if isinstance(desc, O2):
        return full - len(desc.M) - len(desc.P) - len(desc.Q)
    raise UnsupportedFamily(f"no dimension formula for {type(desc).__name__}")


# ---------------------------------------------------------------------------
# special-automorphism orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sheet:
    y_values: tuple


@dataclass(frozen=True)
class LineOrbit:
    point: tuple


@dataclass(frozen=True)
class FixedPoint:
    pass


def saut_descriptor(shape: TrinomialShape, fld, pt):
    """Flow-group orbit type: a p+q-dimensional sheet (all y nonzero, labeled
    by the y-values), a line (some y zero, z and s monomials alive), or a
    fixed singular point."""
    if not shape.on_variety(fld, pt):
        raise PointNotOnVariety("point does not satisfy the equation")
    tag = family_of(shape)
    if tag.kind != "F1":
        raise UnsupportedFamily("flow-orbit shapes are stated for the power-one family")
    view = tag.f1
    yv = tuple(pt[i] for i in view.ys)
    if all(not fld.is_zero(v) for v in yv):
        return Sheet(yv)
    alive = all(not fld.is_zero(pt[i]) for i in view.zs) and all(
        not fld.is_zero(pt[i]) for i in view.ss
    )
    if alive:
        return LineOrbit(tuple(pt))
    return FixedPoint()


def saut_to_json(desc, shape, fld):
    if isinstance(desc, Sheet):
        return {"type": "Sheet", "y": [fld.fmt(v) for v in desc.y_values]}
    if isinstance(desc, LineOrbit):
        return {"type": "Line", "witness": [fld.fmt(v) for v in desc.point]}
    return {"type": "FixedPoint"}


# ---------------------------------------------------------------------------
# orbit counting and gluing
# ---------------------------------------------------------------------------


def _subsets(n):
    out = []
    for mask in range(1, 1 << n):
        out.append(frozenset(i + 1 for i in range(n) if mask >> i & 1))
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass
class OrbitCount:
    aut_alg: int
    aut: int
    listing: list  # glued classes as sorted lists of stratum labels

    def to_json(self):
        return {"aut_alg": self.aut_alg, "aut": self.aut, "listing": self.listing}


def _label(kind, *sets):
    return (kind,) + tuple(tuple(sorted(s)) for s in sets)


def label_str(label) -> str:
    kind = label[0]
    if kind == "O":
        return "O"
    if kind == "O(M)":
        return "O(M={" + ",".join(str(i) for i in label[1]) + "})"
    names = ("M", "P", "Q")
    body = ",".join(
        f"{nm}={{{','.join(str(i) for i in s)}}}" for nm, s in zip(names, label[1:])
    )
    return f"{kind}({body})"


def _symmetry_actions(shape, view):
    """Symmetry generators as actions on (M, P, Q) index sets."""
    sym = symmetry_group(shape)
    ypos = {v: k for k, v in enumerate(view.ys, start=1)}
    zpos = {v: k for k, v in enumerate(view.zs, start=1)}
    spos = {v: k for k, v in enumerate(view.ss, start=1)}
    actions = []
    for perm in sym.generators:
        assert perm[view.x] == view.x, "a symmetry moved the power-one variable"
        ymap = {k: ypos[perm[v]] for k, v in enumerate(view.ys, start=1)}
        if view.zs and perm[view.zs[0]] in zpos:
            zmap = {k: zpos[perm[v]] for k, v in enumerate(view.zs, start=1)}
            smap = {k: spos[perm[v]] for k, v in enumerate(view.ss, start=1)}
            swap = False
        else:
            zmap = {k: spos[perm[v]] for k, v in enumerate(view.zs, start=1)}
            smap = {k: zpos[perm[v]] for k, v in enumerate(view.ss, start=1)}
            swap = True
        actions.append((ymap, zmap, smap, swap))
    return actions


def _act(action, label):
    ymap, zmap, smap, swap = action
    kind = label[0]
    if kind == "O":
        return label
    if kind == "O(M)":
        (M,) = label[1:]
        return _label("O(M)", {ymap[i] for i in M})
    kind, M, P, Q = label
    M = {ymap[i] for i in M}
    if swap:
        P, Q = {smap[l] for l in Q}, {zmap[j] for j in P}
    else:
        P, Q = {zmap[j] for j in P}, {smap[l] for l in Q}
    return _label(kind, M, P, Q)


def orbit_count(shape: TrinomialShape) -> OrbitCount:
    """Count and list orbits for the unique-power-one family.

    Connected-group strata are enumerated abstractly (component labels
    0..d-1 stand for the d root ratios); the count must equal
    1 + (2^m - 1) d + 2 (2^m - 1)(2^p - 1)(2^q - 1).  Full-group classes
    glue the component labels (the finite cyclic part) and then the
    symmetry-group action on (M, P, Q).
    """
    tag = family_of(shape)
    if tag.kind != "F1":
        raise UnsupportedFamily("orbit counting is stated for the power-one family")
    view = tag.f1
    m, p, q, d = view.m, view.p, view.q, view.d
    aut_alg = (
        1
        + (2**m - 1) * d
        + 2 * (2**m - 1) * (2**p - 1) * (2**q - 1)
    )
    count = 1 + (2**m - 1) * d
    pairs = 0
    for M in _subsets(m):
        for P in _subsets(p):
            for Q in _subsets(q):
                pairs += 2
    count += pairs
    assert count == aut_alg, "stratum enumeration disagrees with the count formula"

    glued = [_label("O")]
    glued += [_label("O(M)", M) for M in _subsets(m)]
    singular = []
    for M in _subsets(m):
        for P in _subsets(p):
            for Q in _subsets(q):
                singular.append(_label("O1", M, P, Q))
                singular.append(_label("O2", M, P, Q))
    glued += singular

    uf = _UnionFind(glued)
    for action in _symmetry_actions(shape, view):
        for label in glued:
            uf.union(label, _act(action, label))
    classes = uf.classes()
    listing = sorted(
        [sorted(label_str(lb) for lb in cls) for cls in classes],
        key=lambda cls: (len(cls[0]), cls),
    )
    return OrbitCount(aut_alg, len(classes), listing)


# ---------------------------------------------------------------------------
# transporter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusStep:
    coords: tuple

    def to_json(self, fld):
        return {"step": "torus", "coords": [fld.fmt(c) for c in self.coords]}


@dataclass(frozen=True)
class FlowStep:
    designator: str
    u: object

    def to_json(self, fld):
        return {"step": "flow", "derivation": self.designator, "u": fld.fmt(self.u)}


@dataclass(frozen=True)
class PermStep:
    perm: tuple

    def to_json(self, fld):
        return {"step": "perm", "perm": list(self.perm)}


@dataclass
class AutWord:
    steps: tuple

    def apply(self, shape: TrinomialShape, fld, pt):
        cur = tuple(pt)
        for step in self.steps:
            if isinstance(step, TorusStep):
                cur = tuple(fld.mul(c, v) for c, v in zip(step.coords, cur))
            elif isinstance(step, FlowStep):
                delta = catalog_derivation(shape, fld, step.designator)
                cur = delta.exp_flow(step.u, cur)
            elif isinstance(step, PermStep):
                cur = apply_permutation_to_point(step.perm, cur)
            else:
                raise TypeError(f"unknown step {step!r}")
        return cur

    def to_json(self, fld):
        return {"steps": [s.to_json(fld) for s in self.steps]}

    @classmethod
    def from_json(cls, fld, data):
        steps = []
        for s in data["steps"]:
            if s["step"] == "torus":
                steps.append(TorusStep(tuple(fld.parse(c) for c in s["coords"])))
            elif s["step"] == "flow":
                steps.append(FlowStep(s["derivation"], fld.parse(s["u"])))
            elif s["step"] == "perm":
                steps.append(PermStep(tuple(s["perm"])))
            else:
                raise ValueError(f"unknown step kind {s!r}")
        return cls(tuple(steps))


def _solve_torus_fp(fld, basis, rows, ratios):
    """Multipliers mu for the lattice basis with prod mu^basis = ratio on
    the given coordinate rows, over a prime field (discrete logs)."""
    p = fld.modulus
    A = [[vec[i] for vec in basis] for i in rows]
    R = [fld.dlog(r) for r in ratios]
    sol = intlinalg.solve_mod(A, R, p - 1)
    if sol is None:
        raise DlogUnsolvable(
            "the discrete-log system mod p-1 has no solution; raise p or retry"
        )
    g = fld.primitive_root()
    return [pow(g, e, p) for e in sol]


def _solve_torus_q(fld, basis, rows, ratios):
    """Rational multipliers: per-prime integer systems plus a sign system."""
    A = [[vec[i] for vec in basis] for i in rows]
    primes = set()
    vals = []
    signs = []
    for r in ratios:
        r = Fraction(r)
        num, den = r.numerator, r.denominator
        signs.append(0 if num > 0 else 1)
        fac = {}
        for pr, e in factor(abs(num)).items():
            fac[pr] = fac.get(pr, 0) + e
        for pr, e in factor(den).items():
            fac[pr] = fac.get(pr, 0) - e
        vals.append(fac)
        primes.update(fac)
    exps = {}
    for pr in sorted(primes):
        target = [v.get(pr, 0) for v in vals]
        sol = intlinalg.solve_int(A, target)
        if sol is None:
            raise RootUnavailable(
                f"no rational torus element matches the coordinate ratios "
                f"(prime {pr} obstructs)"
            )
        exps[pr] = sol
    sign_sol = intlinalg.solve_mod(A, signs, 2)
    if sign_sol is None:
        raise RootUnavailable(
            "no rational torus element matches the coordinate ratios (signs obstruct)"
        )
    k = len(basis)
    mus = []
    for i in range(k):
        mu = Fraction(-1 if sign_sol[i] % 2 else 1)
        for pr, sol in exps.items():
            mu *= Fraction(pr) ** sol[i]
        mus.append(mu)
    return mus


def _torus_step(shape, fld, src, dst, rows):
    """Neutral-torus step matching dst on the given coordinates, or None."""
    if all(src[i] == dst[i] for i in rows):
        return None, tuple(src)
    basis = torus_lattice(shape).vectors
    ratios = [fld.div(dst[i], src[i]) for i in rows]
    if fld.modulus is None:
        mus = _solve_torus_q(fld, basis, rows, ratios)
    else:
        mus = _solve_torus_fp(fld, basis, rows, ratios)
    coords = []
    for idx in range(shape.n):
        c = fld.one
        for mu, vec in zip(mus, basis):
            e = vec[idx]
            if e >= 0:
                c = fld.mul(c, fld.pow(mu, e))
            else:
                c = fld.mul(c, fld.inv(fld.pow(mu, -e)))
        coords.append(c)
    step = TorusStep(tuple(coords))
    cur = tuple(fld.mul(c, v) for c, v in zip(coords, src))
    for i in rows:
        assert cur[i] == dst[i], "torus step missed a matched coordinate"
    return step, cur


def transport(shape: TrinomialShape, fld, src, dst) -> AutWord:
    """An explicit automorphism word mapping src to dst.

    Both points must carry the same descriptor, of open or component type.
    Open recipe: torus step matching the y-coordinates, then one flow per z
    and s coordinate (their images shift by -u * y-monomial); x follows.
    Component recipe: torus step matching y off M and every z and s, then a
    single flow fixing x (z is frozen there since the y-monomial vanishes).
    """
    d_src = classify_point(shape, fld, src)
    d_dst = classify_point(shape, fld, dst)
    if d_src != d_dst:
        raise DifferentOrbits(f"{d_src} vs {d_dst}")
    if not isinstance(d_src, (BigO, OMeps)):
        raise UnsupportedFamily(
            "transport is implemented for the open and component strata"
        )
    view = family_of(shape).f1
    steps = []
    if isinstance(d_src, BigO):
        rows = list(view.ys)
        step, cur = _torus_step(shape, fld, src, dst, rows)
        if step:
            steps.append(step)
        y_mon = fld.one
        for i, a in zip(view.ys, view.a):
            y_mon = fld.mul(y_mon, fld.pow(cur[i], a))
        for fam, idxs in (("D", view.zs), ("E", view.ss)):
            for pos, i in enumerate(idxs, start=1):
                if cur[i] == dst[i]:
                    continue
                u = fld.div(fld.sub(dst[i], cur[i]), fld.neg(y_mon))
                delta = catalog_derivation(shape, fld, f"{fam}:{pos}")
                cur = delta.exp_flow(u, cur)
                steps.append(FlowStep(f"{fam}:{pos}", u))
    else:
        rows = [i for k, i in enumerate(view.ys, start=1) if k not in d_src.M]
        rows += list(view.zs) + list(view.ss)
        step, cur = _torus_step(shape, fld, src, dst, rows)
        if step:
            steps.append(step)
        if cur[view.x] != dst[view.x]:
            moved = False
            for pos in range(1, view.p + 1):
                delta = catalog_derivation(shape, fld, f"D:{pos}")
                slope = delta.image(view.x).eval(cur)
                if fld.is_zero(slope):
                    continue
                u = fld.div(fld.sub(dst[view.x], cur[view.x]), slope)
                cur = delta.exp_flow(u, cur)
                steps.append(FlowStep(f"D:{pos}", u))
                moved = True
                break
            if not moved:
                raise CharacteristicTooSmall(
                    "every z-flow degenerates at this point in this characteristic"
                )
    if tuple(cur) != tuple(dst):
        raise AssertionError("transport recipe failed to reach the target")
    return AutWord(tuple(steps))
