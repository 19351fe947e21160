"""Locally nilpotent derivations: catalog, verification, flows, gradings.

A derivation is stored by its images on the coordinate variables and
extended by the Leibniz rule.  The catalog builds the known families:

* gamma:i,j   - one group has an exponent-1 variable w; the derivation
                moves w against a partial of another group's monomial.
* D:i / E:j   - unique-power-one family: x moves by a z- (s-) partial,
                z_i (s_j) moves by minus the y-monomial.
* Dk:i,j / Ek:i,j - same with several power-one variables x_1..x_k.
* delta+:i / delta-:i - two all-even groups led by exponent 2.  Under the
                all-plus sign convention these need a square root of -1 in
                the coefficient field (RootUnavailable otherwise); the two
                variants differ by the sign of that root.

Flows exp(u*delta) are exact truncated exponentials.  Integer-coefficient
catalog derivations carry a rational twin, and their flows are computed as
divided powers over Q and reduced into the field; this is what makes flows
over tiny prime fields exact (the k! divisions happen upstairs where they
are exact divisions of integer polynomials).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CharacteristicTooSmall,
    Diverged,
    InadmissibleGrading,
    PointNotOnVariety,
    RootUnavailable,
)
from .families import family_of, require_f1
from .fields import QQ
from .polynomials import Polynomial
from .shapes import TrinomialShape

NILPOTENCY_CAP = 50


class Derivation:
    """A derivation of the coordinate ring, given on the variables."""

    def __init__(self, shape: TrinomialShape, fld, images: dict, family="custom", params=()):
        self.shape = shape
        self.field = fld
        self.ring = next(iter(images.values())).ring if images else shape.ring(fld)
        self.images = {v: p for v, p in images.items() if not p.is_zero()}
        self.family = family
        self.params = tuple(params)
        self.qlift = None  # rational twin for exact divided-power flows
        self._series = {}

    @property
    def designator(self) -> str:
        if self.family == "custom":
            return "custom"
        return f"{self.family}:{','.join(str(p) for p in self.params)}"

    def __repr__(self):
        return f"Derivation({self.designator})"

    def image(self, v: int) -> Polynomial:
        return self.images.get(v, self.ring.zero)

    def derive(self, f: Polynomial) -> Polynomial:
        """Leibniz extension: sum over v of (df/dv) * image(v)."""
        out = self.ring.zero
        for v, img in self.images.items():
            part = f.partial(v)
            if not part.is_zero():
                out = out + part * img
        return out

    def is_zero(self) -> bool:
        return not self.images

    # -- verification ---------------------------------------------------------

    def well_defined(self):
        """Does the derivation descend to the hypersurface ring?

        Returns (ok, exact_zero): ok iff the derivative of the equation lies
        in the ideal it generates; exact_zero iff it vanishes identically
        (true for every catalog family).
        """
        g = self.shape.equation(self.field)
        dg = self.derive(g)
        if dg.is_zero():
            return True, True
        ok, _ = g.divides_into(dg)
        return ok, False

    def nilpotency_index(self, v: int, cap: int = NILPOTENCY_CAP) -> int:
        """Least k >= 1 with derivation^k(variable v) = 0 mod the equation."""
        g = self.shape.equation(self.field)
        cur = self.ring.var(v)
        for k in range(1, cap + 1):
            cur = self.derive(cur).reduce_mod(g)
            if cur.is_zero():
                return k
        raise Diverged(f"no nilpotency on {self.ring.names[v]} within {cap} steps")

    # -- flows ----------------------------------------------------------------

    def divided_power_series(self, v: int, cap: int = NILPOTENCY_CAP):
        """[P_0, P_1, ...] with P_k = delta^k(v)/k!, P_k = 0 beyond the list.

        Computed over Q through the rational twin when available (exact in
        every characteristic); otherwise in-field, refusing a division by a
        multiple of the characteristic.
        """
        if v in self._series:
            return self._series[v]
        if self.qlift is not None:
            q_series = self.qlift.divided_power_series(v, cap)
            series = [_push_poly(p, self.ring) for p in q_series]
        else:
            series = self._series_in_field(v, cap)
        self._series[v] = series
        return series

    def _series_in_field(self, v: int, cap: int):
        fld = self.field
        g = self.shape.equation(fld)
        out = [self.ring.var(v)]
        k = 1
        while True:
            nxt = self.derive(out[-1]).reduce_mod(g)
            if nxt.is_zero():
                return out
            if k > cap:
                raise Diverged(f"flow series on {self.ring.names[v]} exceeds cap {cap}")
            kk = fld.from_int(k)
            if fld.is_zero(kk):
                raise CharacteristicTooSmall(
                    f"divided power {k} needs division by the characteristic"
                )
            out.append(nxt.scale(fld.inv(kk)))
            k += 1

    def flow_polynomial(self, v: int, u, cap: int = NILPOTENCY_CAP) -> Polynomial:
        """The image of variable v under exp(u * derivation), as a polynomial:
        sum over k of u^k * delta^k(v)/k!."""
        fld = self.field
        out = self.ring.zero
        upow = fld.one
        for P in self.divided_power_series(v, cap):
            out = out + P.scale(upow)
            upow = fld.mul(upow, u)
        return out

    def exp_flow(self, u, pt, cap: int = NILPOTENCY_CAP):
        """Image of a variety point under exp(u * derivation).

        The result satisfies the equation exactly; if an in-field series
        terminated early because of the characteristic, the equation check
        catches it and raises CharacteristicTooSmall.
        """
        fld = self.field
        if not self.shape.on_variety(fld, pt):
            raise PointNotOnVariety("flow source does not satisfy the equation")
        out = list(pt)
        # the rational twin may move a variable whose first-order image
        # vanishes mod p while higher divided powers survive
        moving = set(self.images)
        if self.qlift is not None:
            moving |= set(self.qlift.images)
        for v in sorted(moving):
            series = self.divided_power_series(v, cap)
            acc = fld.zero
            upow = fld.one
            for P in series:
                acc = fld.add(acc, fld.mul(upow, P.eval(pt)))
                upow = fld.mul(upow, u)
            out[v] = acc
        out = tuple(out)
        if not self.shape.on_variety(fld, out):
            raise CharacteristicTooSmall(
                "flow left the variety: exact divided powers unavailable in this characteristic"
            )
        return out


def _push_poly(p: Polynomial, ring) -> Polynomial:
    """Map a rational-coefficient polynomial into another ring's field."""
    fld = ring.field
    out = {}
    for e, c in p.terms.items():
        c = Fraction(c)
        den = fld.from_int(c.denominator)
        if fld.is_zero(den):
            raise CharacteristicTooSmall(
                f"coefficient {c} does not reduce into {fld!r}"
            )
        val = fld.div(fld.from_int(c.numerator), den)
        if not fld.is_zero(val):
            out[e] = val
    return Polynomial(ring, out)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _monomial_poly(shape, ring, g):
    if not shape.groups[g]:
        return ring.one
    return ring.monomial(shape.monomial_exps(g))


def _build_gamma(shape, fld):
    """All gamma derivations, or [] when no group has an exponent-1 variable.

    The first group (canonical order) containing an exponent-1 variable is
    distinguished, its first such variable is w; for every variable v of the
    other groups:  w -> -d(mon(v's group))/dv,  v -> d(mon(w's group))/dw.
    """
    ring = shape.ring(fld)
    pivot = None
    for g in range(3):
        for j, l in enumerate(shape.groups[g]):
            if l == 1:
                pivot = (g, shape.var_index(g, j + 1))
                break
        if pivot:
            break
    if pivot is None:
        return []
    gw, w = pivot
    tail = _monomial_poly(shape, ring, gw).partial(w)
    out = []
    for g in range(3):
        if g == gw or not shape.groups[g]:
            continue
        mon = _monomial_poly(shape, ring, g)
        for j in range(1, len(shape.groups[g]) + 1):
            v = shape.var_index(g, j)
            images = {w: -mon.partial(v), v: tail}
            out.append(Derivation(shape, fld, images, family="gamma", params=(g, j)))
    return out


def delta_pair_groups(shape: TrinomialShape):
    """First pair of distinct all-even exponent-2-led groups, or None.

    The pattern needs a genuine trinomial (no free term): with a free term
    the shape is rigid and has no such derivations.
    """
    if shape.is_free_term:
        return None

    def ok(g):
        grp = shape.groups[g]
        return bool(grp) and all(l % 2 == 0 for l in grp) and 2 in grp

    for g in range(3):
        for h in range(g + 1, 3):
            if ok(g) and ok(h):
                rest = 3 - g - h
                return g, h, rest
    return None


def delta_obstruction(shape: TrinomialShape, fld):
    """Why the delta family cannot be built over fld, or None if it can."""
    if delta_pair_groups(shape) is None:
        return None
    if fld.modulus is None:
        return "delta derivations need a square root of -1; Q has none"
    if fld.sqrt_minus_one() is None:
        return (
            f"delta derivations need a square root of -1; "
            f"F_{fld.modulus} has none (p = 3 mod 4)"
        )
    return None


def _build_delta(shape, fld):
    """Both sign variants of the quadratic-pair derivations, for each
    variable of the remaining group.

    With the all-plus equation convention the images are, writing A, B for
    the exponent-2 leaders, F0, F1 for the half-exponent tails and j^2 = -1:

        A  ->  dP2/dv * F1
        B  ->  (+-j) * dP2/dv * F0
        v  ->  -2 F0 F1 (A F0 +- j B F1)

    A pure sign adjustment (j replaced by a rational) satisfies the equation
    identity but is never locally nilpotent, so fields without j refuse.
    """
    pair = delta_pair_groups(shape)
    if pair is None:
        return []
    obstruction = delta_obstruction(shape, fld)
    if obstruction is not None:
        raise RootUnavailable(obstruction)
    g0, g1, g2 = pair
    ring = shape.ring(fld)
    j = fld.sqrt_minus_one()

    def leader_and_tail(g):
        idxs = shape.group_indices(g)
        lead = next(i for i in idxs if shape.exponents[i] == 2)
        tail_exps = [0] * shape.n
        for i in idxs:
            if i != lead:
                tail_exps[i] = shape.exponents[i] // 2
        return lead, ring.monomial(tuple(tail_exps))

    A, F0 = leader_and_tail(g0)
    B, F1 = leader_and_tail(g1)
    P2 = _monomial_poly(shape, ring, g2)
    out = []
    for i in range(1, len(shape.groups[g2]) + 1):
        v = shape.var_index(g2, i)
        dP2 = P2.partial(v)
        for sign, fam in ((j, "delta+"), (fld.neg(j), "delta-")):
            images = {
                A: dP2 * F1,
                B: (dP2 * F0).scale(sign),
                v: (F0 * F1 * (ring.var(A) * F0 + (ring.var(B) * F1).scale(sign))).scale(
                    fld.from_int(-2)
                ),
            }
            out.append(Derivation(shape, fld, images, family=fam, params=(i,)))
    return out


def _build_f1_DE(shape, fld, view):
    ring = shape.ring(fld)
    y_exps = [0] * shape.n
    for idx, a in zip(view.ys, view.a):
        y_exps[idx] = a
    Y = ring.monomial(tuple(y_exps))
    out = []
    for fam, idxs in (("D", view.zs), ("E", view.ss)):
        mon_exps = [0] * shape.n
        for i in idxs:
            mon_exps[i] = shape.exponents[i]
        mon = ring.monomial(tuple(mon_exps))
        for pos, v in enumerate(idxs, start=1):
            images = {view.x: mon.partial(v), v: -Y}
            out.append(Derivation(shape, fld, images, family=fam, params=(pos,)))
    return out


def _build_f2_DE(shape, fld, view):
    ring = shape.ring(fld)
    out = []
    xy_exps = [0] * shape.n
    for i in view.xs:
        xy_exps[i] = 1
    for idx, a in zip(view.ys, view.a):
        xy_exps[idx] = a
    XY = ring.monomial(tuple(xy_exps))
    for fam, idxs in (("Dk", view.zs), ("Ek", view.ss)):
        mon_exps = [0] * shape.n
        for i in idxs:
            mon_exps[i] = shape.exponents[i]
        mon = ring.monomial(tuple(mon_exps))
        for xi, x in enumerate(view.xs, start=1):
            cofactor = XY.partial(x)
            for pos, v in enumerate(idxs, start=1):
                images = {x: mon.partial(v), v: -cofactor}
                out.append(
                    Derivation(shape, fld, images, family=fam, params=(xi, pos))
                )
    return out


def lnd_catalog(shape: TrinomialShape, fld=QQ, with_notes: bool = False):
    """Every catalog derivation constructible over fld.

    Field-obstructed families (delta over fields without sqrt(-1)) are
    skipped; pass with_notes=True to also receive the obstruction messages.
    Rigid shapes give an empty catalog.
    """
    shape.require_nondegenerate()
    out = []
    notes = []
    out.extend(_build_gamma(shape, fld))
    obstruction = delta_obstruction(shape, fld)
    if obstruction is not None:
        notes.append(obstruction)
    elif delta_pair_groups(shape) is not None:
        out.extend(_build_delta(shape, fld))
        notes.append(
            "delta derivations use the all-plus sign normalization with "
            f"j = {fld.fmt(fld.sqrt_minus_one())}, j^2 = -1"
        )
    tag = family_of(shape)
    if tag.kind == "F1":
        out.extend(_build_f1_DE(shape, fld, tag.f1))
    elif tag.kind == "F2":
        out.extend(_build_f2_DE(shape, fld, tag.f2))
    if fld != QQ:
        rational = {
            d.designator: d for d in lnd_catalog(shape, QQ) if d.family != "custom"
        }
        for d in out:
            if d.family in ("gamma", "D", "E", "Dk", "Ek"):
                d.qlift = rational[d.designator]
    return (out, notes) if with_notes else out


def catalog_derivation(shape: TrinomialShape, fld, designator: str) -> Derivation:
    """Look up one catalog derivation by its designator, e.g. 'D:1'."""
    designator = designator.strip()
    for d in lnd_catalog(shape, fld):
        if d.designator == designator:
            return d
    raise KeyError(f"no catalog derivation {designator!r} for this shape")


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradingWeight:
    """An integer weight per variable; admissible when the equation is
    homogeneous (all monomials of the equation get equal weight)."""

    weights: tuple

    def monomial_degree(self, exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def equation_degrees(self, shape: TrinomialShape):
        degs = []
        for g in range(3):
            if shape.groups[g]:
                degs.append(self.monomial_degree(shape.monomial_exps(g)))
            else:
                degs.append(0)
        return degs

    def is_admissible(self, shape: TrinomialShape) -> bool:
        degs = self.equation_degrees(shape)
        return degs[0] == degs[1] == degs[2]

    def split_poly(self, poly: Polynomial) -> dict:
        """Graded parts of a polynomial, degree -> polynomial."""
        parts = {}
        for e, c in poly.terms.items():
            parts.setdefault(self.monomial_degree(e), {})[e] = c
        return {d: Polynomial(poly.ring, t) for d, t in parts.items()}


def eta_grading(shape: TrinomialShape, i: int) -> GradingWeight:
    """Unique-power-one family grading: deg x = -a_i, deg y_i = 1, rest 0."""
    view = require_f1(shape)
    w = [0] * shape.n
    w[view.x] = -view.a[i - 1]
    w[view.ys[i - 1]] = 1
    return GradingWeight(tuple(w))


def homogeneous_split(delta: Derivation, weight: GradingWeight):
    """Decompose into graded components; their sum is the derivation.

    Component of degree d maps a variable v to the (deg v + d)-part of the
    image of v.  Requires an admissible weight, otherwise the parts are not
    derivations of the hypersurface ring.
    """
    if not weight.is_admissible(delta.shape):
        raise InadmissibleGrading(
            f"weights {weight.weights} leave the equation inhomogeneous"
        )
    by_degree = {}
    for v, img in delta.images.items():
        wv = weight.weights[v]
        for deg, part in weight.split_poly(img).items():
            by_degree.setdefault(deg - wv, {})[v] = part
    out = [
        (
            d,
            Derivation(delta.shape, delta.field, imgs, family="custom"),
        )
        for d, imgs in sorted(by_degree.items())
    ]
    return out
