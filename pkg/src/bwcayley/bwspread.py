"""The set O of osculating tangents plus the directrix, and its certification.

O consists of the unique proper osculating tangent at every affine surface
point together with the double line at infinity. Depending on how cubing
behaves on the ground field, O is a spread and covering, a maximal partial
spread, or not a partial spread at all; the certifiers below establish the
case exhaustively over finite fields and symbolically plus by seeded spot
checks over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import cayley
from .field import (
    Element,
    Field,
    InfiniteField,
    Rationals,
    SpreadRegime,
    classify_field,
    cube_roots,
    nontrivial_cube_root_of_unity,
)
from .projspace import (
    GeometryError,
    Line,
    ProjPoint,
    canonicalize,
    dedup_lines,
    enumerate_lines,
    enumerate_planes,
    enumerate_points,
    incidence,
    line_in_plane,
    line_through,
    lines_skew,
    point_in_plane,
)


class SamePoint(GeometryError):
    pass


class Char3Unsupported(GeometryError):
    pass


class PointOnGInf(GeometryError):
    pass


class NotARegulus(GeometryError):
    pass


@dataclass(frozen=True)
class OsculatingTangent:
    """The proper osculating tangent at the affine surface point (u1, u2)."""

    u1: Element
    u2: Element
    line: Line


def osculating_tangent(u1, u2, F: Field) -> OsculatingTangent:
    """Join of the surface point with (0, 1, 3*u1, u2).

    In characteristic 3 the direction degenerates to (0, 1, 0, u2), which is
    still the correct osculating direction.
    """
    u1, u2 = F.of(u1), F.of(u2)
    p = cayley.surface_point(u1, u2, F)
    q = (F.zero, F.one, F.mul(F.of(3), u1), u2)
    return OsculatingTangent(u1=u1, u2=u2, line=line_through(p, q, F))


def parameter_grid(F: Field) -> List[Tuple[Element, Element]]:
    """All (u1, u2) in lexicographic order (finite fields only)."""
    elems = list(F.elements())
    return [(u1, u2) for u1 in elems for u2 in elems]


def build_O(F: Field) -> List[Line]:
    """The q^2 proper osculating tangents plus the directrix; q^2 + 1 lines."""
    if not F.is_finite:
        raise InfiniteField("O is accessed parametrically over infinite fields")
    lines = [osculating_tangent(u1, u2, F).line for u1, u2 in parameter_grid(F)]
    lines.append(cayley.g_infinity(F))
    deduped = dedup_lines(lines)
    assert len(deduped) == F.order**2 + 1
    return deduped


def skew_criterion(v1, v2, u1, u2, F: Field) -> Element:
    """Resultant-style skewness value for the tangents at (v1,v2) and (u1,u2).

    Translating (v1,v2) to the origin by the group action leaves
    d2^2 - 3*d1^2*d2 + 3*d1^4 with d1 = u1-v1 and d2 = u2-v2-3*v1*(u1-v1);
    the two tangents are skew exactly when this value is nonzero.
    """
    v1, v2, u1, u2 = F.of(v1), F.of(v2), F.of(u1), F.of(u2)
    if (v1, v2) == (u1, u2):
        raise SamePoint("criterion needs two distinct parameter pairs")
    d1 = F.sub(u1, v1)
    d2 = F.sub(F.sub(u2, v2), F.mul(F.of(3), F.mul(v1, d1)))
    d1sq = F.mul(d1, d1)
    three = F.of(3)
    return F.add(
        F.sub(F.mul(d2, d2), F.mul(three, F.mul(d1sq, d2))),
        F.mul(three, F.mul(d1sq, d1sq)),
    )


@dataclass
class CheckOutcome:
    """Verdict of one certification check.

    `passed` is None when the check was skipped; witnesses are replayable
    data (parameter pairs or canonical coordinate tuples).
    """

    passed: Optional[bool]
    witness: Optional[tuple] = None
    counts: Dict[str, int] = dc_field(default_factory=dict)
    note: str = ""


def certify_partial_spread(F: Field, spot_checks: int = 200, seed: int = 0) -> CheckOutcome:
    """Pairwise skewness of O.

    Finite fields: exhaustive scan of all parameter pairs in lexicographic
    order (the criterion value of the first violating pair is re-checked
    against the determinant route). Rationals: the criterion is nonzero for
    all distinct pairs exactly when X^2+X+1 has no root, plus seeded random
    replays of both routes.
    """
    if F.is_finite:
        params = parameter_grid(F)
        witness = None
        violations = 0
        for i, v in enumerate(params):
            for u in params[i + 1 :]:
                if skew_criterion(v[0], v[1], u[0], u[1], F) == F.zero:
                    violations += 1
                    if witness is None:
                        witness = (v, u)
        ginf = cayley.g_infinity(F)
        tangents_meeting_ginf = sum(
            1
            for u1, u2 in params
            if not lines_skew(osculating_tangent(u1, u2, F).line, ginf, F)
        )
        n_lines = F.order**2 + 1
        counts = {
            "lines": n_lines,
            "pairs_checked": n_lines * (n_lines - 1) // 2,  # includes directrix pairs
            "violations": violations,
            "tangents_meeting_directrix": tangents_meeting_ginf,
        }
        if witness is not None:
            t1 = osculating_tangent(*witness[0], F).line
            t2 = osculating_tangent(*witness[1], F).line
            assert not lines_skew(t1, t2, F), "criterion and determinant disagree"
        return CheckOutcome(
            passed=witness is None and tangents_meeting_ginf == 0,
            witness=witness,
            counts=counts,
        )
    # rationals: no nontrivial cube root of unity means no violating pair exists
    w = nontrivial_cube_root_of_unity(F)
    rng = random.Random(seed)
    checked = 0
    for _ in range(spot_checks):
        v = (Fraction(rng.randint(-20, 20), rng.randint(1, 9)), Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
        u = (Fraction(rng.randint(-20, 20), rng.randint(1, 9)), Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
        if u == v:
            continue
        value = skew_criterion(v[0], v[1], u[0], u[1], F)
        t1 = osculating_tangent(*v, F).line
        t2 = osculating_tangent(*u, F).line
        if (value != F.zero) != lines_skew(t1, t2, F):
            return CheckOutcome(passed=False, witness=(v, u), note="route disagreement")
        if value == F.zero:
            return CheckOutcome(passed=False, witness=(v, u))
        checked += 1
    return CheckOutcome(
        passed=w is None,
        witness=None if w is None else ((F.zero, F.zero), (F.one, F.of(2 + w))),
        counts={"spot_checks": checked},
        note="no root of X^2+X+1, so every distinct pair is skew",
    )


def covering_deficit(p1, p2, p3, F: Field) -> Element:
    """The value whose cube roots parametrize tangents through (1,p1,p2,p3)."""
    p1, p2, p3 = F.of(p1), F.of(p2), F.of(p3)
    return F.sub(p3, F.sub(F.mul(p1, p2), F.mul(F.mul(p1, p1), p1)))


def certify_covering(F: Field) -> CheckOutcome:
    """Whether every point of PG(3,q) lies on a line of O (finite fields).

    Affine points are decided by cube-root solvability of the covering
    deficit; points at infinity by matching tangent directions. Multiplicity
    counts (0, 1 or 3 tangents through an affine point) are reported.
    """
    if not F.is_finite:
        raise InfiniteField("use uncovered_witness_rational over the rationals")
    char3 = F.characteristic == 3
    covered = 0
    uncovered = 0
    witness = None
    histogram: Dict[int, int] = {}
    for point in enumerate_points(F):
        x0, x1, x2, x3 = point
        if x0 != F.zero:
            n = len(cube_roots(covering_deficit(x1, x2, x3, F), F))
            histogram[n] = histogram.get(n, 0) + 1
            hit = n > 0
        elif x1 != F.zero:
            # direction (0,1,3u1,u2): solvable unless char 3 forces x2 = 0
            hit = (not char3) or x2 == F.zero
        else:
            hit = True  # on the directrix
        if hit:
            covered += 1
        else:
            uncovered += 1
            if witness is None:
                witness = point
    return CheckOutcome(
        passed=uncovered == 0,
        witness=witness,
        counts={
            "points": covered + uncovered,
            "covered": covered,
            "uncovered": uncovered,
            **{f"affine_with_{k}_tangents": v for k, v in sorted(histogram.items())},
        },
    )


def _small_heights(bound: int) -> List[int]:
    """0, 1, -1, 2, -2, ... up to the bound."""
    out = [0]
    for h in range(1, bound + 1):
        out.extend((h, -h))
    return out


def uncovered_witness_rational(bound: int, F: Optional[Field] = None) -> Optional[ProjPoint]:
    """First small-height affine point (1,p1,p2,p3) whose deficit is a non-cube.

    Scans integer coordinates ordered by absolute value (p3 varies fastest),
    so the result is deterministic; bound 2 yields (1,0,0,2).
    """
    if F is None:
        F = Rationals()
    heights = _small_heights(bound)
    for p1 in heights:
        for p2 in heights:
            for p3 in heights:
                if not cube_roots(covering_deficit(p1, p2, p3, F), F):
                    return canonicalize((1, p1, p2, p3), F)
    return None


def certify_maximality(F: Field, spot_checks: int = 100, seed: int = 0) -> CheckOutcome:
    """Every point of the plane at infinity lies on a line of O (char != 3).

    This forces maximality: any line not in O meets the plane at infinity at
    a point already covered, hence meets the covering line there. Finite
    fields are re-verified exhaustively by incidence; the rationals by the
    same construction on seeded samples.
    """
    if F.characteristic == 3:
        raise Char3Unsupported("the maximality argument inverts 3")
    third = F.inv(F.of(3))
    ginf = cayley.g_infinity(F)

    def covering_line(point) -> Line:
        x0, x1, x2, x3 = point
        if x1 == F.zero:
            return ginf
        u1 = F.mul(F.div(x2, x1), third)
        u2 = F.div(x3, x1)
        return osculating_tangent(u1, u2, F).line

    if F.is_finite:
        checked = 0
        for point in enumerate_points(F):
            if point[0] != F.zero:
                continue
            if not incidence(point, covering_line(point), F):
                return CheckOutcome(passed=False, witness=point)
            checked += 1
        return CheckOutcome(passed=True, counts={"omega_points": checked})
    rng = random.Random(seed)
    for _ in range(spot_checks):
        point = (
            F.zero,
            F.one,
            Fraction(rng.randint(-30, 30), rng.randint(1, 9)),
            Fraction(rng.randint(-30, 30), rng.randint(1, 9)),
        )
        if not incidence(point, covering_line(point), F):
            return CheckOutcome(passed=False, witness=point)
    return CheckOutcome(passed=True, counts={"omega_points_sampled": spot_checks})


def certify_dual_spread(F: Field) -> CheckOutcome:
    """Plane counts of O: exactly one line per plane in the spread regimes.

    Also verifies the dual surrogate of maximality: every plane through the
    pinch point contains at least one line of O.
    """
    if not F.is_finite:
        raise InfiniteField("dual-spread counting needs a finite field")
    O = build_O(F)
    z = cayley.z_point(F)
    witness = None
    histogram: Dict[int, int] = {}
    planes_through_z_missing = 0
    for plane in enumerate_planes(F):
        n = sum(1 for l in O if line_in_plane(l, plane, F))
        histogram[n] = histogram.get(n, 0) + 1
        if n != 1 and witness is None:
            witness = plane
        if point_in_plane(z, plane, F) and n == 0:
            planes_through_z_missing += 1
    exact_one = set(histogram) == {1}
    return CheckOutcome(
        passed=exact_one and planes_through_z_missing == 0,
        witness=witness,
        counts={
            "planes": sum(histogram.values()),
            "planes_through_Z_without_line": planes_through_z_missing,
            **{f"planes_with_{k}_lines": v for k, v in sorted(histogram.items())},
        },
    )


def certify_duality(F: Field, spot_checks: int = 100, seed: int = 0) -> CheckOutcome:
    """The coordinate-reversing duality fixes O and pairs points with tangent planes.

    Checks (finite fields exhaustively, rationals on seeded samples):
    the parametric identity duality(P(u1,u2)) = tangent_plane(-u1, 3u1^2-u2),
    the induced line map sending the tangent at (u1,u2) to the tangent at
    (-u1, 3u1^2-u2), and over finite fields that the dual image of O is O.
    """
    def involution(u1, u2):
        return F.neg(u1), F.sub(F.mul(F.of(3), F.mul(u1, u1)), u2)

    def pair_ok(u1, u2) -> bool:
        v1, v2 = involution(u1, u2)
        if cayley.duality(cayley.surface_point(u1, u2, F), F) != cayley.tangent_plane(v1, v2, F):
            return False
        image = cayley.dual_line(osculating_tangent(u1, u2, F).line, F)
        return image == osculating_tangent(v1, v2, F).line

    if F.is_finite:
        for u1, u2 in parameter_grid(F):
            if not pair_ok(u1, u2):
                return CheckOutcome(passed=False, witness=(u1, u2))
        O = build_O(F)
        fixed = {cayley.dual_line(l, F) for l in O} == set(O)
        surface = [x for x in enumerate_points(F) if cayley.f_value(x, F) == F.zero]
        dual_images = {cayley.duality(x, F) for x in surface}
        tangent_planes = {
            e for e in enumerate_planes(F) if cayley.tangency_test(e, F)
        }
        bijective = len(dual_images) == len(surface) and dual_images == tangent_planes
        return CheckOutcome(
            passed=fixed and bijective,
            counts={
                "parameter_pairs": F.order**2,
                "lines": len(O),
                "surface_points": len(surface),
                "tangent_planes": len(tangent_planes),
            },
        )
    rng = random.Random(seed)
    for _ in range(spot_checks):
        u1 = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        u2 = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        if not pair_ok(u1, u2):
            return CheckOutcome(passed=False, witness=(u1, u2))
    return CheckOutcome(passed=True, counts={"parameter_pairs_sampled": spot_checks})


# --- chart and transversal structures --------------------------------------

def betten_collineation(x: Sequence, F: Field) -> ProjPoint:
    """The coordinate scaling (x0, x1, x2, x3) -> (x0, x1, x2/3, x3/3)."""
    if F.characteristic == 3:
        raise Char3Unsupported("the chart divides by 3")
    third = F.inv(F.of(3))
    x = canonicalize(x, F)
    return canonicalize((x[0], x[1], F.mul(third, x[2]), F.mul(third, x[3])), F)


def betten_chart(u1, u2, F: Field):
    """Chart parameters (t, s) and the two planes cutting out the tangent's image.

    With s = u1 and t = u2/3 - u1^2, the image of the osculating tangent
    under the scaling collineation is the intersection of the planes
    x2 = t*x0 + s*x1 and x3 = -(s^3/3)*x0 + (s^2+t)*x1.
    """
    if F.characteristic == 3:
        raise Char3Unsupported("the chart divides by 3")
    u1, u2 = F.of(u1), F.of(u2)
    third = F.inv(F.of(3))
    s = u1
    t = F.sub(F.mul(u2, third), F.mul(u1, u1))
    s3 = F.mul(F.mul(s, s), s)
    plane1 = canonicalize((t, s, F.neg(F.one), F.zero), F)
    plane2 = canonicalize((F.neg(F.mul(s3, third)), F.add(F.mul(s, s), t), F.zero, F.neg(F.one)), F)
    return (t, s), plane1, plane2


def transversal_map(x: Sequence, F: Field) -> ProjPoint:
    """Trace of the O-line through a point of omega minus the directrix on V(X1)."""
    if F.characteristic == 3:
        raise Char3Unsupported("the transversal map divides by 3")
    x = canonicalize(x, F)
    if x[0] != F.zero:
        raise GeometryError(f"{x} is not in the plane at infinity")
    if x[1] == F.zero:
        raise PointOnGInf(f"{x} lies on the directrix")
    u1 = F.mul(x[2], F.inv(F.of(3)))
    u2 = x[3]
    u1sq = F.mul(u1, u1)
    return canonicalize(
        (F.one, F.zero, F.sub(u2, F.mul(F.of(3), u1sq)), F.neg(F.mul(u1sq, u1))),
        F,
    )


def regulus_minus(s, F: Field) -> List[Line]:
    """Tangents at the points of the generator g(1,s), plus the directrix."""
    if not F.is_finite:
        raise InfiniteField("regulus enumeration needs a finite field")
    s = F.of(s)
    ssq = F.mul(s, s)
    lines = [osculating_tangent(s, F.add(ssq, t), F).line for t in F.elements()]
    lines.append(cayley.g_infinity(F))
    return dedup_lines(lines)


def verify_regulus(lines: Sequence[Line], F: Field, all_lines: Optional[List[Line]] = None):
    """Check a q+1 line set is a regulus: transversals form an opposite regulus.

    Returns (ok, transversals). The transversal set is computed by brute
    force over every line of PG(3,q).
    """
    lines = list(lines)
    if len(dedup_lines(lines)) != len(lines) or len(lines) < 3:
        raise NotARegulus("need at least three distinct lines")
    if all_lines is None:
        all_lines = enumerate_lines(F)
    pairwise = all(
        lines_skew(a, b, F) for i, a in enumerate(lines) for b in lines[i + 1 :]
    )
    transversals = [
        m for m in all_lines if all(not lines_skew(m, l, F) for l in lines)
    ]
    opposite_ok = len(transversals) == len(lines) and all(
        lines_skew(a, b, F)
        for i, a in enumerate(transversals)
        for b in transversals[i + 1 :]
    )
    return pairwise and opposite_ok, transversals


# --- aggregate certificate --------------------------------------------------

def covering_outcome(F: Field) -> CheckOutcome:
    """Covering check with the rational small-height fallback."""
    if F.is_finite:
        return certify_covering(F)
    witness = uncovered_witness_rational(2, F)
    return CheckOutcome(
        passed=witness is None,
        witness=witness,
        note="small-height scan for a deficit with no rational cube root",
    )


def maximality_outcome(F: Field, seed: int = 0) -> CheckOutcome:
    """Maximality check, skipped in characteristic 3."""
    if F.characteristic == 3:
        return CheckOutcome(passed=None, note="the maximality argument inverts 3")
    return certify_maximality(F, seed=seed)


def dual_spread_outcome(F: Field) -> CheckOutcome:
    """Dual-spread counting, skipped over infinite fields."""
    if not F.is_finite:
        return CheckOutcome(passed=None, note="plane counting needs a finite field")
    return certify_dual_spread(F)


@dataclass
class SpreadCert:
    """Full spread certificate for one ground field."""

    regime: SpreadRegime
    partial_spread: CheckOutcome
    covering: CheckOutcome
    maximality: CheckOutcome
    dual_spread: CheckOutcome
    duality: CheckOutcome


def certify_spread(F: Field, seed: int = 0) -> SpreadCert:
    """Run the whole certification battery for one field."""
    return SpreadCert(
        regime=classify_field(F),
        partial_spread=certify_partial_spread(F, seed=seed),
        covering=covering_outcome(F),
        maximality=maximality_outcome(F, seed=seed),
        dual_spread=dual_spread_outcome(F),
        duality=certify_duality(F, seed=seed),
    )
