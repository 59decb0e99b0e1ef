"""Klein correspondence: quadric and cone forms, images of the tangent set.

PG(5,K) coordinates follow the Plücker order (Y01,Y02,Y03,Y12,Y13,Y23). The
generator family maps to a twisted cubic inside the 3-space C, the tangent
set plus the pencil through the pinch point maps onto the intersection of
three quadratic cones with the Klein quadric, and in characteristic 3
everything collapses into the quadratic cone cut out by the 3-space D.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import List, Sequence, Set, Tuple

from . import cayley
from .bwspread import CheckOutcome, build_O
from .field import Field, InfiniteField, PrimeField, cube_roots
from .linalg import rank, same_span
from .projspace import (
    GeometryError,
    KleinPoint,
    Line,
    canonicalize,
    dedup_lines,
    enumerate_lines,
    enumerate_pg5_points,
    line_through,
    lines_skew,
    quadric_value,
)


class WrongCharacteristic(GeometryError):
    pass


class ProjectionDegenerate(GeometryError):
    pass


class ZeroParameters(GeometryError):
    pass


# --- forms ------------------------------------------------------------------

def k_form(y: Sequence, F: Field):
    """Klein quadric: Y01*Y23 - Y02*Y13 + Y03*Y12."""
    return quadric_value(y, F)


def h1_form(y: Sequence, F: Field):
    """3*Y01*(Y12+Y03) - Y02^2."""
    s = F.add(y[3], y[2])
    return F.sub(F.mul(F.of(3), F.mul(y[0], s)), F.mul(y[1], y[1]))


def h2_form(y: Sequence, F: Field):
    """3*Y02*Y13 - (Y12+Y03)^2."""
    s = F.add(y[3], y[2])
    return F.sub(F.mul(F.of(3), F.mul(y[1], y[4])), F.mul(s, s))


def h3_form(y: Sequence, F: Field):
    """9*Y01*Y13 - Y02*(Y12+Y03)."""
    s = F.add(y[3], y[2])
    return F.sub(F.mul(F.of(9), F.mul(y[0], y[4])), F.mul(y[1], s))


def on_variety(y: Sequence, F: Field) -> bool:
    """Whether all of h1, h2, h3 and the quadric vanish at y."""
    zero = F.zero
    return (
        h1_form(y, F) == zero
        and h2_form(y, F) == zero
        and h3_form(y, F) == zero
        and k_form(y, F) == zero
    )


# --- distinguished vectors and subspaces -------------------------------------

def w_infinity(F: Field) -> KleinPoint:
    """Image of the directrix: (0,0,0,0,0,1)."""
    return (F.zero,) * 5 + (F.one,)


def w_vector(F: Field) -> Tuple:
    """(0,0,1,-1,0,0); spans the polar line of C together with w_infinity."""
    return (F.zero, F.zero, F.one, F.neg(F.one), F.zero, F.zero)


def in_C(y: Sequence, F: Field) -> bool:
    """The 3-space V(Y01, Y03 - Y12) housing the generator cubic."""
    return y[0] == F.zero and y[2] == y[3]


def in_B(y: Sequence, F: Field) -> bool:
    """The 3-space V(Y03, Y23), skew to the polar line of C."""
    return y[2] == F.zero and y[5] == F.zero


def in_D(y: Sequence, F: Field) -> bool:
    """The 3-space V(Y02, Y03 + Y12) of the characteristic-3 congruence."""
    return y[1] == F.zero and F.add(y[2], y[3]) == F.zero


def gram_apply(v: Sequence, F: Field) -> Tuple:
    """Apply the Gram matrix of the quadric's polarization to a sextuple.

    The matrix swaps (Y01,Y23) and (Y03,Y12) and swaps (Y02,Y13) with a sign,
    and is its own inverse.
    """
    return (v[5], F.neg(v[4]), v[3], v[2], F.neg(v[1]), v[0])


def polar_of_equations(eq_rows: Sequence[Sequence], F: Field) -> List[Tuple]:
    """Spanning points of the polar subspace of V(linear forms)."""
    return [gram_apply(row, F) for row in eq_rows]


# --- Klein images -------------------------------------------------------------

def kappa(l: Line) -> KleinPoint:
    """Klein image of a line (its canonical Plücker sextuple)."""
    return l.plucker


def kappa_osculating(u1, u2, F: Field) -> KleinPoint:
    """Closed-form Klein image of the osculating tangent at (u1, u2).

    (1, 3u1, u2, 3u1^2-u2, u1^3, 3u1^4-3u1^2*u2+u2^2); in characteristic 3
    this degenerates to (1, 0, u2, -u2, u1^3, u2^2).
    """
    u1, u2 = F.of(u1), F.of(u2)
    mul, sub = F.mul, F.sub
    u1sq = mul(u1, u1)
    u1cb = mul(u1sq, u1)
    if F.characteristic == 3:
        return (F.one, F.zero, u2, F.neg(u2), u1cb, mul(u2, u2))
    three = F.of(3)
    y23 = F.add(
        sub(mul(three, mul(u1sq, u1sq)), mul(three, mul(u1sq, u2))),
        mul(u2, u2),
    )
    return (
        F.one,
        mul(three, u1),
        u2,
        sub(mul(three, u1sq), u2),
        u1cb,
        y23,
    )


def in_kappa_O(y: Sequence, F: Field) -> bool:
    """Whether a canonical sextuple is the Klein image of a line of O.

    Affine images have Y01 = 1 and are then forced to the closed form; the
    only image with Y01 = 0 is that of the directrix.
    """
    y = canonicalize(y, F)
    if y == w_infinity(F):
        return True
    if y[0] == F.zero:
        return False
    if F.characteristic == 3:
        roots = cube_roots(y[4], F)
        if not roots:
            return False
        return y == kappa_osculating(next(iter(roots)), y[2], F)
    u1 = F.div(y[1], F.of(3))
    return y == kappa_osculating(u1, y[2], F)


def generator_cubic(s0, s1, F: Field) -> KleinPoint:
    """Klein image of the generator g(s0,s1): (0, s0^3, s0^2 s1, s0^2 s1, s0 s1^2, s1^3)."""
    s0, s1 = F.of(s0), F.of(s1)
    if s0 == F.zero and s1 == F.zero:
        raise ZeroParameters("generator parameters must not both vanish")
    mul = F.mul
    a = mul(mul(s0, s0), s0)
    b = mul(mul(s0, s0), s1)
    c = mul(s0, mul(s1, s1))
    d = mul(mul(s1, s1), s1)
    return canonicalize((F.zero, a, b, b, c, d), F)


def twisted_cubic_basis(F: Field) -> Tuple[Tuple, ...]:
    """Basis vectors v0..v3 with image(s0,s1) = s0^3 v0 + s0^2 s1 v1 + s0 s1^2 v2 + s1^3 v3."""
    zero, one = F.zero, F.one
    v0 = (zero, one, zero, zero, zero, zero)
    v1 = (zero, zero, one, one, zero, zero)
    v2 = (zero, zero, zero, zero, one, zero)
    v3 = (zero, zero, zero, zero, zero, one)
    return v0, v1, v2, v3


def pencil_line(a, b, F: Field) -> Line:
    """The line joining the pinch point with (0, a, b, 0) inside the plane at infinity."""
    a, b = F.of(a), F.of(b)
    if a == F.zero and b == F.zero:
        raise ZeroParameters("pencil parameters must not both vanish")
    return line_through((F.zero, a, b, F.zero), cayley.z_point(F), F)


def pencil_LZomega(F: Field) -> List[Line]:
    """All q+1 lines through the pinch point inside the plane at infinity."""
    if not F.is_finite:
        raise InfiniteField("pencil enumeration needs a finite field; use pencil_line")
    lines = [pencil_line(F.one, b, F) for b in F.elements()]
    lines.append(pencil_line(F.zero, F.one, F))
    return dedup_lines(lines)


def project_through_Cperp(y: Sequence, F: Field) -> KleinPoint:
    """Unique point of (y + span{w, w_infinity}) in the 3-space B.

    Closed form (y01, y02, 0, y12+y03, y13, 0); degenerate exactly when y
    lies on the polar line of C itself.
    """
    y = tuple(F.of(v) if isinstance(v, int) else v for v in y)
    image = (y[0], y[1], F.zero, F.add(y[3], y[2]), y[4], F.zero)
    if all(v == F.zero for v in image):
        raise ProjectionDegenerate("input lies on the polar line of C")
    return canonicalize(image, F)


# --- exhaustive variety comparison -------------------------------------------

def _prime_zero_scan(p: int, lead: int, tails) -> Set[KleinPoint]:
    """Zero set of h1,h2,h3,k among canonical sextuples with a fixed leading 1."""
    zero: Set[KleinPoint] = set()
    prefix = (0,) * lead + (1,)
    for tail in tails:
        y = prefix + tail
        y01, y02, y03, y12, y13, y23 = y
        s = (y12 + y03) % p
        if (3 * y01 * s - y02 * y02) % p:
            continue
        if (3 * y02 * y13 - s * s) % p:
            continue
        if (9 * y01 * y13 - y02 * s) % p:
            continue
        if (y01 * y23 - y02 * y13 + y03 * y12) % p:
            continue
        zero.add(y)
    return zero


def variety_zero_set(F: Field, threads: int = 1) -> Set[KleinPoint]:
    """All canonical points of PG(5,q) where h1, h2, h3 and k vanish."""
    if not isinstance(F, PrimeField):
        raise InfiniteField("exhaustive scan needs a finite prime field")
    p = F.p
    jobs = []
    for lead in range(5, -1, -1):
        free = 5 - lead
        if free == 0:
            jobs.append((lead, [()]))
        else:
            # split the largest blocks on their first free coordinate
            for first in range(p):
                jobs.append((lead, [(first,) + t for t in product(range(p), repeat=free - 1)]))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda job: _prime_zero_scan(p, job[0], job[1]), jobs)
            out: Set[KleinPoint] = set()
            for part in parts:
                out |= part
            return out
    out = set()
    for lead, tails in jobs:
        out |= _prime_zero_scan(p, lead, tails)
    return out


def verify_variety_equality(F: Field, threads: int = 1) -> CheckOutcome:
    """Set equality of the exhaustive form zero set with the Klein image of
    the tangent set united with the pencil through the pinch point.
    """
    if F.characteristic == 3:
        raise WrongCharacteristic("the three-cone description needs characteristic != 3")
    zero_set = variety_zero_set(F, threads=threads)
    image = {l.plucker for l in build_O(F)} | {l.plucker for l in pencil_LZomega(F)}
    equal = zero_set == image
    witness = None
    if not equal:
        diff = sorted(zero_set.symmetric_difference(image))
        witness = diff[0]
    q = F.order
    return CheckOutcome(
        passed=equal and len(zero_set) == q * q + q + 1,
        witness=witness,
        counts={
            "zero_set_points": len(zero_set),
            "image_points": len(image),
            "expected": q * q + q + 1,
        },
    )


# --- characteristic 3 ---------------------------------------------------------

def char3_congruence_check(F: Field) -> CheckOutcome:
    """The tangent set plus pencil sits inside the congruence cut out by D.

    Verifies over GF(3^1): every image point lies in the quadric section of
    D; the congruence's lines all meet the line of nuclei; the congruence
    equals tangents plus pencil (cubing is onto for finite characteristic 3);
    and the section has q^2+q+1 points, all of them Klein images.
    """
    if F.characteristic != 3:
        raise WrongCharacteristic("needs characteristic 3")
    O = build_O(F)
    pencil = pencil_LZomega(F)
    union = dedup_lines(O + pencil)
    subset_ok = all(in_D(l.plucker, F) for l in union)

    congruence = [l for l in enumerate_lines(F) if in_D(l.plucker, F)]
    n_line = cayley.nuclei_line(F)
    meet_failures = [l for l in congruence if lines_skew(l, n_line, F)]

    qd_points = variety_qd_points(F)
    images = {l.plucker for l in congruence}
    q = F.order
    passed = (
        subset_ok
        and not meet_failures
        and set(congruence) == set(union)
        and images == qd_points
        and len(congruence) == q * q + q + 1
    )
    return CheckOutcome(
        passed=passed,
        witness=meet_failures[0].plucker if meet_failures else None,
        counts={
            "congruence_lines": len(congruence),
            "tangents_plus_pencil": len(union),
            "cone_section_points": len(qd_points),
            "expected": q * q + q + 1,
        },
    )


def variety_qd_points(F: Field) -> Set[KleinPoint]:
    """Canonical points of PG(5,q) on the quadric and in the 3-space D."""
    return {
        y
        for y in enumerate_pg5_points(F)
        if in_D(y, F) and k_form(y, F) == F.zero
    }


def osculating_plane_pencil_check(F: Field) -> CheckOutcome:
    """In characteristic 3 all osculating planes of the generator cubic share
    the axis spanned by v1 and v2, which is the polar line of D.
    """
    if F.characteristic != 3:
        raise WrongCharacteristic("needs characteristic 3")
    v0, v1, v2, v3 = twisted_cubic_basis(F)
    axis = [list(v1), list(v2)]

    d_equations = [
        (F.zero, F.one, F.zero, F.zero, F.zero, F.zero),
        (F.zero, F.zero, F.one, F.one, F.zero, F.zero),
    ]
    axis_is_polar = same_span(axis, [list(v) for v in polar_of_equations(d_equations, F)], F)

    def combo(*terms):
        out = [F.zero] * 6
        for coeff, vec in terms:
            for i, v in enumerate(vec):
                out[i] = F.add(out[i], F.mul(coeff, v))
        return out

    ok = axis_is_polar
    witness = None
    for s in F.elements():
        s2, s3 = F.mul(s, s), F.mul(F.mul(s, s), s)
        point = combo((F.one, v0), (s, v1), (s2, v2), (s3, v3))
        first = combo((F.one, v1), (F.mul(F.of(2), s), v2), (F.mul(F.of(3), s2), v3))
        second = combo((F.of(2), v2), (F.mul(F.of(6), s), v3))
        plane = [point, first, second]
        if rank(plane, F) != 3 or rank(plane + [list(v1)], F) != 3 or rank(plane + [list(v2)], F) != 3:
            ok = False
            witness = s
            break
    # the remaining cubic point (the image of the directrix), via the reversed chart
    if ok:
        plane = [list(v3), list(v2), combo((F.of(2), v1))]
        ok = rank(plane, F) == 3 and rank(plane + [list(v1)], F) == 3 and rank(plane + [list(v2)], F) == 3
    return CheckOutcome(
        passed=ok and axis_is_polar,
        witness=witness,
        counts={"parameters": F.order + 1},
    )
